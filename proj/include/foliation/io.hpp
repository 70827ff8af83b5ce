/**
 * @file io.hpp
 * @brief Spec files and report emission.
 *
 * Spec file (JSON, schema 1):
 *
 *     {"schema": 1, "n": 4, "k": 2,
 *      "components": [{"w": [1,1], "ell": 1, "embedded_points": 0}],
 *      "pair": {"w": [1,1,1], "v": [1], "ell": 1, "embedded_off_w": 0}}
 *
 * Unknown keys are rejected. Large integers may be given as decimal strings.
 * On output, integers that fit in 64 bits are JSON numbers and larger ones are
 * decimal strings; no value is ever written as a float.
 */
#pragma once

#include "foliation/integer.hpp"
#include "foliation/invariants.hpp"
#include "foliation/subvariety.hpp"
#include "foliation/symfun.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace foliation {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Spec or usage problem; what() names the offending field first.
class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---- integers <-> JSON ------------------------------------------------------

inline Json to_json(const Int& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return Json(static_cast<std::int64_t>(v));
  return Json(v.str());
}

inline bool is_decimal(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

inline Int int_from_json(const Json& j, const std::string& field) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? Int(j.get<std::uint64_t>()) : Int(j.get<std::int64_t>());
  if (j.is_string() && is_decimal(j.get<std::string>())) return Int(j.get<std::string>());
  throw SpecError(field + ": expected an integer");
}

inline int small_int(const Json& j, const std::string& field) {
  const Int v = int_from_json(j, field);
  if (v < -1000000 || v > 1000000) throw SpecError(field + ": value out of range");
  return static_cast<int>(v);
}

// ---- multidegree text -------------------------------------------------------

/// "1,2,3" -> (1,2,3).
inline MultiDegree parse_multidegree(const std::string& text, const std::string& field) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }), item.end());
    if (!is_decimal(item) || item[0] == '-' || item.size() > 6)
      throw SpecError(field + ": expected comma-separated positive degrees, got '" + text + "'");
    out.push_back(std::stoi(item));
  }
  if (out.empty() || text.back() == ',') throw SpecError(field + ": expected comma-separated positive degrees, got '" + text + "'");
  try {
    return MultiDegree(out);
  } catch (const std::invalid_argument& e) {
    throw SpecError(field + ": " + e.what());
  }
}

inline MultiDegree multidegree_from_json(const Json& j, const std::string& field) {
  if (j.is_string()) return parse_multidegree(j.get<std::string>(), field);
  if (!j.is_array() || j.empty()) throw SpecError(field + ": expected a non-empty list of degrees or a \"a,b\" string");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(small_int(j[i], field + "[" + std::to_string(i) + "]"));
  try {
    return MultiDegree(out);
  } catch (const std::invalid_argument& e) {
    throw SpecError(field + ": " + e.what());
  }
}

inline Json to_json(const MultiDegree& md) {
  Json a = Json::array();
  for (int v : md.degrees()) a.push_back(v);
  return a;
}

// ---- spec files ---------------------------------------------------------------

struct LoadedSpec {
  FoliationSpec foliation;
  std::optional<SubvarietyPair> pair;
};

namespace detail {

inline void reject_unknown(const Json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
      throw SpecError((where.empty() ? "" : where + ".") + key + ": unknown field");
  }
}

inline const Json& require(const Json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SpecError((where.empty() ? "" : where + ".") + key + ": missing required field");
  return *it;
}

/// Re-raises validation failures from the numeric modules as SpecError with the
/// field path prefixed.
template <class F>
void revalidate(const std::string& prefix, F&& f) {
  try {
    f();
  } catch (const SpecError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw SpecError(prefix + e.what());
  }
}

}  // namespace detail

inline LoadedSpec parse_spec(const Json& doc) {
  if (!doc.is_object()) throw SpecError("spec: top level must be an object");
  detail::reject_unknown(doc, {"schema", "n", "k", "components", "pair"}, "");
  if (auto it = doc.find("schema"); it != doc.end() && small_int(*it, "schema") != kSchemaVersion)
    throw SpecError("schema: unsupported version (expected " + std::to_string(kSchemaVersion) + ")");
  LoadedSpec out;
  out.foliation.n = small_int(detail::require(doc, "n", ""), "n");
  out.foliation.k = small_int(detail::require(doc, "k", ""), "k");
  if (auto it = doc.find("components"); it != doc.end()) {
    if (!it->is_array()) throw SpecError("components: expected a list");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string where = "components[" + std::to_string(i) + "]";
      const Json& c = (*it)[i];
      if (!c.is_object()) throw SpecError(where + ": expected an object");
      detail::reject_unknown(c, {"w", "ell", "embedded_points"}, where);
      SingularComponent comp{multidegree_from_json(detail::require(c, "w", where), where + ".w"),
                             small_int(detail::require(c, "ell", where), where + ".ell"), std::nullopt};
      if (auto e = c.find("embedded_points"); e != c.end())
        comp.embedded_points = int_from_json(*e, where + ".embedded_points");
      out.foliation.components.push_back(std::move(comp));
    }
  }
  detail::revalidate("", [&] { validate(out.foliation); });
  if (auto it = doc.find("pair"); it != doc.end()) {
    const Json& p = *it;
    if (!p.is_object()) throw SpecError("pair: expected an object");
    detail::reject_unknown(p, {"w", "v", "ell", "embedded_off_w"}, "pair");
    SubvarietyPair pair{out.foliation.n, multidegree_from_json(detail::require(p, "w", "pair"), "pair.w"),
                        multidegree_from_json(detail::require(p, "v", "pair"), "pair.v"), out.foliation.k,
                        small_int(detail::require(p, "ell", "pair"), "pair.ell"), std::nullopt};
    if (auto e = p.find("embedded_off_w"); e != p.end()) pair.embedded_off_w = int_from_json(*e, "pair.embedded_off_w");
    detail::revalidate("pair.", [&] { validate(pair); });
    out.pair = std::move(pair);
  }
  return out;
}

inline LoadedSpec parse_spec_text(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SpecError(std::string("spec: malformed JSON: ") + e.what());
  }
  return parse_spec(doc);
}

inline LoadedSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("spec: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec_text(ss.str());
}

// ---- reports --------------------------------------------------------------------

/// Full report for a foliation spec: the inputs in spec-file form plus results.
inline Json report_json(const InvariantReport& r) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["n"] = r.n;
  j["k"] = r.k;
  j["baum_bott"] = to_json(r.baum_bott);
  j["isolated_sum"] = to_json(r.isolated_sum);
  if (r.isolated_sum_embedded) j["isolated_sum_embedded"] = to_json(*r.isolated_sum_embedded);
  Json comps = Json::array();
  for (const auto& c : r.components) {
    Json cj;
    cj["w"] = to_json(c.center);
    cj["ell"] = c.ell;
    if (c.embedded_points) cj["embedded_points"] = to_json(*c.embedded_points);
    cj["nu"] = to_json(c.nu);
    cj["blowup_total"] = to_json(c.blowup_total);
    cj["exceptional"] = to_json(c.exceptional);
    if (c.invariant_center_count) cj["invariant_center_count"] = to_json(*c.invariant_center_count);
    cj["milnor"] = to_json(c.milnor);
    cj["milnor_lower_bound_only"] = c.milnor_lower_bound_only;
    comps.push_back(std::move(cj));
  }
  j["components"] = std::move(comps);
  Json prov;
  for (const auto& [k, v] : r.provenance) prov[k] = v;
  j["provenance"] = std::move(prov);
  j["assumptions"] = r.assumptions;
  return j;
}

/// Inputs recovered from a report_json document (result keys ignored).
inline FoliationSpec spec_from_report(const Json& j) {
  Json doc;
  doc["schema"] = j.at("schema");
  doc["n"] = j.at("n");
  doc["k"] = j.at("k");
  doc["components"] = Json::array();
  for (const auto& c : j.at("components")) {
    Json cj;
    cj["w"] = c.at("w");
    cj["ell"] = c.at("ell");
    if (c.contains("embedded_points")) cj["embedded_points"] = c.at("embedded_points");
    doc["components"].push_back(std::move(cj));
  }
  return parse_spec(doc).foliation;
}

inline const char* alpha_status_name(AlphaCheck::Status s) {
  switch (s) {
    case AlphaCheck::Status::Agrees: return "agrees";
    case AlphaCheck::Status::Differs: return "differs";
    case AlphaCheck::Status::NonIntegral: return "non_integral";
  }
  return "unknown";
}

// ---- tabular emission -----------------------------------------------------------

/// One output value: an integer, text, a flag or a list of integers.
using Cell = std::variant<Int, std::string, bool, std::vector<Int>>;
using Record = std::vector<std::pair<std::string, Cell>>;

enum class Format { Json, Csv, Table };

inline Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  if (s == "table") return Format::Table;
  throw SpecError("format: expected json, csv or table, got '" + s + "'");
}

inline Json cell_json(const Cell& c) {
  if (auto v = std::get_if<Int>(&c)) return to_json(*v);
  if (auto v = std::get_if<std::string>(&c)) return Json(*v);
  if (auto v = std::get_if<bool>(&c)) return Json(*v);
  Json a = Json::array();
  for (const auto& x : std::get<std::vector<Int>>(c)) a.push_back(to_json(x));
  return a;
}

inline std::string cell_text(const Cell& c) {
  if (auto v = std::get_if<Int>(&c)) return v->str();
  if (auto v = std::get_if<std::string>(&c)) return *v;
  if (auto v = std::get_if<bool>(&c)) return *v ? "true" : "false";
  std::string s;
  for (const auto& x : std::get<std::vector<Int>>(c)) s += (s.empty() ? "" : ";") + x.str();
  return s;
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

inline Json record_json(const Record& r) {
  Json j = Json::object();
  for (const auto& [k, v] : r) j[k] = cell_json(v);
  return j;
}

inline void write_csv_header(std::ostream& os, const Record& r) {
  for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_escape(r[i].first);
  os << '\n';
}

inline void write_csv_row(std::ostream& os, const Record& r) {
  for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_escape(cell_text(r[i].second));
  os << '\n';
}

/// A single record is written as one JSON object, several as an array.
inline void emit(std::ostream& os, const std::vector<Record>& rows, Format f, bool single = false) {
  switch (f) {
    case Format::Json: {
      if (single && rows.size() == 1) {
        os << record_json(rows.front()).dump() << '\n';
      } else {
        Json a = Json::array();
        for (const auto& r : rows) a.push_back(record_json(r));
        os << a.dump() << '\n';
      }
      return;
    }
    case Format::Csv:
      if (rows.empty()) return;
      write_csv_header(os, rows.front());
      for (const auto& r : rows) write_csv_row(os, r);
      return;
    case Format::Table: {
      if (rows.empty()) return;
      std::vector<std::size_t> width;
      for (const auto& [k, v] : rows.front()) width.push_back(k.size());
      for (const auto& r : rows)
        for (std::size_t i = 0; i < r.size() && i < width.size(); ++i)
          width[i] = std::max(width[i], cell_text(r[i].second).size());
      auto line = [&](auto&& text_of) {
        for (std::size_t i = 0; i < width.size(); ++i)
          os << (i ? "  " : "") << std::setw(static_cast<int>(width[i])) << text_of(i);
        os << '\n';
      };
      line([&](std::size_t i) { return rows.front()[i].first; });
      for (const auto& r : rows) line([&](std::size_t i) { return i < r.size() ? cell_text(r[i].second) : ""; });
      return;
    }
  }
}

}  // namespace foliation
