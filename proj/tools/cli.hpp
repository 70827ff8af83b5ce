/**
 * @file cli.hpp
 * @brief Command-line front end: nu, counts, soares, subvariety, verify, sweep.
 *
 * Exit codes: 0 success, 1 verification failure, 2 usage or spec error (one
 * line on stderr naming the field).
 */
#pragma once

#include "foliation/consistency.hpp"
#include "foliation/invariants.hpp"
#include "foliation/io.hpp"
#include "foliation/subvariety.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace foliation::cli {

struct Options {
  std::optional<int> n, k, ell;
  std::optional<std::string> w, v, embedded, spec;
  std::string format = "json";
  std::string preset = "default";
  std::vector<std::string> checks;
  bool mutate_beta = false;
};

namespace detail {

inline Int parse_count(const std::string& text, const std::string& field) {
  if (!is_decimal(text) || text[0] == '-') throw SpecError(field + ": expected a non-negative integer, got '" + text + "'");
  return Int(text);
}

inline int need(const std::optional<int>& v, const char* field) {
  if (!v) throw SpecError(std::string(field) + ": missing required parameter --" + field);
  return *v;
}

inline std::string need(const std::optional<std::string>& v, const char* field) {
  if (!v) throw SpecError(std::string(field) + ": missing required parameter --" + field);
  return *v;
}

/// Foliation spec from --spec or from --n/--k/--w/--ell/--embedded.
inline FoliationSpec foliation_spec(const Options& o) {
  if (o.spec) {
    auto loaded = load_spec(*o.spec);
    if (loaded.foliation.components.empty()) throw SpecError("components: spec has no singular component");
    return loaded.foliation;
  }
  FoliationSpec spec{need(o.n, "n"), need(o.k, "k"), {}};
  SingularComponent c{parse_multidegree(need(o.w, "w"), "w"), need(o.ell, "ell"), std::nullopt};
  if (o.embedded) c.embedded_points = parse_count(*o.embedded, "embedded");
  spec.components.push_back(std::move(c));
  foliation::detail::revalidate("", [&] {
    foliation::detail::require_component(spec.n, spec.k, spec.components[0].center, spec.components[0].ell);
  });
  return spec;
}

inline SubvarietyPair subvariety_pair(const Options& o) {
  if (o.spec) {
    auto loaded = load_spec(*o.spec);
    if (!loaded.pair) throw SpecError("pair: spec has no subvariety pair");
    return *loaded.pair;
  }
  SubvarietyPair pair{need(o.n, "n"), parse_multidegree(need(o.w, "w"), "w"), parse_multidegree(need(o.v, "v"), "v"),
                      need(o.k, "k"), need(o.ell, "ell"), std::nullopt};
  if (o.embedded) pair.embedded_off_w = parse_count(*o.embedded, "embedded");
  foliation::detail::revalidate("", [&] { validate(pair); });
  return pair;
}

inline SweepRange sweep_range(const Options& o) {
  SweepRange r;
  if (o.preset == "default") r = default_range();
  else if (o.preset == "quick") r = quick_range();
  else throw SpecError("preset: expected default or quick, got '" + o.preset + "'");
  r.chow.negate_beta = o.mutate_beta;
  return r;
}

inline int cmd_nu(const Options& o, std::ostream& out) {
  const auto spec = foliation_spec(o);
  std::vector<Record> rows;
  if (spec.components.size() == 1) {
    const auto& c = spec.components[0];
    rows.push_back({{"nu", nu(spec.n, spec.k, c.center, c.ell)}});
    emit(out, rows, parse_format(o.format), true);
    return 0;
  }
  for (const auto& c : spec.components)
    rows.push_back({{"w", c.center.str()}, {"ell", Int(c.ell)}, {"nu", nu(spec.n, spec.k, c.center, c.ell)}});
  emit(out, rows, parse_format(o.format));
  return 0;
}

inline int cmd_counts(const Options& o, std::ostream& out) {
  const auto spec = foliation_spec(o);
  const auto report = evaluate(spec);
  const Format f = parse_format(o.format);
  if (spec.components.size() == 1 && !o.spec) {
    const auto& c = report.components[0];
    Record r{{"blowup_total", c.blowup_total},
             {"exceptional", c.exceptional},
             {"isolated_sum", report.isolated_sum},
             {"baum_bott", report.baum_bott}};
    if (c.embedded_points) r.push_back({"milnor", c.milnor});
    emit(out, {r}, f, true);
    return 0;
  }
  if (f == Format::Json) {
    out << report_json(report).dump() << '\n';
    return 0;
  }
  std::vector<Record> rows;
  for (const auto& c : report.components) {
    Record r{{"w", c.center.str()}, {"ell", Int(c.ell)},         {"nu", c.nu},
             {"blowup_total", c.blowup_total}, {"exceptional", c.exceptional}, {"milnor", c.milnor},
             {"milnor_lower_bound_only", c.milnor_lower_bound_only}};
    rows.push_back(std::move(r));
  }
  emit(out, rows, f);
  return 0;
}

inline int cmd_soares(const Options& o, std::ostream& out) {
  MultiDegree v = MultiDegree::linear(1);
  int n = 0, k = 0;
  if (o.spec) {
    const auto pair = subvariety_pair(o);
    v = pair.variety;
    n = pair.n;
    k = pair.k;
  } else {
    n = need(o.n, "n");
    k = need(o.k, "k");
    v = parse_multidegree(need(o.v, "v"), "v");
  }
  if (n < 3) throw SpecError("n: ambient dimension must be >= 3");
  if (k < 1) throw SpecError("k: foliation degree must be >= 1");
  if (v.length() > n - 1) throw SpecError("v: codimension must lie in [1, n-1]");
  emit(out, {{{"soares", soares_count(n, k, v)}}}, parse_format(o.format), true);
  return 0;
}

inline int cmd_subvariety(const Options& o, std::ostream& out) {
  const auto pair = subvariety_pair(o);
  const auto r = evaluate(pair);
  Record rec{{"soares", r.soares},
             {"strict_v", r.strict_v},
             {"v_e", r.v_e},
             {"nu_v_w", r.nu_v_w},
             {"principal_bound", r.bound.value},
             {"bound_embedded_supplied", r.bound.embedded_supplied},
             {"alpha", r.alpha},
             {"alpha_recursion", std::string(alpha_status_name(r.alpha_check.status))},
             {"omega_closed_form", r.diagnostic.closed_form},
             {"omega_closed_form_agrees", r.diagnostic.agrees()}};
  emit(out, {rec}, parse_format(o.format), true);
  return 0;
}

inline int cmd_verify(const Options& o, std::ostream& out) {
  const auto range = sweep_range(o);
  std::vector<CheckReport> reports;
  try {
    reports = run_suite(range, o.checks);
  } catch (const std::invalid_argument& e) {
    throw SpecError(e.what());
  }
  std::vector<Record> rows;
  for (const auto& r : reports) {
    Record rec{{"check", r.name},
               {"instances", Int(r.instances)},
               {"failures", Int(static_cast<long>(r.failures.size()))},
               {"status", std::string(r.passed() ? "pass" : "fail")}};
    std::string first;
    if (!r.failures.empty())
      first = r.failures.front().input + ": " + r.failures.front().lhs + " != " + r.failures.front().rhs;
    rec.push_back({"first_failure", first});
    std::string notes;
    for (const auto& n : r.notes) notes += (notes.empty() ? "" : "; ") + n;
    rec.push_back({"notes", notes});
    rows.push_back(std::move(rec));
  }
  emit(out, rows, parse_format(o.format));
  return suite_exit_code(reports);
}

/// Grid rows ordered by (n, d, w, k, ell); csv rows are written as produced.
inline int cmd_sweep(const Options& o, std::ostream& out) {
  const auto range = sweep_range(o);
  const Format f = parse_format(o.format);
  std::vector<Record> rows;
  bool header = false;
  foliation::detail::for_each_center(range, range.n_max, [&](int n, const MultiDegree& md) {
    for (int k = range.k_min; k <= range.k_max; ++k)
      for (int ell : foliation::detail::ells(range, k)) {
        const Int nu_v = nu(n, k, md, ell);
        Record r{{"n", Int(n)},
                 {"d", Int(md.length())},
                 {"w", md.str()},
                 {"k", Int(k)},
                 {"ell", Int(ell)},
                 {"nu", nu_v},
                 {"blowup_total", count_blowup_total(n, k, md, ell)},
                 {"exceptional", count_exceptional(n, k, md, ell)},
                 {"isolated_sum", baum_bott(n, k) + nu_v}};
        if (f == Format::Csv) {
          if (!header) write_csv_header(out, r);
          header = true;
          write_csv_row(out, r);
        } else {
          rows.push_back(std::move(r));
        }
      }
  });
  if (f != Format::Csv) emit(out, rows, f);
  return 0;
}

}  // namespace detail

/// Parses argv, dispatches and writes the report to out; diagnostics go to err.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Enumerative invariants of foliations by curves on P^n", "foliation"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub, bool w, bool v, bool ell, bool embedded) {
    sub->add_option("--n", o.n, "ambient dimension");
    sub->add_option("--k", o.k, "foliation degree");
    if (w) sub->add_option("--w", o.w, "multidegree of W, comma-separated");
    if (v) sub->add_option("--v", o.v, "multidegree of V, comma-separated");
    if (ell) sub->add_option("--ell", o.ell, "order of vanishing along E");
    if (embedded) sub->add_option("--embedded", o.embedded, "embedded point count");
    sub->add_option("--spec", o.spec, "spec file (JSON)");
    sub->add_option("--format", o.format, "json, csv or table");
  };
  auto* nu_cmd = app.add_subcommand("nu", "nu(F, W)");
  add_common(nu_cmd, true, false, true, false);
  auto* counts_cmd = app.add_subcommand("counts", "blowup, exceptional and isolated counts");
  add_common(counts_cmd, true, false, true, true);
  auto* soares_cmd = app.add_subcommand("soares", "singularities on an invariant complete intersection");
  add_common(soares_cmd, false, true, false, false);
  auto* sub_cmd = app.add_subcommand("subvariety", "counts on V containing W");
  add_common(sub_cmd, true, true, true, true);
  auto* verify_cmd = app.add_subcommand("verify", "run the consistency suite");
  verify_cmd->add_option("--preset", o.preset, "default or quick");
  verify_cmd->add_option("--check", o.checks, "restrict to named checks");
  verify_cmd->add_option("--format", o.format, "json, csv or table");
  verify_cmd->add_flag("--mutate-beta", o.mutate_beta, "flip the sign of beta (mutation smoke test)");
  auto* sweep_cmd = app.add_subcommand("sweep", "counts over a parameter grid");
  sweep_cmd->add_option("--preset", o.preset, "default or quick");
  sweep_cmd->add_option("--format", o.format, "json, csv or table");
  sweep_cmd->preparse_callback([&](std::size_t) { o.format = "csv"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    for (char& c : msg)
      if (c == '\n') c = ' ';
    err << "error: " << msg << '\n';
    return 2;
  }

  try {
    parse_format(o.format);
    if (nu_cmd->parsed()) return detail::cmd_nu(o, out);
    if (counts_cmd->parsed()) return detail::cmd_counts(o, out);
    if (soares_cmd->parsed()) return detail::cmd_soares(o, out);
    if (sub_cmd->parsed()) return detail::cmd_subvariety(o, out);
    if (verify_cmd->parsed()) return detail::cmd_verify(o, out);
    if (sweep_cmd->parsed()) return detail::cmd_sweep(o, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace foliation::cli
