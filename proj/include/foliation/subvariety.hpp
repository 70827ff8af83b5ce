/**
 * @file subvariety.hpp
 * @brief Singularity counts on an invariant complete intersection V that
 *        contains the singular component W.
 *
 * V = Z(f_1..f_m) has codimension m and degrees (d_1..d_m); W has codimension
 * d > m and each f_i lies in the ideal of W. The
 * strict transform V~ meets the exceptional divisor in V_E, and the
 * intersection numbers
 *
 *     alpha^{(i)} = int_{V_E} (pi^* h)^{n-m-1-i} zeta^i
 *
 * feed the counts on V~ and V_E. Inside E = P(N_W), V_E is cut out by the
 * sections of O(1) (x) O(d_i) induced by the f_i, so its class is
 * prod_i (d_i h - zeta); alpha is read off the Chow ring of E. The closed
 * recursion in W's symmetric functions is kept alongside and compared.
 */
#pragma once

#include "foliation/chowring.hpp"
#include "foliation/integer.hpp"
#include "foliation/invariants.hpp"
#include "foliation/symfun.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace foliation {

struct SubvarietyPair {
  int n = 3;
  MultiDegree center;   // W, length d
  MultiDegree variety;  // V, length m < d
  int k = 1;
  int ell = 0;
  /// N(F, A_{V\W}); caller-supplied.
  std::optional<Int> embedded_off_w;

  int d() const { return center.length(); }
  int m() const { return variety.length(); }
};

inline void validate(const SubvarietyPair& pair) {
  if (pair.n < 3) throw std::invalid_argument("n: ambient dimension must be >= 3, got " + std::to_string(pair.n));
  if (pair.k < 1) throw std::invalid_argument("k: foliation degree must be >= 1, got " + std::to_string(pair.k));
  if (pair.d() < 2 || pair.d() > pair.n - 1)
    throw std::invalid_argument("w: codimension " + std::to_string(pair.d()) + " outside [2, n-1]");
  if (pair.m() < 1 || pair.m() >= pair.d())
    throw std::invalid_argument("v: codimension m=" + std::to_string(pair.m()) +
                                " must satisfy 1 <= m < d=" + std::to_string(pair.d()));
  if (pair.ell < 0) throw std::invalid_argument("ell: order of vanishing must be >= 0");
  if (pair.embedded_off_w && *pair.embedded_off_w < 0)
    throw std::invalid_argument("embedded_off_w: must be >= 0");
}

/// Number of singularities on an invariant complete intersection V of the
/// given codimension and degrees, for a degree-k foliation non-degenerate along V:
/// (prod d_i) sum_{j<=dim V} [sum_{t<=j} (-1)^t W_t(d_1-1, ..)] k^{dim V - j}.
inline Int soares_count(int n, int k, int codim, const std::vector<int>& degrees) {
  if (codim < 1 || codim > n - 1)
    throw std::invalid_argument("soares_count: codimension must lie in [1, n-1]");
  if (static_cast<int>(degrees.size()) != codim)
    throw std::invalid_argument("soares_count: expected " + std::to_string(codim) + " degrees");
  if (k < 1) throw std::invalid_argument("soares_count: k must be >= 1");
  Int product = 1;
  for (int v : degrees) {
    if (v < 1) throw std::invalid_argument("soares_count: degrees must be >= 1");
    product *= v;
  }
  std::vector<int> shifted;
  for (int v : degrees) shifted.push_back(v - 1);
  const int dim = n - codim;
  // W over the shifted degrees; entries may be 0, so no MultiDegree here.
  const auto w = detail::wronski_table(dim, shifted);
  Int s = 0;
  Int partial = 0;
  for (int j = 0; j <= dim; ++j) {
    if (j % 2) partial -= w[j];
    else partial += w[j];
    s += partial * ipow(Int(k), dim - j);
  }
  return product * s;
}

inline Int soares_count(int n, int k, const MultiDegree& variety) {
  return soares_count(n, k, variety.length(), std::vector<int>(variety.degrees().begin(), variety.degrees().end()));
}

/// Thrown when the recursion for alpha would need a non-integral value.
class AlphaRecursionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// alpha^{(0..max_index)} by the closed recursion: zero below d-m-1,
/// (-1)^{d-m-1} deg(W) at d-m-1, the c_i(E) relation up to d-1 and the
/// zeta-power reduction beyond. sigma, tau, W are taken in W's degrees.
inline std::vector<Int> alpha_recursion_table(const SubvarietyPair& pair, int max_index) {
  validate(pair);
  const int n = pair.n;
  const int d = pair.d();
  const int rho = d - pair.m() - 1;
  const SymmetricTables t(n, pair.center, 2 * n + d + 2);
  const Int& deg_w = pair.center.degree();
  std::vector<Int> alpha;
  for (int i = 0; i <= max_index; ++i) {
    Int value = 0;
    if (i < rho) {
      value = 0;
    } else if (i == rho) {
      value = rho % 2 ? Int(-deg_w) : deg_w;
    } else if (i < d) {
      Int rhs = binomial(d, rho) * t.tau(i - rho) * deg_w;
      for (int a1 = 0; a1 <= d; ++a1)
        for (int a2 = 0; a2 <= i; ++a2) {
          const int s = a1 + a2;
          if (s < 1 || s > i) continue;
          Int term = binomial(d - a1, i - s) * t.elementary(a1) * t.tau(a2) * alpha[i - s];
          if ((i - s) % 2) rhs += term;
          else rhs -= term;
        }
      Int lhs = binomial(d, i);
      if (i % 2) lhs = -lhs;
      if (rhs % lhs != 0)
        throw AlphaRecursionError("alpha recursion: " + rhs.str() + " not divisible by " + lhs.str() +
                                  " at i=" + std::to_string(i));
      value = rhs / lhs;
    } else {
      for (int s = 1; s <= d; ++s) {
        Int b = 0;
        for (int j = 0; j <= s - 1; ++j) {
          Int term = t.elementary(j) * t.wronski(i - d + s - j);
          if (j % 2) b -= term;
          else b += term;
        }
        value += b * alpha[d - s];
      }
    }
    alpha.push_back(value);
  }
  return alpha;
}

/// Class of V_E on E: prod_i (d_i h - zeta), in normal form.
inline ExceptionalClass strict_transform_class(const SubvarietyPair& pair, const BlowupContext& ctx) {
  ExceptionalClass cls(1);
  for (int v : pair.variety.degrees()) {
    ExceptionalClass f = ExceptionalClass::monomial(1, 0, v);
    f.add(0, 1, -1);
    cls = normal_form(cls * f, ctx);
  }
  return cls;
}

/// alpha^{(0..max_index)} as integrals over E of [V_E] h^{n-m-1-i} zeta^i.
/// Indices past n-m-1 are 0 (wrong dimension).
inline std::vector<Int> alpha_table(const SubvarietyPair& pair, int max_index) {
  validate(pair);
  const int top = pair.n - pair.m() - 1;
  const BlowupContext ctx(pair.n, pair.center);
  const ExceptionalClass cls = strict_transform_class(pair, ctx);
  std::vector<Int> alpha;
  for (int i = 0; i <= max_index; ++i)
    alpha.push_back(i > top ? Int(0) : integrate_E(cls * ExceptionalClass::monomial(top - i, i), ctx));
  return alpha;
}

enum class AlphaMethod { Intersection, Recursion };

inline Int alpha_VE(int i, const SubvarietyPair& pair, AlphaMethod method = AlphaMethod::Intersection) {
  if (i < 0) throw std::invalid_argument("alpha_VE: index must be >= 0");
  const auto t = method == AlphaMethod::Intersection ? alpha_table(pair, i) : alpha_recursion_table(pair, i);
  return t[static_cast<std::size_t>(i)];
}

/// Agreement of the closed recursion with the intersection numbers.
struct AlphaCheck {
  enum class Status { Agrees, Differs, NonIntegral };
  Status status = Status::Agrees;
  int first_index = -1;  // first disagreeing index
  std::string detail;
};

inline AlphaCheck check_alpha_recursion(const SubvarietyPair& pair, const std::vector<Int>& exact) {
  const int top = pair.n - pair.m() - 1;
  AlphaCheck r;
  std::vector<Int> rec;
  try {
    rec = alpha_recursion_table(pair, top);
  } catch (const AlphaRecursionError& e) {
    r.status = AlphaCheck::Status::NonIntegral;
    r.detail = e.what();
    return r;
  }
  for (int i = 0; i <= top; ++i)
    if (rec[i] != exact[i]) {
      r.status = AlphaCheck::Status::Differs;
      r.first_index = i;
      r.detail = "alpha(" + std::to_string(i) + "): recursion " + rec[i].str() + ", intersection " + exact[i].str();
      break;
    }
  return r;
}

inline AlphaCheck check_alpha_recursion(const SubvarietyPair& pair) {
  return check_alpha_recursion(pair, alpha_table(pair, pair.n - pair.m() - 1));
}

namespace detail {

inline std::vector<Int> variety_tau(const SubvarietyPair& pair) {
  const SymmetricTables t(pair.n, pair.variety, pair.n);
  std::vector<Int> out;
  for (int i = 0; i <= pair.n; ++i) out.push_back(t.tau(i));
  return out;
}

}  // namespace detail

namespace detail {

/// Sums of the three formulas for a precomputed alpha table (indices 0..n-m-1).
struct SubvarietySums {
  Int strict_v;
  Int v_e;
  Int closed_form;
};

inline SubvarietySums subvariety_sums(const SubvarietyPair& pair, const std::vector<Int>& alpha) {
  const int n = pair.n, d = pair.d(), m = pair.m();
  const auto tv = variety_tau(pair);
  const Int km1 = pair.k - 1;
  const Int x = pair.ell;
  const Int soares = soares_count(n, pair.k, pair.variety);
  SubvarietySums r{soares, 0, soares};
  for (int i = 0; i <= n - d; ++i)
    for (int j = 0; j <= n - d - i; ++j) {
      const int g = n - m - i - j;
      const Int base = tv[i] * ipow(km1, j) * alpha[g - 1];
      if (base == 0) continue;
      // (i): p = i only, with (-ell)^g
      Int strict = binomial(n - m - i, j) * ipow(-x, g) * base;
      r.strict_v += strict;
      // (ii): p from i+1, sign (-1)^{g-1}
      Int inner = 0;
      for (int p = i + 1; p <= n - m - j; ++p) inner += binomial(n - m - p, j) * ipow(x, n - m - p - j);
      if ((g - 1) % 2) r.v_e -= inner * base;
      else r.v_e += inner * base;
      // Omega^{(j)}(ell)/j! = sum_{p=i}^{n-m-j} binomial(n-m-p, j) ell^{n-m-p-j}, sign (-1)^g
      Int omega = inner + binomial(n - m - i, j) * ipow(x, g);
      if (g % 2) r.closed_form -= omega * base;
      else r.closed_form += omega * base;
    }
  return r;
}

}  // namespace detail

/// N(F~, V~) = N(F, V) + sum_{i+j<=n-d} binomial(n-m-i, j) tau^V_i (k-1)^j (-ell)^g alpha^{(g-1)},
/// g = n - m - i - j.
inline Int count_strict_V(const SubvarietyPair& pair) {
  return detail::subvariety_sums(pair, alpha_table(pair, pair.n - pair.m() - 1)).strict_v;
}

/// N(F~, V_E) = sum_{i+j<=n-d} sum_{p=i+1}^{n-m-j} binomial(n-m-p, j) (-1)^{g-1}
/// ell^{n-m-p-j} tau^V_i (k-1)^j alpha^{(g-1)}.
inline Int count_VE(const SubvarietyPair& pair) {
  return detail::subvariety_sums(pair, alpha_table(pair, pair.n - pair.m() - 1)).v_e;
}

/// nu(F, V, W) = N(F~, V~) - N(F~, V_E).
inline Int nu_V_W(const SubvarietyPair& pair) {
  const auto s = detail::subvariety_sums(pair, alpha_table(pair, pair.n - pair.m() - 1));
  return s.strict_v - s.v_e;
}

/// Closed form of nu(F, V, W) through Omega(x) = sum_{p=i}^{n-m-j} x^{n-m-p}:
/// N(F, V) + sum (Omega^{(j)}(ell)/j!) (-1)^g tau^V_i (k-1)^j alpha^{(g-1)}. The
/// printed display also carries a factor ell^{gamma_p^j} with p unbound; it is
/// read as already contained in the Omega-derivative.
struct NuClosedFormDiagnostic {
  Int difference;   // count_strict_V - count_VE
  Int closed_form;  // Omega form
  bool agrees() const { return difference == closed_form; }
};

inline NuClosedFormDiagnostic nu_V_W_diagnostic(const SubvarietyPair& pair, const std::vector<Int>& alpha) {
  const auto s = detail::subvariety_sums(pair, alpha);
  return {s.strict_v - s.v_e, s.closed_form};
}

inline NuClosedFormDiagnostic nu_V_W_diagnostic(const SubvarietyPair& pair) {
  return nu_V_W_diagnostic(pair, alpha_table(pair, pair.n - pair.m() - 1));
}

/// Upper bound N(F, V) + nu(F, V, W) + N(F, A_{V\W}) on the Milnor numbers of
/// isolated singularities in V \ W. A missing embedded count is taken as 0, in
/// which case the value is only the embedded-free part of the bound.
struct PrincipalBound {
  Int value;
  bool embedded_supplied = false;
};

inline PrincipalBound principal_bound(const SubvarietyPair& pair) {
  validate(pair);
  const Int embedded = pair.embedded_off_w.value_or(0);
  return {soares_count(pair.n, pair.k, pair.variety) + nu_V_W(pair) + embedded,
          pair.embedded_off_w.has_value()};
}

/// All subvariety counts for one pair.
struct SubvarietyReport {
  Int soares;
  Int strict_v;
  Int v_e;
  Int nu_v_w;
  PrincipalBound bound;
  NuClosedFormDiagnostic diagnostic;
  std::vector<Int> alpha;
  AlphaCheck alpha_check;
  std::vector<std::string> assumptions;
};

inline SubvarietyReport evaluate(const SubvarietyPair& pair) {
  validate(pair);
  SubvarietyReport r;
  r.alpha = alpha_table(pair, pair.n - pair.m() - 1);
  const auto sums = detail::subvariety_sums(pair, r.alpha);
  r.soares = soares_count(pair.n, pair.k, pair.variety);
  r.strict_v = sums.strict_v;
  r.v_e = sums.v_e;
  r.nu_v_w = r.strict_v - r.v_e;
  r.bound = principal_bound(pair);
  r.diagnostic = {r.nu_v_w, sums.closed_form};
  r.alpha_check = check_alpha_recursion(pair, r.alpha);
  r.assumptions = {
      "each equation of V lies in the ideal of W and V is smooth along W",
      "V is a smooth irreducible complete intersection invariant by the foliation",
  };
  if (!pair.embedded_off_w) r.assumptions.push_back("embedded_off_w not supplied: bound excludes it");
  return r;
}

}  // namespace foliation
