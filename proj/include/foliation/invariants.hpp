/**
 * @file invariants.hpp
 * @brief Closed-form counts for a foliation by curves on P^n whose singular
 *        set contains smooth complete-intersection components.
 *
 * For a component W of multidegree (k_1..k_d) with order of vanishing ell:
 *  - nu(F, W), the intersection-theoretic contribution of W;
 *  - N(F~, P~^n) and N(F~, E), the Baum-Bott counts on the blowup along W and
 *    on its exceptional divisor;
 *  - N(F, W) for an invariant (ell = 0) center.
 *
 * None of these routines touch the Chow-ring engine; chowring.hpp is the
 * independent route used to cross-check them.
 */
#pragma once

#include "foliation/integer.hpp"
#include "foliation/symfun.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace foliation {

/// One positive-dimensional singular component.
struct SingularComponent {
  MultiDegree center;
  int ell = 0;
  /// N(F, A_W): multiplicity-weighted count of embedded closed points. Supplied
  /// by the caller; never computed here.
  std::optional<Int> embedded_points;
};

struct FoliationSpec {
  int n = 3;
  int k = 1;
  std::vector<SingularComponent> components;
};

namespace detail {

inline void require_component(int n, int k, const MultiDegree& center, int ell) {
  if (n < 3) throw std::invalid_argument("n: ambient dimension must be >= 3, got " + std::to_string(n));
  if (k < 1) throw std::invalid_argument("k: foliation degree must be >= 1, got " + std::to_string(k));
  const int d = center.length();
  if (d < 2 || d > n - 1)
    throw std::invalid_argument("w: codimension " + std::to_string(d) + " outside [2, n-1] for n=" +
                                std::to_string(n));
  if (ell < 0) throw std::invalid_argument("ell: order of vanishing must be >= 0");
}

/// Degree-m Taylor coefficient at x of x^e (1+x)^f, i.e. g^{(m)}(x)/m!.
/// Monomials with negative exponent (possible when e = -1) are dropped.
inline Int taylor_coefficient(int e, int f, int m, const Int& x) {
  Int s = 0;
  for (int i = 0; i <= f; ++i) {
    const int power = e + i;
    if (power < m || power < 0) continue;
    s += binomial(f, i) * binomial(power, m) * ipow(x, power - m);
  }
  return s;
}

enum class Profile { Phi, Psi };

/// Shared triple sum of nu and N(F~,E):
/// sum_{|a|<=n-d} sum_m (-1)^delta T_a^{(m)}(ell)/m! (k-1)^m sigma_{a1} tau_{a2} W_delta.
inline Int profile_sum(int n, int k, const MultiDegree& center, int ell, Profile profile) {
  const int d = center.length();
  const SymmetricTables t(n, center, n);
  const Int km1 = k - 1;
  const Int x = ell;
  Int s = 0;
  for (int a1 = 0; a1 <= d; ++a1)
    for (int a2 = 0; a2 <= n - d; ++a2) {
      const int size = a1 + a2;
      if (size > n - d) continue;
      const Int weight = t.elementary(a1) * t.tau(a2);
      if (weight == 0) continue;
      const int e = profile == Profile::Phi ? n - d - a2 : n - d - a2 - 1;
      for (int m = 0; m <= n - d - size; ++m) {
        const int delta = n - d - size - m;
        Int term = taylor_coefficient(e, d - a1, m, x) * ipow(km1, m) * weight * t.wronski(delta);
        if (delta % 2) s -= term;
        else s += term;
      }
    }
  return s;
}

}  // namespace detail

/// Order of vanishing of the strict transform along E from the multiplicities
/// m1 (normal directions) and mn (tangent directions).
inline int vanishing_order(int m1, int mn, bool dicritical) {
  if (m1 < 0 || mn < 0) throw std::invalid_argument("vanishing_order: multiplicities must be >= 0");
  if (dicritical) return m1;
  return std::min(m1 - 1, mn);
}

/// 1 + k + ... + k^n.
inline Int baum_bott(int n, int k) {
  if (n < 0) throw std::invalid_argument("baum_bott: n must be >= 0");
  if (k < 1) throw std::invalid_argument("baum_bott: k must be >= 1");
  Int s = 0;
  Int p = 1;
  for (int i = 0; i <= n; ++i) {
    s += p;
    p *= k;
  }
  return s;
}

/// nu(F, W) with phi_a(x) = x^{n-d-a2} (1+x)^{d-a1}.
inline Int nu(int n, int k, const MultiDegree& center, int ell) {
  detail::require_component(n, k, center, ell);
  return -center.degree() * detail::profile_sum(n, k, center, ell, detail::Profile::Phi);
}

/// N(F~, E) with psi_a(x) = (1+x)^{d-a1} x^{n-d-a2-1}, including the deg(W) factor.
inline Int count_exceptional(int n, int k, const MultiDegree& center, int ell) {
  detail::require_component(n, k, center, ell);
  return center.degree() * detail::profile_sum(n, k, center, ell, detail::Profile::Psi);
}

/// N(F~, P~^n): Baum-Bott term plus the Gamma-weighted correction.
inline Int count_blowup_total(int n, int k, const MultiDegree& center, int ell) {
  detail::require_component(n, k, center, ell);
  const int d = center.length();
  const SymmetricTables t(n, center, n);
  const Int km1 = k - 1;
  const Int x = ell;
  Int s = 0;
  for (int a1 = 0; a1 <= d; ++a1)
    for (int a2 = 0; a2 <= n - d; ++a2) {
      const int size = a1 + a2;
      if (size > n - d) continue;
      const Int weight = t.elementary(a1) * t.tau(a2);
      if (weight == 0) continue;
      for (int j = size; j <= n; ++j) {
        const Int g = binomial(d - a1, j - size - 1) - binomial(d - a1, j - size);
        if (g == 0) continue;
        for (int m = 0; m <= n - d - size && m <= n - j; ++m) {
          const int delta = n - d - size - m;
          Int term = binomial(n - j, m) * g * ipow(x, n - j - m) * ipow(km1, m) * weight *
                     t.wronski(delta);
          if (delta % 2) s -= term;
          else s += term;
        }
      }
    }
  return baum_bott(n, k) + center.degree() * s;
}

/// N(F, W) for an invariant center: deg(W) sum_i tau_i (k-1)^{n-d-i}.
inline Int count_on_invariant_center(int n, int k, const MultiDegree& center) {
  detail::require_component(n, k, center, 0);
  const int d = center.length();
  const SymmetricTables t(n, center, n);
  Int s = 0;
  for (int i = 0; i <= n - d; ++i) s += t.tau(i) * ipow(Int(k - 1), n - d - i);
  return center.degree() * s;
}

/// mu(F, W) = N(F, A_W) - nu(F, W).
inline Int milnor_contribution(const Int& nu_value, const Int& embedded) {
  if (embedded < 0) throw std::invalid_argument("milnor_contribution: embedded count must be >= 0");
  return embedded - nu_value;
}

inline void validate(const FoliationSpec& spec) {
  if (spec.n < 3) throw std::invalid_argument("n: ambient dimension must be >= 3, got " + std::to_string(spec.n));
  if (spec.k < 1) throw std::invalid_argument("k: foliation degree must be >= 1, got " + std::to_string(spec.k));
  for (std::size_t i = 0; i < spec.components.size(); ++i) {
    const auto& c = spec.components[i];
    const std::string where = "components[" + std::to_string(i) + "]";
    const int d = c.center.length();
    if (d < 2 || d > spec.n - 1)
      throw std::invalid_argument(where + ".w: codimension " + std::to_string(d) + " outside [2, n-1]");
    if (c.ell < 0) throw std::invalid_argument(where + ".ell: must be >= 0");
    if (c.embedded_points && *c.embedded_points < 0)
      throw std::invalid_argument(where + ".embedded_points: must be >= 0");
  }
}

/// Isolated-singularity total: sum_{i=0}^n k^i + sum_W nu(F, W).
inline Int isolated_sum(const FoliationSpec& spec) {
  validate(spec);
  Int s = baum_bott(spec.n, spec.k);
  for (const auto& c : spec.components) s += nu(spec.n, spec.k, c.center, c.ell);
  return s;
}

/// Per-component results inside an InvariantReport.
struct ComponentReport {
  MultiDegree center;
  int ell = 0;
  Int nu;
  Int blowup_total;
  Int exceptional;
  std::optional<Int> invariant_center_count;  // N(F, W), ell = 0 only
  std::optional<Int> embedded_points;
  Int milnor;                                  // mu(F, W) = N(F, A_W) - nu
  bool milnor_lower_bound_only = true;         // embedded_points absent
};

struct InvariantReport {
  int n = 0;
  int k = 0;
  Int baum_bott;
  std::vector<ComponentReport> components;
  Int isolated_sum;                    // special/invariant case
  std::optional<Int> isolated_sum_embedded;  // minus sum N(F, A_W), all counts supplied
  std::map<std::string, std::string> provenance;
  std::vector<std::string> assumptions;
};

/// Evaluates every count for a specification. Every integer in the report is
/// reproducible from the stored inputs through the named routine.
inline InvariantReport evaluate(const FoliationSpec& spec) {
  validate(spec);
  InvariantReport r;
  r.n = spec.n;
  r.k = spec.k;
  r.baum_bott = baum_bott(spec.n, spec.k);
  bool all_embedded = true;
  Int embedded_total = 0;
  for (const auto& c : spec.components) {
    ComponentReport cr{c.center, c.ell, 0, 0, 0, std::nullopt, c.embedded_points, 0, true};
    cr.nu = nu(spec.n, spec.k, c.center, c.ell);
    cr.blowup_total = count_blowup_total(spec.n, spec.k, c.center, c.ell);
    cr.exceptional = count_exceptional(spec.n, spec.k, c.center, c.ell);
    if (c.ell == 0) cr.invariant_center_count = count_on_invariant_center(spec.n, spec.k, c.center);
    if (c.embedded_points) {
      cr.milnor = milnor_contribution(cr.nu, *c.embedded_points);
      cr.milnor_lower_bound_only = false;
      embedded_total += *c.embedded_points;
    } else {
      cr.milnor = milnor_contribution(cr.nu, 0);
      all_embedded = false;
    }
    r.components.push_back(std::move(cr));
  }
  r.isolated_sum = isolated_sum(spec);
  if (all_embedded && !spec.components.empty()) r.isolated_sum_embedded = r.isolated_sum - embedded_total;

  r.provenance = {
      {"baum_bott", "sum_{i=0}^n k^i"},
      {"nu", "nu(F,W): phi_a Taylor-coefficient triple sum"},
      {"blowup_total", "N(F~,P~^n): Baum-Bott plus Gamma-weighted correction"},
      {"exceptional", "N(F~,E): psi_a Taylor-coefficient triple sum with deg(W)"},
      {"invariant_center_count", "N(F,W) = deg(W) sum_i tau_i (k-1)^{n-d-i}"},
      {"milnor", "mu(F,W) = N(F,A_W) - nu(F,W)"},
      {"isolated_sum", "sum_{i=0}^n k^i + sum_W nu(F,W)"},
      {"isolated_sum_embedded", "isolated_sum - sum_W N(F,A_W)"},
  };
  r.assumptions = {
      "singular components are pairwise disjoint smooth scheme-theoretic complete intersections",
  };
  if (!all_embedded)
    r.assumptions.push_back("embedded point counts not supplied: milnor values are lower bounds");
  return r;
}

}  // namespace foliation
