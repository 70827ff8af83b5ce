/**
 * @file acceptance.cpp
 * @brief Acceptance run: one PASS/FAIL line per criterion with its runtime
 *        against the limit. Exit status 0 only when every line passes.
 */
#include "foliation/chowring.hpp"
#include "foliation/consistency.hpp"
#include "foliation/invariants.hpp"
#include "foliation/subvariety.hpp"
#include "foliation/symfun.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace foliation;

namespace {

struct Outcome {
  long instances = 0;
  long failures = 0;
  std::string first;

  void expect(bool ok, const std::function<std::string()>& what) {
    ++instances;
    if (!ok && failures++ == 0) first = what();
  }
};

int failed_lines = 0;

void criterion(const std::string& id, const std::string& name, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.failures = 1;
    o.first = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool ok = o.failures == 0 && o.instances > 0 && secs < limit_s;
  if (!ok) ++failed_lines;
  std::printf("%s  %-4s %-52s instances=%-7ld time=%.3fs limit=%.0fs\n", ok ? "PASS" : "FAIL", id.c_str(),
              name.c_str(), o.instances, secs, limit_s);
  if (o.failures) std::printf("      %ld failures; first: %s\n", o.failures, o.first.c_str());
  if (secs >= limit_s) std::printf("      over time limit\n");
}

Int geometric(int k, int lo, int hi) {
  Int s = 0;
  for (int i = lo; i <= hi; ++i) s += ipow(Int(k), i);
  return s;
}

std::string tag(int n, const MultiDegree& w, int k, int ell) {
  std::ostringstream os;
  os << "n=" << n << " w=" << w << " k=" << k << " ell=" << ell;
  return os.str();
}

template <class F>
void linear_sweep(F&& f) {
  for (int n = 3; n <= 8; ++n)
    for (int d = 2; d <= n - 1; ++d)
      for (int k = 1; k <= 6; ++k) f(n, d, k);
}

// Full grid: n <= 7, d <= n-1, entries <= 3, k <= 5, ell in [0, k].
template <class F>
void grid(int n_max, F&& f) {
  SweepRange r = default_range();
  r.n_max = n_max;
  detail::for_each_center(r, n_max, [&](int n, const MultiDegree& w) { f(n, w); });
}

Outcome report_outcome(const CheckReport& rep) {
  Outcome o;
  o.instances = rep.instances;
  o.failures = static_cast<long>(rep.failures.size());
  if (!rep.failures.empty())
    o.first = rep.failures.front().input + ": " + rep.failures.front().lhs + " != " + rep.failures.front().rhs;
  return o;
}

}  // namespace

int main() {
  criterion("1", "all-ones nu = -(k^d+...+k^n)", 1, [] {
    Outcome o;
    linear_sweep([&](int n, int d, int k) {
      const Int v = nu(n, k, MultiDegree::linear(d), k - 1);
      o.expect(v == -geometric(k, d, n), [&] { return tag(n, MultiDegree::linear(d), k, k - 1) + " nu=" + v.str(); });
    });
    return o;
  });

  criterion("2", "all-ones N(F~,E) = (n+1-d)(1+...+k^{d-1})", 1, [] {
    Outcome o;
    linear_sweep([&](int n, int d, int k) {
      const Int v = count_exceptional(n, k, MultiDegree::linear(d), k - 1);
      o.expect(v == (n + 1 - d) * geometric(k, 0, d - 1), [&] { return tag(n, MultiDegree::linear(d), k, k - 1); });
    });
    return o;
  });

  criterion("3", "linear census N(F~,P~) and isolated sum", 1, [] {
    Outcome o;
    linear_sweep([&](int n, int d, int k) {
      const MultiDegree w = MultiDegree::linear(d);
      const Int g = geometric(k, 0, d - 1);
      o.expect(count_blowup_total(n, k, w, k - 1) == (n + 2 - d) * g, [&] { return tag(n, w, k, k - 1) + " total"; });
      FoliationSpec spec{n, k, {{w, k - 1, std::nullopt}}};
      o.expect(isolated_sum(spec) == g, [&] { return tag(n, w, k, k - 1) + " isolated"; });
    });
    const MultiDegree w{1, 1};
    o.expect(count_blowup_total(3, 2, w, 1) == 9, [] { return std::string("spot total (3,2,2,1)"); });
    o.expect(isolated_sum(FoliationSpec{3, 2, {{w, 1, std::nullopt}}}) == 3, [] { return std::string("spot isolated"); });
    return o;
  });

  criterion("4", "census N(F~,P~) - N(F~,E) = sum k^i + nu", 30, [] {
    Outcome o;
    grid(7, [&](int n, const MultiDegree& w) {
      for (int k = 1; k <= 5; ++k)
        for (int ell = 0; ell <= k; ++ell) {
          const Int lhs = count_blowup_total(n, k, w, ell) - count_exceptional(n, k, w, ell);
          const Int rhs = baum_bott(n, k) + nu(n, k, w, ell);
          o.expect(lhs == rhs, [&] { return tag(n, w, k, ell) + " " + lhs.str() + " != " + rhs.str(); });
        }
    });
    return o;
  });

  criterion("5", "ell=0: nu = -deg(W) sum tau_i (k-1)^{n-d-i}", 5, [] {
    Outcome o;
    grid(7, [&](int n, const MultiDegree& w) {
      const int d = w.length();
      for (int k = 1; k <= 5; ++k) {
        Int s = 0;
        for (int i = 0; i <= n - d; ++i) s += tau(i, n, w) * ipow(Int(k - 1), n - d - i);
        const Int v = nu(n, k, w, 0);
        o.expect(v == -w.degree() * s, [&] { return tag(n, w, k, 0); });
        if (w.is_linear()) o.expect(v == -baum_bott(n - d, k), [&] { return tag(n, w, k, 0) + " linear"; });
      }
    });
    return o;
  });

  criterion("6", "Chow-ring assembly of nu equals closed form (n<=6)", 60, [] {
    Outcome o;
    grid(6, [&](int n, const MultiDegree& w) {
      const BlowupContext ctx(n, w);
      const BlowupChernData chern(ctx);
      for (int k = 1; k <= 5; ++k)
        for (int ell = 0; ell <= k; ++ell) {
          const Int a = chern.nu(k, ell);
          const Int b = nu(n, k, w, ell);
          o.expect(a == b, [&] { return tag(n, w, k, ell) + " chow " + a.str() + " closed " + b.str(); });
        }
    });
    return o;
  });

  criterion("7", "symmetric identity, Whitney, tau power series", 5, [] {
    Outcome o;
    const auto range = default_range();
    for (const auto& rep : {check_symmetric_identity(range), check_whitney(range)}) {
      const auto r = report_outcome(rep);
      o.instances += r.instances;
      o.failures += r.failures;
      if (o.first.empty()) o.first = r.first;
    }
    grid(7, [&](int n, const MultiDegree& w) {
      // (1+h)^{n+1} / prod (1 + k_j h), coefficient by coefficient
      std::vector<Int> series(static_cast<std::size_t>(n + 2));
      for (int i = 0; i <= n + 1; ++i) series[i] = binomial(n + 1, i);
      for (int kj : w.degrees())
        for (int i = 1; i <= n + 1; ++i) series[i] -= kj * series[i - 1];
      for (int i = 0; i <= n + 1; ++i)
        o.expect(tau(i, n, w) == series[i], [&] { return tag(n, w, 0, 0) + " tau_" + std::to_string(i); });
    });
    return o;
  });

  criterion("8", "Soares: hyperplane and quadric surface", 1, [] {
    Outcome o;
    for (int k = 1; k <= 6; ++k) {
      for (int n = 3; n <= 8; ++n)
        o.expect(soares_count(n, k, 1, {1}) == geometric(k, 0, n - 1),
                 [&] { return "hyperplane n=" + std::to_string(n) + " k=" + std::to_string(k); });
      o.expect(soares_count(3, k, 1, {2}) == 2 * (k * k + 1), [&] { return "quadric k=" + std::to_string(k); });
    }
    return o;
  });

  criterion("9", "subvariety: linear pairs and ell=0 identity", 10, [] {
    Outcome o;
    for (int n = 3; n <= 8; ++n)
      for (int d = 2; d <= n - 1; ++d)
        for (int k = 2; k <= 6; ++k) {
          const SubvarietyPair p{n, MultiDegree::linear(d), MultiDegree::linear(d - 1), k, k - 1, std::nullopt};
          const auto sums = detail::subvariety_sums(p, alpha_table(p, n - d));
          o.expect(sums.strict_v == n + 2 - d, [&] { return tag(n, p.center, k, k - 1) + " strict V"; });
          o.expect(sums.v_e == n + 1 - d, [&] { return tag(n, p.center, k, k - 1) + " V_E"; });
        }
    SweepRange r = default_range();
    const auto rep = check_subvariety(r);
    const auto sub = report_outcome(rep);
    o.instances += sub.instances;
    o.failures += sub.failures;
    if (o.first.empty()) o.first = sub.first;
    return o;
  });

  criterion("10", "mutation guard: sign-flipped beta is caught", 5, [] {
    Outcome o;
    SweepRange r = quick_range();
    r.chow.negate_beta = true;
    const auto reports = run_suite(r);
    o.expect(suite_exit_code(reports) == 1, [] { return std::string("mutant passed the suite"); });
    long caught = 0;
    for (const auto& rep : reports) caught += rep.passed() ? 0 : 1;
    o.expect(caught >= 1, [] { return std::string("no check failed"); });
    r.chow.negate_beta = false;
    o.expect(suite_exit_code(run_suite(r)) == 0, [] { return std::string("unmutated suite failed"); });
    return o;
  });

  criterion("P1", "milnor contribution additive in embedded count", 1, [] {
    Outcome o;
    for (int q = 0; q <= 50; ++q)
      for (const Int& nu_v : {Int(-28), Int(0), Int(17)}) {
        o.expect(milnor_contribution(nu_v, q + 1) == milnor_contribution(nu_v, q) + 1, [&] { return "q=" + std::to_string(q); });
        o.expect(milnor_contribution(nu_v, q) + milnor_contribution(nu_v, 3) == milnor_contribution(2 * nu_v, q + 3),
                 [&] { return "sum q=" + std::to_string(q); });
      }
    // totals: sum_W mu(F,W) = sum N(F,A_W) - (isolated_sum - sum k^i)
    FoliationSpec spec{6, 3, {{MultiDegree{1, 1}, 2, Int(4)}, {MultiDegree{1, 2, 2}, 1, Int(9)}}};
    const auto rep = evaluate(spec);
    Int mu_total = 0;
    for (const auto& c : rep.components) mu_total += c.milnor;
    o.expect(mu_total == 13 - (rep.isolated_sum - rep.baum_bott), [] { return std::string("component total"); });
    o.expect(rep.isolated_sum_embedded && *rep.isolated_sum_embedded == rep.isolated_sum - 13,
             [] { return std::string("isolated_sum_embedded"); });
    return o;
  });

  criterion("P2", "principal bound monotone in embedded count", 5, [] {
    Outcome o;
    for (int n = 3; n <= 6; ++n)
      for (int d = 2; d <= n - 1; ++d)
        for (int k = 1; k <= 4; ++k) {
          SubvarietyPair p{n, MultiDegree(std::vector<int>(d, 2)), MultiDegree{2}, k, k - 1, Int(0)};
          const Int base = principal_bound(p).value;
          for (int q = 1; q <= 5; ++q) {
            p.embedded_off_w = Int(q);
            o.expect(principal_bound(p).value == base + q, [&] { return tag(n, p.center, k, k - 1); });
          }
        }
    return o;
  });

  criterion("P3", "linear family: sum_{i>=d} k^i <= mu <= sum_{i>=1} k^i", 1, [] {
    Outcome o;
    linear_sweep([&](int n, int d, int k) {
      const Int nu_v = nu(n, k, MultiDegree::linear(d), k - 1);
      const Int q_max = geometric(k, 1, d - 1);
      const Int lo = geometric(k, d, n), hi = geometric(k, 1, n);
      for (Int q = 0; q <= q_max; ++q) {
        const Int mu = milnor_contribution(nu_v, q);
        o.expect(lo <= mu && mu <= hi, [&] { return tag(n, MultiDegree::linear(d), k, k - 1) + " q=" + q.str(); });
      }
      o.expect(milnor_contribution(nu_v, 0) == lo, [&] { return tag(n, MultiDegree::linear(d), k, k - 1) + " low end"; });
      o.expect(milnor_contribution(nu_v, q_max) == hi, [&] { return tag(n, MultiDegree::linear(d), k, k - 1) + " high end"; });
    });
    return o;
  });

  std::printf("%s: %d failing line(s)\n", failed_lines ? "FAIL" : "PASS", failed_lines);
  return failed_lines ? 1 : 0;
}
