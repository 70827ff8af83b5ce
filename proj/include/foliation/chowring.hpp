/**
 * @file chowring.hpp
 * @brief Intersection theory on the blowup of P^n along a smooth complete
 *        intersection W of codimension d.
 *
 * Classes on the exceptional divisor E = P(N_W) are integer polynomials in the
 * pulled-back hyperplane class h and the tautological class
 * zeta = c_1(O_N(-1)), reduced modulo the single relation
 *
 *     zeta^d - c_1(N) zeta^{d-1} + ... + (-1)^d c_d(N) = 0,   c_i(N) = sigma_i h^i
 *
 * and modulo h^p = 0 for p > dim W. Classes on the blowup itself are a pullback
 * polynomial in h plus the pushforward of a class on E; E restricted to E is
 * zeta, so E^{b} = i_*(zeta^{b-1}).
 */
#pragma once

#include "foliation/integer.hpp"
#include "foliation/symfun.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace foliation {

/// Knobs that perturb the engine on purpose. Only the mutation smoke test
/// sets these.
struct ChowOptions {
  bool negate_beta = false;
};

/// Blowup of P^n along a complete intersection of the given multidegree.
/// Immutable after construction; safe to share between threads.
class BlowupContext {
 public:
  BlowupContext(int n, MultiDegree center, ChowOptions options = {})
      : n_(n), center_(std::move(center)), options_(options),
        tables_(n_, center_, 2 * n_ + center_.length() + 2) {
    const int d = center_.length();
    if (n_ < 3) throw std::invalid_argument("BlowupContext: n must be >= 3");
    if (d < 2 || d > n_ - 1)
      throw std::invalid_argument("BlowupContext: codimension d=" + std::to_string(d) +
                                  " outside [2, n-1] for n=" + std::to_string(n_));
  }

  int n() const { return n_; }
  int d() const { return center_.length(); }
  int dim_center() const { return n_ - d(); }
  int dim_exceptional() const { return n_ - 1; }
  const MultiDegree& center() const { return center_; }
  const Int& degree() const { return center_.degree(); }
  const ChowOptions& options() const { return options_; }

  Int sigma(int i) const { return tables_.elementary(i); }
  Int wronski(int delta) const { return tables_.wronski(delta); }
  Int tau(int i) const { return tables_.tau(i); }

 private:
  int n_;
  MultiDegree center_;
  ChowOptions options_;
  SymmetricTables tables_;
};

/// Sum of c_{p,q} h^p zeta^q on E. Zero coefficients are never stored.
class ExceptionalClass {
 public:
  using Exponent = std::pair<int, int>;  // (power of h, power of zeta)
  using Terms = std::map<Exponent, Int>;

  ExceptionalClass() = default;
  ExceptionalClass(const Int& constant) { add(0, 0, constant); }

  static ExceptionalClass monomial(int p, int q, const Int& coeff = 1) {
    if (p < 0 || q < 0) throw std::invalid_argument("ExceptionalClass: negative exponent");
    ExceptionalClass c;
    c.add(p, q, coeff);
    return c;
  }
  static ExceptionalClass h(int p = 1) { return monomial(p, 0); }
  static ExceptionalClass zeta(int q = 1) { return monomial(0, q); }

  void add(int p, int q, const Int& coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = terms_.try_emplace({p, q}, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Int coefficient(int p, int q) const {
    auto it = terms_.find({p, q});
    return it == terms_.end() ? Int(0) : it->second;
  }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  ExceptionalClass& operator+=(const ExceptionalClass& o) {
    for (const auto& [e, c] : o.terms_) add(e.first, e.second, c);
    return *this;
  }
  ExceptionalClass& operator-=(const ExceptionalClass& o) {
    for (const auto& [e, c] : o.terms_) add(e.first, e.second, -c);
    return *this;
  }
  ExceptionalClass& operator*=(const Int& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }
  friend ExceptionalClass operator+(ExceptionalClass a, const ExceptionalClass& b) { return a += b; }
  friend ExceptionalClass operator-(ExceptionalClass a, const ExceptionalClass& b) { return a -= b; }
  friend ExceptionalClass operator*(ExceptionalClass a, const Int& s) { return a *= s; }
  friend ExceptionalClass operator*(const Int& s, ExceptionalClass a) { return a *= s; }

  /// Raw polynomial product; callers reduce with normal_form.
  friend ExceptionalClass operator*(const ExceptionalClass& a, const ExceptionalClass& b) {
    ExceptionalClass r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add(ea.first + eb.first, ea.second + eb.second, ca * cb);
    return r;
  }

  friend bool operator==(const ExceptionalClass& a, const ExceptionalClass& b) {
    return a.terms_ == b.terms_;
  }

  friend std::ostream& operator<<(std::ostream& os, const ExceptionalClass& c) {
    if (c.is_zero()) return os << '0';
    bool first = true;
    for (const auto& [e, coeff] : c.terms_) {
      os << (first ? "" : " + ") << coeff;
      if (e.first) os << "*h^" << e.first;
      if (e.second) os << "*z^" << e.second;
      first = false;
    }
    return os;
  }

 private:
  Terms terms_;
};

/// Coefficient of h^{m-d+i} zeta^{d-i} in the reduction of zeta^m, m >= d.
inline Int beta(int m, int i, const BlowupContext& ctx) {
  const int d = ctx.d();
  if (m < d) throw std::invalid_argument("beta: m must be >= d");
  if (i < 1 || i > d) throw std::invalid_argument("beta: i must lie in [1, d]");
  Int s = 0;
  for (int j = 0; j <= i - 1; ++j) {
    Int term = ctx.sigma(j) * ctx.wronski(m - d + i - j);
    if (j % 2) s -= term;
    else s += term;
  }
  return ctx.options().negate_beta ? Int(-s) : s;
}

/// Canonical representative: zeta-powers >= d rewritten through beta in one
/// step, and h-powers beyond dim W dropped.
inline ExceptionalClass normal_form(const ExceptionalClass& c, const BlowupContext& ctx) {
  const int d = ctx.d();
  const int top_h = ctx.dim_center();
  ExceptionalClass out;
  // Highest zeta-power first; the map is ordered by (p, q) so walk in reverse
  // order of q explicitly.
  std::vector<std::pair<ExceptionalClass::Exponent, Int>> pending(c.terms().begin(), c.terms().end());
  std::stable_sort(pending.begin(), pending.end(),
                   [](const auto& a, const auto& b) { return a.first.second > b.first.second; });
  for (const auto& [e, coeff] : pending) {
    const auto [p, q] = e;
    if (q < d) {
      if (p <= top_h) out.add(p, q, coeff);
      continue;
    }
    for (int i = 1; i <= d; ++i) {
      const int pp = p + q - d + i;
      if (pp > top_h) continue;
      out.add(pp, d - i, coeff * beta(q, i, ctx));
    }
  }
  return out;
}

/// Order in which reduce_by_relation picks the next reducible monomial.
enum class ReductionOrder { LowestZetaFirst, HighestZetaFirst };

/// Reduction by repeated single applications of the defining relation
/// zeta^d = sum_i (-1)^{i-1} sigma_i h^i zeta^{d-i}. Independent of beta; used
/// to confirm that normal_form does not depend on how the rewriting is ordered.
inline ExceptionalClass reduce_by_relation(const ExceptionalClass& c, const BlowupContext& ctx,
                                           ReductionOrder order) {
  const int d = ctx.d();
  const int top_h = ctx.dim_center();
  ExceptionalClass work = c;
  for (;;) {
    const ExceptionalClass::Exponent* pick = nullptr;
    for (const auto& [e, coeff] : work.terms()) {
      if (e.second < d || e.first > top_h) continue;
      if (!pick || (order == ReductionOrder::LowestZetaFirst ? e.second < pick->second
                                                              : e.second > pick->second))
        pick = &e;
    }
    if (!pick) break;
    const auto [p, q] = *pick;
    const Int coeff = work.coefficient(p, q);
    work.add(p, q, -coeff);
    for (int i = 1; i <= d; ++i) {
      Int s = ctx.sigma(i);
      if (i % 2 == 0) s = -s;
      work.add(p + i, q - i, coeff * s);
    }
  }
  ExceptionalClass out;
  for (const auto& [e, coeff] : work.terms())
    if (e.first <= top_h) out.add(e.first, e.second, coeff);
  return out;
}

/// c_i(N) = sigma_i h^i for i = 0..d.
inline std::vector<ExceptionalClass> chern_normal(const BlowupContext& ctx) {
  std::vector<ExceptionalClass> out;
  for (int i = 0; i <= ctx.d(); ++i)
    out.push_back(normal_form(ExceptionalClass::monomial(i, 0, ctx.sigma(i)), ctx));
  return out;
}

/// c_i(T_W) = tau_i h^i for i = 0..n-d.
inline std::vector<ExceptionalClass> chern_tangent_center(const BlowupContext& ctx) {
  std::vector<ExceptionalClass> out;
  for (int i = 0; i <= ctx.dim_center(); ++i)
    out.push_back(ExceptionalClass::monomial(i, 0, ctx.tau(i)));
  return out;
}

/// Porteous correction coefficient binomial(d-a1, j-|a|-1) - binomial(d-a1, j-|a|).
inline Int gamma(int j, int a1, int a2, int d) {
  const int top = d - a1;
  if (top < 0) return 0;
  const int s = a1 + a2;
  return binomial(top, j - s - 1) - binomial(top, j - s);
}

/// Relation polynomial zeta^d - sum_i (-1)^{i-1} c_i(N) zeta^{d-i}; its normal
/// form is zero.
inline ExceptionalClass relation_polynomial(const BlowupContext& ctx) {
  ExceptionalClass r = ExceptionalClass::zeta(ctx.d());
  for (int i = 1; i <= ctx.d(); ++i) {
    Int s = ctx.sigma(i);
    if (i % 2 == 0) s = -s;
    r.add(i, ctx.d() - i, -s);
  }
  return r;
}

/// c_i(E) = sum_{|a|<=i} (-1)^{i-|a|} binomial(d-a1, i-|a|) c_{a1}(N) c_{a2}(T_W) zeta^{i-|a|}.
inline ExceptionalClass chern_exceptional(int i, const BlowupContext& ctx) {
  if (i < 0 || i > ctx.n() - 1)
    throw std::invalid_argument("chern_exceptional: index outside [0, n-1]");
  const int d = ctx.d();
  ExceptionalClass c;
  for (int a1 = 0; a1 <= d; ++a1)
    for (int a2 = 0; a2 <= ctx.dim_center(); ++a2) {
      const int s = a1 + a2;
      if (s > i) continue;
      Int coeff = binomial(d - a1, i - s) * ctx.sigma(a1) * ctx.tau(a2);
      if ((i - s) % 2) coeff = -coeff;
      c.add(s, i - s, coeff);
    }
  return normal_form(c, ctx);
}

/// int_E h^{n-d} zeta^{d-1} = (-1)^{d-1} deg(W).
inline Int fundamental_pairing(const BlowupContext& ctx) {
  Int v = ctx.degree();
  return (ctx.d() - 1) % 2 ? Int(-v) : v;
}

/// Degree of the (n-1)-dimensional part of c on E. Pieces of other degree
/// integrate to zero.
inline Int integrate_E(const ExceptionalClass& c, const BlowupContext& ctx) {
  return normal_form(c, ctx).coefficient(ctx.dim_center(), ctx.d() - 1) * fundamental_pairing(ctx);
}

/// int over the blowup of (pi^* h)^a E^b with a + b = n.
inline Int integrate_blowup(int a, int b, const BlowupContext& ctx) {
  if (a < 0 || b < 0 || a + b != ctx.n())
    throw std::invalid_argument("integrate_blowup: need a, b >= 0 and a + b = n");
  if (b == 0) return 1;
  return integrate_E(ExceptionalClass::monomial(a, b - 1), ctx);
}

/// A class on the blowup: pi^*(pullback polynomial in h) + i_*(exceptional part).
class BlowupClass {
 public:
  BlowupClass() = default;

  static BlowupClass pullback(int p, const Int& coeff = 1) {
    BlowupClass c;
    c.add_pullback(p, coeff);
    return c;
  }
  static BlowupClass pushforward(ExceptionalClass e) {
    BlowupClass c;
    c.exceptional_ = std::move(e);
    return c;
  }
  /// E^b for b >= 0.
  static BlowupClass exceptional_divisor_power(int b) {
    if (b == 0) return pullback(0);
    return pushforward(ExceptionalClass::zeta(b - 1));
  }

  void add_pullback(int p, const Int& coeff) {
    if (coeff == 0) return;
    auto& slot = pullback_[p];
    slot += coeff;
    if (slot == 0) pullback_.erase(p);
  }

  const std::map<int, Int>& pullback_part() const { return pullback_; }
  const ExceptionalClass& exceptional_part() const { return exceptional_; }

  BlowupClass& operator+=(const BlowupClass& o) {
    for (const auto& [p, c] : o.pullback_) add_pullback(p, c);
    exceptional_ += o.exceptional_;
    return *this;
  }
  BlowupClass& operator*=(const Int& s) {
    std::map<int, Int> scaled;
    if (s != 0)
      for (const auto& [p, c] : pullback_) scaled[p] = c * s;
    pullback_ = std::move(scaled);
    exceptional_ *= s;
    return *this;
  }
  friend BlowupClass operator+(BlowupClass a, const BlowupClass& b) { return a += b; }
  friend BlowupClass operator*(BlowupClass a, const Int& s) { return a *= s; }

  /// (A + i_*B)(C + i_*D) = AC + i_*(A|_E D + B C|_E + zeta B D).
  static BlowupClass multiply(const BlowupClass& x, const BlowupClass& y, const BlowupContext& ctx) {
    BlowupClass r;
    for (const auto& [p1, c1] : x.pullback_)
      for (const auto& [p2, c2] : y.pullback_)
        if (p1 + p2 <= ctx.n()) r.add_pullback(p1 + p2, c1 * c2);
    ExceptionalClass e = x.restrict_pullback() * y.exceptional_;
    e += x.exceptional_ * y.restrict_pullback();
    e += x.exceptional_ * y.exceptional_ * ExceptionalClass::zeta();
    r.exceptional_ = normal_form(e, ctx);
    return r;
  }

  Int integrate(const BlowupContext& ctx) const {
    auto it = pullback_.find(ctx.n());
    Int top = it == pullback_.end() ? Int(0) : it->second;
    return top + integrate_E(exceptional_, ctx);
  }

 private:
  ExceptionalClass restrict_pullback() const {
    ExceptionalClass e;
    for (const auto& [p, c] : pullback_) e.add(p, 0, c);
    return e;
  }

  std::map<int, Int> pullback_;
  ExceptionalClass exceptional_;
};

/// c_j of the blowup: pi^* c_j(P^n) + sum_{|a|<j} (-1)^{j-|a|-1} Gamma^j_a
/// c_{a1}(N) c_{a2}(T_W) E^{j-|a|}.
inline BlowupClass chern_blowup(int j, const BlowupContext& ctx) {
  if (j < 0 || j > ctx.n()) throw std::invalid_argument("chern_blowup: index outside [0, n]");
  BlowupClass c = BlowupClass::pullback(j, binomial(ctx.n() + 1, j));
  ExceptionalClass correction;
  for (int a1 = 0; a1 <= ctx.d(); ++a1)
    for (int a2 = 0; a2 <= ctx.dim_center(); ++a2) {
      const int s = a1 + a2;
      if (s > j - 1) continue;
      Int coeff = gamma(j, a1, a2, ctx.d()) * ctx.sigma(a1) * ctx.tau(a2);
      if ((j - s - 1) % 2) coeff = -coeff;
      correction.add(s, j - s - 1, coeff);
    }
  c += BlowupClass::pushforward(normal_form(correction, ctx));
  return c;
}

}  // namespace foliation
