/**
 * @file symfun.hpp
 * @brief Symmetric-function vocabulary over arbitrary-precision integers:
 *        binomials with the vanishing convention, complete homogeneous
 *        (Wronski) functions, elementary symmetric functions and the
 *        tangent-bundle coefficients of a complete intersection.
 *
 * Every function here is total on out-of-range indices and returns 0 there,
 * so the long alternating sums elsewhere can be written without guards.
 */
#pragma once

#include "foliation/integer.hpp"

#include <algorithm>
#include <initializer_list>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace foliation {

/// Ordered degrees (k_1, ..., k_d) of the hypersurfaces cutting a complete
/// intersection. Immutable; the product of the degrees is cached.
class MultiDegree {
 public:
  MultiDegree(std::vector<int> degrees) : degrees_(std::move(degrees)) {
    if (degrees_.empty())
      throw std::invalid_argument("MultiDegree: at least one degree is required");
    for (int k : degrees_)
      if (k < 1)
        throw std::invalid_argument("MultiDegree: every degree must be >= 1, got " +
                                    std::to_string(k));
    degree_ = 1;
    for (int k : degrees_) degree_ *= k;
  }
  MultiDegree(std::initializer_list<int> degrees)
      : MultiDegree(std::vector<int>(degrees)) {}

  /// All-ones multidegree of length d (a linear subspace of codimension d).
  static MultiDegree linear(int d) {
    if (d < 1) throw std::invalid_argument("MultiDegree::linear: d must be >= 1");
    return MultiDegree(std::vector<int>(static_cast<std::size_t>(d), 1));
  }

  int length() const { return static_cast<int>(degrees_.size()); }
  std::span<const int> degrees() const { return degrees_; }
  int operator[](int j) const { return degrees_[static_cast<std::size_t>(j)]; }
  const Int& degree() const { return degree_; }

  bool is_linear() const {
    return std::all_of(degrees_.begin(), degrees_.end(), [](int k) { return k == 1; });
  }

  std::string str() const {
    std::string s;
    for (std::size_t j = 0; j < degrees_.size(); ++j) {
      if (j) s += ',';
      s += std::to_string(degrees_[j]);
    }
    return s;
  }

  friend bool operator==(const MultiDegree& a, const MultiDegree& b) {
    return a.degrees_ == b.degrees_;
  }
  friend bool operator<(const MultiDegree& a, const MultiDegree& b) {
    return a.degrees_ < b.degrees_;
  }
  friend std::ostream& operator<<(std::ostream& os, const MultiDegree& md) {
    return os << '(' << md.str() << ')';
  }

 private:
  std::vector<int> degrees_;
  Int degree_;
};

/// binomial(p, q), zero when q < 0 or p < q. Negative p is rejected.
inline Int binomial(int p, int q) {
  if (p < 0) throw std::invalid_argument("binomial: negative upper index " + std::to_string(p));
  if (q < 0 || p < q) return 0;
  q = std::min(q, p - q);
  Int r = 1;
  for (int j = 1; j <= q; ++j) {
    r *= p - q + j;
    r /= j;
  }
  return r;
}

namespace detail {

/// W_0..W_max for the given degrees via the one-variable-at-a-time recurrence
/// W_t(k_1..k_j) = sum_s k_j^s W_{t-s}(k_1..k_{j-1}), done as
/// W_t(..k_j) = W_t(..k_{j-1}) + k_j W_{t-1}(..k_j).
inline std::vector<Int> wronski_table(int max_delta, std::span<const int> degrees) {
  std::vector<Int> w(static_cast<std::size_t>(max_delta + 1), Int(0));
  if (max_delta < 0) return w;
  w[0] = 1;
  for (int k : degrees)
    for (int t = 1; t <= max_delta; ++t) w[t] += k * w[t - 1];
  return w;
}

inline std::vector<Int> elementary_table(std::span<const int> degrees) {
  std::vector<Int> e(degrees.size() + 1, Int(0));
  e[0] = 1;
  for (std::size_t j = 0; j < degrees.size(); ++j)
    for (std::size_t i = j + 1; i >= 1; --i) e[i] += degrees[j] * e[i - 1];
  return e;
}

}  // namespace detail

/// Complete homogeneous symmetric function of degree delta in the degrees;
/// 0 for delta < 0.
inline Int wronski(int delta, const MultiDegree& md) {
  if (delta < 0) return 0;
  return detail::wronski_table(delta, md.degrees())[static_cast<std::size_t>(delta)];
}

/// Elementary symmetric function sigma_i; 0 outside [0, d].
inline Int elementary(int i, const MultiDegree& md) {
  if (i < 0 || i > md.length()) return 0;
  return detail::elementary_table(md.degrees())[static_cast<std::size_t>(i)];
}

/// tau_i = sum_{j<=i} (-1)^j binomial(n+1, i-j) W_j: the coefficient of h^i in
/// (1+h)^{n+1} / prod_j (1 + k_j h).
inline Int tau(int i, int n, const MultiDegree& md) {
  if (i < 0) return 0;
  if (n < md.length())
    throw std::invalid_argument("tau: ambient dimension smaller than codimension");
  const auto w = detail::wronski_table(i, md.degrees());
  Int s = 0;
  for (int j = 0; j <= i; ++j) {
    if (i - j > n + 1) continue;
    Int term = binomial(n + 1, i - j) * w[j];
    if (j % 2) s -= term;
    else s += term;
  }
  return s;
}

/// Precomputed sigma / W / tau tables for one (n, multidegree) pair. Out-of-range
/// lookups fall through to the same vanishing convention.
class SymmetricTables {
 public:
  SymmetricTables(int n, const MultiDegree& md, int max_delta)
      : n_(n), md_(md),
        wronski_(detail::wronski_table(max_delta, md.degrees())),
        elementary_(detail::elementary_table(md.degrees())) {
    tau_.reserve(static_cast<std::size_t>(max_delta + 1));
    for (int i = 0; i <= max_delta; ++i) {
      Int s = 0;
      for (int j = 0; j <= i; ++j) {
        if (i - j > n + 1) continue;
        Int term = binomial(n + 1, i - j) * wronski_[j];
        if (j % 2) s -= term;
        else s += term;
      }
      tau_.push_back(s);
    }
  }

  Int wronski(int delta) const {
    if (delta < 0) return 0;
    if (delta < static_cast<int>(wronski_.size())) return wronski_[delta];
    return foliation::wronski(delta, md_);
  }
  Int elementary(int i) const {
    if (i < 0 || i >= static_cast<int>(elementary_.size())) return 0;
    return elementary_[i];
  }
  Int tau(int i) const {
    if (i < 0) return 0;
    if (i < static_cast<int>(tau_.size())) return tau_[i];
    return foliation::tau(i, n_, md_);
  }

 private:
  int n_;
  MultiDegree md_;
  std::vector<Int> wronski_;
  std::vector<Int> elementary_;
  std::vector<Int> tau_;
};

}  // namespace foliation
