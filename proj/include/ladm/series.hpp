#pragma once

// Truncated power series in the time variable.
//
// Coefficients are stored factorial-scaled: a stored pair (k, c) stands for
// the monomial c * t^k / k!. With that convention the inverse of d^2/dt^2
// (integrating twice from 0 with zero constants) is a pure degree shift, and
// differentiation is a shift the other way. Both leave the stored value
// untouched, so long recursions never accumulate factorial growth.

#include <cstddef>
#include <initializer_list>
#include <map>
#include <utility>

namespace ladm {

template <typename Real>
class basic_time_polynomial {
 public:
  using value_type = Real;
  using storage_type = std::map<int, Real>;
  using const_iterator = typename storage_type::const_iterator;

  basic_time_polynomial() = default;

  basic_time_polynomial(std::initializer_list<std::pair<const int, Real>> terms) {
    for (const auto& [k, c] : terms) accumulate(k, c);
  }

  static basic_time_polynomial monomial(int degree, Real scaled_coefficient) {
    basic_time_polynomial p;
    p.accumulate(degree, std::move(scaled_coefficient));
    return p;
  }

  static basic_time_polynomial constant(Real value) { return monomial(0, std::move(value)); }

  [[nodiscard]] bool empty() const noexcept { return terms_.empty(); }
  [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }

  /// Highest stored degree, or -1 for the zero polynomial.
  [[nodiscard]] int max_degree() const noexcept {
    return terms_.empty() ? -1 : terms_.rbegin()->first;
  }

  /// Lowest stored degree, or -1 for the zero polynomial.
  [[nodiscard]] int min_degree() const noexcept {
    return terms_.empty() ? -1 : terms_.begin()->first;
  }

  /// Scaled coefficient at `degree` (zero when absent).
  [[nodiscard]] Real coefficient(int degree) const {
    auto it = terms_.find(degree);
    return it == terms_.end() ? Real(0) : it->second;
  }

  [[nodiscard]] const storage_type& terms() const noexcept { return terms_; }
  [[nodiscard]] const_iterator begin() const noexcept { return terms_.begin(); }
  [[nodiscard]] const_iterator end() const noexcept { return terms_.end(); }

  // Adds c * t^k / k! in place, dropping the entry on exact cancellation.
  void accumulate(int degree, Real c) {
    if (degree < 0 || c == Real(0)) return;
    auto [it, inserted] = terms_.try_emplace(degree, c);
    if (!inserted) {
      it->second += c;
      if (it->second == Real(0)) terms_.erase(it);
    }
  }

  friend bool operator==(const basic_time_polynomial&, const basic_time_polynomial&) = default;

 private:
  storage_type terms_;
};

using time_polynomial = basic_time_polynomial<double>;

/// Evaluates sum_k c_k t^k / k! by nested multiplication with ratios t/k,
/// so no factorial or power is ever formed explicitly.
template <typename Real>
[[nodiscard]] Real eval(const basic_time_polynomial<Real>& p, const Real& t) {
  if (p.empty()) return Real(0);
  const int top = p.max_degree();
  auto it = p.terms().rbegin();
  Real acc = it->second;
  ++it;
  for (int k = top - 1; k >= 0; --k) {
    acc *= t;
    acc /= Real(k + 1);
    if (it != p.terms().rend() && it->first == k) {
      acc += it->second;
      ++it;
    }
  }
  return acc;
}

template <typename Real>
[[nodiscard]] basic_time_polynomial<Real> add(const basic_time_polynomial<Real>& p,
                                              const basic_time_polynomial<Real>& q) {
  basic_time_polynomial<Real> out = p;
  for (const auto& [k, c] : q) out.accumulate(k, c);
  return out;
}

template <typename Real>
[[nodiscard]] basic_time_polynomial<Real> scale(const basic_time_polynomial<Real>& p,
                                                const Real& s) {
  basic_time_polynomial<Real> out;
  if (s == Real(0)) return out;
  for (const auto& [k, c] : p) out.accumulate(k, c * s);
  return out;
}

/// Two-fold integration from 0: c t^k/k! -> c t^(k+2)/(k+2)!.
/// This is L^{-1}[s^{-2} L{p}] on polynomials.
template <typename Real>
[[nodiscard]] basic_time_polynomial<Real> double_integrate(const basic_time_polynomial<Real>& p) {
  basic_time_polynomial<Real> out;
  for (const auto& [k, c] : p) out.accumulate(k + 2, c);
  return out;
}

template <typename Real>
[[nodiscard]] basic_time_polynomial<Real> derivative(const basic_time_polynomial<Real>& p) {
  basic_time_polynomial<Real> out;
  for (const auto& [k, c] : p) {
    if (k > 0) out.accumulate(k - 1, c);
  }
  return out;
}

namespace detail {

template <typename Real>
Real binomial(int n, int k) {
  if (k < 0 || k > n) return Real(0);
  if (k > n - k) k = n - k;
  Real r(1);
  for (int i = 1; i <= k; ++i) {
    r *= Real(n - k + i);
    r /= Real(i);
  }
  return r;
}

}  // namespace detail

/// Product truncated above `max_degree`. In scaled storage the Cauchy
/// product picks up binomial weights: (a*b)_n = sum_k C(n,k) a_k b_{n-k}.
template <typename Real>
[[nodiscard]] basic_time_polynomial<Real> mul_truncated(const basic_time_polynomial<Real>& p,
                                                        const basic_time_polynomial<Real>& q,
                                                        int max_degree) {
  basic_time_polynomial<Real> out;
  if (max_degree < 0) return out;
  std::map<int, Real> acc;
  for (const auto& [i, a] : p) {
    if (i > max_degree) break;
    for (const auto& [j, b] : q) {
      const int n = i + j;
      if (n > max_degree) break;
      auto [it, inserted] = acc.try_emplace(n, Real(0));
      it->second += detail::binomial<Real>(n, i) * a * b;
    }
  }
  for (const auto& [n, c] : acc) out.accumulate(n, c);
  return out;
}

/// Drops every term above `max_degree`.
template <typename Real>
[[nodiscard]] basic_time_polynomial<Real> truncate(const basic_time_polynomial<Real>& p,
                                                   int max_degree) {
  basic_time_polynomial<Real> out;
  for (const auto& [k, c] : p) {
    if (k > max_degree) break;
    out.accumulate(k, c);
  }
  return out;
}

template <typename Real>
basic_time_polynomial<Real> operator+(const basic_time_polynomial<Real>& p,
                                      const basic_time_polynomial<Real>& q) {
  return add(p, q);
}

template <typename Real>
basic_time_polynomial<Real> operator-(const basic_time_polynomial<Real>& p) {
  return scale(p, Real(-1));
}

template <typename Real>
basic_time_polynomial<Real> operator-(const basic_time_polynomial<Real>& p,
                                      const basic_time_polynomial<Real>& q) {
  return add(p, scale(q, Real(-1)));
}

}  // namespace ladm
