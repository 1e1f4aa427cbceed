#pragma once

#include <array>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ltdr/padic/padic.hpp"

namespace ltdr::formal_group {

namespace detail {

inline bool is_zero(const padic::Rational& q) { return sgn(q) == 0; }
inline bool is_zero(const padic::Padic& x) { return x.is_zero(); }

}  // namespace detail

using Exponent = std::array<int, 3>;

/// Power series in 1, 2 or 3 variables truncated at total degree D.
///
/// Coefficients are stored densely on the (D+1)^vars grid; only monomials of
/// total degree <= D are ever read or written.
template <class Scalar>
class Series {
 public:
  Series() = default;
  Series(int vars, int degree) : vars_(vars), degree_(degree) {
    if (vars < 1 || vars > 3) throw std::invalid_argument("Series: 1 to 3 variables");
    if (degree < 0) throw std::invalid_argument("Series: negative truncation degree");
    std::size_t size = 1;
    for (int v = 0; v < vars; ++v) size *= static_cast<std::size_t>(degree + 1);
    coeffs_.assign(size, Scalar(0));
  }

  static Series variable(int vars, int degree, int k) {
    Series s(vars, degree);
    Exponent e{0, 0, 0};
    e[k] = 1;
    if (degree >= 1) s[e] = Scalar(1);
    return s;
  }

  static Series constant(int vars, int degree, const Scalar& c) {
    Series s(vars, degree);
    s[{0, 0, 0}] = c;
    return s;
  }

  int vars() const { return vars_; }
  int degree() const { return degree_; }

  Scalar& operator[](const Exponent& e) { return coeffs_[index(e)]; }
  const Scalar& operator[](const Exponent& e) const { return coeffs_[index(e)]; }
  /// Univariate coefficient of T^k.
  const Scalar& coeff(int k) const { return coeffs_[k]; }
  Scalar& coeff(int k) { return coeffs_[k]; }

  /// Monomials of total degree <= D, lowest total degree first.
  std::vector<Exponent> monomials() const {
    std::vector<Exponent> out;
    for (int d = 0; d <= degree_; ++d) {
      if (vars_ == 1) {
        out.push_back({d, 0, 0});
      } else if (vars_ == 2) {
        for (int i = d; i >= 0; --i) out.push_back({i, d - i, 0});
      } else {
        for (int i = d; i >= 0; --i)
          for (int j = d - i; j >= 0; --j) out.push_back({i, j, d - i - j});
      }
    }
    return out;
  }

  Series& operator+=(const Series& o) {
    check_shape(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  Series& operator-=(const Series& o) {
    check_shape(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  Series& operator*=(const Scalar& c) {
    for (auto& x : coeffs_) x *= c;
    return *this;
  }

  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  friend Series operator*(Series a, const Scalar& c) { return a *= c; }
  friend Series operator*(const Scalar& c, Series a) { return a *= c; }

  friend Series operator*(const Series& a, const Series& b) {
    a.check_shape(b);
    Series out(a.vars_, a.degree_);
    const auto mons = a.monomials();
    for (const auto& ea : mons) {
      const Scalar& ca = a[ea];
      if (detail::is_zero(ca)) continue;
      const int da = ea[0] + ea[1] + ea[2];
      for (const auto& eb : mons) {
        if (da + eb[0] + eb[1] + eb[2] > a.degree_) break;
        const Scalar& cb = b[eb];
        if (detail::is_zero(cb)) continue;
        out[{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}] += ca * cb;
      }
    }
    return out;
  }

  /// Every coefficient indistinguishable from zero.
  bool is_zero() const {
    for (const auto& e : monomials())
      if (!detail::is_zero((*this)[e])) return false;
    return true;
  }

  /// Lowest total degree carrying a nonzero coefficient (-1 for zero).
  int order() const {
    for (const auto& e : monomials())
      if (!detail::is_zero((*this)[e])) return e[0] + e[1] + e[2];
    return -1;
  }

  /// Same coefficients, cut at a smaller total degree.
  Series truncated(int degree) const {
    Series out(vars_, degree);
    for (const auto& e : out.monomials()) out[e] = (*this)[e];
    return out;
  }

  /// Entrywise image under a scalar map.
  template <class Other, class F>
  Series<Other> map(F&& f) const {
    Series<Other> out(vars_, degree_);
    for (const auto& e : monomials()) out[e] = f((*this)[e]);
    return out;
  }

 private:
  std::size_t index(const Exponent& e) const {
    const std::size_t b = static_cast<std::size_t>(degree_ + 1);
    return static_cast<std::size_t>(e[0]) + b * (static_cast<std::size_t>(e[1]) + b * static_cast<std::size_t>(e[2]));
  }
  void check_shape(const Series& o) const {
    if (o.vars_ != vars_ || o.degree_ != degree_) throw std::invalid_argument("Series: shape mismatch");
  }

  int vars_ = 1;
  int degree_ = 0;
  std::vector<Scalar> coeffs_{Scalar(0)};
};

/// a(b) for univariate a and any b without constant term.
template <class Scalar>
Series<Scalar> compose(const Series<Scalar>& a, const Series<Scalar>& b) {
  if (a.vars() != 1) throw std::invalid_argument("compose: outer series must be univariate");
  if (!detail::is_zero(b[{0, 0, 0}])) throw std::invalid_argument("compose: inner series has a constant term");
  const int d = b.degree();
  Series<Scalar> out = Series<Scalar>::constant(b.vars(), d, a.coeff(std::min(a.degree(), d)));
  for (int k = std::min(a.degree(), d) - 1; k >= 0; --k) {
    out = out * b;
    out[{0, 0, 0}] += a.coeff(k);
  }
  return out;
}

/// F(A, B) for bivariate F and series A, B without constant term.
template <class Scalar>
Series<Scalar> substitute(const Series<Scalar>& f, const Series<Scalar>& a, const Series<Scalar>& b) {
  if (f.vars() != 2) throw std::invalid_argument("substitute: outer series must be bivariate");
  if (!detail::is_zero(a[{0, 0, 0}]) || !detail::is_zero(b[{0, 0, 0}]))
    throw std::invalid_argument("substitute: inner series has a constant term");
  const int d = std::min(f.degree(), a.degree());
  std::vector<Series<Scalar>> b_pow{Series<Scalar>::constant(b.vars(), b.degree(), Scalar(1))};
  for (int j = 1; j <= d; ++j) b_pow.push_back(b_pow.back() * b);
  // Horner in A over the coefficients sum_j c_ij B^j.
  Series<Scalar> out(a.vars(), a.degree());
  for (int i = d; i >= 0; --i) {
    out = out * a;
    for (int j = 0; i + j <= d; ++j) {
      const Scalar& c = f[{i, j, 0}];
      if (!detail::is_zero(c)) out += b_pow[j] * c;
    }
  }
  return out;
}

/// Multiplicative inverse of a univariate series with invertible constant term.
template <class Scalar>
Series<Scalar> reciprocal(const Series<Scalar>& u) {
  Series<Scalar> r(1, u.degree());
  const Scalar inv0 = Scalar(1) / u.coeff(0);
  r.coeff(0) = inv0;
  for (int k = 1; k <= u.degree(); ++k) {
    Scalar acc(0);
    for (int i = 1; i <= k; ++i) acc += u.coeff(i) * r.coeff(k - i);
    r.coeff(k) = -(inv0 * acc);
  }
  return r;
}

template <class Scalar>
Series<Scalar> derivative(const Series<Scalar>& f) {
  Series<Scalar> out(1, f.degree());
  for (int k = 1; k <= f.degree(); ++k) out.coeff(k - 1) = f.coeff(k) * Scalar(k);
  return out;
}

/// Compositional inverse g of f = T + O(T^2), by Newton iteration
/// g <- g - (f(g) - T) / f'(g); each step doubles the correct degree.
template <class Scalar>
Series<Scalar> reversion(const Series<Scalar>& f) {
  if (f.vars() != 1) throw std::invalid_argument("reversion: univariate only");
  const int d = f.degree();
  if (!detail::is_zero(f.coeff(0)) || (d >= 1 && !(f.coeff(1) == Scalar(1))))
    throw std::invalid_argument("reversion: need f = T + O(T^2)");
  const auto t = Series<Scalar>::variable(1, d, 0);
  const auto df = derivative(f);
  Series<Scalar> g = t;
  for (int correct = 1; correct < d; correct *= 2) g = g - (compose(f, g) - t) * reciprocal(compose(df, g));
  return g;
}

}  // namespace ltdr::formal_group
