#include "ltdr/padic/field.hpp"

#include <algorithm>
#include <sstream>

namespace ltdr::padic {

namespace {

using Poly = std::vector<long>;

long mod_p(long a, long p) {
  a %= p;
  return a < 0 ? a + p : a;
}

long inverse_mod(long a, long p) {
  long t = 0, new_t = 1, r = p, new_r = mod_p(a, p);
  while (new_r != 0) {
    long q = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
  }
  return mod_p(t, p);
}

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_sub(Poly a, const Poly& b, long p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = mod_p(a[i] - b[i], p);
  trim(a);
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b, long p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  trim(c);
  return c;
}

// Remainder and quotient of a by b (b nonzero).
std::pair<Poly, Poly> poly_divmod(Poly a, const Poly& b, long p) {
  trim(a);
  Poly q;
  const long lead_inv = inverse_mod(b.back(), p);
  if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, 0);
  while (a.size() >= b.size() && !a.empty()) {
    const std::size_t shift = a.size() - b.size();
    const long c = (a.back() * lead_inv) % p;
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] = mod_p(a[i + shift] - c * b[i], p);
    trim(a);
  }
  trim(q);
  return {q, a};
}

Poly poly_mod(const Poly& a, const Poly& f, long p) { return poly_divmod(a, f, p).second; }

Poly poly_gcd(Poly a, Poly b, long p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly poly_powmod(Poly base, Integer e, const Poly& f, long p) {
  Poly result{1};
  base = poly_mod(base, f, p);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = poly_mod(poly_mul(result, base, p), f, p);
    base = poly_mod(poly_mul(base, base, p), f, p);
    e >>= 1;
  }
  return result;
}

std::vector<long> prime_factors(long n) {
  std::vector<long> out;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

Integer pow_int(long p, long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
  return r;
}

}  // namespace

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool irreducible_mod_p(const std::vector<long>& monic, long p) {
  Poly f = monic;
  trim(f);
  const long m = static_cast<long>(f.size()) - 1;
  if (m < 1) return false;
  if (m == 1) return true;
  const Poly x{0, 1};
  if (poly_powmod(x, pow_int(p, m), f, p) != poly_mod(x, f, p)) return false;
  for (long q : prime_factors(m)) {
    Poly g = poly_sub(poly_powmod(x, pow_int(p, m / q), f, p), x, p);
    Poly d = poly_gcd(f, g, p);
    if (d.size() != 1) return false;
  }
  return true;
}

Field::Field(long p, int m, int precision)
    : p_(p), m_(m), precision_(precision), capacity_(2 * precision + 16) {}

FieldPtr Field::make(long p, int degree, int precision) {
  if (!is_prime(p) || p >= (1L << 30)) throw std::invalid_argument("make_field: p must be a prime below 2^30");
  if (degree < 1) throw std::invalid_argument("make_field: extension degree must be >= 1");
  if (precision < 1) throw std::invalid_argument("make_field: precision must be >= 1");
  auto field = std::shared_ptr<Field>(new Field(p, degree, precision));
  field->build();
  if (degree > 1) field->prime_field_ = Field::make(p, 1, precision);
  return field;
}

void Field::build() {
  powers_.resize(capacity_ + 1);
  powers_[0] = 1;
  for (int k = 1; k <= capacity_; ++k) powers_[k] = powers_[k - 1] * p_;

  // Lowest irreducible monic polynomial in lexicographic order.
  Integer count = pow_int(p_, m_);
  bool found = false;
  for (Integer index = 0; index < count; ++index) {
    Poly f(m_ + 1, 0);
    Integer rest = index;
    for (int i = 0; i < m_; ++i) {
      f[i] = mpz_fdiv_ui(rest.get_mpz_t(), static_cast<unsigned long>(p_));
      rest /= p_;
    }
    f[m_] = 1;
    if (irreducible_mod_p(f, p_)) {
      modulus_.assign(f.begin(), f.end());
      found = true;
      break;
    }
  }
  if (!found) throw std::logic_error("make_field: no irreducible polynomial found");

  const long cap = capacity_;
  Coeffs x(m_, 0);
  if (m_ > 1) x[1] = 1;
  sigma_x_.assign(m_, Coeffs(m_, 0));
  frob_.assign(m_, std::vector<Coeffs>(m_, Coeffs(m_, 0)));
  for (int i = 0; i < m_; ++i) frob_[0][i][i] = 1;
  sigma_x_[0] = x;
  if (m_ == 1) return;

  // Hensel lift of x^p to a root of the modulus.
  Coeffs r(m_, 0);
  r[0] = 1;
  {
    Coeffs base = x;
    for (long e = p_; e > 0; e >>= 1) {
      if (e & 1) r = multiply(r, base, cap);
      base = multiply(base, base, cap);
    }
  }
  auto eval = [&](const Coeffs& at, bool derivative) {
    Coeffs acc(m_, 0);
    for (int i = m_; i >= (derivative ? 1 : 0); --i) {
      acc = multiply(acc, at, cap);
      acc[0] += derivative ? modulus_[i] * i : modulus_[i];
    }
    return reduce(acc, cap);
  };
  for (int iter = 0; iter < 128; ++iter) {
    Coeffs value = eval(r, false);
    if (std::all_of(value.begin(), value.end(), [](const Integer& c) { return c == 0; })) break;
    Coeffs step = multiply(value, inverse_unit(eval(r, true), cap), cap);
    for (int i = 0; i < m_; ++i) r[i] -= step[i];
    r = reduce(r, cap);
  }
  for (int i = 0; i < m_; ++i) {
    Coeffs power(m_, 0);
    power[0] = 1;
    for (int k = 0; k < i; ++k) power = multiply(power, r, cap);
    frob_[1][i] = power;
  }
  for (int k = 1; k < m_; ++k) sigma_x_[k] = frobenius(sigma_x_[k - 1], 1, cap);
  for (int k = 2; k < m_; ++k) {
    for (int i = 0; i < m_; ++i) {
      Coeffs power(m_, 0);
      power[0] = 1;
      for (int j = 0; j < i; ++j) power = multiply(power, sigma_x_[k], cap);
      frob_[k][i] = power;
    }
  }
}

const Integer& Field::prime_power(long k) const {
  if (k < 0 || k > capacity_) throw std::out_of_range("prime_power: exponent outside field capacity");
  return powers_[k];
}

FieldPtr Field::prime_field() const {
  if (m_ == 1) return shared_from_this();
  return prime_field_;
}

bool Field::compatible(const Field& other) const {
  return this == &other || (p_ == other.p_ && m_ == other.m_ && modulus_ == other.modulus_);
}

std::string Field::describe() const {
  std::ostringstream os;
  os << "Q_" << p_;
  if (m_ > 1) os << "^" << m_;
  os << " mod (";
  for (int i = m_; i >= 0; --i) {
    if (modulus_[i] == 0) continue;
    if (i != m_) os << " + ";
    if (i == 0 || modulus_[i] != 1) os << modulus_[i];
    if (i > 0) os << "x" << (i > 1 ? "^" + std::to_string(i) : "");
  }
  os << ") @ " << precision_;
  return os.str();
}

Coeffs Field::reduce(Coeffs a, long rel) const {
  const Integer& mod = prime_power(rel);
  for (auto& c : a) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), mod.get_mpz_t());
  return a;
}

Coeffs Field::multiply(const Coeffs& a, const Coeffs& b, long rel) const {
  if (m_ == 1) return reduce({a[0] * b[0]}, rel);
  Coeffs c(2 * m_ - 1, 0);
  for (int i = 0; i < m_; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < m_; ++j) c[i + j] += a[i] * b[j];
  }
  for (int d = 2 * m_ - 2; d >= m_; --d) {
    if (c[d] == 0) continue;
    for (int i = 0; i < m_; ++i) c[d - m_ + i] -= c[d] * modulus_[i];
    c[d] = 0;
  }
  c.resize(m_);
  return reduce(std::move(c), rel);
}

Coeffs Field::frobenius(const Coeffs& a, long k, long rel) const {
  k %= m_;
  if (k < 0) k += m_;
  if (k == 0) return reduce(a, rel);
  Coeffs out(m_, 0);
  for (int i = 0; i < m_; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < m_; ++j) out[j] += a[i] * frob_[k][i][j];
  }
  return reduce(std::move(out), rel);
}

std::vector<long> Field::residue(const Coeffs& a) const {
  std::vector<long> r(m_, 0);
  for (int i = 0; i < m_; ++i) r[i] = static_cast<long>(mpz_fdiv_ui(a[i].get_mpz_t(), static_cast<unsigned long>(p_)));
  return r;
}

std::vector<long> Field::residue_multiply(const std::vector<long>& a, const std::vector<long>& b) const {
  Poly f(modulus_.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = modulus_[i].get_si();
  Poly r = poly_mod(poly_mul(a, b, p_), f, p_);
  r.resize(m_, 0);
  return r;
}

std::vector<long> Field::residue_power(std::vector<long> a, const Integer& e) const {
  Poly f(modulus_.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = modulus_[i].get_si();
  Poly r = poly_powmod(a, e, f, p_);
  r.resize(m_, 0);
  return r;
}

std::vector<long> Field::residue_generator() const {
  const Integer order = pow_int(p_, m_) - 1;
  if (!order.fits_slong_p()) throw std::invalid_argument("residue_generator: residue field too large");
  const auto factors = prime_factors(order.get_si());
  std::vector<long> one(m_, 0);
  one[0] = 1;
  for (Integer index = 1; index <= order; ++index) {
    std::vector<long> g(m_, 0);
    Integer rest = index;
    for (int i = 0; i < m_; ++i) {
      g[i] = mpz_fdiv_ui(rest.get_mpz_t(), static_cast<unsigned long>(p_));
      rest /= p_;
    }
    bool generator = true;
    for (long q : factors) {
      if (residue_power(g, order / q) == one) {
        generator = false;
        break;
      }
    }
    if (generator) return g;
  }
  throw std::logic_error("residue_generator: none found");
}

Coeffs Field::inverse_unit(const Coeffs& a, long rel) const {
  Poly f(modulus_.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = modulus_[i].get_si();
  Poly abar = residue(a);
  trim(abar);
  if (abar.empty()) throw std::domain_error("inverse_unit: element is not a unit");

  // Extended Euclid in F_p[x] for abar^{-1} mod f.
  Poly r0 = f, r1 = abar, s0{}, s1{1};
  while (!r1.empty()) {
    auto [q, r] = poly_divmod(r0, r1, p_);
    Poly s = poly_sub(s0, poly_mul(q, s1, p_), p_);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  // r0 is a nonzero constant.
  const long c = inverse_mod(r0[0], p_);
  Coeffs y(m_, 0);
  for (std::size_t i = 0; i < s0.size() && i < static_cast<std::size_t>(m_); ++i) y[i] = (s0[i] * c) % p_;

  long known = 1;
  while (known < rel) {
    known = std::min(2 * known, rel);
    Coeffs ay = multiply(a, y, known);
    Coeffs two_minus(m_, 0);
    for (int i = 0; i < m_; ++i) two_minus[i] = -ay[i];
    two_minus[0] += 2;
    y = multiply(y, reduce(two_minus, known), known);
  }
  return reduce(y, rel);
}

}  // namespace ltdr::padic
