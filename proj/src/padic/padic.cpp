#include "ltdr/padic/padic.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace ltdr::padic {

namespace {

// v_p(n) for n != 0, dividing it out.
long remove_prime(Integer& n, long p) {
  if (n == 0) return 0;
  Integer pp = p;
  return static_cast<long>(mpz_remove(n.get_mpz_t(), n.get_mpz_t(), pp.get_mpz_t()));
}

void require_same_field(const Padic& a, const Padic& b) {
  if (!a.field()->compatible(*b.field()))
    throw std::invalid_argument("padic: operands live in different fields (" + a.field()->describe() + " vs " +
                                b.field()->describe() + ")");
}

}  // namespace

std::ostream& operator<<(std::ostream& os, const Valuation& v) {
  if (v.exact) return os << v.value;
  return os << ">=" << v.value;
}

long Padic::precision() const { return field_ ? precision_ : kInfinitePrecision; }

void Padic::normalize() {
  const long cap = field_->capacity();
  if (precision_ >= kInfinitePrecision) precision_ = kInfinitePrecision;
  long rel = precision_ - exponent_;
  if (rel > cap) {
    rel = cap;
    precision_ = exponent_ + cap;
  }
  const int m = field_->degree();
  unit_.resize(m, 0);
  if (rel <= 0) {
    exponent_ = precision_;
    std::fill(unit_.begin(), unit_.end(), Integer(0));
    return;
  }
  unit_ = field_->reduce(std::move(unit_), rel);
  long shift = -1;
  const long p = field_->prime();
  for (const auto& c : unit_) {
    if (c == 0) continue;
    Integer t = c;
    long v = remove_prime(t, p);
    shift = shift < 0 ? v : std::min(shift, v);
  }
  if (shift < 0) {
    exponent_ = precision_;
    std::fill(unit_.begin(), unit_.end(), Integer(0));
    return;
  }
  if (shift > 0) {
    const Integer& d = field_->prime_power(shift);
    for (auto& c : unit_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
    exponent_ += shift;
  }
}

Padic Padic::from_coeffs(FieldPtr field, Coeffs coeffs, long exponent, long precision) {
  Padic out;
  out.field_ = std::move(field);
  coeffs.resize(out.field_->degree(), 0);
  out.unit_ = std::move(coeffs);
  out.exponent_ = exponent;
  out.precision_ = precision;
  // Coefficients may carry extra factors of p or be unreduced; normalize folds
  // them in, but coefficients below p^0 of a negative relative precision vanish.
  if (precision <= exponent) {
    out.exponent_ = precision;
    out.unit_.assign(out.field_->degree(), 0);
    out.precision_ = precision;
    return out;
  }
  out.normalize();
  return out;
}

Padic Padic::from_rational(FieldPtr field, const Rational& q) {
  const long N = field->precision();
  if (q == 0) return from_coeffs(field, {}, N, N);
  const long p = field->prime();
  Integer num = q.get_num(), den = q.get_den();
  long v = remove_prime(num, p) - remove_prime(den, p);
  long rel = N - v;
  if (rel <= 0) return from_coeffs(field, {}, N, N);
  rel = std::min<long>(rel, field->capacity());
  Integer inv;
  const Integer& mod = field->prime_power(rel);
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
  Coeffs c(field->degree(), 0);
  c[0] = num * inv;
  return from_coeffs(std::move(field), std::move(c), v, v + rel);
}

Padic Padic::from_integer(FieldPtr field, const Integer& n) { return from_rational(std::move(field), Rational(n)); }

Padic Padic::prime_power(FieldPtr field, long k) {
  Coeffs c(field->degree(), 0);
  c[0] = 1;
  const long cap = field->capacity();
  return from_coeffs(std::move(field), std::move(c), k, k + cap);
}

Padic Padic::generator(FieldPtr field) {
  Coeffs c(field->degree(), 0);
  if (field->degree() > 1)
    c[1] = 1;
  else
    c[0] = 0;
  const long N = field->precision();
  return from_coeffs(std::move(field), std::move(c), 0, N);
}

Padic Padic::teichmueller(FieldPtr field, const std::vector<long>& residue) {
  const int m = field->degree();
  const long N = field->precision();
  Coeffs c(m, 0);
  bool zero = true;
  for (int i = 0; i < m && i < static_cast<int>(residue.size()); ++i) {
    long r = residue[i] % field->prime();
    if (r < 0) r += field->prime();
    c[i] = r;
    zero = zero && r == 0;
  }
  if (zero) return from_coeffs(field, {}, N, N);
  Integer q;
  mpz_ui_pow_ui(q.get_mpz_t(), static_cast<unsigned long>(field->prime()), static_cast<unsigned long>(m));
  if (!q.fits_slong_p()) throw std::invalid_argument("teichmueller: residue field too large");
  const long qq = q.get_si();
  // Newton iteration on y^q - y; the derivative q y^{q-1} - 1 is a unit.
  Padic y = from_coeffs(field, c, 0, N);
  for (long known = 1; known < 2 * N + 2; known *= 2) {
    Padic yq1 = y.pow(qq - 1);
    Padic f = yq1 * y - y;
    Padic df = Padic::from_integer(field, Integer(qq)) * yq1 - Padic::from_integer(field, 1);
    y -= f / df;
  }
  return y.with_precision(N);
}

Padic Padic::from_coordinates(FieldPtr field, const std::vector<Padic>& coords) {
  if (static_cast<int>(coords.size()) != field->degree())
    throw std::invalid_argument("from_coordinates: expected one coordinate per basis element");
  Padic x = generator(field);
  Padic power = prime_power(field, 0);
  Padic sum;
  for (const auto& c : coords) {
    sum += c.in_field(field) * power;
    power *= x;
  }
  if (!sum.has_field()) return from_coeffs(field, {}, kInfinitePrecision, kInfinitePrecision);
  return sum;
}

Valuation Padic::valuation() const {
  if (!field_) {
    if (constant_ == 0) return Valuation::at_least(kInfinitePrecision);
    if (constant_ == 1 || constant_ == -1) return Valuation::exactly(0);
    throw std::logic_error("valuation: constant " + constant_.get_str() + " has no field");
  }
  if (exponent_ >= precision_) return Valuation::at_least(precision_);
  return Valuation::exactly(exponent_);
}

bool Padic::is_zero() const {
  if (!field_) return constant_ == 0;
  return exponent_ >= precision_;
}

bool Padic::is_unit() const {
  auto v = valuation();
  return v.exact && v.value == 0;
}

bool Padic::is_integral() const {
  if (!field_) return true;
  return exponent_ >= 0;
}

std::vector<Padic> Padic::coordinates() const {
  if (!field_) throw std::logic_error("coordinates: constant has no field");
  auto qp = field_->prime_field();
  std::vector<Padic> out;
  out.reserve(unit_.size());
  for (const auto& c : unit_) out.push_back(from_coeffs(qp, {c}, exponent_, precision_));
  return out;
}

std::vector<long> Padic::residue() const {
  if (!field_) throw std::logic_error("residue: constant has no field");
  if (precision_ < 1) throw PrecisionError("residue: precision below 1");
  if (exponent_ > 0) return std::vector<long>(field_->degree(), 0);
  if (exponent_ < 0) throw std::domain_error("residue: element is not integral");
  return field_->residue(unit_);
}

Padic Padic::with_precision(long precision) const {
  if (!field_) throw std::logic_error("with_precision: constant has no field");
  Padic out = *this;
  if (precision >= out.precision_) return out;
  out.precision_ = precision;
  if (out.exponent_ >= precision) {
    out.exponent_ = precision;
    std::fill(out.unit_.begin(), out.unit_.end(), Integer(0));
    return out;
  }
  out.normalize();
  return out;
}

Padic Padic::in_field(FieldPtr field) const {
  if (!field_) return lift_constant(field);
  if (field_->compatible(*field)) {
    Padic out = *this;
    out.field_ = std::move(field);
    out.normalize();
    return out;
  }
  if (field_->degree() == 1 && field_->prime() == field->prime()) {
    Coeffs c(field->degree(), 0);
    c[0] = unit_[0];
    return from_coeffs(std::move(field), std::move(c), exponent_, precision_);
  }
  throw std::invalid_argument("in_field: no embedding from " + field_->describe() + " into " + field->describe());
}

Padic Padic::lift_constant(const FieldPtr& field) const {
  if (constant_ == 0) return from_coeffs(field, {}, kInfinitePrecision, kInfinitePrecision);
  Integer n = constant_;
  long v = remove_prime(n, field->prime());
  Coeffs c(field->degree(), 0);
  c[0] = n;
  return from_coeffs(field, std::move(c), v, v + field->capacity());
}

Padic Padic::inverse() const {
  if (!field_) {
    if (constant_ == 1 || constant_ == -1) return *this;
    throw std::domain_error("inverse: constant has no field to invert in");
  }
  if (is_zero()) throw PrecisionError("inverse: element indistinguishable from zero at precision " + std::to_string(precision_));
  const long rel = precision_ - exponent_;
  Padic out;
  out.field_ = field_;
  out.exponent_ = -exponent_;
  out.precision_ = -exponent_ + rel;
  out.unit_ = field_->inverse_unit(unit_, rel);
  return out;
}

Padic Padic::frobenius(long power) const {
  if (!field_ || field_->degree() == 1 || is_zero()) return *this;
  Padic out = *this;
  out.unit_ = field_->frobenius(unit_, power, precision_ - exponent_);
  return out;
}

Padic Padic::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Padic result(1);
  Padic base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

Padic Padic::operator-() const {
  Padic out = *this;
  if (!field_) {
    out.constant_ = -constant_;
    return out;
  }
  for (auto& c : out.unit_) c = -c;
  if (!is_zero()) out.unit_ = field_->reduce(std::move(out.unit_), precision_ - exponent_);
  return out;
}

Padic& Padic::operator+=(const Padic& other) {
  if (!other.field_) {
    if (other.constant_ == 0) return *this;
    if (!field_) {
      constant_ += other.constant_;
      return *this;
    }
    return *this += other.lift_constant(field_);
  }
  if (!field_) {
    if (constant_ == 0) return *this = other;
    *this = lift_constant(other.field_);
  }
  require_same_field(*this, other);
  const long e = std::min(exponent_, other.exponent_);
  const long prec = std::min(precision_, other.precision_);
  if (prec <= e) {
    exponent_ = precision_ = prec;
    std::fill(unit_.begin(), unit_.end(), Integer(0));
    return *this;
  }
  const long rel = prec - e;
  const int m = field_->degree();
  Coeffs sum(m, 0);
  auto accumulate = [&](const Padic& x) {
    const long shift = x.exponent_ - e;
    if (x.is_zero() || shift >= rel) return;
    const Integer& scale = field_->prime_power(shift);
    for (int i = 0; i < m; ++i) sum[i] += x.unit_[i] * scale;
  };
  accumulate(*this);
  accumulate(other);
  unit_ = std::move(sum);
  exponent_ = e;
  precision_ = prec;
  normalize();
  return *this;
}

Padic& Padic::operator-=(const Padic& other) { return *this += -other; }

Padic& Padic::operator*=(const Padic& other) {
  if (!other.field_) {
    if (other.constant_ == 1) return *this;
    if (other.constant_ == 0) return *this = Padic(0);
    if (!field_) {
      constant_ *= other.constant_;
      return *this;
    }
    return *this *= other.lift_constant(field_);
  }
  if (!field_) {
    if (constant_ == 1) return *this = other;
    if (constant_ == 0) return *this;
    *this = lift_constant(other.field_);
  }
  require_same_field(*this, other);
  const long e = exponent_ + other.exponent_;
  const long prec = std::min(precision_ + other.exponent_, other.precision_ + exponent_);
  const long rel = prec - e;
  if (rel <= 0) {
    exponent_ = precision_ = std::min(prec, kInfinitePrecision);
    std::fill(unit_.begin(), unit_.end(), Integer(0));
    return *this;
  }
  unit_ = field_->multiply(unit_, other.unit_, rel);
  exponent_ = e;
  precision_ = prec;
  normalize();
  return *this;
}

Padic& Padic::operator/=(const Padic& other) {
  if (!field_ && !other.field_) {
    if (other.constant_ == 0 || !mpz_divisible_p(constant_.get_mpz_t(), other.constant_.get_mpz_t()))
      throw std::domain_error("division of constants is not exact");
    constant_ /= other.constant_;
    return *this;
  }
  if (!other.field_) return *this *= other.lift_constant(field_).inverse();
  return *this *= other.inverse();
}

std::string Padic::to_string() const {
  if (!field_) return constant_.get_str();
  std::ostringstream os;
  const long p = field_->prime();
  if (is_zero()) {
    os << "O(" << p << "^" << precision_ << ")";
    return os.str();
  }
  if (exponent_ != 0) os << p << "^" << exponent_ << "*";
  os << "(";
  bool first = true;
  for (std::size_t i = 0; i < unit_.size(); ++i) {
    if (unit_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << unit_[i];
    if (i > 0) os << "*x" << (i > 1 ? "^" + std::to_string(i) : "");
  }
  os << ") + O(" << p << "^" << precision_ << ")";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Padic& x) { return os << x.to_string(); }

}  // namespace ltdr::padic
