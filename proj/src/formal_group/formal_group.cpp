#include "ltdr/formal_group/formal_group.hpp"

#include <string>

namespace ltdr::formal_group {

namespace {

long ipow(long p, long k) {
  long r = 1;
  while (k-- > 0) r *= p;
  return r;
}

void require_params(long p, int h, int degree) {
  if (!padic::is_prime(p)) throw std::invalid_argument("formal group: p must be prime");
  if (h < 1) throw std::invalid_argument("formal group: h must be positive");
  if (degree < 1) throw std::invalid_argument("formal group: D must be positive");
}

PadicSeries to_padic(const RationalSeries& s, const padic::FieldPtr& field) {
  return s.map<Padic>([&](const Rational& q) { return Padic::from_rational(field, q); });
}

bool same(const PadicSeries& a, const PadicSeries& b) { return (a - b).is_zero(); }

std::vector<long> prime_factors(long n) {
  std::vector<long> out;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

RationalSeries lubin_tate_log(long p, int h, int degree) {
  require_params(p, h, degree);
  RationalSeries f(1, degree);
  const long q = ipow(p, h);
  Rational scale = 1;
  for (long e = 1; e <= degree; e *= q) {
    f.coeff(static_cast<int>(e)) = scale;
    scale /= p;
    if (e > degree / q) break;
  }
  return f;
}

int default_degree(long p, int h) { return static_cast<int>(ipow(p, h) + p); }

bool p_integral(const Rational& q, long p) { return mpz_divisible_ui_p(q.get_den_mpz_t(), p) == 0; }

bool divisible_by_p(const Rational& q, long p) {
  return p_integral(q, p) && mpz_divisible_ui_p(q.get_num_mpz_t(), p) != 0;
}

FormalGroupLaw group_law(long p, int h, int degree) {
  require_params(p, h, degree);
  FormalGroupLaw fgl;
  fgl.p = p;
  fgl.h = h;
  fgl.D = degree;
  fgl.log = lubin_tate_log(p, h, degree);
  fgl.exp = reversion(fgl.log);
  const auto x = RationalSeries::variable(2, degree, 0);
  const auto y = RationalSeries::variable(2, degree, 1);
  fgl.law = compose(fgl.exp, compose(fgl.log, x) + compose(fgl.log, y));
  for (const auto& e : fgl.law.monomials())
    if (!p_integral(fgl.law[e], p))
      throw IntegralityError("group law: coefficient of X^" + std::to_string(e[0]) + " Y^" + std::to_string(e[1]) +
                             " is not p-integral");
  return fgl;
}

RationalSeries p_series(const FormalGroupLaw& fgl) {
  if (fgl.D < ipow(fgl.p, fgl.h)) throw std::invalid_argument("p_series: D < p^h, truncation cannot see the height");
  return compose(fgl.exp, fgl.log * Rational(fgl.p));
}

HeightCertificate certify_height(const FormalGroupLaw& fgl) {
  HeightCertificate cert;
  cert.series = p_series(fgl);
  const long p = fgl.p;
  cert.linear_term = cert.series.coeff(0) == 0 && cert.series.coeff(1) == p;
  for (int k = 1; k <= fgl.D; ++k) {
    const Rational& c = cert.series.coeff(k);
    if (!p_integral(c, p)) return cert;
    if (!divisible_by_p(c, p)) {
      cert.reduction_order = k;
      cert.unit_leading = true;
      break;
    }
  }
  if (cert.reduction_order > 1) {
    long q = 1;
    for (int k = 0; q <= cert.reduction_order; ++k, q *= p)
      if (q == cert.reduction_order) cert.height = k;
  }
  cert.pass = cert.linear_term && cert.unit_leading && cert.height == fgl.h;
  for (int k = 0; k <= fgl.D; ++k)
    if (!p_integral(cert.series.coeff(k), p)) cert.pass = false;
  return cert;
}

AxiomReport check_axioms(const FormalGroupLaw& fgl) {
  AxiomReport r;
  const int d = fgl.D;
  const auto& f = fgl.law;
  const auto x2 = RationalSeries::variable(2, d, 0);
  const auto y2 = RationalSeries::variable(2, d, 1);

  RationalSeries swapped(2, d);
  for (const auto& e : f.monomials()) swapped[{e[1], e[0], 0}] = f[e];
  r.commutative = (swapped - f).is_zero();

  r.unit = true;
  for (int i = 0; i <= d; ++i) {
    const Rational expect = i == 1 ? 1 : 0;
    if (f[{i, 0, 0}] != expect || f[{0, i, 0}] != expect) r.unit = false;
  }

  r.logarithm = (compose(fgl.log, f) - (compose(fgl.log, x2) + compose(fgl.log, y2))).is_zero();

  r.integral = true;
  for (const auto& e : f.monomials())
    if (!p_integral(f[e], fgl.p)) r.integral = false;

  const auto x3 = RationalSeries::variable(3, d, 0);
  const auto y3 = RationalSeries::variable(3, d, 1);
  const auto z3 = RationalSeries::variable(3, d, 2);
  const auto left = substitute(f, substitute(f, x3, y3), z3);
  const auto right = substitute(f, x3, substitute(f, y3, z3));
  r.associative = (left - right).is_zero();
  return r;
}

Padic default_zeta(long p, int h, long precision) {
  auto field = padic::Field::make(p, h, static_cast<int>(precision));
  const long order = ipow(p, h) - 1;
  const auto primes = prime_factors(order);
  const long count = ipow(p, h);
  for (long code = 1; code < count; ++code) {
    std::vector<long> residue(h);
    long c = code;
    for (int i = 0; i < h; ++i, c /= p) residue[i] = c % p;
    Padic z = Padic::teichmueller(field, residue);
    bool generator = true;
    for (long l : primes)
      if (z.pow(order / l) == Padic(1)) generator = false;
    if (generator) return z;
  }
  throw std::logic_error("default_zeta: no generator found");
}

ZetaReport zeta_action(const FormalGroupLaw& fgl, const Padic& zeta) {
  if (!zeta.has_field()) throw std::invalid_argument("zeta_action: zeta must live in a field");
  const auto& field = zeta.field();
  if (field->prime() != fgl.p || field->degree() % fgl.h != 0)
    throw std::invalid_argument("zeta_action: zeta must live in an unramified extension containing Q_{p^h}");
  if (!(zeta.pow(ipow(fgl.p, fgl.h) - 1) == Padic(1)))
    throw std::invalid_argument("zeta_action: zeta is not a (p^h - 1)-th root of unity");
  const int d = fgl.D;
  const auto log = to_padic(fgl.log, field);
  const auto exp = to_padic(fgl.exp, field);
  const auto law = to_padic(fgl.law, field);
  const auto t = PadicSeries::variable(1, d, 0);

  ZetaReport r;
  r.series = compose(exp, log * zeta);
  r.linear = same(r.series, t * zeta);

  const auto x = PadicSeries::variable(2, d, 0);
  const auto y = PadicSeries::variable(2, d, 1);
  const auto zx = compose(r.series, x);
  const auto zy = compose(r.series, y);
  r.endomorphism = same(substitute(law, zx, zy), compose(r.series, law));

  if (d >= ipow(fgl.p, fgl.h)) {
    const auto ps = to_padic(p_series(fgl), field);
    r.commutes_with_p = same(compose(ps, r.series), compose(r.series, ps));
  }
  return r;
}

Json series_json(const RationalSeries& s) {
  Json out = Json::array();
  for (const auto& e : s.monomials()) {
    const Rational& c = s[e];
    if (sgn(c) == 0) continue;
    Json key = s.vars() == 1 ? Json(e[0]) : s.vars() == 2 ? Json::array({e[0], e[1]}) : Json::array({e[0], e[1], e[2]});
    out.push_back(Json::array({key, padic::rational_string(c)}));
  }
  return out;
}

Json series_json(const PadicSeries& s) {
  Json out = Json::array();
  for (const auto& e : s.monomials()) {
    const Padic& c = s[e];
    if (c.is_zero()) continue;
    Json key = s.vars() == 1 ? Json(e[0]) : s.vars() == 2 ? Json::array({e[0], e[1]}) : Json::array({e[0], e[1], e[2]});
    out.push_back(Json::array({key, padic::to_json(c, c.field())}));
  }
  return out;
}

Json to_json(const FormalGroupLaw& fgl) {
  Json j;
  j["p"] = fgl.p;
  j["h"] = fgl.h;
  j["D"] = fgl.D;
  j["series"] = series_json(fgl.law);
  return j;
}

}  // namespace ltdr::formal_group
