#include "ltdr/ledger/ledger.hpp"

#include <numeric>
#include <stdexcept>

namespace ltdr::ledger {

namespace {

Integer power(long p, long k) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k));
  return r;
}

Rational fraction(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Json rationals(const std::vector<Rational>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(padic::rational_string(v));
  return out;
}

Rational sum(const std::vector<Rational>& values) { return std::accumulate(values.begin(), values.end(), Rational(0)); }

void require_prime(long p) {
  if (!padic::is_prime(p)) throw std::invalid_argument("ledger: p must be prime");
}

}  // namespace

Rational period_valuation(long p) {
  require_prime(p);
  return Rational(1, p - 1);
}

CMDatum CMDatum::dimension_one(long p, int h, int i0) {
  CMDatum datum;
  datum.p = p;
  datum.h = h;
  datum.i0 = i0;
  datum.a.assign(h > 0 ? h : 0, 0);
  if (i0 >= 0 && i0 < h) datum.a[i0] = 1;
  datum.validate();
  return datum;
}

int CMDatum::d() const { return std::accumulate(a.begin(), a.end(), 0); }

void CMDatum::validate() const {
  require_prime(p);
  if (h < 1) throw std::invalid_argument("CM datum: h must be positive");
  if (i0 < 0 || i0 >= h) throw std::invalid_argument("CM datum: need 0 <= i0 < h");
  if (static_cast<int>(a.size()) != h) throw std::invalid_argument("CM datum: need one a_i per embedding");
  const int total = d();
  for (int ai : a)
    if (ai < 0 || ai > total) throw std::invalid_argument("CM datum: need 0 <= a_i <= d");
}

std::vector<Rational> cm_period_valuations(long p, int h, int i0) {
  require_prime(p);
  if (h < 1 || i0 < 0 || i0 >= h) throw std::invalid_argument("cm_period_valuations: need 0 <= i0 < h");
  const Integer den = power(p, h) - 1;
  std::vector<Rational> out;
  for (int i = 0; i < h; ++i) out.push_back(fraction(power(p, i < i0 ? h + i - i0 : i - i0), den));
  return out;
}

namespace {

std::vector<Rational> dimension_one_valuations(const CMDatum& datum) {
  datum.validate();
  if (datum.d() != 1) throw std::invalid_argument("CM datum: only d = 1 is computed");
  return cm_period_valuations(datum.p, datum.h, datum.i0);
}

}  // namespace

bool check_sum_identity(const CMDatum& datum) {
  return sum(dimension_one_valuations(datum)) == period_valuation(datum.p);
}

bool functional_equation_valuations(const CMDatum& datum) {
  const auto v = dimension_one_valuations(datum);
  const int h = datum.h;
  for (int i = 0; i < h; ++i) {
    const int next = (i + 1) % h;
    const Rational rhs = v[next] + (next == datum.i0 ? 1 : 0);
    if (datum.p * v[i] != rhs) return false;
  }
  return true;
}

Rational beta_integrality(const CMDatum& datum) {
  return sum(dimension_one_valuations(datum)) - period_valuation(datum.p);
}

Rational lt_character_valuation(int i, long p, int h) {
  require_prime(p);
  if (h < 1 || i < 0 || i >= h) throw std::invalid_argument("lt_character_valuation: need 0 <= i < h");
  return fraction(power(p, i), power(p, h) - 1);
}

Rational det_valuation_LT(const HeightLedger& ledger) {
  Rational v = -ledger.normalized(ledger.ht_rho_H) - Rational(static_cast<long>(ledger.n) * (ledger.n - 1), 2);
  v.canonicalize();
  return v;
}

Rational det_valuation_Dr(const HeightLedger& ledger) {
  if (ledger.n < 1) throw std::invalid_argument("det_valuation_Dr: n must be positive");
  Rational v = -ledger.normalized(ledger.ht_rho_G) / ledger.n - ledger.normalized(ledger.ht_Delta);
  v.canonicalize();
  return v;
}

TransferVerdict height_transfer(const HeightLedger& ledger, bool demand_equality) {
  if (ledger.n < 1) throw std::invalid_argument("height_transfer: n must be positive");
  if (2 * ledger.ht_Delta != static_cast<long>(ledger.n) * (ledger.n - 1))
    throw std::invalid_argument("height_transfer: needs ht(Delta) = n(n-1)/2");
  TransferVerdict verdict;
  verdict.transferred_height = ledger.normalized(ledger.ht_rho_G) / ledger.n;
  verdict.transferred_height.canonicalize();
  verdict.divisible = verdict.transferred_height.get_den() == 1;
  if (demand_equality && !verdict.divisible)
    throw std::invalid_argument("height_transfer: ht(rho_G) not divisible by n");
  verdict.consistent = det_valuation_LT(ledger) == det_valuation_Dr(ledger);
  return verdict;
}

Json report(const std::string& check, Json inputs, Json expected, Json computed, bool pass) {
  Json j;
  j["check"] = check;
  j["inputs"] = std::move(inputs);
  j["expected"] = std::move(expected);
  j["computed"] = std::move(computed);
  j["pass"] = pass;
  return j;
}

Json cm_report(const CMDatum& datum) {
  Json inputs = {{"p", datum.p}, {"h", datum.h}, {"i0", datum.i0}};
  const auto table = cm_period_valuations(datum.p, datum.h, datum.i0);
  std::vector<Rational> characters;
  for (int i = 0; i < datum.h; ++i) characters.push_back(lt_character_valuation(i, datum.p, datum.h));
  const Rational total = sum(table);
  const Rational beta = beta_integrality(datum);
  const bool fe = functional_equation_valuations(datum);
  Json checks = Json::array();
  checks.push_back(report("sum_identity", inputs, padic::rational_string(period_valuation(datum.p)),
                          padic::rational_string(total), check_sum_identity(datum)));
  checks.push_back(report("functional_equation", inputs, true, fe, fe));
  checks.push_back(report("beta_integrality", inputs, "0", padic::rational_string(beta), beta == 0));
  Json j;
  j["cm_period_valuations"] = rationals(table);
  j["lt_character_valuations"] = rationals(characters);
  j["checks"] = std::move(checks);
  return j;
}

Json heights_report(const HeightLedger& ledger) {
  Json inputs = {{"n", ledger.n}, {"ht_rho_H", ledger.ht_rho_H}, {"ht_rho_G", ledger.ht_rho_G}, {"ht_Delta", ledger.ht_Delta}};
  const Rational lt = det_valuation_LT(ledger);
  const Rational dr = det_valuation_Dr(ledger);
  Json j;
  j["det_valuation_LT"] = padic::rational_string(lt);
  j["det_valuation_Dr"] = padic::rational_string(dr);
  Json checks = Json::array();
  const long expected_delta = static_cast<long>(ledger.n) * (ledger.n - 1) / 2;
  checks.push_back(report("delta_height", inputs, expected_delta, ledger.ht_Delta, ledger.ht_Delta == expected_delta));
  if (ledger.ht_Delta == expected_delta) {
    const auto verdict = height_transfer(ledger);
    Json transfer;
    transfer["consistent"] = verdict.consistent;
    transfer["divisible"] = verdict.divisible;
    transfer["transferred_height"] = padic::rational_string(verdict.transferred_height);
    j["height_transfer"] = transfer;
    checks.push_back(report("height_transfer", inputs, padic::rational_string(lt), padic::rational_string(dr),
                            verdict.consistent));
  }
  j["checks"] = std::move(checks);
  return j;
}

}  // namespace ltdr::ledger
