#include <doctest.h>

#include "ltdr/dieudonne/models.hpp"
#include "ltdr/semilinear/isocrystal.hpp"

using namespace ltdr;
using padic::Field;
using padic::Padic;
using padic::PadicMatrix;
using padic::Rational;

namespace {

std::vector<Rational> repeated(Rational r, int k) { return std::vector<Rational>(k, r); }

Rational total(const std::vector<Rational>& s) {
  Rational acc = 0;
  for (const auto& x : s) acc += x;
  return acc;
}

}  // namespace

TEST_CASE("linearize examples") {
  auto qp = Field::make(2, 1, 16);
  PadicMatrix a = padic::from_integers(qp, {{1, 2}, {3, 5}});
  CHECK(padic::is_zero(semilinear::linearize(semilinear::make_isocrystal(qp, a)) - a));

  // Phi for n = 2 has rational entries, so its degree-2 linearization is Phi^2 = p I.
  auto q4 = Field::make(2, 2, 16);
  PadicMatrix phi = dieudonne::phi_matrix(2, q4);
  PadicMatrix b = semilinear::linearize(semilinear::make_isocrystal(q4, phi));
  CHECK(padic::is_zero(b - padic::from_integers(q4, {{2, 0}, {0, 2}})));
  PadicMatrix phi_qp = dieudonne::phi_matrix(2, qp);
  CHECK(padic::is_zero(semilinear::linearize(semilinear::make_isocrystal(qp, phi_qp)) - phi_qp));

  auto k = Field::make(2, 2, 16);
  Padic w = Padic::teichmueller(k, {0, 1});
  PadicMatrix d = padic::materialize(PadicMatrix::Identity(2, 2), k);
  d(0, 0) = w;
  PadicMatrix bd = semilinear::linearize(semilinear::make_isocrystal(k, d));
  CHECK(padic::is_zero(bd - PadicMatrix::Identity(2, 2)));
}

TEST_CASE("newton polygon of explicit polynomials") {
  auto qp = Field::make(3, 1, 20);
  auto c = [&](long v) { return Padic::from_integer(qp, v); };
  // (t - 3)(t - 9)(t - 1) = t^3 - 13 t^2 + 39 t - 27
  auto s = semilinear::newton_polygon_slopes({c(-27), c(39), c(-13), c(1)});
  CHECK(s == std::vector<Rational>{0, 1, 2});
  // t^2 - 3: slopes 1/2, 1/2
  CHECK(semilinear::newton_polygon_slopes({c(-3), c(0), c(1)}) == repeated(Rational(1, 2), 2));
}

TEST_CASE("newton_slopes examples") {
  auto qp = Field::make(2, 1, 16);
  for (int n = 1; n <= 4; ++n) {
    auto iso = semilinear::make_isocrystal(qp, padic::materialize(PadicMatrix::Identity(n, n), qp));
    CHECK(semilinear::newton_slopes(iso) == repeated(0, n));
  }
  auto phi2 = semilinear::make_isocrystal(qp, dieudonne::phi_matrix(2, qp));
  CHECK(semilinear::newton_slopes(phi2) == repeated(Rational(1, 2), 2));
  auto phi3 = semilinear::make_isocrystal(qp, dieudonne::phi_matrix(3, qp));
  CHECK(semilinear::newton_slopes(phi3) == repeated(Rational(2, 3), 3));
}

TEST_CASE("slopes are invariant under semilinear base change and sum to v(det A)") {
  padic::Rng rng(77);
  for (int m = 1; m <= 3; ++m) {
    auto k = Field::make(3, m, 16);
    for (int n = 1; n <= 4; ++n) {
      auto model = dieudonne::build_DH(n, k);
      auto iso = model.contravariant();
      const auto base = semilinear::newton_slopes(iso);
      CHECK(total(base) == Rational(padic::determinant(iso.frob).valuation().value));
      for (int t = 0; t < 3; ++t) {
        PadicMatrix g = rng.unimodular(k, n);
        PadicMatrix moved = g * iso.frob * padic::inverse(padic::frobenius(g, 1));
        CHECK(semilinear::newton_slopes(semilinear::make_isocrystal(k, moved)) == base);
      }
    }
  }
}

TEST_CASE("phi_fixed_points examples") {
  auto qp = Field::make(2, 1, 16);
  auto one = semilinear::make_isocrystal(qp, padic::materialize(PadicMatrix::Identity(1, 1), qp));
  PadicMatrix fixed = semilinear::phi_fixed_points(one, 0);
  REQUIRE(fixed.cols() == 1);
  CHECK(fixed(0, 0).is_unit());

  auto phi2 = semilinear::make_isocrystal(qp, dieudonne::phi_matrix(2, qp));
  CHECK(semilinear::phi_fixed_points(phi2, 0).cols() == 0);
  CHECK(semilinear::phi_fixed_points(phi2, Rational(1, 2)).cols() == 0);

  // Over Q_4, phi = sigma on K^1: fixed points are Q_2, dimension 1.
  auto k = Field::make(2, 2, 16);
  auto sig = semilinear::make_isocrystal(k, padic::materialize(PadicMatrix::Identity(1, 1), k));
  PadicMatrix f = semilinear::phi_fixed_points(sig, 0);
  REQUIRE(f.cols() == 1);
  CHECK(f(0, 0).frobenius() == f(0, 0));

  // phi = p sigma: fixed points of twist 1.
  PadicMatrix pm = padic::materialize(PadicMatrix::Identity(2, 2), k) * Padic::prime_power(k, 1);
  auto iso = semilinear::make_isocrystal(k, pm);
  PadicMatrix f1 = semilinear::phi_fixed_points(iso, 1);
  CHECK(f1.cols() == 2);
  CHECK(padic::is_zero(iso.frob * padic::frobenius(f1, 1) - f1 * Padic::prime_power(k, 1)));
}

TEST_CASE("semilinear maps compose and invert") {
  auto k = Field::make(3, 2, 12);
  padic::Rng rng(4);
  semilinear::SemilinearMap a{rng.unimodular(k, 3), 1}, b{rng.unimodular(k, 3), -1};
  PadicMatrix v = rng.integral_matrix(k, 3, 1);
  CHECK(padic::is_zero(semilinear::compose(a, b).apply(v) - a.apply(b.apply(v))));
  CHECK(padic::is_zero(semilinear::compose(semilinear::inverse(a), a).apply(v) - v));
}

TEST_CASE("restrict_frobenius rejects unstable subspaces") {
  auto qp = Field::make(2, 1, 16);
  auto phi2 = semilinear::make_isocrystal(qp, dieudonne::phi_matrix(2, qp));
  PadicMatrix line = padic::from_integers(qp, {{1}, {0}});
  CHECK_THROWS_AS(semilinear::restrict_frobenius(phi2, line), std::invalid_argument);
}
