#include <doctest.h>

#include "ltdr/dieudonne/models.hpp"

using namespace ltdr;
using dieudonne::OdElement;
using padic::Field;
using padic::Padic;
using padic::PadicMatrix;
using padic::Rational;

namespace {

std::vector<Rational> repeated(Rational r, int k) { return std::vector<Rational>(k, r); }

}  // namespace

TEST_CASE("build_DH: V^n = p sigma^{-n}") {
  for (int n = 1; n <= 5; ++n) {
    auto k = Field::make(2, n, 12);
    auto model = dieudonne::build_DH(n, k);
    semilinear::SemilinearMap acc = model.V;
    for (int i = 1; i < n; ++i) acc = semilinear::compose(model.V, acc);
    CHECK(acc.twist == -n);
    CHECK(padic::is_zero(acc.matrix - PadicMatrix::Identity(n, n) * Padic::prime_power(k, 1)));
  }
}

TEST_CASE("build_DH(3): V^3(1 x l) = p (1 x sigma^{-3} l)") {
  auto k = Field::make(3, 3, 10);
  auto model = dieudonne::build_DH(3, k);
  padic::Rng rng(9);
  Padic l = rng.unit(k);
  PadicMatrix v = padic::materialize(PadicMatrix::Zero(3, 1), k);
  v(0) = l;
  PadicMatrix out = model.V.apply(model.V.apply(model.V.apply(v)));
  CHECK(out(0) == Padic::prime_power(k, 1) * l.frobenius(-3));
  CHECK(out(1).is_zero());
  CHECK(out(2).is_zero());
}

TEST_CASE("slopes of the models") {
  for (int n = 1; n <= 3; ++n) {
    auto k = Field::make(2, n, 16);
    auto h = dieudonne::build_DH(n, k);
    CHECK(semilinear::newton_slopes(h.contravariant()) == repeated(Rational(1, n), n));
    CHECK(semilinear::newton_slopes(h.covariant()) == repeated(Rational(n - 1, n), n));
    auto g = dieudonne::build_DG(n, k);
    CHECK(semilinear::newton_slopes(g.contravariant()) == repeated(Rational(1, n), n * n));
  }
}

TEST_CASE("phi_matrix examples") {
  auto qp = Field::make(2, 1, 16);
  CHECK(padic::is_zero(dieudonne::phi_matrix(2, qp) - padic::from_integers(qp, {{0, 2}, {1, 0}})));
  CHECK(padic::is_zero(dieudonne::phi_matrix(1, qp) - padic::from_integers(qp, {{2}})));
  CHECK(padic::determinant(dieudonne::phi_matrix(3, qp)).valuation() == padic::Valuation::exactly(2));
  for (int n = 2; n <= 5; ++n) {
    auto k = Field::make(2, n, 12);
    CHECK(padic::is_zero(dieudonne::build_DH(n, k).covariant().frob - dieudonne::phi_matrix(n, k)));
  }
}

TEST_CASE("iota_matrix examples") {
  auto k = Field::make(2, 2, 16);
  auto model = dieudonne::build_DH(2, k);
  CHECK(padic::is_zero(model.iota(OdElement::scalar(2, Padic(1).in_field(k))) - PadicMatrix::Identity(2, 2)));
  CHECK(padic::is_zero(model.iota(OdElement::pi_power(k, 2, 1)) - padic::from_integers(k, {{0, 2}, {1, 0}})));
  Padic a = Padic::generator(k) + Padic(3);
  PadicMatrix da = model.iota(OdElement::scalar(2, a));
  CHECK(da(0, 0) == a);
  CHECK(da(1, 1) == a.frobenius(-1));
  CHECK(da(0, 1).is_zero());
  CHECK_THROWS(model.iota(OdElement::scalar(2, Padic(0).in_field(k))));
}

TEST_CASE("iota is multiplicative and commutes with V") {
  for (int n = 1; n <= 4; ++n) {
    auto k = Field::make(3, n, 10);
    padic::Rng rng(static_cast<std::uint64_t>(n));
    auto h = dieudonne::build_DH(n, k);
    auto g = dieudonne::build_DG(n, k);
    for (int t = 0; t < 5; ++t) {
      OdElement d1 = dieudonne::random_od_unit(rng, k, n);
      OdElement d2 = dieudonne::random_od_unit(rng, k, n);
      CHECK(padic::is_zero(h.iota(d1 * d2) - h.iota(d1) * h.iota(d2)));
      CHECK(padic::is_zero(g.iota(d1 * d2) - g.iota(d1) * g.iota(d2)));
      // V o iota(d) = iota(d) o V, with V sigma^{-1}-semilinear.
      CHECK(padic::is_zero(h.V.matrix * padic::frobenius(h.iota(d1), -1) - h.iota(d1) * h.V.matrix));
      CHECK(padic::is_zero(g.V.matrix * padic::frobenius(g.iota(d1), -1) - g.iota(d1) * g.V.matrix));
    }
  }
}

TEST_CASE("build_DG(2) instantiates the V rule") {
  auto k = Field::make(2, 2, 16);
  auto g = dieudonne::build_DG(2, k);
  const auto e00 = dieudonne::SpecialModel::index(2, 0, 0);
  const auto e01 = dieudonne::SpecialModel::index(2, 0, 1);
  CHECK(g.V.matrix(e00, e01) == Padic(2));
  CHECK(g.V.matrix(e01, e00) == Padic(1));
  CHECK(g.V.matrix.col(e01).unaryExpr([](const Padic& x) { return x.is_zero() ? 0 : 1; }).count() == 1);
}

TEST_CASE("grading of D(G)") {
  for (int n = 1; n <= 4; ++n) {
    auto k = Field::make(2, n, 12);
    auto g = dieudonne::build_DG(n, k);
    CHECK(g.n0.size() == static_cast<std::size_t>(n));
    for (int piece = 0; piece < n; ++piece)
      CHECK(std::count(g.grading.begin(), g.grading.end(), piece) == n);
    // iota(zeta) acts on N_i by zeta^{sigma^{-i}}; V and iota(Pi) raise the degree by one.
    Padic zeta = dieudonne::unramified_generator(k, n);
    PadicMatrix z = g.iota(OdElement::scalar(n, zeta));
    PadicMatrix pi = g.iota(OdElement::pi_power(k, n, 1));
    for (Eigen::Index i = 0; i < z.rows(); ++i) {
      CHECK(z(i, i) == zeta.frobenius(-g.grading[i]));
      for (Eigen::Index r = 0; r < z.rows(); ++r) {
        if (!pi(r, i).is_zero()) CHECK(g.grading[r] == (g.grading[i] + 1) % n);
        if (!g.V.matrix(r, i).is_zero()) CHECK(g.grading[r] == (g.grading[i] + 1) % n);
      }
    }
  }
}

TEST_CASE("unit-root operator on N_0") {
  for (int n = 1; n <= 4; ++n) {
    auto k = Field::make(2, n, 12);
    auto g = dieudonne::build_DG(n, k);
    auto u = g.unit_root();
    CHECK(semilinear::newton_slopes(u) == repeated(0, n));
    PadicMatrix fixed = semilinear::phi_fixed_points(u, 0);
    CHECK(fixed.cols() == n * 1);
    // Same F-span as the structural basis e_{a,-a}.
    CHECK(padic::same_column_space(fixed, padic::materialize(PadicMatrix::Identity(n, n), k)));
    for (Eigen::Index i = 0; i < fixed.rows(); ++i)
      for (Eigen::Index j = 0; j < fixed.cols(); ++j) CHECK(fixed(i, j).frobenius() == fixed(i, j));
  }
}

TEST_CASE("delta heights and intertwining") {
  for (int n = 1; n <= 5; ++n) {
    auto k = Field::make(2, n, 12);
    auto delta = dieudonne::delta_matrix(n, k);
    CHECK(delta.declared_height == n * (n - 1) / 2);
    CHECK(delta.computed_height() == delta.declared_height);
  }
  for (int n = 1; n <= 3; ++n) {
    auto k = Field::make(3, n, 10);
    padic::Rng rng(40 + n);
    auto h = dieudonne::build_DH(n, k);
    auto g = dieudonne::build_DG(n, k);
    auto delta = dieudonne::delta_matrix(n, k);
    const Eigen::Index size = static_cast<Eigen::Index>(n) * n;
    auto block_diag = [&](const PadicMatrix& b) {
      PadicMatrix out = padic::materialize(PadicMatrix::Zero(size, size), k);
      for (int c = 0; c < n; ++c) out.block(c * n, c * n, n, n) = b;
      return out;
    };
    CHECK(padic::is_zero(g.V.matrix * delta.matrix - delta.matrix * block_diag(h.V.matrix)));
    for (int t = 0; t < 4; ++t) {
      OdElement d = dieudonne::random_od_unit(rng, k, n);
      CHECK(padic::is_zero(g.iota(d) * delta.matrix - delta.matrix * block_diag(h.iota(d))));
    }
  }
}

TEST_CASE("weak admissibility on D(G) with D-stable filtrations") {
  const int n = 2;
  auto k = Field::make(2, 2, 16);
  auto g = dieudonne::build_DG(n, k);
  auto iso = g.covariant();
  Padic w = Padic::teichmueller(k, {0, 1});
  auto line = [&](const Padic& a, const Padic& b) {
    PadicMatrix v(2, 1);
    v << a, b;
    return padic::materialize(v, k);
  };
  std::vector<PadicMatrix> rational_lines = {line(1, 0), line(0, 1), line(1, 1), line(1, -1), line(1, 2)};
  std::vector<PadicMatrix> subs;
  for (const auto& l : rational_lines) subs.push_back(g.d_stable_span(l));

  // Fil_0 = span{(1, w)} avoids every rational line.
  semilinear::FilteredIsocrystal good{iso, g.d_stable_span(line(Padic(1), w))};
  auto report = semilinear::weak_admissibility_sample(good, subs);
  CHECK(report.equality_on_total);
  CHECK(report.weakly_admissible_on_sample);

  // Fil_0 = span{(1, 1)} contains a rational vector.
  semilinear::FilteredIsocrystal bad{iso, g.d_stable_span(line(1, 1))};
  auto bad_report = semilinear::weak_admissibility_sample(bad, subs);
  CHECK(bad_report.equality_on_total);
  CHECK(!bad_report.weakly_admissible_on_sample);
  CHECK(!bad_report.sub_objects[2].pass);
  CHECK(bad_report.sub_objects[0].pass);

  // Full object: t_H = t_N.
  PadicMatrix all = padic::materialize(PadicMatrix::Identity(4, 4), k);
  auto full = semilinear::weak_admissibility_sample(good, {all});
  CHECK(full.sub_objects[0].t_newton == Rational(full.sub_objects[0].t_hodge));
}

TEST_CASE("Pi powers multiply through Pi^n = p") {
  for (int n = 1; n <= 4; ++n) {
    auto k = Field::make(3, n, 12);
    for (int a = -n; a <= n; ++a)
      for (int b = -n; b <= n; ++b) {
        OdElement prod = OdElement::pi_power(k, n, a) * OdElement::pi_power(k, n, b);
        OdElement want = OdElement::pi_power(k, n, a + b);
        for (int i = 0; i < n; ++i) CHECK(prod.coeffs[i] == want.coeffs[i]);
      }
  }
}
