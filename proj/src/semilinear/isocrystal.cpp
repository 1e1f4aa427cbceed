#include "ltdr/semilinear/isocrystal.hpp"

#include <algorithm>

namespace ltdr::semilinear {

namespace {

int exact_rank(const PadicMatrix& m) {
  if (m.cols() == 0 || m.rows() == 0) return 0;
  auto s = padic::smith_form(m, padic::min_precision(m));
  if (s.indeterminate) throw padic::PrecisionError("rank indeterminate at precision");
  return s.rank;
}

PadicMatrix hcat(const PadicMatrix& a, const PadicMatrix& b) {
  PadicMatrix out(a.rows(), a.cols() + b.cols());
  out << a, b;
  return out;
}

}  // namespace

SemilinearMap compose(const SemilinearMap& a, const SemilinearMap& b) {
  return {a.matrix * padic::frobenius(b.matrix, a.twist), a.twist + b.twist};
}

SemilinearMap inverse(const SemilinearMap& f) {
  return {padic::frobenius(padic::inverse(f.matrix), -f.twist), -f.twist};
}

Isocrystal make_isocrystal(const FieldPtr& field, const PadicMatrix& frob) {
  if (frob.rows() != frob.cols()) throw std::invalid_argument("isocrystal: Frobenius matrix must be square");
  PadicMatrix a = padic::materialize(frob, field);
  auto s = padic::smith_form(a, padic::min_precision(a));
  if (s.rank != a.rows()) throw padic::PrecisionError("isocrystal: Frobenius matrix not certified invertible");
  return {field, std::move(a)};
}

PadicMatrix linearize(const Isocrystal& iso) {
  PadicMatrix b = iso.frob;
  const int m = iso.field->degree();
  for (int k = 1; k < m; ++k) b = padic::product(b, padic::frobenius(iso.frob, k));
  return b;
}

std::vector<Rational> newton_polygon_slopes(const std::vector<Padic>& poly) {
  const long n = static_cast<long>(poly.size()) - 1;
  if (n < 1) return {};
  struct Point {
    long x;
    long y;
  };
  std::vector<Point> exact;
  for (long i = 0; i <= n; ++i) {
    auto v = poly[i].valuation();
    if (v.exact) exact.push_back({i, v.value});
  }
  if (exact.empty() || exact.front().x != 0 || exact.back().x != n)
    throw padic::PrecisionError("newton polygon: end coefficients not resolved at precision");
  // Lower convex hull, left to right.
  std::vector<Point> hull;
  for (const auto& pt : exact) {
    while (hull.size() >= 2) {
      const Point& a = hull[hull.size() - 2];
      const Point& b = hull.back();
      // Drop b when it lies on or above the segment a -> pt.
      const Integer lhs = Integer(b.y - a.y) * (pt.x - a.x);
      const Integer rhs = Integer(pt.y - a.y) * (b.x - a.x);
      if (lhs >= rhs)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(pt);
  }
  for (long i = 0; i <= n; ++i) {
    auto v = poly[i].valuation();
    if (v.exact) continue;
    std::size_t k = 1;
    while (hull[k].x < i) ++k;
    const Point& a = hull[k - 1];
    const Point& b = hull[k];
    const Rational at = Rational(a.y) + Rational(b.y - a.y, b.x - a.x) * (i - a.x);
    if (at > v.value) throw padic::PrecisionError("newton polygon: unresolved coefficient could lower the polygon");
  }
  std::vector<Rational> slopes;
  for (std::size_t k = 1; k < hull.size(); ++k) {
    Rational s(hull[k - 1].y - hull[k].y, hull[k].x - hull[k - 1].x);
    s.canonicalize();
    for (long j = hull[k - 1].x; j < hull[k].x; ++j) slopes.push_back(s);
  }
  std::sort(slopes.begin(), slopes.end());
  return slopes;
}

std::vector<Rational> newton_slopes(const Isocrystal& iso) {
  auto slopes = newton_polygon_slopes(padic::charpoly(linearize(iso)));
  const long m = iso.field->degree();
  for (auto& s : slopes) {
    s /= m;
    s.canonicalize();
  }
  return slopes;
}

PadicMatrix phi_fixed_points(const Isocrystal& iso, const Rational& twist) {
  const Eigen::Index n = iso.dim();
  if (twist.get_den() != 1) return PadicMatrix(n, 0);
  const FieldPtr& field = iso.field;
  const int m = field->degree();
  const long k = twist.get_num().get_si();
  const Padic scale = Padic::from_rational(field, k >= 0 ? Rational(field->prime_power(k)) : Rational(1, field->prime_power(-k)));
  FieldPtr qp = field->prime_field();
  const Eigen::Index size = n * m;
  PadicMatrix system(size, size);
  Padic power = Padic::prime_power(field, 0);
  const Padic x = Padic::generator(field);
  for (int c = 0; c < m; ++c) {
    for (Eigen::Index j = 0; j < n; ++j) {
      PadicMatrix v = padic::materialize(PadicMatrix::Zero(n, 1), field);
      v(j) = power;
      PadicMatrix image = iso.frob * padic::frobenius(v, 1) - v * scale;
      for (Eigen::Index i = 0; i < n; ++i) {
        auto coords = padic::materialize(image, field)(i).coordinates();
        for (int d = 0; d < m; ++d) system(i * m + d, j * m + c) = coords[d];
      }
    }
    power *= x;
  }
  PadicMatrix kernel = padic::right_kernel(system);
  PadicMatrix out(n, kernel.cols());
  for (Eigen::Index col = 0; col < kernel.cols(); ++col) {
    for (Eigen::Index i = 0; i < n; ++i) {
      std::vector<Padic> coords;
      for (int d = 0; d < m; ++d) coords.push_back(kernel(i * m + d, col));
      out(i, col) = Padic::from_coordinates(field, coords);
    }
  }
  return out;
}

PadicMatrix restrict_frobenius(const Isocrystal& iso, const PadicMatrix& span) {
  const PadicMatrix s_mat = padic::materialize(span, iso.field);
  const Eigen::Index r = s_mat.cols();
  auto s = padic::smith_form(s_mat, padic::min_precision(s_mat));
  if (s.indeterminate || s.rank != r) throw std::invalid_argument("sub-object: spanning columns are not independent");
  const PadicMatrix image = iso.frob * padic::frobenius(s_mat, 1);
  const PadicMatrix moved = s.left * image;
  if (!padic::is_zero(moved.bottomRows(s_mat.rows() - r)))
    throw std::invalid_argument("sub-object: subspace is not phi-stable");
  PadicMatrix top = moved.topRows(r);
  for (Eigen::Index i = 0; i < r; ++i) {
    const Padic inv = s.reduced(i, i).inverse();
    for (Eigen::Index j = 0; j < r; ++j) top(i, j) = top(i, j) * inv;
  }
  return s.right * top;
}

AdmissibilityReport weak_admissibility_sample(const FilteredIsocrystal& fi, const std::vector<PadicMatrix>& sub_objects) {
  const FieldPtr& field = fi.base.field;
  const PadicMatrix fil = padic::materialize(fi.filtration, field);
  const long fil_dim = exact_rank(fil);
  AdmissibilityReport report;
  report.weakly_admissible_on_sample = true;
  for (const auto& sub : sub_objects) {
    const PadicMatrix s = padic::materialize(sub, field);
    const PadicMatrix r = restrict_frobenius(fi.base, s);
    SubObjectReport entry;
    for (const auto& slope : newton_slopes(make_isocrystal(field, r))) entry.t_newton += slope;
    entry.t_hodge = static_cast<long>(s.cols()) + fil_dim - exact_rank(hcat(s, fil));
    entry.pass = Rational(entry.t_hodge) <= entry.t_newton;
    report.weakly_admissible_on_sample = report.weakly_admissible_on_sample && entry.pass;
    report.sub_objects.push_back(entry);
  }
  report.t_hodge_total = fil_dim;
  for (const auto& slope : newton_slopes(fi.base)) report.t_newton_total += slope;
  report.equality_on_total = Rational(report.t_hodge_total) == report.t_newton_total;
  report.weakly_admissible_on_sample = report.weakly_admissible_on_sample && report.equality_on_total;
  return report;
}

padic::Json to_json(const Isocrystal& iso) {
  padic::Json j;
  j["field"] = padic::to_json(*iso.field);
  j["dim"] = iso.dim();
  j["frob_matrix"] = padic::to_json(iso.frob, iso.field);
  return j;
}

padic::Json slopes_json(const std::vector<Rational>& slopes) {
  padic::Json out = padic::Json::array();
  for (const auto& s : slopes) out.push_back({s.get_num().get_si(), s.get_den().get_si()});
  return out;
}

}  // namespace ltdr::semilinear
