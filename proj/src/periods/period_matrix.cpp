#include "ltdr/periods/period_matrix.hpp"

namespace ltdr::periods {

namespace {

padic::Json divisors_json(const std::vector<Valuation>& divisors) {
  padic::Json out = padic::Json::array();
  for (const auto& v : divisors) out.push_back(v.exact ? std::to_string(v.value) : ">=" + std::to_string(v.value));
  return out;
}

}  // namespace

PeriodMatrix from_matrix(const PadicMatrix& X) {
  if (X.rows() != X.cols()) throw std::invalid_argument("period matrix must be square");
  const int n = static_cast<int>(X.rows());
  FieldPtr field = padic::field_of(X);
  if (!field) throw std::invalid_argument("period matrix has no field");
  PadicMatrix x = padic::materialize(X, field);
  const long precision = padic::min_precision(x);
  auto s = padic::smith_form(x, precision);
  if (s.rank == n) throw RankError(RankFailure::full_rank, "rank n = " + std::to_string(n) + ", expected n - 1");
  if (s.indeterminate)
    throw RankError(RankFailure::indeterminate, "rank indeterminate at precision " + std::to_string(precision));
  if (s.rank < n - 1)
    throw RankError(RankFailure::rank_deficient, "rank <= " + std::to_string(s.rank) + ", expected n - 1");
  return {field, std::move(x), n, precision, std::move(s.divisors)};
}

ProjectivePoint fil_H(const PeriodMatrix& pm) {
  ProjectivePoint point;
  point.basis = padic::row_space_basis(pm.X).transpose();
  point.normal = padic::normalize_vector(padic::right_kernel(pm.X).transpose());
  return point;
}

ProjectivePoint fil_G(const PeriodMatrix& pm) {
  ProjectivePoint point;
  point.basis = padic::column_space_basis(pm.X);
  point.normal = padic::normalize_vector(padic::left_kernel(pm.X));
  return point;
}

PeriodMatrix correspond(const PeriodMatrix& pm) {
  PeriodMatrix out = pm;
  out.X = pm.X.transpose();
  return out;
}

OmegaVerdict omega_membership(const ProjectivePoint& point, std::optional<long> threshold) {
  const PadicMatrix& normal = point.normal;
  const Eigen::Index n = normal.cols();
  FieldPtr field = padic::field_of(normal);
  if (!field) throw std::invalid_argument("omega_membership: normal has no field");
  const int m = field->degree();
  PadicMatrix coords(n, m);
  for (Eigen::Index i = 0; i < n; ++i) {
    auto c = normal(0, i).in_field(field).coordinates();
    for (int d = 0; d < m; ++d) coords(i, d) = c[d];
  }
  const long t = threshold.value_or(padic::min_precision(coords));
  auto s = padic::smith_form(coords, t);
  OmegaVerdict verdict;
  verdict.divisors = s.divisors;
  if (n > m || (s.rank < n && !s.indeterminate)) {
    verdict.kind = OmegaKind::not_in_omega;
    verdict.witness = padic::normalize_vector(s.left.row(n - 1));
  } else if (s.rank == n) {
    verdict.kind = OmegaKind::in_omega;
  } else {
    verdict.kind = OmegaKind::indeterminate;
  }
  return verdict;
}

PeriodMatrix act(const PadicMatrix& g, const dieudonne::OdElement& d, const PeriodMatrix& pm) {
  if (g.rows() != pm.n || g.cols() != pm.n) throw std::invalid_argument("act: g must be n x n");
  const PadicMatrix gk = padic::materialize(g, pm.field);
  auto sg = padic::smith_form(gk, padic::min_precision(gk));
  if (sg.rank != pm.n) throw std::invalid_argument("act: g is not invertible at precision");
  const auto model = dieudonne::build_DH(pm.n, pm.field);
  const PadicMatrix id = model.iota(d);
  auto sd = padic::smith_form(id, padic::min_precision(id));
  if (sd.rank != pm.n) throw std::invalid_argument("act: d is not invertible at precision");
  return from_matrix(padic::product(padic::product(gk.transpose(), pm.X), padic::inverse(id)));
}

PeriodMatrix random_point(int n, const FieldPtr& field, std::uint64_t seed, SampleStats* stats, int budget) {
  if (n < 2) throw std::invalid_argument("random_point: n must be at least 2");
  if (field->degree() < n)
    throw FieldTooSmall("random_point: [K:Q_p] = " + std::to_string(field->degree()) + " < n = " + std::to_string(n) +
                        ", every hyperplane contains a rational vector");
  padic::Rng rng(seed);
  SampleStats local;
  for (int attempt = 0; attempt < budget; ++attempt) {
    ++local.attempts;
    PadicMatrix b = rng.integral_matrix(field, n, n - 1);
    PadicMatrix r = rng.integral_matrix(field, n - 1, n);
    PeriodMatrix pm;
    try {
      pm = from_matrix(padic::product(b, r));
    } catch (const RankError&) {
      continue;
    }
    auto verdict = omega_membership(fil_G(pm));
    if (verdict.kind == OmegaKind::indeterminate) ++local.indeterminate;
    if (verdict.kind != OmegaKind::in_omega) continue;
    if (stats) *stats = local;
    return pm;
  }
  if (stats) *stats = local;
  throw std::runtime_error("random_point: sampling budget exhausted");
}

std::string to_string(OmegaKind kind) {
  switch (kind) {
    case OmegaKind::in_omega:
      return "in_Omega";
    case OmegaKind::not_in_omega:
      return "not_in_Omega";
    case OmegaKind::indeterminate:
      return "indeterminate";
  }
  return "indeterminate";
}

padic::Json to_json(const ProjectivePoint& point, const FieldPtr& field) {
  padic::Json j;
  j["basis"] = padic::to_json(point.basis, field);
  j["normal"] = padic::to_json(point.normal, field);
  return j;
}

padic::Json to_json(const OmegaVerdict& verdict, const FieldPtr& field) {
  padic::Json j;
  j["verdict"] = to_string(verdict.kind);
  j["divisors"] = divisors_json(verdict.divisors);
  if (verdict.witness) j["witness"] = padic::to_json(*verdict.witness, field->prime_field());
  return j;
}

padic::Json to_json(const PeriodMatrix& pm) {
  padic::Json j;
  j["n"] = pm.n;
  j["field"] = padic::to_json(*pm.field);
  j["precision"] = pm.precision;
  j["X"] = padic::to_json(pm.X, pm.field);
  j["divisors"] = divisors_json(pm.divisors);
  const auto h = fil_H(pm);
  const auto g = fil_G(pm);
  j["fil_H"] = to_json(h, pm.field);
  j["fil_G"] = to_json(g, pm.field);
  j["omega"] = {{"fil_H", to_json(omega_membership(h), pm.field)}, {"fil_G", to_json(omega_membership(g), pm.field)}};
  return j;
}

}  // namespace ltdr::periods
