#include "ltdr/dieudonne/models.hpp"

namespace ltdr::dieudonne {

namespace {

long mod(long a, long n) { return ((a % n) + n) % n; }

long floor_div(long a, long n) { return (a - mod(a, n)) / n; }

void require_divides(int n, const FieldPtr& field) {
  if (field->degree() % n != 0)
    throw std::invalid_argument("O_D action needs Q_{p^" + std::to_string(n) + "} inside " + field->describe());
}

SemilinearMap verschiebung(const PadicMatrix& a) { return {a, -1}; }

Isocrystal covariant_of(const SemilinearMap& v, const FieldPtr& field) {
  // F = p V^{-1} = p sigma(A^{-1}) sigma.
  auto inv = semilinear::inverse(v);
  return semilinear::make_isocrystal(field, inv.matrix * Padic::prime_power(field, 1));
}

}  // namespace

OdElement OdElement::scalar(int n, const Padic& c) {
  OdElement out;
  out.n = n;
  out.coeffs.assign(n, Padic(0));
  out.coeffs[0] = c;
  return out;
}

OdElement OdElement::pi_power(const FieldPtr& field, int n, int power) {
  OdElement out;
  out.n = n;
  out.coeffs.assign(n, Padic(0));
  out.coeffs[mod(power, n)] = Padic::prime_power(field, floor_div(power, n));
  return out;
}

OdElement operator*(const OdElement& a, const OdElement& b) {
  if (a.n != b.n) throw std::invalid_argument("O_D elements of different heights");
  const int n = a.n;
  OdElement out;
  out.n = n;
  out.coeffs.assign(n, Padic(0));
  for (int i = 0; i < n; ++i) {
    if (a.coeffs[i].is_zero()) continue;
    for (int j = 0; j < n; ++j) {
      if (b.coeffs[j].is_zero()) continue;
      Padic term = a.coeffs[i] * b.coeffs[j].frobenius(i);
      if (i + j >= n) {
        if (!term.has_field()) throw std::invalid_argument("O_D product: Pi^n = p needs coefficients in a field");
        term *= Padic::prime_power(term.field(), 1);
      }
      out.coeffs[(i + j) % n] += term;
    }
  }
  return out;
}

Padic unramified_generator(const FieldPtr& field, int n) {
  require_divides(n, field);
  Integer q, qn;
  mpz_ui_pow_ui(q.get_mpz_t(), field->prime(), field->degree());
  mpz_ui_pow_ui(qn.get_mpz_t(), field->prime(), n);
  auto g = field->residue_power(field->residue_generator(), Integer((q - 1) / (qn - 1)));
  return Padic::teichmueller(field, g);
}

Padic random_unramified(padic::Rng& rng, const FieldPtr& field, int n) {
  const Padic zeta = unramified_generator(field, n);
  Padic acc;
  Padic power = Padic::prime_power(field, 0);
  for (int i = 0; i < n; ++i) {
    acc += rng.integral_in_prime_field(field) * power;
    power *= zeta;
  }
  return acc.has_field() ? acc : Padic(0).in_field(field);
}

OdElement random_od_unit(padic::Rng& rng, const FieldPtr& field, int n) {
  OdElement d;
  d.n = n;
  for (int k = 0; k < n; ++k) d.coeffs.push_back(random_unramified(rng, field, n));
  while (!d.coeffs[0].is_unit()) d.coeffs[0] = random_unramified(rng, field, n);
  return d;
}

PadicMatrix LubinTateModel::iota(const OdElement& d) const {
  require_divides(n, field);
  if (d.n != n) throw std::invalid_argument("iota: element height differs from the model");
  bool zero = true;
  for (const auto& c : d.coeffs) zero = zero && c.is_zero();
  if (zero) throw std::invalid_argument("iota: element is zero");
  PadicMatrix m = padic::materialize(PadicMatrix::Zero(n, n), field);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      if (d.coeffs[k].is_zero()) continue;
      const long t = k + j;
      m(t % n, j) += d.coeffs[k].in_field(field).frobenius(-t) * Padic::prime_power(field, t / n);
    }
  return m;
}

Isocrystal LubinTateModel::covariant() const { return covariant_of(V, field); }

Isocrystal LubinTateModel::contravariant() const { return semilinear::make_isocrystal(field, V.matrix); }

Eigen::Index SpecialModel::index(int n, long a, long b) { return mod(a, n) * n + mod(b, n); }

PadicMatrix SpecialModel::iota(const OdElement& d) const {
  require_divides(n, field);
  if (d.n != n) throw std::invalid_argument("iota: element height differs from the model");
  const Eigen::Index size = static_cast<Eigen::Index>(n) * n;
  PadicMatrix m = padic::materialize(PadicMatrix::Zero(size, size), field);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int l = 0; l < n; ++l) {
        if (d.coeffs[l].is_zero()) continue;
        const long t = l + b;
        m(index(n, a, t), index(n, a, b)) +=
            d.coeffs[l].in_field(field).frobenius(-(a + t)) * Padic::prime_power(field, t / n);
      }
  return m;
}

Isocrystal SpecialModel::covariant() const { return covariant_of(V, field); }

Isocrystal SpecialModel::contravariant() const { return semilinear::make_isocrystal(field, V.matrix); }

Isocrystal SpecialModel::unit_root() const {
  const PadicMatrix m_pi = iota(OdElement::pi_power(field, n, 1));
  const SemilinearMap u = semilinear::compose(semilinear::inverse(V), SemilinearMap{m_pi, 0});
  PadicMatrix block(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) block(i, j) = u.matrix(n0[i], n0[j]);
  return semilinear::make_isocrystal(field, block);
}

PadicMatrix SpecialModel::embed_n0(const PadicMatrix& coords) const {
  PadicMatrix out = padic::materialize(PadicMatrix::Zero(static_cast<Eigen::Index>(n) * n, coords.cols()), field);
  for (int i = 0; i < n; ++i) out.row(n0[i]) = padic::materialize(coords.row(i), field);
  return out;
}

PadicMatrix SpecialModel::d_stable_span(const PadicMatrix& coords) const {
  const PadicMatrix base = embed_n0(coords);
  const PadicMatrix m_pi = iota(OdElement::pi_power(field, n, 1));
  PadicMatrix out(base.rows(), base.cols() * n);
  PadicMatrix current = base;
  for (int i = 0; i < n; ++i) {
    out.middleCols(i * base.cols(), base.cols()) = current;
    current = m_pi * current;
  }
  return out;
}

long DeltaIsogeny::computed_height() const {
  auto v = padic::determinant(matrix).valuation();
  if (!v.exact) throw padic::PrecisionError("delta: determinant not resolved at precision");
  return v.value;
}

LubinTateModel build_DH(int n, const FieldPtr& field) {
  if (n < 1) throw std::invalid_argument("build_DH: n must be positive");
  LubinTateModel model;
  model.n = n;
  model.field = field;
  PadicMatrix a = padic::materialize(PadicMatrix::Zero(n, n), field);
  for (int j = 0; j < n; ++j) a((j + 1) % n, j) = Padic::prime_power(field, j == n - 1 ? 1 : 0);
  model.V = verschiebung(a);
  for (int j = 0; j < n; ++j) model.basis_labels.push_back("Pi^" + std::to_string(j));
  return model;
}

SpecialModel build_DG(int n, const FieldPtr& field) {
  if (n < 1) throw std::invalid_argument("build_DG: n must be positive");
  SpecialModel model;
  model.n = n;
  model.field = field;
  const Eigen::Index size = static_cast<Eigen::Index>(n) * n;
  PadicMatrix a = padic::materialize(PadicMatrix::Zero(size, size), field);
  for (int i = 0; i < n; ++i)
    for (int b = 0; b < n; ++b) {
      a(SpecialModel::index(n, i, b + 1), SpecialModel::index(n, i, b)) = Padic::prime_power(field, b == n - 1 ? 1 : 0);
      model.basis_labels.push_back("e_" + std::to_string(i) + "," + std::to_string(b));
      model.grading.push_back(static_cast<int>((i + b) % n));
    }
  model.V = verschiebung(a);
  for (int i = 0; i < n; ++i) model.n0.push_back(SpecialModel::index(n, i, -i));
  return model;
}

PadicMatrix phi_matrix(int n, const FieldPtr& field) {
  if (n < 1) throw std::invalid_argument("phi_matrix: n must be positive");
  if (n == 1) return padic::materialize(PadicMatrix::Constant(1, 1, Padic(field->prime())), field);
  PadicMatrix phi = padic::materialize(PadicMatrix::Zero(n, n), field);
  for (int i = 0; i + 1 < n; ++i) phi(i, i + 1) = Padic::prime_power(field, 1);
  phi(n - 1, 0) = Padic::prime_power(field, 0);
  return phi;
}

PadicMatrix iota_matrix(const LubinTateModel& model, const OdElement& d) { return model.iota(d); }

DeltaIsogeny delta_matrix(int n, const FieldPtr& field) {
  if (n < 1) throw std::invalid_argument("delta_matrix: n must be positive");
  DeltaIsogeny delta;
  delta.n = n;
  delta.declared_height = static_cast<long>(n) * (n - 1) / 2;
  const Eigen::Index size = static_cast<Eigen::Index>(n) * n;
  delta.matrix = padic::materialize(PadicMatrix::Zero(size, size), field);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      delta.matrix(SpecialModel::index(n, -k, j + k), k * n + j) = Padic::prime_power(field, (j + k) / n);
  return delta;
}

padic::Json to_json(const LubinTateModel& model) {
  padic::Json j;
  j["n"] = model.n;
  j["basis_labels"] = model.basis_labels;
  j["V_matrix"] = padic::to_json(model.V.matrix, model.field);
  j["phi_matrix"] = padic::to_json(phi_matrix(model.n, model.field), model.field);
  j["grading"] = padic::Json::array();
  for (int i = 0; i < model.n; ++i) j["grading"].push_back(i);
  return j;
}

padic::Json to_json(const SpecialModel& model) {
  padic::Json j;
  j["n"] = model.n;
  j["basis_labels"] = model.basis_labels;
  j["V_matrix"] = padic::to_json(model.V.matrix, model.field);
  j["phi_matrix"] = padic::to_json(model.covariant().frob, model.field);
  j["grading"] = model.grading;
  return j;
}

}  // namespace ltdr::dieudonne
