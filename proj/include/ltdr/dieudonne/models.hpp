#pragma once

#include <string>
#include <vector>

#include "ltdr/padic/random.hpp"
#include "ltdr/semilinear/isocrystal.hpp"

namespace ltdr::dieudonne {

using padic::FieldPtr;
using padic::Integer;
using padic::Padic;
using padic::PadicMatrix;
using semilinear::Isocrystal;
using semilinear::SemilinearMap;

/// Element sum_k c_k Pi^k of O_D (or D), with c_k in W(F_{p^n}) inside K.
/// Multiplication uses Pi c = sigma(c) Pi and Pi^n = p.
struct OdElement {
  int n = 1;
  std::vector<Padic> coeffs;

  static OdElement scalar(int n, const Padic& c);
  static OdElement pi_power(const FieldPtr& field, int n, int power = 1);
};

OdElement operator*(const OdElement& a, const OdElement& b);

/// Teichmüller generator of W(F_{p^n})^x inside K (requires n | [K:Q_p]).
Padic unramified_generator(const FieldPtr& field, int n);
/// Random element of W(F_{p^n}) and random unit of O_D.
Padic random_unramified(padic::Rng& rng, const FieldPtr& field, int n);
OdElement random_od_unit(padic::Rng& rng, const FieldPtr& field, int n);

/// D(H) with basis Pi^j (j = 0..n-1) and V(Pi^j x l) = Pi^{j+1} x sigma^{-1}(l).
struct LubinTateModel {
  int n = 1;
  FieldPtr field;
  SemilinearMap V;  // twist -1
  std::vector<std::string> basis_labels;

  /// Left multiplication by d in the basis Pi^j.
  PadicMatrix iota(const OdElement& d) const;
  /// F = p V^{-1}: sigma-semilinear with matrix Phi, slopes (n-1)/n.
  Isocrystal covariant() const;
  /// The V-matrix read as a sigma-semilinear Frobenius: slopes 1/n.
  Isocrystal contravariant() const;
};

/// D(G) with basis e_{a,b} (index a*n + b) and V(e_{a,b}) = p^{[b = n-1]} e_{a,b+1}.
struct SpecialModel {
  int n = 1;
  FieldPtr field;
  SemilinearMap V;  // twist -1
  std::vector<std::string> basis_labels;
  std::vector<int> grading;        // (a + b) mod n
  std::vector<Eigen::Index> n0;    // indices of e_{a,-a}

  static Eigen::Index index(int n, long a, long b);

  PadicMatrix iota(const OdElement& d) const;
  Isocrystal covariant() const;
  Isocrystal contravariant() const;
  /// V^{-1} o iota(Pi) restricted to N_0, sigma-semilinear.
  Isocrystal unit_root() const;

  /// Column vectors of N_0 coordinates placed in the full basis.
  PadicMatrix embed_n0(const PadicMatrix& coords) const;
  /// Span of iota(Pi^i) applied to the columns of embed_n0(coords), i = 0..n-1.
  PadicMatrix d_stable_span(const PadicMatrix& coords) const;
};

struct DeltaIsogeny {
  int n = 1;
  PadicMatrix matrix;  // D(H)^n -> D(G), copy k of D(H) at columns k*n..k*n+n-1
  long declared_height = 0;

  /// v_p(det matrix).
  long computed_height() const;
};

LubinTateModel build_DH(int n, const FieldPtr& field);
SpecialModel build_DG(int n, const FieldPtr& field);
/// Superdiagonal p and bottom-left 1; [p] when n = 1.
PadicMatrix phi_matrix(int n, const FieldPtr& field);
PadicMatrix iota_matrix(const LubinTateModel& model, const OdElement& d);
DeltaIsogeny delta_matrix(int n, const FieldPtr& field);

padic::Json to_json(const LubinTateModel& model);
padic::Json to_json(const SpecialModel& model);

}  // namespace ltdr::dieudonne
