#pragma once

#include <string>
#include <vector>

#include "ltdr/padic/io.hpp"
#include "ltdr/padic/matrix.hpp"

namespace ltdr::semilinear {

using padic::FieldPtr;
using padic::Padic;
using padic::PadicMatrix;
using padic::Integer;
using padic::Rational;

/// v -> matrix * sigma^twist(v).
struct SemilinearMap {
  PadicMatrix matrix;
  long twist = 1;

  PadicMatrix apply(const PadicMatrix& v) const { return matrix * padic::frobenius(v, twist); }
};

/// a o b.
SemilinearMap compose(const SemilinearMap& a, const SemilinearMap& b);
SemilinearMap inverse(const SemilinearMap& f);

/// Finite free module over K = Q_{p^m} with phi(v) = A sigma(v).
struct Isocrystal {
  FieldPtr field;
  PadicMatrix frob;

  Eigen::Index dim() const { return frob.rows(); }
  SemilinearMap phi() const { return {frob, 1}; }
};

Isocrystal make_isocrystal(const FieldPtr& field, const PadicMatrix& frob);

/// Isocrystal with a single-jump filtration given by spanning columns over the same field.
struct FilteredIsocrystal {
  Isocrystal base;
  PadicMatrix filtration;
};

/// B = A sigma(A) ... sigma^{m-1}(A), the matrix of phi^m.
PadicMatrix linearize(const Isocrystal& iso);

/// Lower Newton polygon slopes of sum c_i t^i (lowest degree first), as root
/// valuations in increasing order with multiplicity. Throws PrecisionError
/// when an indistinguishable-from-zero coefficient could lower the polygon.
std::vector<Rational> newton_polygon_slopes(const std::vector<Padic>& poly);

/// Slopes of phi, in increasing order with multiplicity.
std::vector<Rational> newton_slopes(const Isocrystal& iso);

/// Q_p-basis (columns of an n x d matrix over K) of {v : phi(v) = p^twist v}.
/// Non-integral twists give an empty basis.
PadicMatrix phi_fixed_points(const Isocrystal& iso, const Rational& twist);

/// Matrix R with A sigma(S) = S R, when the column span of S is phi-stable.
/// Throws std::invalid_argument otherwise.
PadicMatrix restrict_frobenius(const Isocrystal& iso, const PadicMatrix& span);

struct SubObjectReport {
  long t_hodge = 0;
  Rational t_newton;
  bool pass = false;
};

struct AdmissibilityReport {
  std::vector<SubObjectReport> sub_objects;
  long t_hodge_total = 0;
  Rational t_newton_total;
  bool equality_on_total = false;
  bool weakly_admissible_on_sample = false;
};

/// t_H(N') = dim(N' cap Fil) against t_N(N') = sum of slopes of phi on N',
/// for each supplied phi-stable sub-object (spanning columns), plus the total.
AdmissibilityReport weak_admissibility_sample(const FilteredIsocrystal& fi, const std::vector<PadicMatrix>& sub_objects);

padic::Json to_json(const Isocrystal& iso);
padic::Json slopes_json(const std::vector<Rational>& slopes);

}  // namespace ltdr::semilinear
