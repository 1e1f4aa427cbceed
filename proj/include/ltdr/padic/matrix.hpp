#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "ltdr/padic/padic.hpp"

namespace ltdr::padic {

using PadicMatrix = Eigen::Matrix<Padic, Eigen::Dynamic, Eigen::Dynamic>;
using PadicVector = Eigen::Matrix<Padic, Eigen::Dynamic, 1>;
using PadicRow = Eigen::Matrix<Padic, 1, Eigen::Dynamic>;

/// Places every entry in `field`; field-less constants become exact field elements.
PadicMatrix materialize(const PadicMatrix& m, const FieldPtr& field);

/// Entrywise lift of an integer matrix.
PadicMatrix from_integers(const FieldPtr& field, const std::vector<std::vector<long>>& rows);

/// Smallest absolute precision over the entries (infinite for exact matrices).
long min_precision(const PadicMatrix& m);

/// The common field of a matrix's entries (nullptr when every entry is a constant).
FieldPtr field_of(const PadicMatrix& m);

PadicMatrix frobenius(const PadicMatrix& m, long power = 1);

/// a * b with each entry's dot product accumulated unreduced and reduced once.
PadicMatrix product(const PadicMatrix& a, const PadicMatrix& b);

/// Entrywise indistinguishable from zero.
bool is_zero(const PadicMatrix& m);

/// Smith-style reduction P * M * Q = diag(d_1, ..., d_r, *) with unimodular P, Q,
/// using minimal-valuation full pivoting.
///
/// Pivots whose exact valuation reaches `threshold`, and blocks in which no entry
/// has exact valuation, end the reduction; those divisors are reported as
/// lower bounds.
struct SmithForm {
  PadicMatrix reduced;
  PadicMatrix left, left_inverse;
  PadicMatrix right, right_inverse;
  std::vector<Valuation> divisors;
  int rank = 0;
  /// A divisor had exact valuation >= threshold: the true rank may exceed `rank`.
  bool indeterminate = false;
};

SmithForm smith_form(const PadicMatrix& m, long threshold = kInfinitePrecision);

struct RankCertificate {
  int rank = 0;
  std::vector<Valuation> divisors;
};

/// Rank certified by divisors of exact valuation strictly below `threshold`.
RankCertificate certified_rank(const PadicMatrix& m, long threshold);
RankCertificate certified_rank(const PadicMatrix& m);

/// Basis of the saturation (E cap O^n) of the column span of an integral matrix.
PadicMatrix saturate_lattice(const PadicMatrix& m);

PadicMatrix column_space_basis(const PadicMatrix& m);
PadicMatrix row_space_basis(const PadicMatrix& m);  // basis vectors as rows
PadicMatrix right_kernel(const PadicMatrix& m);     // basis vectors as columns
PadicMatrix left_kernel(const PadicMatrix& m);      // basis vectors as rows

PadicMatrix inverse(const PadicMatrix& m);

/// Characteristic polynomial det(t I - M) by Berkowitz's division-free
/// recurrence, lowest degree first.
std::vector<Padic> charpoly(const PadicMatrix& m);

Padic determinant(const PadicMatrix& m);

/// Column spans agree: rank[A | B] == rank A == rank B at precision.
bool same_column_space(const PadicMatrix& a, const PadicMatrix& b);

/// Scales a vector so that its first entry of minimal valuation is 1.
PadicMatrix normalize_vector(const PadicMatrix& v);

}  // namespace ltdr::padic
