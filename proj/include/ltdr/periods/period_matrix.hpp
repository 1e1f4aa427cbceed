#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ltdr/dieudonne/models.hpp"

namespace ltdr::periods {

using padic::FieldPtr;
using padic::Padic;
using padic::PadicMatrix;
using padic::Valuation;

enum class RankFailure { full_rank, rank_deficient, indeterminate };

class RankError : public std::runtime_error {
 public:
  RankError(RankFailure kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  RankFailure kind() const { return kind_; }

 private:
  RankFailure kind_;
};

/// Raised when [K:Q_p] < n, so every hyperplane contains a rational vector.
class FieldTooSmall : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// n x n matrix over K of certified rank n - 1.
struct PeriodMatrix {
  FieldPtr field;
  PadicMatrix X;
  int n = 0;
  long precision = 0;
  std::vector<Valuation> divisors;
};

/// Hyperplane of K^n: spanning columns (n x (n-1)) and a normal covector (1 x n)
/// whose first entry of minimal valuation is 1.
struct ProjectivePoint {
  PadicMatrix basis;
  PadicMatrix normal;
};

PeriodMatrix from_matrix(const PadicMatrix& X);

/// Row space, normal = right kernel of X (transposed).
ProjectivePoint fil_H(const PeriodMatrix& pm);
/// Column space, normal = left kernel of X.
ProjectivePoint fil_G(const PeriodMatrix& pm);

/// Transpose.
PeriodMatrix correspond(const PeriodMatrix& pm);

enum class OmegaKind { in_omega, not_in_omega, indeterminate };

struct OmegaVerdict {
  OmegaKind kind = OmegaKind::indeterminate;
  /// Nonzero v in Q_p^n (1 x n, over the prime field) with sum v_i l_i = 0.
  std::optional<PadicMatrix> witness;
  std::vector<Valuation> divisors;
};

/// Whether the hyperplane avoids every nonzero Q_p-rational vector. The n x m
/// matrix of Q_p-coordinates of the normal is rank-tested at `threshold`
/// (default: the normal's precision).
OmegaVerdict omega_membership(const ProjectivePoint& point, std::optional<long> threshold = std::nullopt);

/// t(g) X iota(d)^{-1}; g has entries in Q_p, d in O_D (or D) with n | [K:Q_p].
PeriodMatrix act(const PadicMatrix& g, const dieudonne::OdElement& d, const PeriodMatrix& pm);

struct SampleStats {
  int attempts = 0;
  int indeterminate = 0;
};

/// Deterministic in the seed: X = B R with B a random n x (n-1) basis whose
/// hyperplane is certified in Omega and R a random (n-1) x n matrix.
PeriodMatrix random_point(int n, const FieldPtr& field, std::uint64_t seed, SampleStats* stats = nullptr,
                          int budget = 64);

std::string to_string(OmegaKind kind);
padic::Json to_json(const ProjectivePoint& point, const FieldPtr& field);
padic::Json to_json(const OmegaVerdict& verdict, const FieldPtr& field);
padic::Json to_json(const PeriodMatrix& pm);

}  // namespace ltdr::periods
