#pragma once

#include <optional>
#include <stdexcept>

#include "ltdr/formal_group/series.hpp"
#include "ltdr/padic/io.hpp"

namespace ltdr::formal_group {

using padic::Json;
using padic::Padic;
using padic::Rational;

using RationalSeries = Series<Rational>;
using PadicSeries = Series<Padic>;

/// A coefficient with p in its denominator turned up where the theory forbids it.
class IntegralityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// f(T) = sum_k T^{p^{kh}} / p^k, truncated at degree D.
RationalSeries lubin_tate_log(long p, int h, int degree);

/// p^h + p.
int default_degree(long p, int h);

struct FormalGroupLaw {
  long p = 2;
  int h = 1;
  int D = 2;
  RationalSeries log;
  RationalSeries exp;  // compositional inverse of log
  RationalSeries law;  // bivariate
};

/// F(X, Y) = exp(log X + log Y). Throws IntegralityError on a non-integral coefficient.
FormalGroupLaw group_law(long p, int h, int degree);

/// Denominator prime to p.
bool p_integral(const Rational& q, long p);
/// Integral and divisible by p.
bool divisible_by_p(const Rational& q, long p);

/// [p](T) = exp(p log T). Throws std::invalid_argument when D < p^h.
RationalSeries p_series(const FormalGroupLaw& fgl);

struct HeightCertificate {
  RationalSeries series;
  bool linear_term = false;  // [p] = pT + O(T^2)
  int reduction_order = -1;  // lowest degree with coefficient not divisible by p
  bool unit_leading = false;
  int height = -1;  // log_p of reduction_order when it is a power of p^h
  bool pass = false;
};

HeightCertificate certify_height(const FormalGroupLaw& fgl);

struct AxiomReport {
  bool unit = false;
  bool commutative = false;
  bool associative = false;
  bool logarithm = false;  // log F(X, Y) = log X + log Y
  bool integral = false;
  bool pass() const { return unit && commutative && associative && logarithm && integral; }
};

AxiomReport check_axioms(const FormalGroupLaw& fgl);

/// Default zeta: Teichmüller lift of a generator of F_{p^h}^x, in Q_{p^h}.
Padic default_zeta(long p, int h, long precision);

struct ZetaReport {
  PadicSeries series;        // [zeta](T) = exp(zeta log T)
  bool linear = false;       // equals zeta T
  bool endomorphism = false; // F(zeta X, zeta Y) = zeta F(X, Y)
  std::optional<bool> commutes_with_p;  // [p] o [zeta] = [zeta] o [p], when D >= p^h
  bool pass() const { return linear && endomorphism && commutes_with_p.value_or(true); }
};

/// Throws std::invalid_argument unless zeta^{p^h - 1} = 1 in a field of degree
/// divisible by h.
ZetaReport zeta_action(const FormalGroupLaw& fgl, const Padic& zeta);

/// [[deg, "num/den"], ...] or [[[i, j], "num/den"], ...], nonzero terms only.
Json series_json(const RationalSeries& s);
Json series_json(const PadicSeries& s);
/// {p, h, D, series}.
Json to_json(const FormalGroupLaw& fgl);

}  // namespace ltdr::formal_group
