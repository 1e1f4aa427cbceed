#pragma once

#include <string>
#include <vector>

#include "ltdr/padic/io.hpp"

namespace ltdr::ledger {

using padic::Integer;
using padic::Json;
using padic::Rational;

/// v(t) = 1/(p - 1).
Rational period_valuation(long p);

/// CM type (a_0, ..., a_{h-1}) with 0 <= a_i <= d and sum a_i = d. Only d = 1
/// (a = indicator of i0) is computed.
struct CMDatum {
  long p = 2;
  int h = 1;
  int i0 = 0;
  std::vector<int> a;

  static CMDatum dimension_one(long p, int h, int i0);
  int d() const;
  void validate() const;
};

/// v(y_i) = p^{h+i-i0}/(p^h-1) for i < i0 and p^{i-i0}/(p^h-1) for i >= i0.
std::vector<Rational> cm_period_valuations(long p, int h, int i0);

/// sum v(y_i) = 1/(p - 1).
bool check_sum_identity(const CMDatum& datum);
/// p v(y_i) = v(y_{i+1 mod h}) + [i + 1 = i0 mod h] for every i.
bool functional_equation_valuations(const CMDatum& datum);
/// sum v(y_i) - 1/(p - 1); zero for every valid datum.
Rational beta_integrality(const CMDatum& datum);
/// p^i/(p^h - 1).
Rational lt_character_valuation(int i, long p, int h);

struct HeightLedger {
  int n = 1;
  long ht_rho_H = 0;
  long ht_rho_G = 0;
  long ht_Delta = 0;
  int degree = 1;  // [F:Q_p]

  /// ht / [F:Q_p].
  Rational normalized(long ht) const {
    Rational q(ht, degree);
    q.canonicalize();
    return q;
  }
};

/// -ht(rho_H) - n(n-1)/2.
Rational det_valuation_LT(const HeightLedger& ledger);
/// -ht(rho_G)/n - ht(Delta).
Rational det_valuation_Dr(const HeightLedger& ledger);

struct TransferVerdict {
  bool consistent = false;
  bool divisible = false;
  Rational transferred_height;  // ht(rho_G)/n
};

/// Requires ht(Delta) = n(n-1)/2. Consistent iff both determinant laws agree,
/// i.e. ht(rho_H) = ht(rho_G)/n. With demand_equality, a ht(rho_G) not divisible
/// by n is an error.
TransferVerdict height_transfer(const HeightLedger& ledger, bool demand_equality = false);

/// {check, inputs, expected, computed, pass}.
Json report(const std::string& check, Json inputs, Json expected, Json computed, bool pass);

Json cm_report(const CMDatum& datum);
Json heights_report(const HeightLedger& ledger);

}  // namespace ltdr::ledger
