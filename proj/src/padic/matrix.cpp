#include "ltdr/padic/matrix.hpp"

#include <algorithm>

namespace ltdr::padic {

PadicMatrix materialize(const PadicMatrix& m, const FieldPtr& field) {
  PadicMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).in_field(field);
  return out;
}

PadicMatrix from_integers(const FieldPtr& field, const std::vector<std::vector<long>>& rows) {
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = r ? static_cast<Eigen::Index>(rows[0].size()) : 0;
  PadicMatrix out(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) out(i, j) = Padic::from_integer(field, rows[i][j]);
  return out;
}

long min_precision(const PadicMatrix& m) {
  long best = kInfinitePrecision;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) best = std::min(best, m(i, j).precision());
  return best;
}

FieldPtr field_of(const PadicMatrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (m(i, j).has_field()) return m(i, j).field();
  return nullptr;
}

PadicMatrix frobenius(const PadicMatrix& m, long power) {
  return m.unaryExpr([power](const Padic& x) { return x.frobenius(power); });
}

namespace {

struct Entry {
  long exponent;
  long precision;
  bool zero;
  const Coeffs* unit;
};

std::vector<Entry> entries(const PadicMatrix& m) {
  std::vector<Entry> out;
  out.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const Padic& x = m(i, j);
      out.push_back({x.exponent(), x.precision(), x.is_zero(), &x.unit_part()});
    }
  return out;
}

}  // namespace

PadicMatrix product(const PadicMatrix& lhs, const PadicMatrix& rhs) {
  if (lhs.cols() != rhs.rows()) throw std::invalid_argument("product: inner dimensions differ");
  FieldPtr field = field_of(lhs);
  if (!field) field = field_of(rhs);
  if (!field) return lhs * rhs;
  const PadicMatrix a = materialize(lhs, field);
  const PadicMatrix b = materialize(rhs, field);
  const auto ea = entries(a), eb = entries(b);
  const Eigen::Index rows = a.rows(), inner = a.cols(), cols = b.cols();
  const int m = field->degree();
  const Coeffs& f = field->modulus();
  PadicMatrix out(rows, cols);
  Coeffs acc(2 * m - 1);
  Integer scaled;
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      long e = kInfinitePrecision, prec = kInfinitePrecision;
      for (Eigen::Index k = 0; k < inner; ++k) {
        const Entry& x = ea[k * rows + i];
        const Entry& y = eb[j * inner + k];
        prec = std::min({prec, x.precision + y.exponent, y.precision + x.exponent});
        if (!x.zero && !y.zero) e = std::min(e, x.exponent + y.exponent);
      }
      prec = std::min(prec, kInfinitePrecision);
      if (e >= prec) {
        out(i, j) = Padic::from_coeffs(field, {}, prec, prec);
        continue;
      }
      const long rel = std::min<long>(prec - e, field->capacity());
      for (auto& c : acc) c = 0;
      for (Eigen::Index k = 0; k < inner; ++k) {
        const Entry& x = ea[k * rows + i];
        const Entry& y = eb[j * inner + k];
        if (x.zero || y.zero) continue;
        const long shift = x.exponent + y.exponent - e;
        if (shift >= rel) continue;
        const Coeffs& u = *x.unit;
        const Coeffs& v = *y.unit;
        for (int r = 0; r < m; ++r) {
          if (u[r] == 0) continue;
          if (shift == 0) {
            for (int s = 0; s < m; ++s) mpz_addmul(acc[r + s].get_mpz_t(), u[r].get_mpz_t(), v[s].get_mpz_t());
          } else {
            mpz_mul(scaled.get_mpz_t(), u[r].get_mpz_t(), field->prime_power(shift).get_mpz_t());
            for (int s = 0; s < m; ++s) mpz_addmul(acc[r + s].get_mpz_t(), scaled.get_mpz_t(), v[s].get_mpz_t());
          }
        }
      }
      for (int d = 2 * m - 2; d >= m; --d) {
        if (acc[d] == 0) continue;
        for (int r = 0; r < m; ++r) mpz_submul(acc[d - m + r].get_mpz_t(), acc[d].get_mpz_t(), f[r].get_mpz_t());
        acc[d] = 0;
      }
      out(i, j) = Padic::from_coeffs(field, Coeffs(acc.begin(), acc.begin() + m), e, e + rel);
    }
  }
  return out;
}

bool is_zero(const PadicMatrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) return false;
  return true;
}

SmithForm smith_form(const PadicMatrix& input, long threshold) {
  const Eigen::Index rows = input.rows(), cols = input.cols();
  FieldPtr field = field_of(input);
  SmithForm out;
  out.reduced = field ? materialize(input, field) : input;
  out.left = PadicMatrix::Identity(rows, rows);
  out.left_inverse = PadicMatrix::Identity(rows, rows);
  out.right = PadicMatrix::Identity(cols, cols);
  out.right_inverse = PadicMatrix::Identity(cols, cols);
  PadicMatrix& a = out.reduced;
  const Eigen::Index steps = std::min(rows, cols);

  for (Eigen::Index s = 0; s < steps; ++s) {
    Eigen::Index pi = -1, pj = -1;
    long best = 0;
    long bound = kInfinitePrecision;
    for (Eigen::Index i = s; i < rows; ++i) {
      for (Eigen::Index j = s; j < cols; ++j) {
        const Valuation v = a(i, j).valuation();
        if (!v.exact) {
          bound = std::min(bound, v.value);
          continue;
        }
        if (pi < 0 || v.value < best) {
          pi = i;
          pj = j;
          best = v.value;
        }
      }
    }
    if (pi < 0) {
      for (Eigen::Index k = s; k < steps; ++k) out.divisors.push_back(Valuation::at_least(bound));
      break;
    }
    if (best >= threshold) {
      out.indeterminate = true;
      for (Eigen::Index k = s; k < steps; ++k) out.divisors.push_back(Valuation::at_least(threshold));
      break;
    }
    if (pi != s) {
      a.row(pi).swap(a.row(s));
      out.left.row(pi).swap(out.left.row(s));
      out.left_inverse.col(pi).swap(out.left_inverse.col(s));
    }
    if (pj != s) {
      a.col(pj).swap(a.col(s));
      out.right.col(pj).swap(out.right.col(s));
      out.right_inverse.row(pj).swap(out.right_inverse.row(s));
    }
    const Padic pivot_inv = a(s, s).inverse();
    for (Eigen::Index k = s + 1; k < rows; ++k) {
      if (a(k, s).is_zero()) {
        a(k, s) = Padic(0);
        continue;
      }
      const Padic t = a(k, s) * pivot_inv;
      for (Eigen::Index j = s + 1; j < cols; ++j) a(k, j) -= t * a(s, j);
      a(k, s) = Padic(0);
      for (Eigen::Index j = 0; j < rows; ++j) out.left(k, j) -= t * out.left(s, j);
      for (Eigen::Index i = 0; i < rows; ++i) out.left_inverse(i, s) += t * out.left_inverse(i, k);
    }
    for (Eigen::Index l = s + 1; l < cols; ++l) {
      if (a(s, l).is_zero()) {
        a(s, l) = Padic(0);
        continue;
      }
      const Padic t = a(s, l) * pivot_inv;
      a(s, l) = Padic(0);
      for (Eigen::Index i = 0; i < cols; ++i) out.right(i, l) -= t * out.right(i, s);
      for (Eigen::Index j = 0; j < cols; ++j) out.right_inverse(s, j) += t * out.right_inverse(l, j);
    }
    out.divisors.push_back(Valuation::exactly(best));
    ++out.rank;
  }
  return out;
}

RankCertificate certified_rank(const PadicMatrix& m, long threshold) {
  SmithForm s = smith_form(m, threshold);
  return {s.rank, s.divisors};
}

RankCertificate certified_rank(const PadicMatrix& m) { return certified_rank(m, min_precision(m)); }

PadicMatrix saturate_lattice(const PadicMatrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_integral()) throw std::invalid_argument("saturate_lattice: entries must be integral");
  SmithForm s = smith_form(m, min_precision(m));
  if (s.indeterminate) throw PrecisionError("saturate_lattice: rank indeterminate at precision");
  return s.left_inverse.leftCols(s.rank);
}

PadicMatrix column_space_basis(const PadicMatrix& m) {
  SmithForm s = smith_form(m, min_precision(m));
  if (s.indeterminate) throw PrecisionError("column_space_basis: rank indeterminate at precision");
  return s.left_inverse.leftCols(s.rank);
}

PadicMatrix row_space_basis(const PadicMatrix& m) {
  SmithForm s = smith_form(m, min_precision(m));
  if (s.indeterminate) throw PrecisionError("row_space_basis: rank indeterminate at precision");
  return s.right_inverse.topRows(s.rank);
}

PadicMatrix right_kernel(const PadicMatrix& m) {
  SmithForm s = smith_form(m, min_precision(m));
  if (s.indeterminate) throw PrecisionError("right_kernel: rank indeterminate at precision");
  return s.right.rightCols(m.cols() - s.rank);
}

PadicMatrix left_kernel(const PadicMatrix& m) {
  SmithForm s = smith_form(m, min_precision(m));
  if (s.indeterminate) throw PrecisionError("left_kernel: rank indeterminate at precision");
  return s.left.bottomRows(m.rows() - s.rank);
}

PadicMatrix inverse(const PadicMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix must be square");
  SmithForm s = smith_form(m, min_precision(m));
  if (s.rank != m.rows()) throw PrecisionError("inverse: matrix is not certified invertible");
  PadicMatrix dinv = PadicMatrix::Zero(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) dinv(i, i) = s.reduced(i, i).inverse();
  return product(product(s.right, dinv), s.left);
}

std::vector<Padic> charpoly(const PadicMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("charpoly: matrix must be square");
  const Eigen::Index n = a.rows();
  if (n == 0) return {Padic(1)};
  // coeffs[k] is the coefficient of t^{size-k} for the leading principal block.
  std::vector<Padic> coeffs{Padic(1), -a(0, 0)};
  for (Eigen::Index r = 1; r < n; ++r) {
    const PadicMatrix block = a.topLeftCorner(r, r);
    const PadicMatrix row = a.block(r, 0, 1, r);
    PadicMatrix col = a.block(0, r, r, 1);
    std::vector<Padic> toeplitz(r + 2);
    toeplitz[0] = Padic(1);
    toeplitz[1] = -a(r, r);
    for (Eigen::Index k = 2; k < r + 2; ++k) {
      toeplitz[k] = -product(row, col)(0, 0);
      col = product(block, col);
    }
    std::vector<Padic> next(r + 2);
    for (Eigen::Index i = 0; i < r + 2; ++i) {
      Padic acc;
      for (Eigen::Index j = 0; j <= std::min<Eigen::Index>(i, r); ++j) acc += toeplitz[i - j] * coeffs[j];
      next[i] = acc;
    }
    coeffs = std::move(next);
  }
  std::reverse(coeffs.begin(), coeffs.end());
  return coeffs;
}

Padic determinant(const PadicMatrix& m) {
  auto c = charpoly(m);
  return (m.rows() % 2 == 0) ? c[0] : -c[0];
}

bool same_column_space(const PadicMatrix& a, const PadicMatrix& b) {
  if (a.rows() != b.rows()) return false;
  PadicMatrix joined(a.rows(), a.cols() + b.cols());
  joined << a, b;
  const long threshold = min_precision(joined);
  const auto ra = certified_rank(a, threshold);
  const auto rb = certified_rank(b, threshold);
  const auto rj = smith_form(joined, threshold);
  return !rj.indeterminate && ra.rank == rb.rank && rj.rank == ra.rank;
}

PadicMatrix normalize_vector(const PadicMatrix& v) {
  Eigen::Index best = -1;
  long val = 0;
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    const Valuation w = v(k).valuation();
    if (w.exact && (best < 0 || w.value < val)) {
      best = k;
      val = w.value;
    }
  }
  if (best < 0) throw PrecisionError("normalize_vector: vector indistinguishable from zero");
  const Padic scale = v(best).inverse();
  PadicMatrix out = v * scale;
  out(best) = v(best) * scale;
  return out;
}

}  // namespace ltdr::padic
