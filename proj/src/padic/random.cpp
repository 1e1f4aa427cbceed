#include "ltdr/padic/random.hpp"

namespace ltdr::padic {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  for (;;) {
    const std::uint64_t r = engine_();
    if (r < limit) return r % bound;
  }
}

Integer Rng::integer_mod(const Integer& modulus) {
  const std::size_t bits = mpz_sizeinbase(modulus.get_mpz_t(), 2) + 64;
  Integer acc = 0;
  for (std::size_t b = 0; b < bits; b += 64) {
    acc <<= 64;
    const std::uint64_t r = engine_();
    acc += Integer(static_cast<unsigned long>(r >> 32)) * Integer(4294967296UL) +
           Integer(static_cast<unsigned long>(r & 0xffffffffUL));
  }
  return acc % modulus;
}

Padic Rng::integral(const FieldPtr& field) {
  const long N = field->precision();
  Coeffs c(field->degree());
  for (auto& v : c) v = integer_mod(field->prime_power(N));
  return Padic::from_coeffs(field, std::move(c), 0, N);
}

Padic Rng::unit(const FieldPtr& field) {
  for (;;) {
    Padic x = integral(field);
    if (x.is_unit()) return x;
  }
}

Padic Rng::integral_in_prime_field(const FieldPtr& field) {
  const long N = field->precision();
  Coeffs c(field->degree(), 0);
  c[0] = integer_mod(field->prime_power(N));
  return Padic::from_coeffs(field, std::move(c), 0, N);
}

PadicMatrix Rng::integral_matrix(const FieldPtr& field, Eigen::Index rows, Eigen::Index cols) {
  PadicMatrix out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) out(i, j) = integral(field);
  return out;
}

PadicMatrix Rng::unimodular(const FieldPtr& field, Eigen::Index n, bool prime_field_entries) {
  auto draw = [&]() { return prime_field_entries ? integral_in_prime_field(field) : integral(field); };
  auto draw_unit = [&]() {
    for (;;) {
      Padic x = draw();
      if (x.is_unit()) return x;
    }
  };
  PadicMatrix lower = PadicMatrix::Identity(n, n);
  PadicMatrix upper = PadicMatrix::Identity(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    upper(i, i) = draw_unit();
    for (Eigen::Index j = 0; j < i; ++j) {
      lower(i, j) = draw();
      upper(j, i) = draw();
    }
  }
  PadicMatrix out = product(lower, upper);
  // A random row permutation keeps the factorization from fixing the pivot order.
  for (Eigen::Index i = n - 1; i > 0; --i) {
    const auto j = static_cast<Eigen::Index>(below(static_cast<std::uint64_t>(i + 1)));
    if (j != i) out.row(i).swap(out.row(j));
  }
  return out;
}

}  // namespace ltdr::padic
