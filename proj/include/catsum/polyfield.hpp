#pragma once

#include <vector>

#include "catsum/modarith.hpp"

namespace catsum {

/// Polynomial over Z/p, coefficients lowest degree first, trailing zeros
/// trimmed. The zero polynomial is the empty vector.
struct PolyFp {
  u64 p = 0;
  std::vector<u64> c;

  PolyFp() = default;
  PolyFp(u64 prime, std::vector<u64> coeffs);

  bool zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  u64 lead() const { return c.back(); }
  u64 coeff(size_t i) const { return i < c.size() ? c[i] : 0; }
  void trim();

  friend bool operator==(const PolyFp& a, const PolyFp& b) { return a.p == b.p && a.c == b.c; }
};

PolyFp poly_add(const PolyFp& a, const PolyFp& b);
PolyFp poly_sub(const PolyFp& a, const PolyFp& b);
PolyFp poly_mul(const PolyFp& a, const PolyFp& b);
PolyFp poly_scale(const PolyFp& a, u64 s);
// quotient/remainder; divisor must be nonzero
std::pair<PolyFp, PolyFp> poly_divmod(const PolyFp& a, const PolyFp& b);
PolyFp poly_mod(const PolyFp& a, const PolyFp& b);
PolyFp poly_gcd(PolyFp a, PolyFp b);  // monic gcd
PolyFp poly_derivative(const PolyFp& a);
PolyFp poly_monic(const PolyFp& a);

// a^e mod f (f nonconstant)
PolyFp poly_powmod(const PolyFp& a, const mpz_class& e, const PolyFp& f);

// x^(p^i) mod f for i = 1..count, by iterating the Frobenius h -> h^p mod f.
std::vector<PolyFp> frobenius_powers(const PolyFp& f, unsigned count);

// Characteristic polynomial (1+x)^(h+1) - m x^h over Z/p.
PolyFp char_poly(unsigned h, Fp m);

// Discriminant of x^3 + a1 x^2 + a2 x + a3, exactly.
mpz_class cubic_discriminant(const mpz_class& a1, const mpz_class& a2, const mpz_class& a3);

// Discriminant of a monic integer polynomial (lowest degree first, implicit
// leading 1 NOT included -- pass all coefficients including the lead).
// Computed as a Sylvester resultant of f and f' by fraction-free elimination.
mpz_class discriminant_z(const std::vector<mpz_class>& coeffs_low_first);

// Discriminant over Z/p via the Euclidean resultant. Throws
// errc::degree_too_small for deg f < 2.
u64 discriminant_fp(const PolyFp& f);

// Number of monic irreducible factors counted with multiplicity
// (squarefree decomposition, then distinct-degree counting).
// Throws errc::zero_polynomial on the zero polynomial.
unsigned count_irreducible_factors(const PolyFp& f);

// jacobi(D(f), p) == (-1)^(deg f - r)? Requires p odd and p not dividing D(f)
// (else errc::singular_discriminant).
bool stickelberger_check(const PolyFp& f);

}  // namespace catsum
