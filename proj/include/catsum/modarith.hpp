#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace catsum {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

enum class errc {
  zero_inverse,
  denominator_divisible,
  even_modulus,
  d_range,
  singular_discriminant,
  repeated_root,
  singular_delta,
  even_prime,
  division_by_zero,
  not_coprime_to_three,
  degenerate_c,
  no_square_root,
  singular_d,
  degree_too_small,
  zero_polynomial,
  unknown_theorem,
  missing_param,
  budget_exceeded,
  no_representation,
  bad_argument,
};

class error : public std::runtime_error {
public:
  error(errc c, const std::string& what) : std::runtime_error(what), code_(c) {}
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

// Word-sized modular arithmetic. All moduli in this library are odd primes
// below 2^63 unless stated otherwise, so a + b and extended-gcd intermediates
// never overflow.
inline u64 add_mod(u64 a, u64 b, u64 p) {
  u64 s = a + b;
  return s >= p ? s - p : s;
}

inline u64 sub_mod(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + (p - b); }

inline u64 mul_mod(u64 a, u64 b, u64 p) { return static_cast<u64>(u128(a) * b % p); }

u64 pow_mod(u64 base, u64 exp, u64 p);
u64 inv_mod(u64 x, u64 p);  // throws errc::zero_inverse on x ≡ 0

// Deterministic Miller-Rabin, valid for all n < 2^63.
bool is_prime(u64 n);

// Floor remainder of x by m, result in [0, m).
u64 mpz_mod_u64(const mpz_class& x, u64 m);

// Jacobi symbol (a/n) for odd positive n. Throws errc::even_modulus.
int jacobi(i64 a, u64 n);
int jacobi(const mpz_class& a, const mpz_class& n);

/// Element of the prime field Z/p in canonical form. Carries its modulus so
/// values taken at different primes cannot be mixed silently.
struct Fp {
  u64 v = 0;
  u64 p = 0;

  Fp() = default;
  Fp(u64 value, u64 prime) : v(value % prime), p(prime) {}

  static Fp from(i64 x, u64 prime) {
    i64 r = x % static_cast<i64>(prime);
    if (r < 0) r += static_cast<i64>(prime);
    return Fp(static_cast<u64>(r), prime);
  }
  static Fp from(const mpz_class& x, u64 prime) { return Fp(mpz_mod_u64(x, prime), prime); }

  bool zero() const { return v == 0; }
  Fp inv() const { return Fp(inv_mod(v, p), p); }
  Fp pow(i64 e) const;
  Fp pow(const mpz_class& e) const;  // exponent reduced mod p-1 (p prime, v != 0)

  friend Fp operator+(Fp a, Fp b) { return Fp(add_mod(a.v, b.v, a.p), a.p); }
  friend Fp operator-(Fp a, Fp b) { return Fp(sub_mod(a.v, b.v, a.p), a.p); }
  friend Fp operator*(Fp a, Fp b) { return Fp(mul_mod(a.v, b.v, a.p), a.p); }
  friend Fp operator/(Fp a, Fp b) { return a * b.inv(); }
  friend Fp operator-(Fp a) { return Fp(a.v == 0 ? 0 : a.p - a.v, a.p); }
  friend bool operator==(Fp a, Fp b) { return a.v == b.v && a.p == b.p; }
  friend bool operator!=(Fp a, Fp b) { return !(a == b); }
  Fp& operator+=(Fp b) { return *this = *this + b; }
  Fp& operator-=(Fp b) { return *this = *this - b; }
  Fp& operator*=(Fp b) { return *this = *this * b; }

  // Signed lift in (-p/2, p/2], handy for reports.
  i64 lift() const { return v * 2 > p ? static_cast<i64>(v) - static_cast<i64>(p) : static_cast<i64>(v); }
};

/// A prime p with exponent a and p^a kept exactly.
struct PrimePower {
  u64 p;
  unsigned a;
  mpz_class n;  // p^a

  PrimePower(u64 prime, unsigned exponent);
};

// num/den mod p with den coprime to p. Throws errc::denominator_divisible.
Fp rational_residue(i64 num, i64 den, u64 p);

// Jacobi symbol of a rational element of Z_p: (num/den / p) = (num*den / p).
int jacobi_rational(i64 num, i64 den, u64 p);

// Square root mod an odd prime, normalized to the representative in
// [0, (p-1)/2]. Returns nullopt for quadratic non-residues; 0 maps to 0.
std::optional<u64> sqrt_mod(u64 a, u64 p);
std::optional<Fp> sqrt_mod(Fp a);

// binom(n, k) mod p for n, k < p. Cost O(min(k, n-k)).
u64 small_binom_mod(u64 n, u64 k, u64 p);

// Exact binom(n, k) for n <= 62 (fits in 64 bits).
u64 binom_exact_u64(unsigned n, unsigned k);

// binom(n, k) mod p by base-p digit products; k < 0 or k > n gives 0.
u64 binom_mod(const mpz_class& n, const mpz_class& k, u64 p);

}  // namespace catsum
