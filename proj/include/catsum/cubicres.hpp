#pragma once

#include <optional>
#include <utility>

#include "catsum/modarith.hpp"

namespace catsum {

/// a + b*w with w = (-1 + sqrt(-3))/2, so w^2 + w + 1 = 0.
/// Norm a^2 - ab + b^2; units are +-1, +-w, +-w^2.
struct Eisenstein {
  mpz_class a, b;

  Eisenstein() : a(0), b(0) {}
  Eisenstein(mpz_class ra, mpz_class rb) : a(std::move(ra)), b(std::move(rb)) {}

  bool zero() const { return a == 0 && b == 0; }
  mpz_class norm() const { return a * a - a * b + b * b; }
  Eisenstein conj() const { return {a - b, -b}; }

  friend Eisenstein operator+(const Eisenstein& x, const Eisenstein& y) {
    return {x.a + y.a, x.b + y.b};
  }
  friend Eisenstein operator-(const Eisenstein& x, const Eisenstein& y) {
    return {x.a - y.a, x.b - y.b};
  }
  friend Eisenstein operator*(const Eisenstein& x, const Eisenstein& y) {
    // (a+bw)(c+dw) = ac - bd + (ad + bc - bd) w
    mpz_class bd = x.b * y.b;
    return {x.a * y.a - bd, x.a * y.b + x.b * y.a - bd};
  }
  friend Eisenstein operator-(const Eisenstein& x) { return {-x.a, -x.b}; }
  friend bool operator==(const Eisenstein& x, const Eisenstein& y) {
    return x.a == y.a && x.b == y.b;
  }
};

// Euclidean division: x = q y + r with N(r) < N(y). Rounds each coordinate of
// x conj(y) / N(y) to the nearest integer. Throws errc::division_by_zero.
std::pair<Eisenstein, Eisenstein> eis_divmod(const Eisenstein& x, const Eisenstein& y);
Eisenstein eis_mod(const Eisenstein& x, const Eisenstein& y);
Eisenstein eis_gcd(Eisenstein x, Eisenstein y);

// The six units as sign * w^t.
Eisenstein eis_unit(int sign, int t);

// Writes x (coprime to 3) as sign * w^t * x' with x' == -1 (mod 3)
// (the "primary" associate). Returns (x', t, sign).
struct PrimaryForm {
  Eisenstein value;
  int t;
  int sign;
};
PrimaryForm primary_associate(const Eisenstein& x);

/// Cubic Jacobi symbol (alpha / n)_3 in {1, w, w^2, 0}, reported as the
/// exponent of w; nullopt encodes the symbol 0 (gcd(alpha, n) != 1).
/// Computed by the Euclidean algorithm with cubic reciprocity and the
/// supplementary laws for w and 1 - w. n must have norm coprime to 3
/// (errc::not_coprime_to_three).
std::optional<int> cubic_jacobi(const Eisenstein& alpha, const Eisenstein& n);
std::optional<int> cubic_jacobi(const Eisenstein& alpha, const mpz_class& n);

// Direct character route for a *prime* modulus pi:
// alpha^((N(pi)-1)/3) mod pi, matched against {1, w, w^2}. Used as the
// independent cross-check of the Euclidean route.
std::optional<int> cubic_character_prime(const Eisenstein& alpha, const Eisenstein& pi);

// Splits a rational prime p == 1 (mod 3) as pi * conj(pi) in Z[w].
Eisenstein split_prime(u64 p);

enum class CubicClass { c0 = 0, c1 = 1, c2 = 2, undefined = 3 };

// Class of the rational residue c = num/den: the i with
// ((c + 1 + 2w)/p^a)_3 = w^i, or undefined when p | c^2 + 3.
// Requires gcd(p, 3) = 1 and den coprime to p.
CubicClass classify(i64 num, i64 den, const PrimePower& pp);
CubicClass classify(const mpz_class& num, const mpz_class& den, const PrimePower& pp);

// Z.-H. Sun's zero test: c in C_0(p) iff u_{(p - (p/3))/3} == 0 (mod p) for
// u_0 = 0, u_1 = 1, u_{n+1} = 6 u_n - (3c^2 + 9) u_{n-1}. Requires p > 3 and
// c (c^2 + 3) nonzero mod p (errc::degenerate_c).
bool sun_c0_criterion(i64 num, i64 den, u64 p);

/// Predicted (u_{p^a}, u_{p^a+1}, u_{p^a+2}) of a third-order recurrence
/// u_{n+3} + a1 u_{n+2} + a2 u_{n+1} + a3 u_n = 0, u_0 = u_1 = 0, u_2 = 1,
/// keyed on the cubic class of b/(3d) with d^2 = D mod p.
struct TriplePrediction {
  Fp u0, u1, u2;  // u_{p^a}, u_{p^a+1}, u_{p^a+2}
  enum class Branch { degenerate, class0, class1_plus, class1_minus } branch;
  u64 disc_root;  // the d used (normalized square root of D)
};

TriplePrediction lemma41_predict(i64 a1, i64 a2, i64 a3, const PrimePower& pp);

// Specialization to a1 = 3 - m, a2 = 3, a3 = 1 with m == t^2 + t + 7,
// keyed on p | m - 6 or the class of (2m^2 - 18m + 27)/(6t + 3).
TriplePrediction lemma42_predict(i64 m, i64 t, const PrimePower& pp);

}  // namespace catsum
