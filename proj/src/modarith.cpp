#include "catsum/modarith.hpp"

#include <array>

namespace catsum {

u64 pow_mod(u64 base, u64 exp, u64 p) {
  if (p == 1) return 0;
  u64 r = 1;
  base %= p;
  while (exp) {
    if (exp & 1) r = mul_mod(r, base, p);
    base = mul_mod(base, base, p);
    exp >>= 1;
  }
  return r;
}

u64 inv_mod(u64 x, u64 p) {
  x %= p;
  if (x == 0) throw error(errc::zero_inverse, "inverse of 0 mod " + std::to_string(p));
  i64 t = 0, nt = 1;
  i64 r = static_cast<i64>(p), nr = static_cast<i64>(x);
  while (nr != 0) {
    i64 q = r / nr;
    t -= q * nt;
    std::swap(t, nt);
    r -= q * nr;
    std::swap(r, nr);
  }
  if (t < 0) t += static_cast<i64>(p);
  return static_cast<u64>(t);
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 w : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = pow_mod(w % n, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

u64 mpz_mod_u64(const mpz_class& x, u64 m) { return mpz_fdiv_ui(x.get_mpz_t(), m); }

int jacobi(i64 a, u64 n) {
  if (n == 0 || (n & 1) == 0)
    throw error(errc::even_modulus, "jacobi symbol needs odd positive modulus, got " + std::to_string(n));
  i64 r = a % static_cast<i64>(n);
  if (r < 0) r += static_cast<i64>(n);
  u64 aa = static_cast<u64>(r);
  int sign = 1;
  while (aa != 0) {
    while ((aa & 1) == 0) {
      aa >>= 1;
      u64 m8 = n & 7;
      if (m8 == 3 || m8 == 5) sign = -sign;
    }
    std::swap(aa, n);
    if ((aa & 3) == 3 && (n & 3) == 3) sign = -sign;
    aa %= n;
  }
  return n == 1 ? sign : 0;
}

int jacobi(const mpz_class& a, const mpz_class& n) {
  if (n <= 0 || mpz_even_p(n.get_mpz_t()))
    throw error(errc::even_modulus, "jacobi symbol needs odd positive modulus");
  return mpz_jacobi(a.get_mpz_t(), n.get_mpz_t());
}

Fp Fp::pow(i64 e) const {
  if (e < 0) return inv().pow(-e);
  return Fp(pow_mod(v, static_cast<u64>(e), p), p);
}

Fp Fp::pow(const mpz_class& e) const {
  if (v == 0) {
    if (e > 0) return Fp(0, p);
    if (e == 0) return Fp(1, p);
    throw error(errc::zero_inverse, "0 raised to a negative power");
  }
  if (p == 2) return Fp(1, 2);
  u64 ee = mpz_mod_u64(e, p - 1);
  return Fp(pow_mod(v, ee, p), p);
}

PrimePower::PrimePower(u64 prime, unsigned exponent) : p(prime), a(exponent) {
  if (prime >= (1ull << 63))
    throw error(errc::bad_argument, "p must be below 2^63");
  if (!is_prime(prime)) throw error(errc::bad_argument, std::to_string(prime) + " is not prime");
  if (exponent == 0) throw error(errc::bad_argument, "exponent must be positive");
  mpz_ui_pow_ui(n.get_mpz_t(), prime, exponent);
}

Fp rational_residue(i64 num, i64 den, u64 p) {
  if (den % static_cast<i64>(p) == 0)
    throw error(errc::denominator_divisible,
                "denominator " + std::to_string(den) + " divisible by " + std::to_string(p));
  return Fp::from(num, p) * Fp::from(den, p).inv();
}

int jacobi_rational(i64 num, i64 den, u64 p) {
  Fp x = rational_residue(num, den, p);
  return jacobi(static_cast<i64>(x.v), p);
}

std::optional<u64> sqrt_mod(u64 a, u64 p) {
  a %= p;
  if (p == 2) return a;
  if (a == 0) return 0;
  if (jacobi(static_cast<i64>(a), p) != 1) return std::nullopt;
  u64 r;
  if ((p & 3) == 3) {
    r = pow_mod(a, (p + 1) / 4, p);
  } else {
    // Tonelli-Shanks
    u64 q = p - 1;
    int s = 0;
    while ((q & 1) == 0) {
      q >>= 1;
      ++s;
    }
    u64 z = 2;
    while (jacobi(static_cast<i64>(z), p) != -1) ++z;
    u64 m = s;
    u64 c = pow_mod(z, q, p);
    u64 t = pow_mod(a, q, p);
    r = pow_mod(a, (q + 1) / 2, p);
    while (t != 1) {
      u64 i = 0, tt = t;
      while (tt != 1) {
        tt = mul_mod(tt, tt, p);
        ++i;
      }
      u64 b = c;
      for (u64 j = 0; j + i + 1 < m; ++j) b = mul_mod(b, b, p);
      m = i;
      c = mul_mod(b, b, p);
      t = mul_mod(t, c, p);
      r = mul_mod(r, b, p);
    }
  }
  if (r > p - r) r = p - r;
  return r;
}

std::optional<Fp> sqrt_mod(Fp a) {
  auto r = sqrt_mod(a.v, a.p);
  if (!r) return std::nullopt;
  return Fp(*r, a.p);
}

u64 small_binom_mod(u64 n, u64 k, u64 p) {
  if (k > n) return 0;
  u64 t = std::min(k, n - k);
  u64 num = 1, den = 1;
  for (u64 j = 1; j <= t; ++j) {
    num = mul_mod(num, n - t + j, p);
    den = mul_mod(den, j, p);
  }
  return mul_mod(num, inv_mod(den, p), p);
}

u64 binom_exact_u64(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (n > 62) throw error(errc::bad_argument, "binom_exact_u64 needs n <= 62");
  unsigned t = std::min(k, n - k);
  u64 r = 1;
  for (unsigned j = 1; j <= t; ++j) r = static_cast<u64>(u128(r) * (n - t + j) / j);
  return r;
}

u64 binom_mod(const mpz_class& n, const mpz_class& k, u64 p) {
  if (k < 0 || k > n || n < 0) return 0;
  mpz_class nn = n, kk = k;
  u64 acc = 1;
  while (nn > 0 && acc != 0) {
    u64 nd = mpz_fdiv_q_ui(nn.get_mpz_t(), nn.get_mpz_t(), p);
    u64 kd = mpz_fdiv_q_ui(kk.get_mpz_t(), kk.get_mpz_t(), p);
    acc = mul_mod(acc, small_binom_mod(nd, kd, p), p);
  }
  if (kk > 0) return 0;  // k had more base-p digits than n
  return acc;
}

}  // namespace catsum
