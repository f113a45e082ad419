#include "catsum/lucas.hpp"

namespace catsum {

LucasParams::LucasParams(Fp a, Fp b) : A(a), B(b), delta(a * a - Fp(4, a.p) * b) {
  if (b.zero()) throw error(errc::bad_argument, "B must be invertible mod p");
}

namespace {

// (u_e, u_{e+1}) for e >= 0 by the doubling identities
// u_{2k} = u_k (2 u_{k+1} - A u_k),  u_{2k+1} = u_{k+1}^2 - B u_k^2.
std::pair<Fp, Fp> lucas_u_pair_nonneg(const LucasParams& params, const mpz_class& e) {
  const u64 p = params.A.p;
  Fp u(0, p), w(1, p);  // (u_0, u_1)
  size_t bits = mpz_sgn(e.get_mpz_t()) == 0 ? 0 : mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t i = bits; i-- > 0;) {
    Fp even = u * (w + w - params.A * u);
    Fp odd = w * w - params.B * u * u;
    if (mpz_tstbit(e.get_mpz_t(), i)) {
      u = odd;
      w = params.A * odd - params.B * even;
    } else {
      u = even;
      w = odd;
    }
  }
  return {u, w};
}

}  // namespace

LucasPair lucas_pair(const LucasParams& params, const mpz_class& n) {
  LucasPair out;
  out.n = n;
  if (n >= 0) {
    auto [u, up1] = lucas_u_pair_nonneg(params, n);
    out.u = u;
    out.v = up1 + up1 - params.A * u;
    return out;
  }
  mpz_class e = -n;
  auto [u, up1] = lucas_u_pair_nonneg(params, e);
  Fp v = up1 + up1 - params.A * u;
  Fp binv = params.B.pow(e).inv();
  out.u = -(u * binv);
  out.v = v * binv;
  return out;
}

Fp lucas_u_shifted(const LucasParams& params, const mpz_class& n, const PrimePower& pp,
                   ShiftDirection dir) {
  if (pp.p == 2) throw error(errc::even_prime, "index shift needs odd p");
  if (pp.p != params.A.p) throw error(errc::bad_argument, "prime mismatch");
  if (params.delta.zero()) throw error(errc::singular_delta, "p divides A^2 - 4B");
  int eps = jacobi(static_cast<i64>(params.delta.v), pp.p);
  if (pp.a % 2 == 0) eps = 1;
  LucasPair at = lucas_pair(params, n);
  Fp e = Fp::from(eps, pp.p);
  Fp half = Fp(2, pp.p).inv();
  if (dir == ShiftDirection::up) return (params.A * at.u + e * at.v) * half;
  return (params.A * at.u - e * at.v) * half * params.B.inv();
}

mpz_class lucas_number(i64 n) {
  bool neg = n < 0;
  u64 m = neg ? static_cast<u64>(-n) : static_cast<u64>(n);
  mpz_class a = 2, b = 1;  // L_0, L_1
  if (m == 0) return a;
  for (u64 i = 1; i < m; ++i) {
    mpz_class t = a + b;
    a = b;
    b = t;
  }
  if (neg && m % 2 != 0) return -b;
  return b;
}

mpz_class quintisection(unsigned d, i64 r) {
  i64 r0 = ((r % 5) + 5) % 5;
  mpz_class sum = 0, term;
  for (u64 k = static_cast<u64>(r0); k <= 2ull * d; k += 5) {
    mpz_bin_uiui(term.get_mpz_t(), 2ull * d, k);
    sum += term;
  }
  mpz_class lhs = 5 * sum;
  mpz_class pw;
  mpz_ui_pow_ui(pw.get_mpz_t(), 2, 2ull * d);
  lhs -= pw;

  i64 dr = static_cast<i64>(d) - r;
  int j = jacobi(dr, 5);
  mpz_class rhs = 0;
  if (dr % 5 == 0) rhs += 2 * lucas_number(2 * static_cast<i64>(d));
  rhs += j * lucas_number(2 * static_cast<i64>(d) - j);
  if (lhs != rhs)
    throw std::logic_error("quintisection identity violated at d=" + std::to_string(d) +
                           " r=" + std::to_string(r));
  return lhs;
}

}  // namespace catsum
