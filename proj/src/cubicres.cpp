#include "catsum/cubicres.hpp"

#include "catsum/lucas.hpp"
#include "catsum/polyfield.hpp"

namespace catsum {

namespace {

// round(n / d) for d > 0, ties toward +infinity
mpz_class round_div(const mpz_class& n, const mpz_class& d) {
  mpz_class q;
  mpz_class num = 2 * n + d;
  mpz_class den = 2 * d;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

int mod3(const mpz_class& x) { return static_cast<int>(mpz_fdiv_ui(x.get_mpz_t(), 3)); }

}  // namespace

std::pair<Eisenstein, Eisenstein> eis_divmod(const Eisenstein& x, const Eisenstein& y) {
  if (y.zero()) throw error(errc::division_by_zero, "Eisenstein division by zero");
  Eisenstein num = x * y.conj();
  mpz_class n = y.norm();
  Eisenstein q(round_div(num.a, n), round_div(num.b, n));
  Eisenstein r = x - q * y;
  return {q, r};
}

Eisenstein eis_mod(const Eisenstein& x, const Eisenstein& y) { return eis_divmod(x, y).second; }

Eisenstein eis_gcd(Eisenstein x, Eisenstein y) {
  while (!y.zero()) {
    Eisenstein r = eis_mod(x, y);
    x = y;
    y = r;
  }
  return x;
}

Eisenstein eis_unit(int sign, int t) {
  Eisenstein u;
  switch (((t % 3) + 3) % 3) {
    case 0: u = {1, 0}; break;
    case 1: u = {0, 1}; break;
    default: u = {-1, -1}; break;  // w^2 = -1 - w
  }
  return sign >= 0 ? u : -u;
}

PrimaryForm primary_associate(const Eisenstein& x) {
  for (int t = 0; t < 3; ++t)
    for (int sign : {1, -1}) {
      Eisenstein cand = eis_unit(sign, t) * x;
      if (mod3(cand.a) == 2 && mod3(cand.b) == 0) return {cand, t, sign};
    }
  throw error(errc::not_coprime_to_three, "no primary associate: element shares a factor with 3");
}

namespace {

// (w / beta)_3 = w^((N(beta)-1)/3 mod 3) for beta coprime to 3.
int omega_exponent(const Eisenstein& beta) {
  unsigned long n9 = mpz_fdiv_ui(beta.norm().get_mpz_t(), 9);
  return static_cast<int>(((n9 - 1) / 3) % 3);
}

// ((1-w) / beta)_3 = w^(2(a+1)/3 mod 3) for primary beta = a + bw.
int lambda_exponent(const Eisenstein& beta) {
  unsigned long a9 = mpz_fdiv_ui(beta.a.get_mpz_t(), 9);
  return static_cast<int>((2 * ((a9 + 1) / 3)) % 3);
}

// exact division by lambda = 1 - w:  z / lambda = z (2 + w) / 3
Eisenstein divide_lambda(const Eisenstein& z) {
  Eisenstein t = z * Eisenstein(2, 1);
  mpz_class a, b;
  mpz_divexact_ui(a.get_mpz_t(), t.a.get_mpz_t(), 3);
  mpz_divexact_ui(b.get_mpz_t(), t.b.get_mpz_t(), 3);
  return {a, b};
}

}  // namespace

std::optional<int> cubic_jacobi(const Eisenstein& alpha_in, const Eisenstein& n) {
  if (mpz_fdiv_ui(n.norm().get_mpz_t(), 3) == 0)
    throw error(errc::not_coprime_to_three, "modulus must be coprime to 3");
  if (n.norm() == 1) return 0;  // empty product of primes
  Eisenstein alpha = alpha_in;
  Eisenstein beta = primary_associate(n).value;
  int acc = 0;
  for (;;) {
    alpha = eis_mod(alpha, beta);
    if (alpha.zero()) return std::nullopt;  // shared factor, symbol 0
    int s = 0;
    while (mpz_fdiv_ui(alpha.norm().get_mpz_t(), 3) == 0) {
      alpha = divide_lambda(alpha);
      ++s;
    }
    PrimaryForm pf = primary_associate(alpha);
    alpha = pf.value;
    // alpha_old = lambda^s * sign * w^{-t} * alpha_new, and (-1/beta) = 1
    acc = (acc + s * lambda_exponent(beta) + ((3 - pf.t) % 3) * omega_exponent(beta)) % 3;
    if (alpha.norm() == 1) return acc;  // alpha is -1 now
    std::swap(alpha, beta);             // reciprocity: both arguments primary
  }
}

std::optional<int> cubic_jacobi(const Eisenstein& alpha, const mpz_class& n) {
  return cubic_jacobi(alpha, Eisenstein(n, 0));
}

std::optional<int> cubic_character_prime(const Eisenstein& alpha, const Eisenstein& pi) {
  if (eis_mod(alpha, pi).zero()) return std::nullopt;
  mpz_class e = (pi.norm() - 1) / 3;
  // square-and-multiply in Z[w]/(pi)
  Eisenstein r(1, 0), base = eis_mod(alpha, pi);
  size_t bits = mpz_sgn(e.get_mpz_t()) == 0 ? 0 : mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t i = bits; i-- > 0;) {
    r = eis_mod(r * r, pi);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = eis_mod(r * base, pi);
  }
  for (int t = 0; t < 3; ++t)
    if (eis_mod(r - eis_unit(1, t), pi).zero()) return t;
  throw error(errc::bad_argument, "modulus is not prime: character not a cube root of unity");
}

Eisenstein split_prime(u64 p) {
  if (p % 3 != 1) throw error(errc::bad_argument, "prime does not split in Z[w]");
  u64 s = *sqrt_mod(p - 3 % p, p);  // sqrt(-3)
  // p | (s - (1+2w))(s + (1+2w)) since (1+2w)^2 = -3
  Eisenstein pi = eis_gcd(Eisenstein(mpz_class(static_cast<unsigned long>(p)), 0),
                          Eisenstein(mpz_class(static_cast<unsigned long>(s)) - 1, -2));
  if (pi.norm() != static_cast<unsigned long>(p))
    throw error(errc::bad_argument, "prime splitting failed");
  return pi;
}

CubicClass classify(const mpz_class& num, const mpz_class& den, const PrimePower& pp) {
  if (pp.p == 3) throw error(errc::bad_argument, "classification needs gcd(p, 3) = 1");
  if (mpz_divisible_ui_p(den.get_mpz_t(), pp.p))
    throw error(errc::denominator_divisible, "denominator divisible by p");
  u64 k = mul_mod(mpz_mod_u64(num, pp.p), inv_mod(mpz_mod_u64(den, pp.p), pp.p), pp.p);
  // (x / p^a)_3 = (x / p)_3 ^ a, and the symbol only depends on k mod p
  Eisenstein alpha(mpz_class(static_cast<unsigned long>(k)) + 1, 2);
  auto e = cubic_jacobi(alpha, mpz_class(static_cast<unsigned long>(pp.p)));
  if (!e) return CubicClass::undefined;
  return static_cast<CubicClass>((*e * pp.a) % 3);
}

CubicClass classify(i64 num, i64 den, const PrimePower& pp) {
  return classify(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)), pp);
}

bool sun_c0_criterion(i64 num, i64 den, u64 p) {
  if (p <= 3) throw error(errc::bad_argument, "criterion needs p > 3");
  Fp c = rational_residue(num, den, p);
  Fp csq3 = c * c + Fp(3, p);
  if (c.zero() || csq3.zero()) throw error(errc::degenerate_c, "c (c^2 + 3) must be nonzero mod p");
  LucasParams params(Fp(6, p), Fp(3, p) * csq3);
  i64 idx = (static_cast<i64>(p) - jacobi(static_cast<i64>(p), 3)) / 3;
  return lucas_pair(params, mpz_class(static_cast<long>(idx))).u.zero();
}

TriplePrediction lemma41_predict(i64 a1, i64 a2, i64 a3, const PrimePower& pp) {
  const u64 p = pp.p;
  if (p <= 3) throw error(errc::bad_argument, "needs p > 3");
  Fp D = Fp::from(cubic_discriminant(a1, a2, a3), p);
  if (D.zero()) throw error(errc::singular_d, "p divides the discriminant");
  if (jacobi(static_cast<i64>(D.v), p) == -1)
    throw error(errc::no_square_root, "discriminant is a quadratic non-residue");
  u64 droot = *sqrt_mod(D.v, p);
  Fp d(droot, p);
  Fp A1 = Fp::from(a1, p), A2 = Fp::from(a2, p), A3 = Fp::from(a3, p);
  Fp b = -(A1 * A1 * A1 + A1 * A1 * A1) + Fp(9, p) * A1 * A2 - Fp(27, p) * A3;
  Fp sq = A1 * A1 - Fp(3, p) * A2;  // a1^2 - 3 a2
  TriplePrediction out;
  out.disc_root = droot;
  if (sq.zero()) {
    // here b^2 = -27 D mod p, so p^a == 1 (mod 3) and the exponent is exact
    mpz_class e = (pp.n - 1) / 3;
    Fp E = b.pow(e);
    out.u0 = Fp(0, p);
    out.u1 = E;
    out.u2 = -A1 * (E + E + Fp(1, p)) / Fp(3, p);
    out.branch = TriplePrediction::Branch::degenerate;
    return out;
  }
  CubicClass cls = classify(static_cast<i64>(b.v), static_cast<i64>(mul_mod(3 % p, droot, p)), pp);
  if (cls == CubicClass::undefined)
    throw error(errc::bad_argument, "unreachable: b/(3d) class undefined with a1^2 - 3a2 nonzero");
  if (cls == CubicClass::c0) {
    out.u0 = Fp(0, p);
    out.u1 = Fp(1, p);
    out.u2 = -A1;
    out.branch = TriplePrediction::Branch::class0;
    return out;
  }
  Fp sign = cls == CubicClass::c1 ? Fp(1, p) : Fp::from(-1, p);
  out.u0 = sign * sq / d;
  out.u1 = (sign * (Fp(9, p) * A3 - A1 * A2) - d) / (d + d);
  out.u2 = sign * (A2 * A2 - Fp(3, p) * A1 * A3) / d;
  out.branch = cls == CubicClass::c1 ? TriplePrediction::Branch::class1_plus
                                     : TriplePrediction::Branch::class1_minus;
  return out;
}

TriplePrediction lemma42_predict(i64 m, i64 t, const PrimePower& pp) {
  const u64 p = pp.p;
  if (p <= 3) throw error(errc::bad_argument, "needs p > 3");
  Fp M = Fp::from(m, p), T = Fp::from(t, p);
  if ((T + T + Fp(1, p)).zero()) throw error(errc::bad_argument, "2t + 1 must be nonzero mod p");
  if (M != T * T + T + Fp(7, p)) throw error(errc::bad_argument, "m must equal t^2 + t + 7 mod p");
  if (M.zero()) throw error(errc::bad_argument, "m must be nonzero mod p");
  TriplePrediction out;
  out.disc_root = 0;
  Fp two_t1 = T + T + Fp(1, p);
  if (M == Fp(6, p)) {
    mpz_class e1 = (pp.n - 1) / 3;  // p == 1 (mod 3) here since -3 is a square
    mpz_class e2 = (pp.n + 2) / 3;
    out.u0 = Fp(0, p);
    out.u1 = Fp(2, p).pow(e1);
    out.u2 = Fp(2, p).pow(e2) + Fp(1, p);
    out.branch = TriplePrediction::Branch::degenerate;
    return out;
  }
  Fp cnum = (M * M + M * M) - Fp(18, p) * M + Fp(27, p);
  Fp cden = Fp(6, p) * T + Fp(3, p);
  CubicClass cls = classify(static_cast<i64>(cnum.v), static_cast<i64>(cden.v), pp);
  if (cls == CubicClass::undefined)
    throw error(errc::bad_argument, "unreachable: class undefined with m(m-6) nonzero");
  if (cls == CubicClass::c0) {
    out.u0 = Fp(0, p);
    out.u1 = Fp(1, p);
    out.u2 = M - Fp(3, p);
    out.branch = TriplePrediction::Branch::class0;
    return out;
  }
  Fp sign = cls == CubicClass::c1 ? Fp(1, p) : Fp::from(-1, p);
  out.u0 = sign * (M - Fp(6, p)) / two_t1;
  out.u1 = sign * Fp(3, p) / (two_t1 + two_t1) - Fp(2, p).inv();
  out.u2 = sign * Fp(3, p) / two_t1;
  out.branch = cls == CubicClass::c1 ? TriplePrediction::Branch::class1_plus
                                     : TriplePrediction::Branch::class1_minus;
  return out;
}

}  // namespace catsum
