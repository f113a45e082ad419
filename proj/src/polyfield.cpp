#include "catsum/polyfield.hpp"

namespace catsum {

PolyFp::PolyFp(u64 prime, std::vector<u64> coeffs) : p(prime), c(std::move(coeffs)) {
  for (auto& x : c) x %= p;
  trim();
}

void PolyFp::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

PolyFp poly_add(const PolyFp& a, const PolyFp& b) {
  PolyFp r;
  r.p = a.p;
  r.c.resize(std::max(a.c.size(), b.c.size()), 0);
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = add_mod(a.coeff(i), b.coeff(i), a.p);
  r.trim();
  return r;
}

PolyFp poly_sub(const PolyFp& a, const PolyFp& b) {
  PolyFp r;
  r.p = a.p;
  r.c.resize(std::max(a.c.size(), b.c.size()), 0);
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = sub_mod(a.coeff(i), b.coeff(i), a.p);
  r.trim();
  return r;
}

PolyFp poly_mul(const PolyFp& a, const PolyFp& b) {
  PolyFp r;
  r.p = a.p;
  if (a.zero() || b.zero()) return r;
  r.c.assign(a.c.size() + b.c.size() - 1, 0);
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (size_t j = 0; j < b.c.size(); ++j)
      r.c[i + j] = add_mod(r.c[i + j], mul_mod(a.c[i], b.c[j], a.p), a.p);
  }
  r.trim();
  return r;
}

PolyFp poly_scale(const PolyFp& a, u64 s) {
  PolyFp r = a;
  s %= a.p;
  for (auto& x : r.c) x = mul_mod(x, s, a.p);
  r.trim();
  return r;
}

std::pair<PolyFp, PolyFp> poly_divmod(const PolyFp& a, const PolyFp& b) {
  if (b.zero()) throw error(errc::division_by_zero, "polynomial division by zero");
  PolyFp rem = a, quo;
  quo.p = a.p;
  if (a.degree() < b.degree()) return {quo, rem};
  quo.c.assign(a.c.size() - b.c.size() + 1, 0);
  u64 linv = inv_mod(b.lead(), b.p);
  for (int i = rem.degree(); i >= b.degree() && !rem.zero(); i = rem.degree()) {
    u64 q = mul_mod(rem.c[i], linv, b.p);
    size_t shift = i - b.degree();
    quo.c[shift] = q;
    for (size_t j = 0; j < b.c.size(); ++j)
      rem.c[shift + j] = sub_mod(rem.c[shift + j], mul_mod(q, b.c[j], b.p), b.p);
    rem.trim();
  }
  quo.trim();
  return {quo, rem};
}

PolyFp poly_mod(const PolyFp& a, const PolyFp& b) { return poly_divmod(a, b).second; }

PolyFp poly_monic(const PolyFp& a) {
  if (a.zero() || a.lead() == 1) return a;
  return poly_scale(a, inv_mod(a.lead(), a.p));
}

PolyFp poly_gcd(PolyFp a, PolyFp b) {
  while (!b.zero()) {
    PolyFp r = poly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(a);
}

PolyFp poly_derivative(const PolyFp& a) {
  PolyFp r;
  r.p = a.p;
  if (a.degree() < 1) return r;
  r.c.resize(a.c.size() - 1);
  for (size_t i = 1; i < a.c.size(); ++i) r.c[i - 1] = mul_mod(a.c[i], i % a.p, a.p);
  r.trim();
  return r;
}

PolyFp poly_powmod(const PolyFp& a, const mpz_class& e, const PolyFp& f) {
  PolyFp base = poly_mod(a, f);
  PolyFp r;
  r.p = f.p;
  r.c = {1};
  size_t bits = mpz_sgn(e.get_mpz_t()) == 0 ? 0 : mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t i = bits; i-- > 0;) {
    r = poly_mod(poly_mul(r, r), f);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = poly_mod(poly_mul(r, base), f);
  }
  return r;
}

std::vector<PolyFp> frobenius_powers(const PolyFp& f, unsigned count) {
  std::vector<PolyFp> out;
  PolyFp x(f.p, {0, 1});
  PolyFp h = poly_mod(x, f);
  for (unsigned i = 0; i < count; ++i) {
    h = poly_powmod(h, mpz_class(static_cast<unsigned long>(f.p)), f);
    out.push_back(h);
  }
  return out;
}

PolyFp char_poly(unsigned h, Fp m) {
  std::vector<u64> c(h + 2);
  for (unsigned j = 0; j <= h + 1; ++j) c[j] = binom_exact_u64(h + 1, j) % m.p;
  c[h] = sub_mod(c[h], m.v, m.p);
  return PolyFp(m.p, std::move(c));
}

mpz_class cubic_discriminant(const mpz_class& a1, const mpz_class& a2, const mpz_class& a3) {
  return a1 * a1 * a2 * a2 - 4 * a2 * a2 * a2 - 4 * a1 * a1 * a1 * a3 - 27 * a3 * a3 +
         18 * a1 * a2 * a3;
}

namespace {

// Exact determinant by Bareiss fraction-free elimination.
mpz_class bareiss_det(std::vector<std::vector<mpz_class>> m) {
  const size_t n = m.size();
  if (n == 0) return 1;
  mpz_class prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) {
        mpz_class t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    prev = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

}  // namespace

mpz_class discriminant_z(const std::vector<mpz_class>& coeffs_low_first) {
  const int n = static_cast<int>(coeffs_low_first.size()) - 1;
  if (n < 2) throw error(errc::degree_too_small, "discriminant needs degree >= 2");
  if (coeffs_low_first.back() == 0) throw error(errc::bad_argument, "leading coefficient is zero");
  std::vector<mpz_class> f(coeffs_low_first.rbegin(), coeffs_low_first.rend());  // high first
  std::vector<mpz_class> g(n);                                                   // f', high first
  for (int i = 0; i < n; ++i) g[i] = f[i] * (n - i);
  const int m = n - 1;
  const size_t dim = n + m;
  std::vector<std::vector<mpz_class>> s(dim, std::vector<mpz_class>(dim, mpz_class(0)));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) s[i][i + j] = f[j];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) s[m + i][i + j] = g[j];
  mpz_class res = bareiss_det(std::move(s));
  mpz_class d;
  mpz_divexact(d.get_mpz_t(), res.get_mpz_t(), coeffs_low_first.back().get_mpz_t());
  if ((static_cast<long>(n) * (n - 1) / 2) % 2 != 0) d = -d;
  return d;
}

namespace {

u64 resultant_fp(PolyFp a, PolyFp b) {
  const u64 p = a.p;
  if (a.zero() || b.zero()) return 0;
  u64 res = 1;
  while (true) {
    if (b.degree() == 0) return mul_mod(res, pow_mod(b.lead(), a.degree(), p), p);
    PolyFp r = poly_mod(a, b);
    if (r.zero()) return 0;
    u64 exp = static_cast<u64>(a.degree() - r.degree());
    res = mul_mod(res, pow_mod(b.lead(), exp, p), p);
    if ((static_cast<u64>(a.degree()) * static_cast<u64>(b.degree())) % 2 != 0) res = p - res;
    a = std::move(b);
    b = std::move(r);
  }
}

}  // namespace

u64 discriminant_fp(const PolyFp& f) {
  const int n = f.degree();
  if (n < 2) throw error(errc::degree_too_small, "discriminant needs degree >= 2");
  PolyFp fd = poly_derivative(f);
  if (fd.zero()) return 0;
  u64 res = resultant_fp(f, fd);
  u64 d = mul_mod(res, inv_mod(f.lead(), f.p), f.p);
  if ((static_cast<long>(n) * (n - 1) / 2) % 2 != 0) d = d == 0 ? 0 : f.p - d;
  return d;
}

namespace {

// Counts irreducible factors of a squarefree monic g by distinct-degree
// splitting: gcds against x^(p^d) - x, never materializing p^d.
unsigned ddf_count(PolyFp g) {
  unsigned count = 0;
  const u64 p = g.p;
  if (g.degree() <= 0) return 0;
  PolyFp x(p, {0, 1});
  PolyFp h = poly_mod(x, g);
  for (int d = 1; 2 * d <= g.degree(); ++d) {
    h = poly_powmod(h, mpz_class(static_cast<unsigned long>(p)), g);
    PolyFp split = poly_gcd(poly_sub(h, x), g);
    if (split.degree() > 0) {
      count += static_cast<unsigned>(split.degree() / d);
      g = poly_divmod(g, split).first;
      if (g.degree() <= 0) break;
      h = poly_mod(h, g);
    }
  }
  if (g.degree() > 0) ++count;
  return count;
}

unsigned count_with_multiplicity(PolyFp f, unsigned outer_mult);

// Classical squarefree decomposition in characteristic p.
unsigned sff_count(PolyFp f, unsigned outer_mult) {
  const u64 p = f.p;
  unsigned total = 0;
  PolyFp fd = poly_derivative(f);
  if (fd.zero()) {
    // f = g(x^p) = g(x)^p since coefficients are fixed by Frobenius
    PolyFp g;
    g.p = p;
    g.c.resize(f.c.size() / p + 1, 0);
    for (size_t i = 0; i * p < f.c.size(); ++i) g.c[i] = f.c[i * p];
    g.trim();
    return count_with_multiplicity(std::move(g), outer_mult * static_cast<unsigned>(p));
  }
  PolyFp c = poly_gcd(f, fd);
  PolyFp w = poly_divmod(f, c).first;
  unsigned i = 1;
  while (w.degree() > 0) {
    PolyFp y = poly_gcd(w, c);
    PolyFp fac = poly_divmod(w, y).first;
    if (fac.degree() > 0) total += outer_mult * i * ddf_count(fac);
    w = std::move(y);
    c = poly_divmod(c, w).first;
    ++i;
  }
  if (c.degree() > 0) total += count_with_multiplicity(std::move(c), outer_mult);
  return total;
}

unsigned count_with_multiplicity(PolyFp f, unsigned outer_mult) {
  if (f.degree() <= 0) return 0;
  return sff_count(std::move(f), outer_mult);
}

}  // namespace

unsigned count_irreducible_factors(const PolyFp& f) {
  if (f.zero()) throw error(errc::zero_polynomial, "cannot factor the zero polynomial");
  return count_with_multiplicity(poly_monic(f), 1);
}

bool stickelberger_check(const PolyFp& f) {
  if (f.p == 2) throw error(errc::bad_argument, "stickelberger check needs odd p");
  u64 d = discriminant_fp(f);
  if (d == 0) throw error(errc::singular_discriminant, "p divides D(f)");
  unsigned r = count_irreducible_factors(f);
  int expect = ((f.degree() - static_cast<int>(r)) % 2 == 0) ? 1 : -1;
  return jacobi(static_cast<i64>(d), f.p) == expect;
}

}  // namespace catsum
