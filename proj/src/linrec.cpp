#include "catsum/linrec.hpp"

#include "catsum/polyfield.hpp"

namespace catsum {

namespace {

constexpr long kWindowThreshold = 4096;  // below this, stepping beats powering

}  // namespace

RecurrenceSpec::RecurrenceSpec(unsigned order_h, Fp m_value) : h(order_h), p(m_value.p), m(m_value) {
  if (h == 0) throw error(errc::bad_argument, "recurrence order parameter h must be >= 1");
  if (m.zero()) throw error(errc::bad_argument, "m must be nonzero mod p");
  c.resize(h + 2);
  for (unsigned j = 0; j <= h + 1; ++j) c[j] = binom_exact_u64(h + 1, j) % p;
  c[h] = sub_mod(c[h], m.v, p);
}

SequenceWindow SequenceWindow::initial(const RecurrenceSpec& spec) {
  SequenceWindow w;
  w.base = 0;
  w.values.assign(spec.h + 1, 0);
  w.values[spec.h] = 1 % spec.p;
  return w;
}

void SequenceWindow::step_forward(const RecurrenceSpec& spec) {
  // u_{base+h+1} = -sum_{j=0}^{h} c_j u_{base+j}   (c_{h+1} = 1)
  const u64 p = spec.p;
  u64 acc = 0;
  for (unsigned j = 0; j <= spec.h; ++j) acc = add_mod(acc, mul_mod(spec.c[j], values[j], p), p);
  values.erase(values.begin());
  values.push_back(acc == 0 ? 0 : p - acc);
  base += 1;
}

void SequenceWindow::step_backward(const RecurrenceSpec& spec) {
  // u_{base-1} = -sum_{j=1}^{h+1} c_j u_{base-1+j}   (c_0 = 1)
  const u64 p = spec.p;
  u64 acc = 0;
  for (unsigned j = 1; j <= spec.h + 1; ++j)
    acc = add_mod(acc, mul_mod(spec.c[j], values[j - 1], p), p);
  values.pop_back();
  values.insert(values.begin(), acc == 0 ? 0 : p - acc);
  base -= 1;
}

namespace {

// Dense polynomial arithmetic modulo the monic characteristic polynomial,
// specialized for the small degrees used here (h + 1 <= ~10).
struct CharField {
  const RecurrenceSpec& spec;
  unsigned deg;  // h + 1

  explicit CharField(const RecurrenceSpec& s) : spec(s), deg(s.h + 1) {}

  // reduce in place a coefficient vector of length <= 2*deg-1
  void reduce(std::vector<u64>& v) const {
    const u64 p = spec.p;
    for (size_t i = v.size(); i-- > deg;) {
      u64 top = v[i];
      if (top == 0) continue;
      v[i] = 0;
      // x^i = -sum_{j<deg} c_j x^{i-deg+j}  (monic)
      for (unsigned j = 0; j < deg; ++j) {
        u64 t = mul_mod(top, spec.c[j], p);
        size_t k = i - deg + j;
        v[k] = sub_mod(v[k], t, p);
      }
    }
    v.resize(deg);
  }

  std::vector<u64> mul(const std::vector<u64>& a, const std::vector<u64>& b) const {
    const u64 p = spec.p;
    std::vector<u64> r(2 * deg - 1, 0);
    for (unsigned i = 0; i < deg; ++i) {
      if (a[i] == 0) continue;
      for (unsigned j = 0; j < deg; ++j)
        if (b[j] != 0) r[i + j] = add_mod(r[i + j], mul_mod(a[i], b[j], p), p);
    }
    reduce(r);
    return r;
  }

  std::vector<u64> one() const {
    std::vector<u64> r(deg, 0);
    r[0] = 1 % spec.p;
    return r;
  }

  std::vector<u64> x() const {
    std::vector<u64> r(deg, 0);  // deg = h + 1 >= 2
    r[1] = 1 % spec.p;
    return r;
  }

  // x^{-1} = -(c_1 + c_2 x + ... + c_{h+1} x^h), valid since c_0 = 1
  std::vector<u64> x_inv() const {
    const u64 p = spec.p;
    std::vector<u64> r(deg, 0);
    for (unsigned j = 1; j <= deg; ++j) r[j - 1] = spec.c[j] == 0 ? 0 : p - spec.c[j];
    return r;
  }

  std::vector<u64> pow(std::vector<u64> base, const mpz_class& e) const {
    std::vector<u64> r = one();
    size_t bits = mpz_sgn(e.get_mpz_t()) == 0 ? 0 : mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
      r = mul(r, r);
      if (mpz_tstbit(e.get_mpz_t(), i)) r = mul(r, base);
    }
    return r;
  }
};

Fp seq_term_windowed(const RecurrenceSpec& spec, long n) {
  SequenceWindow w = SequenceWindow::initial(spec);
  if (n >= 0) {
    while (w.base + static_cast<long>(spec.h) < n) w.step_forward(spec);
    return Fp(w.values[static_cast<size_t>(n - w.base.get_si())], spec.p);
  }
  while (w.base > n) w.step_backward(spec);
  return Fp(w.values[0], spec.p);
}

}  // namespace

Fp seq_term(const RecurrenceSpec& spec, const mpz_class& n) {
  if (mpz_cmpabs_ui(n.get_mpz_t(), kWindowThreshold) <= 0)
    return seq_term_windowed(spec, n.get_si());
  CharField k(spec);
  std::vector<u64> img;
  if (n >= 0) {
    img = k.pow(k.x(), n);
  } else {
    mpz_class e = -n;
    img = k.pow(k.x_inv(), e);
  }
  // u_n = sum_i img[i] * u_i with the degenerate-window initials: only u_h = 1
  return Fp(spec.h < img.size() ? img[spec.h] : 0, spec.p);
}

namespace {

void check_d_range(const RecurrenceSpec& spec, const mpz_class& d, const PrimePower& pp) {
  if (pp.p != spec.p) throw error(errc::bad_argument, "prime mismatch between spec and modulus");
  if (d <= -static_cast<long>(spec.h) || d > spec.h * pp.n)
    throw error(errc::d_range, "d outside (-h, h p^a]");
}

// Right side of the order-reduction identity; valid for
// -h < d <= h p^a + h + 1 (values above h p^a are all zero sums).
Fp sum_by_recurrence(const RecurrenceSpec& spec, const mpz_class& d, const PrimePower& pp) {
  Fp acc(0, spec.p);
  for (unsigned r = 1; r <= spec.h; ++r) {
    mpz_class t = d - r * pp.n;
    if (t > 0) t = 0;
    mpz_class idx = spec.h - 1 + t;
    Fp coeff = Fp(binom_exact_u64(spec.h + 1, r + 1), spec.p);
    acc += coeff * seq_term(spec, idx);
  }
  return -acc;
}

}  // namespace

Fp sum_fast(const RecurrenceSpec& spec, const mpz_class& d, const PrimePower& pp) {
  check_d_range(spec, d, pp);
  return sum_by_recurrence(spec, d, pp);
}

Fp sum_fast(const RecurrenceSpec& spec, i64 d, const PrimePower& pp) {
  return sum_fast(spec, mpz_class(static_cast<long>(d)), pp);
}

Fp sum_via_roots(const RecurrenceSpec& spec, const mpz_class& d, const PrimePower& pp) {
  check_d_range(spec, d, pp);
  {
    // needs distinct roots: discriminant of (1+x)^{h+1} - m x^h nonzero
    PolyFp f = char_poly(spec.h, spec.m);
    if (discriminant_fp(f) == 0)
      throw error(errc::singular_discriminant, "characteristic polynomial has repeated roots mod p");
  }
  Fp acc = (Fp(spec.h + 1, spec.p) - spec.m) * seq_term(spec, d + spec.h - 1);
  acc += seq_term(spec, pp.n + d + spec.h - 1);
  if (d >= 1) {
    mpz_class rmax = (d - 1) / pp.n;  // floor; fits in a machine word (<= h)
    unsigned long rm = rmax.get_ui();
    for (unsigned long r = 1; r <= rm; ++r)
      acc += Fp(binom_exact_u64(spec.h + 1, r + 1), spec.p) * seq_term(spec, d + spec.h - 1 - r * pp.n);
  }
  return acc;
}

Fp sum_via_roots(const RecurrenceSpec& spec, i64 d, const PrimePower& pp) {
  return sum_via_roots(spec, mpz_class(static_cast<long>(d)), pp);
}

bool relation_check(const RecurrenceSpec& spec, const mpz_class& d, const PrimePower& pp) {
  check_d_range(spec, d, pp);
  Fp lhs(0, spec.p);
  for (unsigned j = 0; j <= spec.h + 1; ++j)
    lhs += Fp(spec.c[j], spec.p) * sum_by_recurrence(spec, d + j, pp);
  Fp rhs(0, spec.p);
  mpz_class t = d + spec.h;
  if (mpz_divisible_p(t.get_mpz_t(), pp.n.get_mpz_t())) {
    mpz_class q = t / pp.n;
    if (q >= 0 && q <= spec.h + 1) rhs = Fp(binom_exact_u64(spec.h + 1, q.get_ui() + 1), spec.p);
  }
  return lhs == rhs;
}

bool relation_check(const RecurrenceSpec& spec, i64 d, const PrimePower& pp) {
  return relation_check(spec, mpz_class(static_cast<long>(d)), pp);
}

Fp sylvester_term(std::span<const Fp> roots, const mpz_class& n) {
  if (roots.empty()) throw error(errc::bad_argument, "no roots given");
  const u64 p = roots.front().p;
  for (size_t i = 0; i < roots.size(); ++i) {
    if (roots[i].zero()) throw error(errc::bad_argument, "roots must be nonzero");
    for (size_t j = i + 1; j < roots.size(); ++j)
      if (roots[i] == roots[j]) throw error(errc::repeated_root, "roots must be pairwise distinct");
  }
  Fp acc(0, p);
  for (size_t i = 0; i < roots.size(); ++i) {
    Fp denom(1, p);
    for (size_t j = 0; j < roots.size(); ++j)
      if (j != i) denom *= roots[i] - roots[j];
    acc += roots[i].pow(n) / denom;
  }
  return acc;
}

}  // namespace catsum
