#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "catsum/oracle.hpp"

using namespace catsum;

namespace {

// Exact-integer reference sum, written against the descriptor semantics with
// no shared machinery: binomials via GMP, weights recomputed per term.
Fp reference_sum(const SumDescriptor& desc, const PrimePower& pp) {
  const u64 p = pp.p;
  Fp acc(0, p);
  Fp minv = rational_residue(desc.m_num, desc.m_den, p).inv();
  mpz_class binom;
  for (mpz_class k = desc.k_start; k < pp.n; ++k) {
    if (desc.class_r) {
      mpz_class rr = (k - *desc.class_r) % (p - 1);
      if (rr != 0) continue;
    }
    mpz_class top = (desc.h + 1) * k;
    auto bin_at = [&](const mpz_class& low) -> Fp {
      if (low < 0 || low > top) return Fp(0, p);
      mpz_bin_ui(binom.get_mpz_t(), top.get_mpz_t(), low.get_ui());
      return Fp::from(binom, p);
    };
    Fp term(0, p);
    switch (desc.kind) {
      case SumKind::plain: {
        mpz_class low = k + desc.d;
        if (desc.d_plus_pa) low += pp.n;
        term = bin_at(low);
        break;
      }
      case SumKind::catalan_c:
        term = bin_at(k) - Fp(desc.h, p) * bin_at(k - 1);
        break;
      case SumKind::catalan_cbar:
        term = Fp(desc.h, p) * bin_at(k) - bin_at(k + 1);
        break;
    }
    acc += term * minv.pow(k);
  }
  return acc;
}

SumDescriptor plain(unsigned h, i64 mn, i64 md, i64 d, unsigned k_start = 0) {
  SumDescriptor desc;
  desc.h = h;
  desc.m_num = mn;
  desc.m_den = md;
  desc.d = d;
  desc.k_start = k_start;
  return desc;
}

}  // namespace

TEST_CASE("pinned sums") {
  CHECK(direct_sum(plain(2, 1, 1, 0), PrimePower(7, 1)).v == 3);  // 22165 mod 7
  CHECK(direct_sum(plain(1, 1, 1, 0), PrimePower(5, 1)).v == 4);  // 99 mod 5
  {
    // three terms by hand at p = 3: binom(4k, k+1)/2^k for k = 0, 1, 2
    PrimePower pp(3, 1);
    SumDescriptor desc = plain(3, 5, 1, 1);
    Fp expect = Fp(0, 3) + Fp::from(6, 3) * Fp(1, 3) +
                Fp::from(56, 3) * rational_residue(1, 25, 3);
    CHECK(direct_sum(desc, pp) == expect);
    CHECK(direct_sum(desc, pp) == reference_sum(desc, pp));
  }
}

TEST_CASE("closed form for the h = 1, m = 1 sums") {
  // sum_{k<p} binom(2k, k+d) = jacobi(p - d, 3) for d = 0..p
  for (u64 p = 5; p < 100; ++p) {
    if (!is_prime(p)) continue;
    PrimePower pp(p, 1);
    for (i64 d = 0; d <= static_cast<i64>(p); ++d) {
      Fp got = direct_sum(plain(1, 1, 1, d), pp);
      CHECK(got == Fp::from(jacobi(static_cast<i64>(p) - d, 3), p));
    }
  }
}

TEST_CASE("catalan values by the subtraction forms") {
  CHECK(catalan_mod(SumKind::catalan_c, 1, 3, 1009).v == 5);
  {
    // both forms of C_2^(2): binom(6,2) - 2 binom(6,1) = 3 = binom(6,2)/5
    u64 p = 1009;
    CHECK(catalan_mod(SumKind::catalan_c, 2, 2, p).v == 3);
    CHECK((Fp(15, p) / Fp(5, p)).v == 3);
  }
  // ordinary Catalan numbers at h = 1: C = Cbar
  for (i64 k = 0; k <= 20; ++k)
    CHECK(catalan_mod(SumKind::catalan_c, 1, k, 97) == catalan_mod(SumKind::catalan_cbar, 1, k, 97));
  // division-free forms agree with the division forms when they exist
  for (unsigned h : {2u, 3u, 4u})
    for (i64 k = 0; k <= 30; ++k) {
      u64 p = 101;
      Fp hk1 = Fp::from(h * k + 1, p);
      mpz_class top = mpz_class(h + 1) * k;
      mpz_class b;
      mpz_bin_ui(b.get_mpz_t(), top.get_mpz_t(), static_cast<unsigned long>(k));
      if (!hk1.zero())
        CHECK(catalan_mod(SumKind::catalan_c, h, k, p) == Fp::from(b, p) / hk1);
      Fp k1 = Fp::from(k + 1, p);
      if (!k1.zero())
        CHECK(catalan_mod(SumKind::catalan_cbar, h, k, p) == Fp(h, p) * Fp::from(b, p) / k1);
    }
}

TEST_CASE("catalan sums decompose into plain sums") {
  for (u64 p : {5ull, 7ull, 13ull})
    for (unsigned a : {1u, 2u}) {
      PrimePower pp(p, a);
      for (i64 m : {7, 9}) {
        if (m % static_cast<i64>(p) == 0) continue;
        SumDescriptor cbar = plain(2, m, 1, 0, 1);
        cbar.kind = SumKind::catalan_cbar;
        Fp lhs = direct_sum(cbar, pp);
        Fp s0 = direct_sum(plain(2, m, 1, 0, 1), pp);
        Fp s1 = direct_sum(plain(2, m, 1, 1, 1), pp);
        CHECK(lhs == Fp(2, p) * s0 - s1);
      }
    }
}

TEST_CASE("random descriptors match the reference") {
  std::mt19937_64 rng(61);
  for (int iter = 0; iter < 100; ++iter) {
    u64 p = std::array<u64, 4>{3, 5, 11, 19}[iter % 4];
    unsigned a = 1 + iter % 2;
    PrimePower pp(p, a);
    SumDescriptor desc;
    desc.h = 1 + rng() % 4;
    desc.m_num = static_cast<i64>(rng() % 30) - 15;
    desc.m_den = 1 + static_cast<i64>(rng() % 6);
    if (desc.m_num % static_cast<i64>(p) == 0) desc.m_num += 1;
    if (desc.m_den % static_cast<i64>(p) == 0) desc.m_den += 1;
    if (Fp::from(desc.m_num, p).zero()) continue;
    desc.kind = std::array<SumKind, 3>{SumKind::plain, SumKind::catalan_c,
                                       SumKind::catalan_cbar}[rng() % 3];
    desc.d = static_cast<i64>(rng() % (2 * desc.h)) - desc.h + 1;
    desc.k_start = rng() % 2;
    desc.d_plus_pa = desc.kind == SumKind::plain && (rng() % 3 == 0);
    if (p > 3 && rng() % 4 == 0) desc.class_r = static_cast<i64>(rng() % (p - 1));
    CHECK(direct_sum(desc, pp) == reference_sum(desc, pp));
  }
}

TEST_CASE("worker counts do not change results") {
  PrimePower pp(23, 3);  // 12167 terms
  SumDescriptor desc = plain(3, 5, 1, 1);
  OracleOptions one, four;
  one.workers = 1;
  four.workers = 4;
  CHECK(direct_sum(desc, pp, one) == direct_sum(desc, pp, four));
  desc.kind = SumKind::catalan_cbar;
  CHECK(direct_sum(desc, pp, one) == direct_sum(desc, pp, four));
  desc.kind = SumKind::plain;
  desc.class_r = 7;
  desc.k_start = 1;
  CHECK(direct_sum(desc, pp, one) == direct_sum(desc, pp, four));
}

TEST_CASE("budget is enforced") {
  OracleOptions tiny;
  tiny.budget = 100;
  CHECK_THROWS_AS(direct_sum(plain(2, 1, 1, 0), PrimePower(11, 2), tiny), error);
  CHECK_NOTHROW(direct_sum(plain(2, 1, 1, 0), PrimePower(7, 2), tiny));
}

TEST_CASE("m = 0 mod p is rejected") {
  CHECK_THROWS_AS(direct_sum(plain(2, 7, 1, 0), PrimePower(7, 1)), error);
}

TEST_CASE("residue class sums") {
  {
    // p = 5, a = 6, d = 1, r = 1: the predicted value is 2^(d+3-2r) 3^(3r-2) = 12 = 2 (mod 5)
    PrimePower pp(5, 6);
    CHECK(residue_class_sum(pp, 1, 1).v == 2);
  }
  {
    // restricted sums add up to the unrestricted one
    PrimePower pp(7, 2);
    for (i64 d : {0, 1, -1}) {
      Fp total(0, 7);
      for (i64 r = 0; r < 6; ++r) total += residue_class_sum(pp, d, r);
      SumDescriptor all = plain(2, 1, 1, d, 1);
      CHECK(total == direct_sum(all, pp));
    }
  }
}
