#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "catsum/linrec.hpp"
#include "catsum/polyfield.hpp"

using namespace catsum;

namespace {

// Test-side oracle: sum binom((h+1)k, k+d) / m^k term by term with exact
// integer binomials. Completely independent of the recurrence engine and of
// the production enumeration module.
Fp naive_sum(unsigned h, i64 m_num, i64 m_den, const mpz_class& d, const PrimePower& pp) {
  const u64 p = pp.p;
  Fp minv = rational_residue(m_num, m_den, p).inv();
  Fp weight(1, p);
  Fp acc(0, p);
  mpz_class term;
  for (mpz_class k = 0; k < pp.n; ++k) {
    mpz_class lower = k + d;
    if (lower >= 0 && lower <= (h + 1) * k) {
      mpz_bin_ui(term.get_mpz_t(), mpz_class((h + 1) * k).get_mpz_t(), lower.get_ui());
      acc += Fp::from(term, p) * weight;
    }
    weight *= minv;
  }
  return acc;
}

RecurrenceSpec spec_of(unsigned h, i64 mn, i64 md, u64 p) {
  return RecurrenceSpec(h, rational_residue(mn, md, p));
}

}  // namespace

TEST_CASE("initial conditions and the forced u_{-1} = -1") {
  for (unsigned h : {1u, 2u, 3u, 4u})
    for (u64 p : {5ull, 7ull, 13ull}) {
      for (i64 m = 1; m < 5; ++m) {
        if (m % static_cast<i64>(p) == 0) continue;
        RecurrenceSpec spec = spec_of(h, m, 1, p);
        CHECK(seq_term(spec, h) == Fp(1, p));
        for (unsigned i = 0; i < h; ++i) CHECK(seq_term(spec, i).zero());
        CHECK(seq_term(spec, -1) == Fp::from(-1, p));
      }
    }
}

TEST_CASE("m = 0 and h = 0 are rejected") {
  CHECK_THROWS_AS(RecurrenceSpec(2, Fp(0, 5)), error);
  CHECK_THROWS_AS(RecurrenceSpec(0, Fp(1, 5)), error);
}

TEST_CASE("explicit value at h = 2, m = 27/4, p = 7, n = 5") {
  // closed form (16/81)((-1/4)^n + (9n/8 - 1) 2^n) at n = 5, evaluated in Z/7
  const u64 p = 7;
  Fp c1 = rational_residue(16, 81, p);
  Fp t1 = rational_residue(-1, 4, p).pow(5);
  Fp t2 = (rational_residue(9 * 5, 8, p) - Fp(1, p)) * Fp(2, p).pow(5);
  Fp expect = c1 * (t1 + t2);
  CHECK(expect == Fp(2, p));
  RecurrenceSpec spec = spec_of(2, 27, 4, p);
  CHECK(seq_term(spec, 5) == expect);
}

TEST_CASE("window stepping is reversible") {
  std::mt19937_64 rng(3);
  for (int iter = 0; iter < 20; ++iter) {
    u64 p = std::array<u64, 4>{5, 31, 101, 1009}[iter % 4];
    unsigned h = 1 + iter % 4;
    RecurrenceSpec spec(h, Fp(1 + rng() % (p - 1), p));
    SequenceWindow w = SequenceWindow::initial(spec);
    SequenceWindow orig = w;
    int steps = 1 + static_cast<int>(rng() % 10000);
    for (int i = 0; i < steps; ++i) w.step_forward(spec);
    for (int i = 0; i < steps; ++i) w.step_backward(spec);
    CHECK(w.base == orig.base);
    CHECK(w.values == orig.values);
  }
}

TEST_CASE("window stepping and polynomial exponentiation agree on both signs") {
  std::mt19937_64 rng(5);
  for (int iter = 0; iter < 20; ++iter) {
    u64 p = std::array<u64, 4>{5, 13, 97, 1000003}[iter % 4];
    unsigned h = 1 + iter % 4;
    RecurrenceSpec spec(h, Fp(1 + rng() % (p - 1), p));
    SequenceWindow fwd = SequenceWindow::initial(spec);
    SequenceWindow bwd = SequenceWindow::initial(spec);
    // walk to +-10^4 and compare against the powering path at sampled offsets
    const long reach = 10000;
    for (long n = 0; n <= reach; ++n) {
      if (n % 977 == 0 || n == reach) {
        CHECK(Fp(fwd.values[0], p) == seq_term(spec, fwd.base));
        CHECK(Fp(bwd.values[0], p) == seq_term(spec, bwd.base));
      }
      fwd.step_forward(spec);
      bwd.step_backward(spec);
    }
  }
}

TEST_CASE("powering path matches stepping across the dispatch threshold") {
  RecurrenceSpec spec = spec_of(3, 5, 1, 101);
  SequenceWindow w = SequenceWindow::initial(spec);
  for (long i = 0; i < 5000; ++i) w.step_forward(spec);
  // w.base = 5000 > threshold: seq_term uses powering there
  CHECK(seq_term(spec, 5000) == Fp(w.values[0], 101));
}

TEST_CASE("sum examples pinned by independent enumeration") {
  {
    PrimePower pp(7, 1);
    RecurrenceSpec spec = spec_of(2, 1, 1, 7);
    CHECK(sum_fast(spec, i64(0), pp) == Fp(22165 % 7, 7));  // 1+3+15+84+495+3003+18564
    CHECK(sum_fast(spec, i64(0), pp) == naive_sum(2, 1, 1, 0, pp));
    CHECK(sum_fast(spec, i64(0), pp).v == 3);
  }
  {
    PrimePower pp(5, 1);
    RecurrenceSpec spec = spec_of(2, 9, 1, 5);
    CHECK(sum_fast(spec, i64(0), pp).v == 4);
    CHECK(naive_sum(2, 9, 1, 0, pp).v == 4);
  }
  {
    PrimePower pp(11, 1);
    RecurrenceSpec spec = spec_of(3, 5, 1, 11);
    CHECK(sum_fast(spec, i64(0), pp) == naive_sum(3, 5, 1, 0, pp));
  }
}

TEST_CASE("d range is enforced") {
  PrimePower pp(7, 1);
  RecurrenceSpec spec = spec_of(2, 3, 1, 7);
  CHECK_THROWS_AS(sum_fast(spec, i64(-2), pp), error);
  CHECK_THROWS_AS(sum_fast(spec, i64(15), pp), error);
  CHECK_NOTHROW(sum_fast(spec, i64(-1), pp));
  CHECK_NOTHROW(sum_fast(spec, i64(14), pp));
  CHECK_THROWS_AS(sum_via_roots(spec, i64(-2), pp), error);
}

TEST_CASE("fast route equals enumeration over a parameter grid") {
  for (u64 p : {5ull, 7ull, 13ull, 23ull})
    for (unsigned a = 1; a <= 2; ++a) {
      PrimePower pp(p, a);
      for (unsigned h : {1u, 2u, 3u})
        for (i64 m : {1, 2, 9, 13}) {
          if (m % static_cast<i64>(p) == 0) continue;
          RecurrenceSpec spec = spec_of(h, m, 1, p);
          for (i64 d = -static_cast<i64>(h) + 1; d <= static_cast<i64>(h); ++d)
            CHECK(sum_fast(spec, d, pp) == naive_sum(h, m, 1, d, pp));
        }
    }
}

TEST_CASE("large d values up to h p^a work") {
  PrimePower pp(7, 2);
  RecurrenceSpec spec = spec_of(3, 2, 1, 7);
  for (i64 d : {i64(49), i64(50), i64(98), i64(147)})
    CHECK(sum_fast(spec, d, pp) == naive_sum(3, 2, 1, d, pp));
}

TEST_CASE("roots formula agrees with the recurrence formula") {
  {
    PrimePower pp(7, 2);
    RecurrenceSpec spec = spec_of(2, 6, 1, 7);
    CHECK(sum_via_roots(spec, i64(1), pp) == sum_fast(spec, i64(1), pp));
  }
  for (u64 p : {5ull, 11ull, 13ull, 31ull})
    for (unsigned h : {1u, 2u, 3u, 4u})
      for (i64 m = 1; m < 12; ++m) {
        if (m % static_cast<i64>(p) == 0) continue;
        PrimePower pp(p, 1);
        RecurrenceSpec spec = spec_of(h, m, 1, p);
        PolyFp f = char_poly(h, spec.m);
        for (i64 d = -static_cast<i64>(h) + 1; d <= static_cast<i64>(h) * 3; ++d) {
          if (d > static_cast<i64>(h * p)) break;
          if (discriminant_fp(f) == 0) {
            CHECK_THROWS_AS(sum_via_roots(spec, d, pp), error);
          } else {
            CHECK(sum_via_roots(spec, d, pp) == sum_fast(spec, d, pp));
          }
        }
      }
}

TEST_CASE("m = 27/4 hits the vanishing discriminant of the cubic family") {
  PrimePower pp(13, 1);
  RecurrenceSpec spec = spec_of(2, 27, 4, 13);
  CHECK_THROWS_AS(sum_via_roots(spec, i64(0), pp), error);
  CHECK_NOTHROW(sum_fast(spec, i64(0), pp));
}

TEST_CASE("five-term relation against enumerated sums") {
  {
    // h = 1, m = 4, p = 7 sanity row
    PrimePower pp(7, 1);
    RecurrenceSpec spec = spec_of(1, 4, 1, 7);
    CHECK(relation_check(spec, i64(0), pp));
  }
  {
    PrimePower pp(5, 1);
    RecurrenceSpec spec = spec_of(2, 1, 1, 5);
    CHECK(relation_check(spec, i64(1), pp));
    // independent: both sides from the naive oracle
    Fp lhs(0, 5);
    for (unsigned j = 0; j <= 3; ++j)
      lhs += Fp(spec.c[j], 5) * naive_sum(2, 1, 1, 1 + j, pp);
    CHECK(lhs.zero());  // d + h = 3 not divisible by 5
  }
  for (u64 p : {5ull, 7ull})
    for (unsigned h : {1u, 2u, 3u})
      for (i64 m : {1, 4, 5}) {
        if (m % static_cast<i64>(p) == 0) continue;
        PrimePower pp(p, 1);
        RecurrenceSpec spec = spec_of(h, m, 1, p);
        for (i64 d = -static_cast<i64>(h) + 1; d <= static_cast<i64>(h * p); ++d) {
          CHECK(relation_check(spec, d, pp));
          // cross-check the right side against pure enumeration
          Fp lhs(0, p);
          for (unsigned j = 0; j <= h + 1; ++j)
            lhs += Fp(spec.c[j], p) * naive_sum(h, m, 1, d + j, pp);
          Fp rhs(0, p);
          if ((d + h) % static_cast<i64>(p) == 0) {
            i64 q = (d + h) / static_cast<i64>(p);
            rhs = Fp(binom_exact_u64(h + 1, static_cast<unsigned>(q) + 1), p);
          }
          CHECK(lhs == rhs);
        }
      }
}

TEST_CASE("sylvester interpolation") {
  {
    // Fibonacci: x^2 - x - 1 mod 11 has roots 4 and 8
    std::vector<Fp> roots = {Fp(4, 11), Fp(8, 11)};
    CHECK(sylvester_term(roots, 5) == Fp(5, 11));  // F_5 = 5
    CHECK(sylvester_term(roots, 10) == Fp(55 % 11, 11));
  }
  {
    std::vector<Fp> roots = {Fp(3, 11), Fp(3, 11)};
    CHECK_THROWS_AS(sylvester_term(roots, 2), error);
    std::vector<Fp> with_zero = {Fp(0, 11), Fp(3, 11)};
    CHECK_THROWS_AS(sylvester_term(with_zero, 2), error);
  }
  {
    // find a prime where (x+1)^3 - 6x^2 splits with distinct roots, then
    // Sylvester's formula must reproduce the recurrence values
    for (u64 p : {5ull, 11ull, 23ull, 31ull, 37ull, 43ull, 47ull}) {
      std::vector<Fp> roots;
      for (u64 x = 0; x < p; ++x) {
        u64 v = mpz_mod_u64(mpz_class(x + 1) * (x + 1) * (x + 1) - 6 * mpz_class(x) * x, p);
        if (v == 0) roots.push_back(Fp(x, p));
      }
      if (roots.size() != 3) continue;
      RecurrenceSpec spec = spec_of(2, 6, 1, p);
      CHECK(sylvester_term(roots, 2) == Fp(1, p));  // u_2 = 1
      for (i64 n : {-5, -1, 0, 3, 20, 1000})
        CHECK(sylvester_term(roots, n) == seq_term(spec, n));
      return;
    }
    FAIL("no splitting prime found in the sample");
  }
}
