// Acceptance suite: runs the numbered criteria end to end and prints one
// PASS/FAIL line per criterion. Exit code 0 iff everything passed.
//
// Flags:
//   --only N     run a single criterion
//   --budget N   oracle term budget (default 2*10^8); the large p = 23
//                brute-force confirmation is skipped when it does not fit

#include <atomic>
#include <chrono>
#include <cstring>
#include <iostream>
#include <random>
#include <thread>
#include <vector>

#include "catsum/cubicres.hpp"
#include "catsum/linrec.hpp"
#include "catsum/lucas.hpp"
#include "catsum/oracle.hpp"
#include "catsum/polyfield.hpp"
#include "catsum/sweep.hpp"
#include "catsum/theorems.hpp"

using namespace catsum;

namespace {

u64 g_budget = 200'000'000;

struct Criterion {
  int id;
  const char* what;
  bool (*run)(std::string& note);
};

u64 checks = 0;

bool expect(bool ok, const std::string& context, std::string& note) {
  ++checks;
  if (!ok && note.size() < 400) note += (note.empty() ? "" : "; ") + context;
  return ok;
}

// ---- helpers shared by several criteria ----

Fp fast_sum(unsigned h, i64 mn, i64 md, i64 d, const PrimePower& pp) {
  RecurrenceSpec spec(h, rational_residue(mn, md, pp.p));
  return sum_fast(spec, d, pp);
}

SumDescriptor sum_desc(unsigned h, i64 mn, i64 md, i64 d, unsigned k_start = 0) {
  SumDescriptor desc;
  desc.h = h;
  desc.m_num = mn;
  desc.m_den = md;
  desc.d = d;
  desc.k_start = k_start;
  return desc;
}

// independent stepper for the order-4 sequence combinations of the m = 5 family
Fp step_v(int s, u64 target, u64 p) {
  u64 w0 = 0, w1 = 0, w2 = 0, w3 = 1 % p;
  for (u64 i = 0; i < target; ++i) {
    u64 next = sub_mod(w3, mul_mod(6 % p, w2, p), p);
    next = sub_mod(next, mul_mod(4 % p, w1, p), p);
    next = sub_mod(next, w0, p);
    w0 = w1;
    w1 = w2;
    w2 = w3;
    w3 = next;
  }
  if (s == 1) return Fp(w2, p) - Fp(3, p) * Fp(w1, p);
  return Fp(3, p) * Fp(w1, p) + Fp(2, p) * Fp(w0, p);
}

// checks every applicable prediction of one theorem cell against the chosen routes
bool check_cell(TheoremId id, const PrimePower& pp, const TheoremParams& params, bool with_fast,
                bool with_oracle, std::string& note) {
  bool ok = true;
  for (const Prediction& pred : predict(id, pp, params)) {
    if (!pred.applicable) continue;
    auto matches = [&](Fp got) {
      return got == pred.value || (pred.alt_value && got == *pred.alt_value);
    };
    std::string ctx = to_string(id) + " p=" + std::to_string(pp.p) + " a=" + std::to_string(pp.a) +
                      " " + pred.label;
    if (with_fast) {
      auto fast = route_fast(pred, pp);
      if (fast) ok &= expect(matches(*fast), ctx + " [fast]", note);
    }
    if (with_oracle) {
      auto oracle = route_oracle(pred, pp, g_budget, 1'000'000, 0);
      if (oracle) ok &= expect(matches(*oracle), ctx + " [oracle]", note);
    }
  }
  return ok;
}

// ---- criteria ----

bool criterion1(std::string& note) {
  bool ok = true;
  OracleOptions opts;
  opts.budget = g_budget;
  for (u64 p : primes_in(5, 97)) {
    std::mt19937_64 rng(p);  // deterministic m sample per prime
    std::vector<i64> ms;
    while (ms.size() < 8) {
      i64 m = 1 + static_cast<i64>(rng() % (p - 1));
      ms.push_back(m);
    }
    for (unsigned a = 1; a <= 2; ++a) {
      PrimePower pp(p, a);
      for (unsigned h = 1; h <= 4; ++h)
        for (i64 m : ms) {
          RecurrenceSpec spec(h, Fp::from(m, p));
          bool roots_apply = discriminant_fp(char_poly(h, spec.m)) != 0;
          for (i64 d = -static_cast<i64>(h) + 1; d <= static_cast<i64>(h); ++d) {
            Fp fast = sum_fast(spec, d, pp);
            Fp oracle = direct_sum(sum_desc(h, m, 1, d), pp, opts);
            std::string ctx = "p=" + std::to_string(p) + " a=" + std::to_string(a) +
                              " h=" + std::to_string(h) + " m=" + std::to_string(m) +
                              " d=" + std::to_string(d);
            ok &= expect(fast == oracle, ctx + " fast!=oracle", note);
            if (roots_apply)
              ok &= expect(sum_via_roots(spec, d, pp) == fast, ctx + " roots!=fast", note);
          }
        }
    }
  }
  return ok;
}

bool criterion2(std::string& note) {
  bool ok = true;
  int cells = 0;
  for (u64 p : primes_in(5, 499))
    for (unsigned a = 1; a <= 2; ++a) {
      PrimePower pp(p, a);
      if (mpz_mod_u64(pp.n, 6) != 1) continue;
      ++cells;
      // oracle route for a = 1, fast route for a = 2
      ok &= check_cell(TheoremId::T1_2, pp, {}, a == 2, a == 1, note);
    }
  ok &= expect(cells > 100, "too few applicable cells", note);
  return ok;
}

bool criterion3(std::string& note) {
  bool ok = true;
  for (u64 p : primes_in(2, 299))
    for (unsigned a = 1; a <= 2; ++a) {
      PrimePower pp(p, a);
      ok &= check_cell(TheoremId::T1_5, pp, {}, true, a == 1, note);
      ok &= check_cell(TheoremId::T1_6, pp, {}, true, a == 1, note);
      ok &= check_cell(TheoremId::T1_7, pp, {}, true, a == 1, note);
    }
  return ok;
}

bool criterion4(std::string& note) {
  bool ok = true;
  for (u64 p : primes_in(2, 299))
    for (unsigned a = 1; a <= 2; ++a) {
      PrimePower pp(p, a);
      ok &= check_cell(TheoremId::T1_8, pp, {}, true, a == 1, note);
    }
  // part (ii): the five-term relation for every d in [2, 3 p^a]
  for (u64 p : {7ull, 11ull, 13ull}) {
    PrimePower pp(p, 1);
    RecurrenceSpec spec(3, Fp(5, p));
    auto S = [&](i64 e) { return sum_fast(spec, e, pp); };
    for (i64 d = 2; d <= 3 * static_cast<i64>(p); ++d) {
      Fp lhs = S(d) - S(d - 1) + Fp(6, p) * S(d - 2) + Fp(4, p) * S(d - 3) + S(d - 4);
      Fp rhs(0, p);
      if (d == static_cast<i64>(p) + 1) rhs = Fp(6, p);
      if (d == 2 * static_cast<i64>(p) + 1) rhs = Fp(4, p);
      std::string ctx = "relation p=" + std::to_string(p) + " d=" + std::to_string(d);
      ok &= expect(lhs == rhs, ctx, note);
      ok &= expect(relation_check(spec, d - 4, pp), ctx + " (relation_check)", note);
    }
  }
  return ok;
}

bool criterion5(std::string& note) {
  bool ok = true;
  for (u64 p : primes_in(5, 299))
    for (unsigned a = 1; a <= 2; ++a) {
      PrimePower pp(p, a);
      ok &= check_cell(TheoremId::T1_9, pp, {}, true, a == 1, note);
    }
  return ok;
}

bool criterion6(std::string& note) {
  bool ok = true;
  {
    PrimePower pp(5, 6);  // 15624 terms
    for (i64 d : {0, 1, -1}) {
      for (i64 r = 0; r <= 3; ++r) {
        Fp predicted = Fp(2, 5).pow(d + 3) * Fp(3, 5).pow(i64(-2)) *
                       rational_residue(27, 4, 5).pow(r);
        Fp got = residue_class_sum(pp, d, r);
        ok &= expect(got == predicted,
                     "p=5 class sum d=" + std::to_string(d) + " r=" + std::to_string(r), note);
      }
      // total: with p != 23 the sum over 0 < k < p^a vanishes
      Fp via_oracle = direct_sum(sum_desc(2, 1, 1, d, 1), pp);
      Fp via_fast = fast_sum(2, 1, 1, d, pp) - (d == 0 ? Fp(1, 5) : Fp(0, 5));
      ok &= expect(via_oracle.zero(), "p=5 total (oracle) d=" + std::to_string(d), note);
      ok &= expect(via_fast.zero(), "p=5 total (fast) d=" + std::to_string(d), note);
    }
  }
  {
    PrimePower pp(23, 6);  // 148035889 terms
    for (i64 d : {0, 1, -1}) {
      Fp predicted = -(Fp(3, 23) * Fp(2, 23).pow(d + 1));
      Fp via_fast = fast_sum(2, 1, 1, d, pp) - (d == 0 ? Fp(1, 23) : Fp(0, 23));
      ok &= expect(via_fast == predicted, "p=23 total (fast) d=" + std::to_string(d), note);
      if (pp.n <= g_budget) {
        OracleOptions opts;
        opts.budget = g_budget;
        Fp brute = direct_sum(sum_desc(2, 1, 1, d, 1), pp, opts);
        ok &= expect(brute == predicted, "p=23 total (brute) d=" + std::to_string(d), note);
      } else {
        note += (note.empty() ? "" : "; ") + std::string("p=23 brute force skipped (budget)");
      }
    }
  }
  return ok;
}

bool criterion7(std::string& note) {
  bool ok = true;
  for (u64 p : primes_in(5, 199)) {
    PrimePower pp(p, 1);
    for (i64 c = 1; c < static_cast<i64>(p); ++c) {
      Fp cf = Fp::from(c, p);
      if (cf.zero() || (cf * cf + Fp(3, p)).zero()) continue;
      bool zero_test = sun_c0_criterion(c, 1, p);
      bool is_c0 = classify(c, 1, pp) == CubicClass::c0;
      ok &= expect(zero_test == is_c0, "p=" + std::to_string(p) + " c=" + std::to_string(c), note);
    }
  }
  // classification tables for every prime power below 10^4; p = 2 and 3 are
  // outside the classification (2 and 3 divide the norm k^2 + 3)
  for (unsigned a = 1; a <= 13; ++a) {
    PrimePower two(2, a);
    if (two.n >= 10000) break;
    ok &= expect(classify(3, 1, two) == CubicClass::undefined, "p=2 must be undefined", note);
  }
  for (u64 p : primes_in(5, 9999)) {
    for (unsigned a = 1;; ++a) {
      PrimePower pp(p, a);
      if (pp.n >= 10000) break;
      u64 r9 = mpz_mod_u64(pp.n, 9);
      CubicClass expect9 = (r9 == 1 || r9 == 8)   ? CubicClass::c0
                           : (r9 == 2 || r9 == 7) ? CubicClass::c1
                                                  : CubicClass::c2;
      ok &= expect(classify(3, 1, pp) == expect9, "table(4.1) p^a=" + pp.n.get_str(), note);
      if (p != 7) {
        u64 r7 = mpz_mod_u64(pp.n, 7);
        CubicClass expect7 = (r7 == 1 || r7 == 6)   ? CubicClass::c0
                             : (r7 == 3 || r7 == 4) ? CubicClass::c1
                                                    : CubicClass::c2;
        ok &= expect(classify(-1, 3, pp) == expect7, "table(4.2) p^a=" + pp.n.get_str(), note);
      }
    }
  }
  return ok;
}

bool criterion8(std::string& note) {
  // exhaustive over the leading-free coefficients; the outer coefficient is
  // striped across workers, counts merged at the end
  unsigned workers = resolve_workers(0);
  std::atomic<u64> good{0}, bad{0};
  auto sweep_p = [&](u64 p, unsigned w) {
    u64 local_good = 0, local_bad = 0;
    for (u64 a = w; a < p; a += workers) {
      for (u64 b = 0; b < p; ++b)
        for (u64 c = 0; c < p; ++c) {
          PolyFp cubic(p, {c, b, a, 1});
          if (discriminant_fp(cubic) != 0)
            (stickelberger_check(cubic) ? local_good : local_bad)++;
          for (u64 e = 0; e < p; ++e) {
            PolyFp quartic(p, {e, c, b, a, 1});
            if (discriminant_fp(quartic) != 0)
              (stickelberger_check(quartic) ? local_good : local_bad)++;
          }
        }
    }
    good += local_good;
    bad += local_bad;
  };
  for (u64 p : primes_in(3, 49)) {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(sweep_p, p, w);
    for (auto& th : pool) th.join();
  }
  checks += good.load() + bad.load();
  bool ok = expect(bad.load() == 0 && good.load() > 10'000'000,
                   std::to_string(bad.load()) + " parity failures", note);
  return ok;
}

bool criterion9(std::string& note) {
  bool ok = true;
  // Lemma 3.1 shifts vs fast doubling at the shifted index
  for (u64 p : primes_in(5, 99)) {
    std::mt19937_64 rng(p * 7 + 1);
    for (unsigned a = 1; a <= 2; ++a) {
      PrimePower pp(p, a);
      for (int iter = 0; iter < 5; ++iter) {
        LucasParams params(Fp(rng() % p, p), Fp(1 + rng() % (p - 1), p));
        if (params.delta.zero()) continue;
        i64 n = static_cast<i64>(rng() % 100) - 50;
        bool up_ok = lucas_u_shifted(params, n, pp, ShiftDirection::up) ==
                     lucas_pair(params, pp.n + n).u;
        bool down_ok = lucas_u_shifted(params, n, pp, ShiftDirection::down) ==
                       lucas_pair(params, mpz_class(n - pp.n)).u;
        ok &= expect(up_ok && down_ok, "L3.1 p=" + std::to_string(p), note);
      }
    }
  }
  // Lemma 4.1 / 4.2 closed forms vs direct stepping
  auto step3 = [](i64 a1, i64 a2, i64 a3, const PrimePower& pp) {
    const u64 p = pp.p;
    Fp A1 = Fp::from(a1, p), A2 = Fp::from(a2, p), A3 = Fp::from(a3, p);
    Fp u0(0, p), u1(0, p), u2(1, p);
    for (mpz_class i = 0; i < pp.n; ++i) {
      Fp u3 = -(A1 * u2 + A2 * u1 + A3 * u0);
      u0 = u1;
      u1 = u2;
      u2 = u3;
    }
    return std::array<Fp, 3>{u0, u1, u2};
  };
  for (u64 p : primes_in(5, 49)) {
    for (unsigned a = 1; a <= 2; ++a) {
      PrimePower pp(p, a);
      for (i64 a1 = -2; a1 <= 2; ++a1)
        for (i64 a2 = -2; a2 <= 2; ++a2)
          for (i64 a3 = -2; a3 <= 2; ++a3) {
            TriplePrediction pred;
            try {
              pred = lemma41_predict(a1, a2, a3, pp);
            } catch (const error&) {
              continue;
            }
            auto got = step3(a1, a2, a3, pp);
            ok &= expect(pred.u0 == got[0] && pred.u1 == got[1] && pred.u2 == got[2],
                         "L4.1 p=" + std::to_string(p) + " a=" + std::to_string(a), note);
          }
      for (i64 t = 0; t < static_cast<i64>(p); ++t) {
        i64 m = t * t + t + 7;
        Fp M = Fp::from(m, p), T = Fp::from(t, p);
        if ((T + T + Fp(1, p)).zero() || M.zero()) continue;
        TriplePrediction pred = lemma42_predict(m, t, pp);
        auto got = step3(3 - m, 3, 1, pp);
        ok &= expect(pred.u0 == got[0] && pred.u1 == got[1] && pred.u2 == got[2],
                     "L4.2 p=" + std::to_string(p) + " t=" + std::to_string(t), note);
      }
    }
  }
  // Lemma 5.1(ii) and 5.2 tables vs independent stepping
  for (u64 p : primes_in(7, 99)) {
    for (unsigned a = 1; a <= 2; ++a) {
      PrimePower pp(p, a);
      u64 n = pp.n.get_ui();
      for (const Prediction& pred : predict(TheoremId::L5_2, pp, {})) {
        if (!pred.applicable) continue;
        Fp got = step_v(pred.seq->s, n + pred.seq->e, p);
        ok &= expect(got == pred.value, "L5.2 p=" + std::to_string(p) + " " + pred.label, note);
      }
      for (i64 s : {1, 2})
        for (i64 d = 0; d <= 5; ++d) {
          TheoremParams params;
          params.s = s;
          params.d = d;
          for (const Prediction& pred : predict(TheoremId::L5_1, pp, params)) {
            if (!pred.applicable) continue;
            Fp got = step_v(pred.seq->s, n + pred.seq->e, p);
            ok &= expect(got == pred.value, "L5.1 p=" + std::to_string(p) + " " + pred.label, note);
          }
        }
    }
  }
  // closed forms of section 3 vs both routes
  for (u64 p : primes_in(5, 99))
    for (unsigned a = 1; a <= 2; ++a) {
      PrimePower pp(p, a);
      for (i64 d : {-1, 0, 1, 2, 3})
        for (unsigned pa : {0u, 1u}) {
          TheoremParams params;
          params.d = d;
          if (pa) params.pa_mult = 1;
          ok &= check_cell(TheoremId::T3_1, pp, params, true, a == 1, note);
          ok &= check_cell(TheoremId::C3_1, pp, params, true, a == 1, note);
          for (auto c : {Rational{1, 1}, Rational{-2, 1}, Rational{3, 1}, Rational{5, 2}}) {
            params.c = c;
            ok &= check_cell(TheoremId::T3_2, pp, params, true, a == 1 && pa == 0, note);
          }
        }
    }
  return ok;
}

bool criterion10(std::string& note) {
  bool ok = true;
  for (unsigned d = 0; d <= 200; ++d)
    for (i64 r = 0; r < 5; ++r) {
      try {
        quintisection(d, r);  // computes both sides and compares exactly
        ++checks;
      } catch (const std::exception& e) {
        ok = expect(false, "d=" + std::to_string(d) + " r=" + std::to_string(r), note);
      }
    }
  return ok;
}

bool criterion11(std::string& note) {
  bool ok = true;
  PrimePower pp(1000003, 1000);
  RecurrenceSpec spec(3, Fp(5, 1000003));
  auto t0 = std::chrono::steady_clock::now();
  Fp v = sum_fast(spec, i64(0), pp);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  ok &= expect(secs < 1.0, "sum_fast took " + std::to_string(secs) + "s", note);
  (void)v;
  for (i64 d : {0, 1, 12345}) ok &= expect(relation_check(spec, d, pp), "relation at d", note);
  note += (note.empty() ? "" : "; ") + std::string("sum_fast: ") + std::to_string(secs) + "s";
  return ok;
}

bool criterion12(std::string& note) {
  bool ok = true;
  int ambiguous = 0, part1 = 0, part2 = 0;
  for (u64 p : primes_in(5, 499)) {
    PrimePower pp(p, 1);
    for (const Prediction& pred : predict(TheoremId::T1_10, pp, {})) {
      if (!pred.applicable) continue;
      auto oracle = route_oracle(pred, pp, g_budget, 1'000'000, 0);
      if (!oracle) continue;
      bool hit = *oracle == pred.value || (pred.alt_value && *oracle == *pred.alt_value);
      ok &= expect(hit, "T1.10 p=" + std::to_string(p) + " " + pred.label, note);
      if (pred.alt_value) ++ambiguous;
      (pred.label.find("Cbar3") != std::string::npos ? part1 : part2)++;
    }
  }
  ok &= expect(part1 > 10 && part2 > 10, "too few applicable primes", note);
  if (ambiguous)
    note += (note.empty() ? "" : "; ") + std::string("sign-ambiguous rows: ") +
            std::to_string(ambiguous) + " (both values accepted)";
  return ok;
}

const Criterion kCriteria[] = {
    {1, "engine equivalence: fast = oracle = roots on the (p, a, h, m, d) grid", criterion1},
    {2, "m = 6 rows for p < 500 with p^a = 1 (mod 6)", criterion2},
    {3, "m = 9, 7, 13, 19 tables for p < 300, a <= 2", criterion3},
    {4, "h = 3, m = 5 tables, p < 300, plus the five-term relation sweeps", criterion4},
    {5, "weighted 3^3k/4^4k rows for 3 < p < 300, a <= 2", criterion5},
    {6, "residue-class sums at p = 5 and p = 23, a = 6", criterion6},
    {7, "class tests: zero-criterion versus symbol, tables up to 10^4", criterion7},
    {8, "discriminant parity over all squarefree cubics/quartics, odd p < 50", criterion8},
    {9, "index shifts, third-order closed forms, fourth-order tables, section-3 formulas",
     criterion9},
    {10, "quintisection identity, exact integers, d <= 200", criterion10},
    {11, "sum_fast at p = 1000003, a = 1000 under one second + relation probes", criterion11},
    {12, "alternating Cbar4 and Cbar3/3^k rows for applicable p < 500", criterion12},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--only") && i + 1 < argc) only = std::atoi(argv[++i]);
    if (!std::strcmp(argv[i], "--budget") && i + 1 < argc) g_budget = std::strtoull(argv[++i], nullptr, 10);
  }
  bool all_ok = true;
  for (const Criterion& c : kCriteria) {
    if (only != 0 && c.id != only) continue;
    std::string note;
    checks = 0;
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = c.run(note);
    } catch (const std::exception& e) {
      note = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s  %2d. %s  [%llu checks, %.1fs]%s%s\n", ok ? "PASS" : "FAIL", c.id, c.what,
                static_cast<unsigned long long>(checks), secs, note.empty() ? "" : " -- ",
                note.c_str());
    std::fflush(stdout);
    all_ok &= ok;
  }
  std::printf("%s\n", all_ok ? "acceptance: all criteria passed" : "acceptance: FAILURES above");
  return all_ok ? 0 : 1;
}
