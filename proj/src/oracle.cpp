#include "catsum/oracle.hpp"

#include <cstdlib>
#include <thread>
#include <vector>

namespace catsum {

std::string SumDescriptor::label() const {
  std::string s;
  switch (kind) {
    case SumKind::plain:
      s = "S(d=";
      if (d_plus_pa) {
        if (d != 0) s += std::to_string(d) + "+";
        s += "p^a";
      } else {
        s += std::to_string(d);
      }
      s += ")";
      break;
    case SumKind::catalan_c: s = "C" + std::to_string(h); break;
    case SumKind::catalan_cbar: s = "Cbar" + std::to_string(h); break;
  }
  if (k_start == 1) s += ".k>=1";
  if (class_r) s += ".r=" + std::to_string(*class_r);
  return s;
}

unsigned resolve_workers(unsigned requested) {
  if (requested != 0) return requested;
  if (const char* env = std::getenv("CONGR_WORKERS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

namespace {

// binom(x, y) mod p for single base-p digits x, y.
struct DigitBinom {
  u64 p;
  std::vector<u64> fact, ifact;  // factorial tables when p is small enough

  static constexpr u64 kTableLimit = 1ull << 22;

  explicit DigitBinom(u64 prime) : p(prime) {
    if (p <= kTableLimit) {
      fact.resize(p);
      ifact.resize(p);
      fact[0] = 1 % p;
      for (u64 i = 1; i < p; ++i) fact[i] = mul_mod(fact[i - 1], i, p);
      ifact[p - 1] = inv_mod(fact[p - 1], p);
      for (u64 i = p - 1; i > 0; --i) ifact[i - 1] = mul_mod(ifact[i], i, p);
    }
  }

  u64 operator()(u64 x, u64 y) const {
    if (y > x) return 0;
    if (!fact.empty()) return mul_mod(fact[x], mul_mod(ifact[y], ifact[x - y], p), p);
    return small_binom_mod(x, y, p);
  }
};

// Base-p digit vector supporting increments by small constants.
struct DigitCounter {
  u64 p = 0;
  std::vector<u64> d;

  void init(const mpz_class& v, u64 prime) {
    p = prime;
    d.clear();
    mpz_class t = v;
    while (t > 0) d.push_back(mpz_fdiv_q_ui(t.get_mpz_t(), t.get_mpz_t(), p));
  }

  void add(u64 inc) {
    u64 carry = inc;
    for (size_t i = 0; carry != 0; ++i) {
      if (i == d.size()) d.push_back(0);
      u64 t = d[i] + carry;  // carry stays tiny, no overflow for p < 2^63
      d[i] = t % p;
      carry = t / p;
    }
  }
};

u64 binom_digits(const DigitCounter& n, const DigitCounter& k, const DigitBinom& db) {
  if (k.d.size() > n.d.size()) return 0;
  u64 acc = 1;
  for (size_t i = 0; i < n.d.size() && acc != 0; ++i)
    acc = mul_mod(acc, db(n.d[i], i < k.d.size() ? k.d[i] : 0), db.p);
  return acc;
}

// One lower-index stream k + base, activated once k + base >= 0.
struct OffsetCounter {
  i64 base_small = 0;     // ignored when big_base is set
  mpz_class big_base;     // k + big_base when use_big
  bool use_big = false;
  bool active = false;
  DigitCounter dc;

  void activate_if_needed(const mpz_class& k, u64 p) {
    if (active) return;
    mpz_class idx = use_big ? mpz_class(k + big_base) : mpz_class(k + base_small);
    if (idx >= 0) {
      dc.init(idx, p);
      active = true;
    }
  }
};

struct WorkerResult {
  u64 acc = 0;
};

}  // namespace

Fp direct_sum(const SumDescriptor& desc, const PrimePower& pp, const OracleOptions& options) {
  const u64 p = pp.p;
  if (mpz_cmp_ui(pp.n.get_mpz_t(), 0) < 0 || pp.n > options.budget)
    throw error(errc::budget_exceeded,
                "p^a exceeds the enumeration budget of " + std::to_string(options.budget) + " terms");
  const u64 nterms = pp.n.get_ui();

  Fp m = rational_residue(desc.m_num, desc.m_den, p);
  if (m.zero()) throw error(errc::bad_argument, "m must be nonzero mod p");
  const u64 m_inv = m.inv().v;

  // residue-class restriction walks k in steps of p-1
  u64 stride = 1;
  u64 k0 = desc.k_start;
  if (desc.class_r) {
    if (p == 2) throw error(errc::bad_argument, "class restriction needs p > 2");
    u64 pm1 = p - 1;
    u64 rr = static_cast<u64>(((*desc.class_r % static_cast<i64>(pm1)) + pm1) % pm1);
    stride = pm1;
    k0 = rr;
    while (k0 < desc.k_start) k0 += pm1;
  }
  if (k0 >= nterms) return Fp(0, p);

  const u64 span = nterms - k0;                     // k values: k0, k0+stride, ...
  const u64 count = (span + stride - 1) / stride;   // how many of them
  unsigned workers = resolve_workers(options.workers);
  if (static_cast<u64>(workers) > count) workers = static_cast<unsigned>(count);
  if (count < 4096) workers = 1;

  const DigitBinom db(p);
  const unsigned h = desc.h;

  auto run_worker = [&](unsigned w, WorkerResult& out) {
    mpz_class k = k0 + mpz_class(static_cast<unsigned long>(w)) * stride;
    if (k >= nterms) return;
    const u64 step = stride * workers;

    DigitCounter top;  // (h+1) k
    top.init(mpz_class((h + 1) * k), p);

    OffsetCounter lows[2];
    unsigned nlows = 1;
    switch (desc.kind) {
      case SumKind::plain:
        if (desc.d_plus_pa) {
          lows[0].use_big = true;
          lows[0].big_base = pp.n + desc.d;
        } else {
          lows[0].base_small = desc.d;
        }
        break;
      case SumKind::catalan_c:
        lows[0].base_small = 0;
        lows[1].base_small = -1;
        nlows = 2;
        break;
      case SumKind::catalan_cbar:
        lows[0].base_small = 0;
        lows[1].base_small = 1;
        nlows = 2;
        break;
    }

    u64 weight = Fp(m_inv, p).pow(k).v;  // m^{-k} at the first k of this worker
    const u64 weight_step = pow_mod(m_inv, step % (p - 1 == 0 ? 1 : p - 1), p);

    u64 acc = 0;
    const u64 kmax = nterms;
    u64 kk = k.get_ui();
    for (auto& lo : lows) lo.activate_if_needed(k, p);
    while (kk < kmax) {
      u64 term;
      switch (desc.kind) {
        case SumKind::plain:
          term = lows[0].active ? binom_digits(top, lows[0].dc, db) : 0;
          break;
        case SumKind::catalan_c: {
          u64 b0 = lows[0].active ? binom_digits(top, lows[0].dc, db) : 0;
          u64 b1 = lows[1].active ? binom_digits(top, lows[1].dc, db) : 0;
          term = sub_mod(b0, mul_mod(h % p, b1, p), p);
          break;
        }
        default: {  // catalan_cbar
          u64 b0 = lows[0].active ? binom_digits(top, lows[0].dc, db) : 0;
          u64 b1 = lows[1].active ? binom_digits(top, lows[1].dc, db) : 0;
          term = sub_mod(mul_mod(h % p, b0, p), b1, p);
          break;
        }
      }
      acc = add_mod(acc, mul_mod(term, weight, p), p);
      kk += step;
      if (kk >= kmax) break;
      weight = mul_mod(weight, weight_step, p);
      top.add(static_cast<u64>(h + 1) * step);
      mpz_class knext(static_cast<unsigned long>(kk));
      for (unsigned i = 0; i < nlows; ++i) {
        if (lows[i].active)
          lows[i].dc.add(step);
        else
          lows[i].activate_if_needed(knext, p);
      }
    }
    out.acc = acc;
  };

  std::vector<WorkerResult> results(workers);
  if (workers == 1) {
    run_worker(0, results[0]);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run_worker, w, std::ref(results[w]));
    for (auto& th : pool) th.join();
  }
  u64 total = 0;
  for (const auto& r : results) total = add_mod(total, r.acc, p);
  return Fp(total, p);
}

Fp catalan_mod(SumKind kind, unsigned h, const mpz_class& k, u64 p) {
  mpz_class top = (h + 1) * k;
  if (kind == SumKind::catalan_c) {
    u64 b0 = binom_mod(top, k, p);
    u64 b1 = binom_mod(top, k - 1, p);
    return Fp(sub_mod(b0, mul_mod(h % p, b1, p), p), p);
  }
  if (kind == SumKind::catalan_cbar) {
    u64 b0 = binom_mod(top, k, p);
    u64 b1 = binom_mod(top, k + 1, p);
    return Fp(sub_mod(mul_mod(h % p, b0, p), b1, p), p);
  }
  throw error(errc::bad_argument, "catalan_mod needs a catalan kind");
}

Fp residue_class_sum(const PrimePower& pp, i64 d, i64 r, const OracleOptions& options) {
  SumDescriptor desc;
  desc.h = 2;
  desc.m_num = 1;
  desc.m_den = 1;
  desc.kind = SumKind::plain;
  desc.d = d;
  desc.k_start = 1;
  desc.class_r = r;
  return direct_sum(desc, pp, options);
}

}  // namespace catsum
