#include "catsum/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include "catsum/linrec.hpp"
#include "catsum/oracle.hpp"

namespace catsum {

std::vector<u64> primes_in(u64 lo, u64 hi) {
  std::vector<u64> out;
  for (u64 n = std::max<u64>(lo, 2); n <= hi; ++n)
    if (is_prime(n)) out.push_back(n);
  return out;
}

Rational parse_rational(const std::string& s) {
  size_t slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      size_t pos = 0;
      i64 num = std::stoll(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return {num, 1};
    }
    size_t pos = 0;
    i64 num = std::stoll(s.substr(0, slash), &pos);
    if (pos != slash) throw std::invalid_argument(s);
    i64 den = std::stoll(s.substr(slash + 1), &pos);
    if (pos != s.size() - slash - 1) throw std::invalid_argument(s);
    if (den == 0) throw std::invalid_argument(s);
    return {num, den};
  } catch (const std::exception&) {
    throw error(errc::bad_argument, "malformed rational: '" + s + "'");
  }
}

namespace {

Fp fast_sum_value(const SumDescriptor& desc, const PrimePower& pp) {
  Fp m = rational_residue(desc.m_num, desc.m_den, pp.p);
  if (m.zero()) throw error(errc::bad_argument, "m == 0 mod p");
  RecurrenceSpec spec(desc.h, m);
  auto S = [&](const mpz_class& e) { return sum_fast(spec, e, pp); };
  const u64 p = pp.p;
  Fp v(0, p);
  u64 term0 = 0;  // k = 0 term, subtracted for k_start = 1
  SumKind kind = desc.kind;
  if (kind == SumKind::catalan_c && desc.h == 1) kind = SumKind::catalan_cbar;  // C = Cbar at h = 1
  switch (kind) {
    case SumKind::plain: {
      mpz_class deff(static_cast<long>(desc.d));
      if (desc.d_plus_pa) deff += pp.n;
      v = S(deff);
      term0 = (deff == 0) ? 1 : 0;
      break;
    }
    case SumKind::catalan_c:
      v = S(mpz_class(0)) - Fp(desc.h, p) * S(mpz_class(-1));
      term0 = 1;
      break;
    case SumKind::catalan_cbar:
      v = Fp(desc.h, p) * S(mpz_class(0)) - S(mpz_class(1));
      term0 = desc.h;
      break;
  }
  if (desc.k_start == 1) v -= Fp(term0, p);
  return v;
}

Fp fast_relation_value(const RelationTarget& rel, const PrimePower& pp) {
  RecurrenceSpec spec(3, Fp::from(5, pp.p));
  auto S = [&](i64 e) { return sum_fast(spec, mpz_class(static_cast<long>(e)), pp); };
  return S(rel.d) - S(rel.d - 1) + Fp(6, pp.p) * S(rel.d - 2) + Fp(4, pp.p) * S(rel.d - 3) +
         S(rel.d - 4);
}

Fp oracle_relation_value(const RelationTarget& rel, const PrimePower& pp, u64 budget,
                         unsigned workers) {
  OracleOptions opt;
  opt.budget = budget;
  opt.workers = workers;
  auto S = [&](i64 e) {
    SumDescriptor d;
    d.h = 3;
    d.m_num = 5;
    d.m_den = 1;
    d.d = e;
    return direct_sum(d, pp, opt);
  };
  return S(rel.d) - S(rel.d - 1) + Fp(6, pp.p) * S(rel.d - 2) + Fp(4, pp.p) * S(rel.d - 3) +
         S(rel.d - 4);
}

// Independent stepping of the order-4 sequence behind the v combinations.
Fp stepped_vseq(const SeqTarget& t, const PrimePower& pp) {
  const u64 p = pp.p;
  const u64 n = pp.n.get_ui();
  i64 target = static_cast<i64>(n) + t.e;  // >= 0 for e >= -1, n >= 2
  u64 w0 = 0, w1 = 0, w2 = 0, w3 = 1 % p;  // u_0..u_3
  // u_{k+4} = u_{k+3} - 6 u_{k+2} - 4 u_{k+1} - u_k
  auto step = [&]() {
    u64 next = sub_mod(w3, mul_mod(6 % p, w2, p), p);
    next = sub_mod(next, mul_mod(4 % p, w1, p), p);
    next = sub_mod(next, w0, p);
    w0 = w1;
    w1 = w2;
    w2 = w3;
    w3 = next;
  };
  i64 base = 0;  // window is [base, base+3]
  while (base < target) {
    step();
    ++base;
  }
  // now base = target, window holds u_target .. u_{target+3}
  u64 u0 = w0, u1 = w1, u2 = w2;
  if (t.s == 1) return Fp(u2, p) - Fp(3, p) * Fp(u1, p);
  return Fp(3, p) * Fp(u1, p) + Fp(2, p) * Fp(u0, p);
}

}  // namespace

std::optional<Fp> route_fast(const Prediction& pred, const PrimePower& pp) {
  if (!pred.applicable) return std::nullopt;
  if (pred.sum) {
    if (pred.sum->class_r) return std::nullopt;  // no recurrence route for restricted sums
    if (pred.sum->m_den % static_cast<i64>(pp.p) == 0) return std::nullopt;
    if (rational_residue(pred.sum->m_num, pred.sum->m_den, pp.p).zero()) return std::nullopt;
    return fast_sum_value(*pred.sum, pp);
  }
  if (pred.relation) return fast_relation_value(*pred.relation, pp);
  if (pred.seq) {
    if (pp.p == 5) return std::nullopt;
    return vseq(pred.seq->s, pp.n + pred.seq->e, pp.p);
  }
  return std::nullopt;
}

std::optional<Fp> route_oracle(const Prediction& pred, const PrimePower& pp, u64 budget,
                               u64 seq_budget, unsigned workers) {
  if (!pred.applicable) return std::nullopt;
  try {
    if (pred.sum) {
      OracleOptions opt;
      opt.budget = budget;
      opt.workers = workers;
      return direct_sum(*pred.sum, pp, opt);
    }
    if (pred.relation) {
      if (pp.n > budget) return std::nullopt;
      return oracle_relation_value(*pred.relation, pp, budget, workers);
    }
    if (pred.seq) {
      if (pp.n > seq_budget) return std::nullopt;
      return stepped_vseq(*pred.seq, pp);
    }
  } catch (const error& e) {
    if (e.code() == errc::budget_exceeded) return std::nullopt;
    throw;
  }
  return std::nullopt;
}

namespace {

struct Cell {
  TheoremId id;
  u64 p;
  unsigned a;
};

struct GridPoint {
  TheoremParams params;
  std::vector<std::pair<std::string, std::string>> labels;
};

std::vector<GridPoint> param_grid(TheoremId id, const SweepConfig& cfg, const PrimePower& pp) {
  std::vector<GridPoint> out;
  auto add = [&](TheoremParams p, std::vector<std::pair<std::string, std::string>> l) {
    out.push_back({std::move(p), std::move(l)});
  };
  switch (id) {
    case TheoremId::T1_1:
      for (const Rational& c : cfg.c_grid) {
        TheoremParams p;
        p.c = c;
        add(std::move(p), {{"c", c.str()}});
      }
      break;
    case TheoremId::T1_3:
      for (i64 t : cfg.t_grid) {
        TheoremParams p;
        p.t = t;
        p.m = t * t + t + 7;
        add(std::move(p), {{"m", std::to_string(t * t + t + 7)}, {"t", std::to_string(t)}});
      }
      break;
    case TheoremId::T1_4:
      for (i64 d : {0, 1, -1})
        for (i64 r : cfg.r_grid) {
          TheoremParams p;
          p.d = d;
          p.r = r;
          add(std::move(p), {{"d", std::to_string(d)}, {"r", std::to_string(r)}});
        }
      break;
    case TheoremId::T1_8: {
      add({}, {});
      std::vector<i64> ds;
      if (mpz_fits_slong_p(pp.n.get_mpz_t())) {
        i64 n = pp.n.get_si();
        if (n <= (INT64_MAX - 1) / 3)
          for (i64 d : {i64(2), i64(3), n - 1, n, n + 1, n + 2, 2 * n + 1, 3 * n}) {
            if (d < 2 || d > 3 * n) continue;
            if (std::find(ds.begin(), ds.end(), d) == ds.end()) ds.push_back(d);
          }
      }
      for (i64 d : ds) {
        TheoremParams p;
        p.d = d;
        add(std::move(p), {{"d", std::to_string(d)}});
      }
      break;
    }
    case TheoremId::T3_1:
    case TheoremId::C3_1:
      for (i64 d : cfg.d_grid) {
        TheoremParams p;
        p.d = d;
        add(std::move(p), {{"d", std::to_string(d)}});
      }
      {
        TheoremParams p;
        p.d = 0;
        p.pa_mult = 1;
        add(std::move(p), {{"d", "0+p^a"}});
      }
      if (id == TheoremId::T3_1) {
        TheoremParams p;
        p.d = 1;
        p.pa_mult = 1;
        add(std::move(p), {{"d", "1+p^a"}});
      }
      break;
    case TheoremId::T3_2:
      for (const Rational& c : cfg.c_grid)
        for (i64 d : cfg.d_grid) {
          TheoremParams p;
          p.c = c;
          p.d = d;
          add(std::move(p), {{"c", c.str()}, {"d", std::to_string(d)}});
        }
      break;
    case TheoremId::L5_1:
      for (i64 s : {1, 2})
        for (i64 d = 0; d <= 5; ++d) {
          TheoremParams p;
          p.s = s;
          p.d = d;
          add(std::move(p), {{"s", std::to_string(s)}, {"d", std::to_string(d)}});
        }
      break;
    default:
      add({}, {});
      break;
  }
  return out;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<CongruenceRecord> run_cell(const Cell& cell, const SweepConfig& cfg,
                                       unsigned oracle_workers) {
  std::vector<CongruenceRecord> out;
  PrimePower pp(cell.p, cell.a);
  for (const GridPoint& gp : param_grid(cell.id, cfg, pp)) {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<Prediction> preds = predict(cell.id, pp, gp.params);
    double predict_ms = ms_since(t0) / std::max<size_t>(preds.size(), 1);
    for (const Prediction& pred : preds) {
      CongruenceRecord rec;
      rec.theorem = to_string(cell.id);
      rec.p = cell.p;
      rec.a = cell.a;
      rec.params = gp.labels;
      rec.target = pred.label;
      rec.applicable = pred.applicable;
      rec.reason = pred.reason;
      rec.ms_predict = predict_ms;
      if (pred.applicable) {
        rec.predicted = std::to_string(pred.value.v);
        t0 = std::chrono::steady_clock::now();
        std::optional<Fp> fast = route_fast(pred, pp);
        rec.ms_fast = ms_since(t0);
        t0 = std::chrono::steady_clock::now();
        std::optional<Fp> oracle =
            route_oracle(pred, pp, cfg.budget, cfg.seq_budget, oracle_workers);
        rec.ms_oracle = ms_since(t0);
        auto matches = [&](Fp got) {
          return got == pred.value || (pred.alt_value && got == *pred.alt_value);
        };
        if (fast) {
          rec.fast = std::to_string(fast->v);
          rec.match_pf = matches(*fast);
        }
        if (oracle) {
          rec.oracle = std::to_string(oracle->v);
          rec.match_po = matches(*oracle);
        }
      }
      out.push_back(std::move(rec));
    }
  }
  return out;
}

}  // namespace

VerifyResult run_verify(const SweepConfig& cfg, std::ostream& records, std::ostream& log) {
  if (cfg.theorems.empty()) throw error(errc::bad_argument, "no theorems selected");
  if (cfg.pmin > cfg.pmax) throw error(errc::bad_argument, "empty p range");
  if (cfg.amin > cfg.amax || cfg.amin == 0) throw error(errc::bad_argument, "bad a range");
  if (cfg.budget < 1) throw error(errc::bad_argument, "budget must be >= 1");

  std::vector<u64> ps = primes_in(cfg.pmin, cfg.pmax);
  std::vector<Cell> cells;
  for (TheoremId id : cfg.theorems)
    for (u64 p : ps)
      for (unsigned a = cfg.amin; a <= cfg.amax; ++a) cells.push_back({id, p, a});

  unsigned workers = resolve_workers(cfg.workers);
  std::vector<std::vector<CongruenceRecord>> results(cells.size());
  if (workers <= 1 || cells.size() <= 1) {
    for (size_t i = 0; i < cells.size(); ++i) results[i] = run_cell(cells[i], cfg, workers);
  } else {
    std::atomic<size_t> next{0};
    auto worker = [&]() {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= cells.size()) return;
        results[i] = run_cell(cells[i], cfg, 1);
      }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  VerifyResult vr;
  write_header(records, cfg.format);
  for (const auto& cell_records : results)
    for (const CongruenceRecord& rec : cell_records) {
      ++vr.rows;
      if (rec.applicable) ++vr.applicable_rows;
      bool bad = (rec.match_pf && !*rec.match_pf) || (rec.match_po && !*rec.match_po);
      if (bad) {
        ++vr.mismatches;
        vr.all_match = false;
      }
      write_record(records, rec, cfg.format);
    }
  log << "verify: " << vr.rows << " rows, " << vr.applicable_rows << " applicable, "
      << vr.mismatches << " mismatches\n";
  return vr;
}

void apply_config_file(SweepConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error(errc::bad_argument, "cannot open config file: " + path);
  std::string line;
  int lineno = 0;
  auto parse_i64_list = [](const std::string& v) {
    std::vector<i64> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoll(item));
    return out;
  };
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      size_t b = s.find_first_not_of(" \t\r");
      size_t e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string t = trim(line);
    if (t.empty()) continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw error(errc::bad_argument,
                  "config line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    try {
      if (key == "theorems") {
        cfg.theorems.clear();
        std::stringstream ss(value);
        std::string item;
        while (std::getline(ss, item, ',')) {
          auto id = parse_theorem_id(item);
          if (!id) throw error(errc::bad_argument, "unknown theorem id: " + item);
          cfg.theorems.push_back(*id);
        }
      } else if (key == "pmin") {
        cfg.pmin = std::stoull(value);
      } else if (key == "pmax") {
        cfg.pmax = std::stoull(value);
      } else if (key == "amin") {
        cfg.amin = static_cast<unsigned>(std::stoul(value));
      } else if (key == "amax") {
        cfg.amax = static_cast<unsigned>(std::stoul(value));
      } else if (key == "budget") {
        cfg.budget = std::stoull(value);
      } else if (key == "workers") {
        cfg.workers = static_cast<unsigned>(std::stoul(value));
      } else if (key == "format") {
        auto f = parse_format(value);
        if (!f) throw error(errc::bad_argument, "unknown format: " + value);
        cfg.format = *f;
      } else if (key == "out") {
        cfg.out_path = value;
      } else if (key == "c") {
        cfg.c_grid.clear();
        std::stringstream ss(value);
        std::string item;
        while (std::getline(ss, item, ',')) cfg.c_grid.push_back(parse_rational(item));
      } else if (key == "t") {
        cfg.t_grid = parse_i64_list(value);
      } else if (key == "d") {
        cfg.d_grid = parse_i64_list(value);
      } else if (key == "r") {
        cfg.r_grid = parse_i64_list(value);
      } else {
        throw error(errc::bad_argument, "unknown config key: " + key);
      }
    } catch (const error&) {
      throw;
    } catch (const std::exception&) {
      throw error(errc::bad_argument,
                  "config line " + std::to_string(lineno) + ": bad value for " + key);
    }
  }
}

namespace {

// Small rationals u/w (|u| <= 60, 1 <= w <= 12) that are congruent to v mod p.
std::vector<std::pair<i64, i64>> small_rational_lifts(Fp v) {
  std::vector<std::pair<i64, i64>> out;
  for (i64 w = 1; w <= 12; ++w) {
    if (static_cast<u64>(w) % v.p == 0) continue;
    i64 u = (v * Fp::from(w, v.p)).lift();
    if (std::llabs(u) > 60) continue;
    i64 g = std::gcd(std::llabs(u), w);
    i64 un = u / g, wn = w / g;
    if (std::find(out.begin(), out.end(), std::make_pair(un, wn)) == out.end())
      out.push_back({un, wn});
  }
  return out;
}

}  // namespace

void run_scan(const ScanConfig& cfg, std::ostream& out) {
  if (cfg.pmin > cfg.pmax) throw error(errc::bad_argument, "empty p range");
  if (cfg.m_values.empty()) throw error(errc::bad_argument, "empty m grid");
  if (cfg.h == 0) throw error(errc::bad_argument, "h must be >= 1");
  if (cfg.d <= -static_cast<i64>(cfg.h)) throw error(errc::bad_argument, "d out of range");
  for (i64 m : cfg.m_values) {
    std::vector<std::pair<u64, Fp>> rows;
    for (u64 p : primes_in(cfg.pmin, cfg.pmax)) {
      Fp mf = Fp::from(m, p);
      if (mf.zero()) continue;
      PrimePower pp(p, 1);
      RecurrenceSpec spec(cfg.h, mf);
      rows.push_back({p, sum_fast(spec, cfg.d, pp)});
    }
    out << "m=" << m << ":";
    for (auto& [p, v] : rows) out << " " << p << ":" << v.lift();
    out << "\n";
    if (rows.size() < 4) {
      out << "m=" << m << ": not enough data\n";
      continue;
    }
    bool flagged = false;
    const size_t outlier_budget = std::max<size_t>(1, rows.size() / 20);
    for (u64 mod : {3, 4, 5, 7, 8, 9, 11, 12, 13, 16, 19, 23, 25}) {
      // group by p mod `mod`; each class should pin down one small rational,
      // allowing a few exceptional primes (these sums routinely exclude one)
      std::map<u64, std::vector<std::vector<std::pair<i64, i64>>>> cls;
      std::map<u64, std::vector<u64>> cls_p;
      for (auto& [p, v] : rows) {
        cls[p % mod].push_back(small_rational_lifts(v));
        cls_p[p % mod].push_back(p);
      }
      if (rows.size() < 3 * cls.size()) continue;
      size_t outliers = 0;
      std::vector<u64> outlier_ps;
      std::map<u64, std::pair<i64, i64>> best_of;
      for (auto& [residue, members] : cls) {
        std::map<std::pair<i64, i64>, size_t> votes;
        for (auto& cands : members)
          for (auto& c : cands) ++votes[c];
        size_t best_count = 0;
        std::pair<i64, i64> best{0, 1};
        for (auto& [c, n] : votes)
          if (n > best_count) {
            best_count = n;
            best = c;
          }
        best_of[residue] = best;
        for (size_t i = 0; i < members.size(); ++i)
          if (std::find(members[i].begin(), members[i].end(), best) == members[i].end()) {
            ++outliers;
            outlier_ps.push_back(cls_p[residue][i]);
          }
      }
      if (outliers <= outlier_budget) {
        out << "m=" << m << ": flagged, value depends only on p mod " << mod << " (";
        bool first = true;
        for (auto& [residue, best] : best_of) {
          if (!first) out << ", ";
          first = false;
          out << residue << " -> " << best.first;
          if (best.second != 1) out << "/" << best.second;
        }
        out << ")";
        if (!outlier_ps.empty()) {
          out << " except p in {";
          for (size_t i = 0; i < outlier_ps.size(); ++i) out << (i ? "," : "") << outlier_ps[i];
          out << "}";
        }
        out << "\n";
        flagged = true;
        break;
      }
    }
    if (!flagged) out << "m=" << m << ": no small-modulus pattern\n";
  }
}

}  // namespace catsum
