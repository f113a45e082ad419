#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "catsum/cubicres.hpp"
#include "catsum/linrec.hpp"
#include "catsum/oracle.hpp"
#include "catsum/sweep.hpp"

using namespace catsum;

namespace {

int cmd_sum(unsigned h, const std::string& m_str, u64 p, unsigned a, i64 d,
            const std::string& method, u64 budget, unsigned workers) {
  Rational m = parse_rational(m_str);
  PrimePower pp(p, a);
  Fp mf = rational_residue(m.num, m.den, p);
  if (mf.zero()) throw error(errc::bad_argument, "m must be nonzero mod p");
  Fp result(0, p);
  if (method == "oracle") {
    SumDescriptor desc;
    desc.h = h;
    desc.m_num = m.num;
    desc.m_den = m.den;
    desc.d = d;
    OracleOptions opt;
    opt.budget = budget;
    opt.workers = workers;
    result = direct_sum(desc, pp, opt);
  } else if (method == "fast") {
    RecurrenceSpec spec(h, mf);
    result = sum_fast(spec, d, pp);
  } else if (method == "roots") {
    RecurrenceSpec spec(h, mf);
    result = sum_via_roots(spec, d, pp);
  } else {
    throw error(errc::bad_argument, "method must be one of fast, roots, oracle");
  }
  std::cout << result.v << "\n";
  return 0;
}

int cmd_classify(const std::string& c_str, u64 p, unsigned a) {
  if (p == 3) throw error(errc::bad_argument, "p = 3 is excluded from classification");
  Rational c = parse_rational(c_str);
  PrimePower pp(p, a);
  CubicClass cls = classify(c.num, c.den, pp);
  const char* names[] = {"C0", "C1", "C2", "undefined"};
  std::cout << names[static_cast<int>(cls)];
  if (a == 1 && p > 3 && cls != CubicClass::undefined) {
    Fp cf = rational_residue(c.num, c.den, p);
    if (!cf.zero() && !(cf * cf + Fp(3, p)).zero()) {
      bool zero = sun_c0_criterion(c.num, c.den, p);
      bool agree = zero == (cls == CubicClass::c0);
      std::cout << " (u-zero criterion: " << (zero ? "C0" : "not C0") << ", "
                << (agree ? "agree" : "DISAGREE") << ")";
    }
  }
  std::cout << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"truncated binomial/Catalan sum congruences: compute and verify"};
  app.set_help_flag("--help", "print help");  // frees -h/--h for the order parameter
  app.require_subcommand(1);

  // sum
  auto* sum = app.add_subcommand("sum", "evaluate one sum by the chosen route");
  unsigned sum_h = 2;
  std::string sum_m = "1";
  u64 sum_p = 5;
  unsigned sum_a = 1;
  i64 sum_d = 0;
  std::string sum_method = "fast";
  u64 sum_budget = 200'000'000;
  unsigned sum_workers = 0;
  sum->add_option("--h", sum_h, "order parameter h")->required();
  sum->add_option("--m", sum_m, "m as integer or num/den")->required();
  sum->add_option("--p", sum_p, "prime p")->required();
  sum->add_option("--a", sum_a, "exponent a");
  sum->add_option("--d", sum_d, "offset d");
  sum->add_option("--method", sum_method, "fast | roots | oracle");
  sum->add_option("--budget", sum_budget, "oracle term budget");
  sum->add_option("--workers", sum_workers, "oracle worker threads");

  // verify
  auto* verify = app.add_subcommand("verify", "sweep predictors against fast and oracle routes");
  SweepConfig cfg;
  cfg.theorems = all_theorem_ids();
  std::vector<std::string> v_theorems, v_c;
  std::vector<i64> v_t, v_d, v_r;
  u64 v_p = 0;
  std::string v_format, v_config;
  verify->add_option("--theorem", v_theorems, "theorem id, repeatable (default: all)");
  verify->add_option("--p", v_p, "single prime (sets pmin = pmax)");
  auto* o_pmin = verify->add_option("--pmin", cfg.pmin, "lowest prime");
  auto* o_pmax = verify->add_option("--pmax", cfg.pmax, "highest prime");
  auto* o_amin = verify->add_option("--a", cfg.amin, "lowest exponent");
  auto* o_amax = verify->add_option("--amax", cfg.amax, "highest exponent");
  verify->add_option("--c", v_c, "c grid entries (rationals)");
  verify->add_option("--t", v_t, "t grid entries");
  verify->add_option("--d", v_d, "d grid entries");
  verify->add_option("--r", v_r, "r grid entries");
  auto* o_budget = verify->add_option("--budget", cfg.budget, "oracle term budget");
  auto* o_workers = verify->add_option("--workers", cfg.workers, "worker threads");
  verify->add_option("--format", v_format, "jsonl | csv");
  auto* o_out = verify->add_option("--out", cfg.out_path, "output path (default stdout)");
  verify->add_option("--config", v_config, "config file (key = value lines)");

  // classify
  auto* classify_cmd = app.add_subcommand("classify", "cubic residue class of c");
  std::string cl_c;
  u64 cl_p = 0;
  unsigned cl_a = 1;
  classify_cmd->add_option("--c", cl_c, "c as integer or num/den")->required();
  classify_cmd->add_option("--p", cl_p, "prime p (not 3)")->required();
  classify_cmd->add_option("--a", cl_a, "exponent a");

  // scan
  auto* scan = app.add_subcommand("scan", "look for m values with class-keyed sums");
  ScanConfig scfg;
  std::vector<i64> s_m;
  i64 s_mmin = 0, s_mmax = -1;
  scan->add_option("--h", scfg.h, "order parameter h");
  scan->add_option("--m", s_m, "m values");
  scan->add_option("--mmin", s_mmin, "m range start");
  scan->add_option("--mmax", s_mmax, "m range end");
  scan->add_option("--pmin", scfg.pmin, "lowest prime");
  scan->add_option("--pmax", scfg.pmax, "highest prime");
  scan->add_option("--d", scfg.d, "offset d");
  std::string scan_out;
  scan->add_option("--out", scan_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (sum->parsed())
      return cmd_sum(sum_h, sum_m, sum_p, sum_a, sum_d, sum_method, sum_budget, sum_workers);

    if (classify_cmd->parsed()) return cmd_classify(cl_c, cl_p, cl_a);

    if (verify->parsed()) {
      SweepConfig file_cfg;  // config file first, CLI flags override
      file_cfg.theorems = cfg.theorems;
      if (!v_config.empty()) apply_config_file(file_cfg, v_config);
      SweepConfig& c = file_cfg;
      if (!v_theorems.empty()) {
        c.theorems.clear();
        for (const std::string& s : v_theorems) {
          auto id = parse_theorem_id(s);
          if (!id) throw error(errc::bad_argument, "unknown theorem id: " + s);
          c.theorems.push_back(*id);
        }
      }
      if (v_p != 0) c.pmin = c.pmax = v_p;
      if (o_pmin->count()) c.pmin = cfg.pmin;
      if (o_pmax->count()) c.pmax = cfg.pmax;
      if (o_amin->count()) c.amin = cfg.amin;
      if (o_amax->count()) c.amax = cfg.amax;
      if (c.amax < c.amin) c.amax = c.amin;
      if (o_budget->count()) c.budget = cfg.budget;
      if (o_workers->count()) c.workers = cfg.workers;
      if (o_out->count()) c.out_path = cfg.out_path;
      if (!v_format.empty()) {
        auto f = parse_format(v_format);
        if (!f) throw error(errc::bad_argument, "unknown format: " + v_format);
        c.format = *f;
      }
      if (!v_c.empty()) {
        c.c_grid.clear();
        for (const std::string& s : v_c) c.c_grid.push_back(parse_rational(s));
      }
      if (!v_t.empty()) c.t_grid = v_t;
      if (!v_d.empty()) c.d_grid = v_d;
      if (!v_r.empty()) c.r_grid = v_r;

      std::ofstream file;
      std::ostream* out = &std::cout;
      if (!c.out_path.empty()) {
        file.open(c.out_path);
        if (!file) throw error(errc::bad_argument, "cannot open output file: " + c.out_path);
        out = &file;
      }
      VerifyResult vr = run_verify(c, *out, std::cerr);
      return vr.all_match ? 0 : 1;
    }

    if (scan->parsed()) {
      scfg.m_values = s_m;
      if (s_mmax >= s_mmin && s_mmax >= 0 && s_m.empty())
        for (i64 m = s_mmin; m <= s_mmax; ++m) scfg.m_values.push_back(m);
      std::ofstream file;
      std::ostream* out = &std::cout;
      if (!scan_out.empty()) {
        file.open(scan_out);
        if (!file) throw error(errc::bad_argument, "cannot open output file: " + scan_out);
        out = &file;
      }
      run_scan(scfg, *out);
      return 0;
    }
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == errc::budget_exceeded ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
