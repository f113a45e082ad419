#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "catsum/report.hpp"
#include "catsum/theorems.hpp"

namespace catsum {

struct SweepConfig {
  std::vector<TheoremId> theorems;
  u64 pmin = 5, pmax = 100;
  unsigned amin = 1, amax = 2;
  std::vector<Rational> c_grid = {{1, 1}, {-2, 1}, {3, 1}, {4, 1}, {-1, 4}, {5, 2}};
  std::vector<i64> t_grid = {0, 1, 2, 3, 4, 5};
  std::vector<i64> d_grid = {-1, 0, 1, 2, 3};
  std::vector<i64> r_grid = {0, 1, 2, 3};
  u64 budget = 200'000'000;
  u64 seq_budget = 1'000'000;
  unsigned workers = 0;
  OutFormat format = OutFormat::jsonl;
  std::string out_path;  // empty writes to stdout
};

// Line-based `key = value` file with # comments. Unknown keys throw
// errc::bad_argument.
void apply_config_file(SweepConfig& cfg, const std::string& path);

struct VerifyResult {
  bool all_match = true;
  u64 rows = 0;
  u64 applicable_rows = 0;
  u64 mismatches = 0;
};

// Runs the configured sweep, streaming records in deterministic order
// (theorem, then p ascending, then a, then parameter grid order).
VerifyResult run_verify(const SweepConfig& cfg, std::ostream& records, std::ostream& log);

// Recurrence-engine route and enumeration route for a single prediction;
// nullopt when the route does not apply (class-restricted sums, m == 0,
// budget exceeded).
std::optional<Fp> route_fast(const Prediction& pred, const PrimePower& pp);
std::optional<Fp> route_oracle(const Prediction& pred, const PrimePower& pp, u64 budget,
                               u64 seq_budget, unsigned workers);

struct ScanConfig {
  unsigned h = 2;
  std::vector<i64> m_values;
  u64 pmin = 5, pmax = 100;
  i64 d = 0;
};

// For each m reports the signed residues of the d-offset sum across primes
// and flags values that depend only on p modulo some small modulus.
void run_scan(const ScanConfig& cfg, std::ostream& out);

std::vector<u64> primes_in(u64 lo, u64 hi);

// "num" or "num/den"; throws errc::bad_argument on malformed input.
Rational parse_rational(const std::string& s);

}  // namespace catsum
