#pragma once

#include <optional>
#include <string>

#include "catsum/modarith.hpp"

namespace catsum {

enum class SumKind { plain, catalan_c, catalan_cbar };

/// One truncated sum: sum over k of the chosen binomial combination divided
/// by m^k, k running from k_start to p^a - 1, optionally restricted to a
/// residue class mod p-1.
struct SumDescriptor {
  unsigned h = 2;
  i64 m_num = 1, m_den = 1;
  SumKind kind = SumKind::plain;
  i64 d = 0;             // second binomial index is k + d (+ p^a when d_plus_pa)
  bool d_plus_pa = false;
  unsigned k_start = 0;
  std::optional<i64> class_r;  // keep only k == r (mod p-1)

  std::string label() const;
};

struct OracleOptions {
  u64 budget = 200'000'000;  // max number of k values enumerated
  unsigned workers = 0;      // 0 = CONGR_WORKERS env or hardware concurrency
};

unsigned resolve_workers(unsigned requested);

// Exact mod-p value of the described sum by term-by-term enumeration.
// Throws errc::budget_exceeded when p^a > options.budget.
Fp direct_sum(const SumDescriptor& desc, const PrimePower& pp, const OracleOptions& options = {});

// C_k or Cbar_k of order h mod p via the subtraction forms (never dividing
// by hk+1 or k+1).
Fp catalan_mod(SumKind kind, unsigned h, const mpz_class& k, u64 p);

// sum over 0 < k < p^a, k == r (mod p-1), of binom(3k, k+d) mod p.
Fp residue_class_sum(const PrimePower& pp, i64 d, i64 r, const OracleOptions& options = {});

}  // namespace catsum
