#pragma once

#include <span>
#include <vector>

#include "catsum/modarith.hpp"

namespace catsum {

/// Order-(h+1) linear recurrence sum_j c_j u_{n+j} = 0 with
/// c_j = binom(h+1, j) - m*[j == h], i.e. characteristic polynomial
/// (1+x)^(h+1) - m x^h. Both ends are monic (c_0 = c_{h+1} = 1), so the
/// sequence runs in both directions. Initial window u_0 = .. = u_{h-1} = 0,
/// u_h = 1.
struct RecurrenceSpec {
  unsigned h;
  u64 p;
  Fp m;
  std::vector<u64> c;  // c[0..h+1]

  RecurrenceSpec(unsigned order_h, Fp m_value);
};

/// h+1 consecutive sequence values u_base .. u_{base+h}.
struct SequenceWindow {
  mpz_class base;
  std::vector<u64> values;

  static SequenceWindow initial(const RecurrenceSpec& spec);
  void step_forward(const RecurrenceSpec& spec);
  void step_backward(const RecurrenceSpec& spec);
};

// u_n for any signed n. Small |n| steps a window; large |n| exponentiates
// x modulo the characteristic polynomial (x is invertible since c_0 = 1).
Fp seq_term(const RecurrenceSpec& spec, const mpz_class& n);

// sum_{k=0}^{p^a-1} binom((h+1)k, k+d) / m^k mod p, evaluated through the
// recurrence in O(h^3 log p^a). Requires -h < d <= h p^a (errc::d_range).
Fp sum_fast(const RecurrenceSpec& spec, const mpz_class& d, const PrimePower& pp);
Fp sum_fast(const RecurrenceSpec& spec, i64 d, const PrimePower& pp);

// Same sum through the distinct-roots identity
// (h+1-m) u_{d+h-1} + u_{p^a+d+h-1} + sum_r binom(h+1, r+1) u_{d+h-1-r p^a};
// requires the characteristic polynomial to be squarefree mod p
// (errc::singular_discriminant otherwise).
Fp sum_via_roots(const RecurrenceSpec& spec, const mpz_class& d, const PrimePower& pp);
Fp sum_via_roots(const RecurrenceSpec& spec, i64 d, const PrimePower& pp);

// Verifies sum_j c_j S_{d+j} = [p^a | d+h] binom(h+1, (d+h)/p^a + 1) with the
// S values computed by the fast route.
bool relation_check(const RecurrenceSpec& spec, const mpz_class& d, const PrimePower& pp);
bool relation_check(const RecurrenceSpec& spec, i64 d, const PrimePower& pp);

// Sylvester's interpolation u_n = sum_i roots[i]^n / prod_{j != i}(r_i - r_j)
// for pairwise distinct nonzero roots. Matches seq_term when the
// characteristic polynomial splits with distinct roots.
Fp sylvester_term(std::span<const Fp> roots, const mpz_class& n);

}  // namespace catsum
