#pragma once

#include "catsum/modarith.hpp"

namespace catsum {

/// Parameters of the Lucas sequences u_n(A, B), v_n(A, B):
/// u_0 = 0, u_1 = 1, v_0 = 2, v_1 = A, x_{n+1} = A x_n - B x_{n-1}.
/// B must be invertible so the sequences extend to negative indices.
struct LucasParams {
  Fp A, B, delta;  // delta = A^2 - 4B

  LucasParams(Fp a, Fp b);
};

struct LucasPair {
  mpz_class n;
  Fp u, v;
};

// (u_n, v_n) by fast doubling, O(log |n|); negative n via
// u_{-n} = -u_n / B^n, v_{-n} = v_n / B^n.
LucasPair lucas_pair(const LucasParams& params, const mpz_class& n);

enum class ShiftDirection { up, down };

// u_{n +- p^a} from (u_n, v_n) and the Jacobi symbol (delta/p^a), without
// iterating p^a steps. Requires p odd (errc::even_prime) and p not dividing
// delta (errc::singular_delta).
Fp lucas_u_shifted(const LucasParams& params, const mpz_class& n, const PrimePower& pp,
                   ShiftDirection dir);

// Integer Lucas numbers L_0 = 2, L_1 = 1, L_{n+1} = L_n + L_{n-1};
// negative indices via L_{-n} = (-1)^n L_n.
mpz_class lucas_number(i64 n);

// Exact integer 5 * sum_{k == r (mod 5)} binom(2d, k) - 2^(2d). Also checks
// it equals the Lucas-number closed form
// [5 | d-r] 2 L_{2d} + ((d-r)/5) L_{2d - ((d-r)/5)} before returning.
mpz_class quintisection(unsigned d, i64 r);

}  // namespace catsum
