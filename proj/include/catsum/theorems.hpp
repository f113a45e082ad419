#pragma once

#include <optional>
#include <string>
#include <vector>

#include "catsum/modarith.hpp"
#include "catsum/oracle.hpp"

namespace catsum {

enum class TheoremId {
  T1_1, C1_1, T1_2, T1_3, T1_4, T1_5, T1_6, T1_7, T1_8, T1_9, T1_10,
  T3_1, T3_2, C3_1, L5_1, L5_2,
};

std::string to_string(TheoremId id);
std::optional<TheoremId> parse_theorem_id(const std::string& s);
std::vector<TheoremId> all_theorem_ids();

struct Rational {
  i64 num = 0, den = 1;
  std::string str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }
};

/// Free parameters a predictor may need. Which ones are read depends on the
/// theorem; missing required ones raise errc::missing_param.
struct TheoremParams {
  std::optional<Rational> c;
  std::optional<i64> m, t, d, r, s;
  std::optional<unsigned> pa_mult;  // adds pa_mult * p^a to d
};

/// v^(1)_n = u_{n+2} - 3 u_{n+1}, v^(2)_n = 3 u_{n+1} + 2 u_n of the order-4
/// sequence u_0 = u_1 = u_2 = 0, u_3 = 1,
/// u_{n+4} - u_{n+3} + 6 u_{n+2} + 4 u_{n+1} + u_n = 0.
struct SeqTarget {
  int s = 1;   // which combination
  i64 e = 0;   // predicted index is p^a + e
};

/// The five-term relation S_d - S_{d-1} + 6 S_{d-2} + 4 S_{d-3} + S_{d-4}
/// for the h = 3, m = 5 sums; predicted value is its right side.
struct RelationTarget {
  i64 d = 0;
};

struct Prediction {
  std::string label;
  bool applicable = false;
  std::string reason;  // why not applicable, empty otherwise
  Fp value;
  std::optional<Fp> alt_value;  // second admissible value under a sign ambiguity
  // exactly one of these is set when applicable
  std::optional<SumDescriptor> sum;
  std::optional<SeqTarget> seq;
  std::optional<RelationTarget> relation;
};

// All predictions of one theorem at one prime power. Inapplicable predicates
// come back as applicable = false with the violated condition named.
std::vector<Prediction> predict(TheoremId id, const PrimePower& pp, const TheoremParams& params);

// v^(s)_n mod p. Uses the recurrence engine for p != 5; for p = 5 steps the
// integer sequence directly (|n| capped).
Fp vseq(int s, const mpz_class& n, u64 p);

// Checks 2^5 U_n = (6n - 11) 3^(n-1) + 3^(-3(n-1)) (5 u_n - 11 u_{n-1}) mod p
// for the order-4 sequence with m = 4^4/3^3 and u = lucas(-14, 81). p > 3.
bool quartic_closed_form_check(i64 n, u64 p);

// x, y > 0 with x^2 + 3 y^2 = p, for p == 1 (mod 3)
// (errc::no_representation otherwise).
std::pair<u64, u64> cornacchia_x2_3y2(u64 p);

}  // namespace catsum
