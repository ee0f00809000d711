#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "cyclogap/numtheory.hpp"

namespace cyclogap {

/// Plus selects the bounds for Phi_n, minus those for Psi_n.
enum class Sign { kPlus, kMinus };

constexpr int sign_value(Sign s) { return s == Sign::kPlus ? 1 : -1; }
std::string_view to_string(Sign s);

/// A lower bound that may be undefined: nullopt when the maximum ranges over
/// an empty index set (k = 1 for either sign, and also k = 2 for minus).
using Bound = std::optional<std::int64_t>;

/// True when r takes part in the sign's maximum, i.e. rho(k - r) = -sign.
bool index_eligible(int k, int r, Sign sign);

/// max over eligible r of p_r - phi(p_1 ... p_{r-1}).
Bound alpha_bound(const PrimeFactorization& f, Sign sign);
/// max over eligible r of min{p_{r+1}, n_r} - psi(n_r).
Bound beta_bound(const PrimeFactorization& f, Sign sign);
/// max over eligible r of n_r - sum_{d | n, omega(d) < r} sign * mu(n/d) * d.
Bound gamma_bound(const PrimeFactorization& f, Sign sign);
/// 2 n / p_1 - psi(n). Can be negative.
std::int64_t delta_minus(const PrimeFactorization& f);

/// sum_{d in B} sign * mu(n/d) * d.
std::int64_t signed_divisor_sum(const DivisorSet& b, Sign sign);

/// The admissibility condition on B: for every divisor d of an element of B,
/// the members of B that are multiples of d with mu(n/d') = sign are at least
/// as many as those with mu(n/d') = -sign. Vacuously true for B empty.
bool c_condition(const DivisorSet& b, const PrimeFactorization& f, Sign sign);

/// One split of the proper divisors of n into a nonempty A and its
/// complement B.
struct DivisorPartition {
  DivisorSet a;
  DivisorSet b;
  Sign sign = Sign::kPlus;
  std::int64_t u = 0;         // min A
  std::int64_t l_signed = 0;  // sum_{d in B} sign * mu(n/d) * d
};

struct EpsilonResult {
  std::int64_t value = 0;
  std::int64_t admissible_pairs = 0;
  DivisorPartition argmax;
};

inline constexpr int kDefaultEpsilonMaxK = 4;

/// Exhaustive maximum of min A - l(B) over every split (A, B) of the proper
/// divisors with A nonempty and C(B). The argmax is the first maximizer in
/// bitmask order, bit i standing for the i-th smallest proper divisor.
/// Throws kInfeasibleEnumeration when k > max_k (max_k is capped at 5).
EpsilonResult epsilon_bound(const PrimeFactorization& f, Sign sign, int max_k = kDefaultEpsilonMaxK);

/// {c | n_j : omega(c) < r}, for 1 <= r < k and r - 1 <= j <= k.
DivisorSet restricted_b(const PrimeFactorization& f, int j, int r);

/// delta^-(n) >= n / (2 p_1), compared exactly as 2 p_1 delta^-(n) >= n.
bool delta_sufficient(const PrimeFactorization& f);

/// p_2 > (k - 1)(2 p_1 - 3); nullopt for k = 1.
std::optional<bool> lemma_suff2_condition(const PrimeFactorization& f);

struct BoundsReport {
  std::int64_t n = 0;
  int k = 0;
  Bound alpha_plus, beta_plus, gamma_plus;
  Bound alpha_minus, beta_minus, gamma_minus;
  std::int64_t delta_minus = 0;
  Bound epsilon_plus, epsilon_minus;  // nullopt when k exceeds the enumeration ceiling
  std::int64_t g_phi = 0;
  std::int64_t g_psi = 0;

  /// max of the defined special bounds for Phi_n (alpha, beta, gamma).
  Bound special_plus() const;
  /// max of the defined special bounds for Psi_n (alpha, beta, gamma, delta).
  Bound special_minus() const;

  bool special_exact_phi() const;
  bool special_exact_psi() const;
  bool eps_exact_phi() const;
  bool eps_exact_psi() const;
};

struct BoundsOptions {
  int epsilon_max_k = kDefaultEpsilonMaxK;
  std::int64_t degree_ceiling = 100'000'000;
};

/// Every bound for n together with the measured g(Phi_n) and g(Psi_n).
BoundsReport bounds_report(const PrimeFactorization& f, const BoundsOptions& options = {});

/// Every bound for n, with gaps already measured by the caller.
BoundsReport bounds_report_with_gaps(const PrimeFactorization& f, std::int64_t g_phi,
                                     std::int64_t g_psi, const BoundsOptions& options = {});

}  // namespace cyclogap
