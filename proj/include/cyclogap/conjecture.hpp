#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cyclogap/polynomial.hpp"

namespace cyclogap {

/// g(Phi_{mp}) for m odd square-free and p a prime not dividing m.
std::int64_t gap_phi_mp(std::int64_t m, std::int64_t p,
                        std::int64_t degree_ceiling = kDefaultDegreeCeiling);

/// g(Phi_{mp}) == g(Phi_{mp2}) for primes p, p2 > m with p = p2 (mod m).
/// Throws kInvalidArgument if the preconditions fail.
bool invariance_check(std::int64_t m, std::int64_t p, std::int64_t p2,
                      std::int64_t degree_ceiling = kDefaultDegreeCeiling);

/// g(Phi_{mp}) evaluated from the leading blocks f_{m,p,i,0} alone, for
/// p = q m + r with q >= 1. The rows of Phi_{mp} are rebuilt implicitly from
/// the repetition and truncation properties, so the same leading blocks give
/// the gap for every prime in the residue class.
std::int64_t gap_from_leading_blocks(std::int64_t m, std::int64_t q, std::int64_t r,
                                     std::span<const IntPolynomial> leading_blocks);
std::int64_t gap_from_blocks(const BlockDecomposition& b);

enum class Verdict { kConfirmed, kRefuted, kIncomplete };
std::string_view to_string(Verdict v);

struct Counterexample {
  std::int64_t p = 0;
  std::int64_t gap = 0;
  std::int64_t phi_m = 0;
  /// "p < m but g = phi(m)" or "p > m but g != phi(m)".
  std::string relation;
};

struct ResidueCheck {
  std::int64_t r = 0;
  std::int64_t p = 0;
  std::int64_t gap = 0;
};

struct ConjectureVerdict {
  std::int64_t m = 0;
  std::int64_t phi_m = 0;
  Verdict verdict = Verdict::kConfirmed;
  std::optional<Counterexample> counterexample;
  std::int64_t residues_checked = 0;
  std::int64_t primes_below_m_checked = 0;
  /// One entry per residue visited, ordered by r.
  std::vector<ResidueCheck> residues;
  /// Residues whose block decomposition was cross-checked.
  std::int64_t block_checks = 0;
  /// Cross-checks that disagreed with the invariance machinery. Always
  /// expected to be zero.
  std::int64_t block_anomalies = 0;
  std::string note;
};

struct ConjectureOptions {
  std::int64_t degree_ceiling = kDefaultDegreeCeiling;
  std::int64_t prime_search_ceiling = kDefaultPrimeSearchCeiling;
  /// Cross-check C1/C2/C3, invariance and the block gap formula on every
  /// stride-th residue; 0 disables.
  std::int64_t block_check_stride = 0;
};

/// Decides g(Phi_{mp}) = phi(m) <=> p > m for every prime p above the largest
/// prime factor of m, checking the primes below m directly and one prime per
/// unit residue class mod m.
ConjectureVerdict check_conjecture_for_m(std::int64_t m, const ConjectureOptions& options = {});

/// Verdicts for every odd square-free m with 3 <= m < m_max, sorted by m.
std::vector<ConjectureVerdict> scan_m_range(std::int64_t m_max, const ConjectureOptions& options = {},
                                            int jobs = 1);

}  // namespace cyclogap
