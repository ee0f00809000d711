#include "cyclogap/conjecture.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "cyclogap/checked.hpp"
#include "cyclogap/error.hpp"
#include "cyclogap/parallel.hpp"

namespace cyclogap {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kConfirmed: return "confirmed";
    case Verdict::kRefuted: return "refuted";
    case Verdict::kIncomplete: return "incomplete";
  }
  return "unknown";
}

namespace {

void require_prime(std::int64_t p) {
  if (p < 3 || !is_prime(static_cast<std::uint64_t>(p))) {
    throw Error(ErrorKind::kInvalidArgument, std::to_string(p) + " is not an odd prime");
  }
}

PrimeFactorization factorization_mp(std::int64_t m, std::int64_t p) {
  const PrimeFactorization fm = factorize_odd_squarefree(m);
  require_prime(p);
  if (m % p == 0) {
    throw Error(ErrorKind::kInvalidArgument, std::to_string(p) + " divides " + std::to_string(m));
  }
  return fm.with_prime(p);
}

}  // namespace

std::int64_t gap_phi_mp(std::int64_t m, std::int64_t p, std::int64_t degree_ceiling) {
  return cyclotomic_max_gap(factorization_mp(m, p), degree_ceiling).gap;
}

bool invariance_check(std::int64_t m, std::int64_t p, std::int64_t p2, std::int64_t degree_ceiling) {
  if (p <= m || p2 <= m || (p - p2) % m != 0) {
    throw Error(ErrorKind::kInvalidArgument, "invariance needs primes p, p2 > m with p = p2 mod m");
  }
  return gap_phi_mp(m, p, degree_ceiling) == gap_phi_mp(m, p2, degree_ceiling);
}

std::int64_t gap_from_leading_blocks(std::int64_t m, std::int64_t q, std::int64_t r,
                                     std::span<const IntPolynomial> leading_blocks) {
  if (q < 1 || r < 0 || r >= m) throw Error(ErrorKind::kInvalidArgument, "need p = q m + r with q >= 1");
  const std::int64_t p = q * m + r;
  std::int64_t best = 0;
  std::optional<std::int64_t> prev_row;
  std::int64_t prev_row_degree = 0;
  for (std::size_t i = 0; i < leading_blocks.size(); ++i) {
    const IntPolynomial& head = leading_blocks[i];
    if (head.is_zero()) continue;
    const IntPolynomial tail = head.truncate(r);  // f_{m,p,i,q}
    const std::int64_t head_deg = head.degree();
    const std::int64_t head_tdeg = head.trailing_degree();

    // Inside the row: gaps within a block, and across the seam between
    // consecutive copies of the leading block.
    best = std::max(best, max_gap(head).gap);
    if (!tail.is_zero()) best = std::max(best, max_gap(tail).gap);
    if (q >= 2 || !tail.is_zero()) best = std::max(best, m + head_tdeg - head_deg);

    // Across rows: trailing degree of this row against the degree of the
    // previous one.
    const auto row = static_cast<std::int64_t>(i);
    if (prev_row) best = std::max(best, (row - *prev_row) * p + head_tdeg - prev_row_degree);
    prev_row = row;
    prev_row_degree = tail.is_zero() ? (q - 1) * m + head_deg : q * m + tail.degree();
  }
  if (!prev_row) throw Error(ErrorKind::kZeroPolynomial, "all leading blocks are zero");
  return best;
}

std::int64_t gap_from_blocks(const BlockDecomposition& b) {
  std::vector<IntPolynomial> leading;
  leading.reserve(b.blocks.size());
  for (const auto& row : b.blocks) leading.push_back(row.front());
  return gap_from_leading_blocks(b.m, b.q, b.r, leading);
}

namespace {

// Full cross-check of one residue class: C1/C2 on p, C3 and gap invariance
// against the next prime p' in the class, and the block formula against the
// direct gap. Returns false on any disagreement.
bool cross_check_blocks(std::int64_t m, std::int64_t p, std::int64_t direct_gap,
                        const ConjectureOptions& options) {
  CyclotomicOptions poly;
  poly.degree_ceiling = options.degree_ceiling;
  std::int64_t p2 = checked_add(p, m);
  while (!is_prime(static_cast<std::uint64_t>(p2))) {
    p2 = checked_add(p2, m);
    if (p2 > options.prime_search_ceiling) {
      throw Error(ErrorKind::kSearchCeiling, "no second prime in class of " + std::to_string(p));
    }
  }
  const BlockDecomposition first = block_decompose(m, p, poly);
  const BlockDecomposition second = block_decompose(m, p2, poly);
  const BlockProperties props = verify_block_properties(first, &second);
  const bool blocks_ok = props.c1 && props.c2 && props.c3.value_or(false);
  const bool formula_ok = gap_from_blocks(first) == direct_gap && gap_from_blocks(second) == direct_gap;
  const bool invariant = max_gap(second.reassemble()).gap == direct_gap;
  return blocks_ok && formula_ok && invariant;
}

}  // namespace

ConjectureVerdict check_conjecture_for_m(std::int64_t m, const ConjectureOptions& options) {
  const PrimeFactorization fm = factorize_odd_squarefree(m);
  ConjectureVerdict out;
  out.m = m;
  out.phi_m = euler_phi(fm);
  const std::int64_t largest = fm.prime(fm.k());

  try {
    // Primes between the largest factor of m and m itself must miss phi(m).
    for (std::int64_t p = largest + 2; p < m; p += 2) {
      if (!is_prime(static_cast<std::uint64_t>(p))) continue;
      const std::int64_t gap = cyclotomic_max_gap(fm.with_prime(p), options.degree_ceiling).gap;
      ++out.primes_below_m_checked;
      if (gap == out.phi_m) {
        out.verdict = Verdict::kRefuted;
        out.counterexample = Counterexample{p, gap, out.phi_m, "p < m but g = phi(m)"};
        return out;
      }
    }

    // One prime per unit residue stands for its whole class.
    for (std::int64_t r = 1; r < m; ++r) {
      if (std::gcd(m, r) != 1) continue;
      const std::int64_t p = next_prime_in_class(m, r, options.prime_search_ceiling);
      const std::int64_t gap = cyclotomic_max_gap(fm.with_prime(p), options.degree_ceiling).gap;
      ++out.residues_checked;
      out.residues.push_back({r, p, gap});
      if (options.block_check_stride > 0 && (out.residues_checked - 1) % options.block_check_stride == 0) {
        ++out.block_checks;
        if (!cross_check_blocks(m, p, gap, options)) ++out.block_anomalies;
      }
      if (gap != out.phi_m) {
        out.verdict = Verdict::kRefuted;
        out.counterexample = Counterexample{p, gap, out.phi_m, "p > m but g != phi(m)"};
        return out;
      }
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kDegreeCeiling && e.kind() != ErrorKind::kSearchCeiling &&
        e.kind() != ErrorKind::kOverflow) {
      throw;
    }
    out.verdict = Verdict::kIncomplete;
    out.note = e.what();
    return out;
  }
  if (out.block_anomalies > 0) {
    out.note = std::to_string(out.block_anomalies) + " block cross-check(s) disagreed";
  }
  return out;
}

std::vector<ConjectureVerdict> scan_m_range(std::int64_t m_max, const ConjectureOptions& options, int jobs) {
  if (m_max < 3) throw Error(ErrorKind::kInvalidArgument, "m_max must be at least 3");
  std::vector<std::int64_t> ms;
  for (std::int64_t m = 3; m < m_max; m += 2) {
    try {
      factorize_odd_squarefree(m);
      ms.push_back(m);
    } catch (const Error&) {
    }
  }
  std::vector<ConjectureVerdict> out(ms.size());
  // Largest m first: they dominate the runtime, so claim them early.
  parallel_for(ms.size(), jobs, [&](std::size_t i) {
    const std::size_t slot = ms.size() - 1 - i;
    out[slot] = check_conjecture_for_m(ms[slot], options);
  });
  return out;
}

}  // namespace cyclogap
