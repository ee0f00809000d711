#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace cyclogap {

/// Deterministic Miller-Rabin; exact for every 64-bit input.
bool is_prime(std::uint64_t n);

/// All primes p <= limit, ascending.
std::vector<std::int64_t> primes_up_to(std::int64_t limit);

/// (-1)^i.
constexpr int parity(std::int64_t i) { return (i % 2 == 0) ? 1 : -1; }

/// An odd square-free n = p_1 * ... * p_k with p_1 < ... < p_k.
///
/// Construction validates every invariant, so a PrimeFactorization in hand is
/// always well formed. Divisors of n are addressed by bitmask over the primes:
/// bit i set means p_{i+1} divides the divisor.
class PrimeFactorization {
 public:
  /// Validates that `primes` is a strictly increasing list of odd primes
  /// whose product fits in 63 bits.
  static PrimeFactorization from_primes(std::vector<std::int64_t> primes);

  std::int64_t n() const { return n_; }
  int k() const { return static_cast<int>(primes_.size()); }
  std::span<const std::int64_t> primes() const { return primes_; }
  /// 1-based, matching the usual p_1 < ... < p_k indexing.
  std::int64_t prime(int i) const { return primes_.at(static_cast<std::size_t>(i - 1)); }

  /// n_r = p_1 * ... * p_r as its own factorization, 1 <= r <= k.
  PrimeFactorization prefix(int r) const;
  /// n_r as an integer; prefix_product(0) == 1.
  std::int64_t prefix_product(int r) const;

  /// Product of the primes selected by `mask`.
  std::int64_t divisor_value(std::uint32_t mask) const;

  /// Returns the mask of `d` if d | n, otherwise nullopt.
  std::optional<std::uint32_t> divisor_mask(std::int64_t d) const;

  /// A copy with `p` inserted at its sorted position.
  PrimeFactorization with_prime(std::int64_t p) const;

  friend bool operator==(const PrimeFactorization&, const PrimeFactorization&) = default;

 private:
  PrimeFactorization(std::vector<std::int64_t> primes, std::int64_t n)
      : primes_(std::move(primes)), n_(n) {}

  std::vector<std::int64_t> primes_;
  std::int64_t n_ = 1;
};

/// Rejects n < 3 (unit), even n, and n with a repeated prime factor, each
/// with its own ErrorKind.
PrimeFactorization factorize_odd_squarefree(std::int64_t n);

struct Divisor {
  std::int64_t value = 1;
  std::uint32_t mask = 0;
  int omega = 0;
  int mobius_complement = 1;  // mu(n / value)

  friend bool operator==(const Divisor&, const Divisor&) = default;
};

/// A set of divisors of a fixed n, kept sorted by value.
struct DivisorSet {
  std::int64_t n = 1;
  std::vector<Divisor> elements;

  std::size_t size() const { return elements.size(); }
  bool empty() const { return elements.empty(); }
  bool contains(std::int64_t d) const;
  std::vector<std::int64_t> values() const;
};

/// All 2^k divisors of n, ascending.
DivisorSet divisors(const PrimeFactorization& f);

/// Builds a DivisorSet of n from explicit values; every value must divide n.
DivisorSet make_divisor_set(const PrimeFactorization& f, std::span<const std::int64_t> values);

/// mu(n/d) = (-1)^(k - omega(d)). Throws kNotDivisor if d does not divide n.
int mobius_complement(const PrimeFactorization& f, std::int64_t d);

/// prod (p - 1); the empty product is 1.
std::int64_t euler_phi(std::span<const std::int64_t> primes);
std::int64_t euler_phi(const PrimeFactorization& f);

/// n - phi(n), the degree of the inverse cyclotomic polynomial.
std::int64_t psi_degree(std::span<const std::int64_t> primes);
std::int64_t psi_degree(const PrimeFactorization& f);

inline constexpr std::int64_t kDefaultPrimeSearchCeiling = std::int64_t{1} << 50;

/// Smallest prime p > m with p = r (mod m). Requires 1 <= r < m and
/// gcd(m, r) = 1; throws kSearchCeiling if no such prime is found below
/// `ceiling`.
std::int64_t next_prime_in_class(std::int64_t m, std::int64_t r,
                                 std::int64_t ceiling = kDefaultPrimeSearchCeiling);

}  // namespace cyclogap
