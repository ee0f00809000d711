#include "cyclogap/numtheory.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>
#include <string>

#include "cyclogap/checked.hpp"
#include "cyclogap/error.hpp"

namespace cyclogap {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kUnitInput: return "unit-input";
    case ErrorKind::kEvenInput: return "even-input";
    case ErrorKind::kNotSquareFree: return "not-square-free";
    case ErrorKind::kNotDivisor: return "not-divisor";
    case ErrorKind::kInvalidArgument: return "invalid-argument";
    case ErrorKind::kSearchCeiling: return "search-ceiling";
    case ErrorKind::kOverflow: return "overflow";
    case ErrorKind::kDegreeCeiling: return "degree-ceiling";
    case ErrorKind::kZeroPolynomial: return "zero-polynomial";
    case ErrorKind::kInfeasibleEnumeration: return "infeasible-enumeration";
    case ErrorKind::kMismatchedModulus: return "mismatched-modulus";
    case ErrorKind::kIo: return "io";
  }
  return "unknown";
}

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 pow_mod(u64 base, u64 exp, u64 m) {
  u64 result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

// The first twelve primes are a witness set that is exact below 3.3e24.
constexpr std::array<u64, 12> kWitnesses = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (u64 w : kWitnesses) {
    if (n % w == 0) return n == w;
  }
  const int s = std::countr_zero(n - 1);
  const u64 d = (n - 1) >> s;
  for (u64 a : kWitnesses) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::int64_t> primes_up_to(std::int64_t limit) {
  std::vector<std::int64_t> out;
  if (limit < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  for (std::int64_t i = 2; i <= limit; ++i) {
    if (composite[static_cast<std::size_t>(i)]) continue;
    out.push_back(i);
    for (std::int64_t j = i * i; j <= limit; j += i) composite[static_cast<std::size_t>(j)] = true;
  }
  return out;
}

PrimeFactorization PrimeFactorization::from_primes(std::vector<std::int64_t> primes) {
  if (primes.empty()) {
    throw Error(ErrorKind::kUnitInput, "factorization needs at least one prime");
  }
  if (primes.size() > 31) {
    throw Error(ErrorKind::kInvalidArgument, "too many prime factors");
  }
  std::int64_t n = 1;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const std::int64_t p = primes[i];
    if (p == 2) throw Error(ErrorKind::kEvenInput, "factorization contains 2");
    if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) {
      throw Error(ErrorKind::kInvalidArgument, std::to_string(p) + " is not prime");
    }
    if (i > 0 && primes[i - 1] == p) {
      throw Error(ErrorKind::kNotSquareFree, "repeated prime " + std::to_string(p));
    }
    if (i > 0 && primes[i - 1] > p) {
      throw Error(ErrorKind::kInvalidArgument, "primes must be strictly increasing");
    }
    n = checked_mul(n, p);
  }
  return PrimeFactorization(std::move(primes), n);
}

PrimeFactorization PrimeFactorization::prefix(int r) const {
  if (r < 1 || r > k()) {
    throw Error(ErrorKind::kInvalidArgument, "prefix length out of range");
  }
  std::vector<std::int64_t> head(primes_.begin(), primes_.begin() + r);
  const std::int64_t value = prefix_product(r);
  return PrimeFactorization(std::move(head), value);
}

std::int64_t PrimeFactorization::prefix_product(int r) const {
  if (r < 0 || r > k()) {
    throw Error(ErrorKind::kInvalidArgument, "prefix length out of range");
  }
  std::int64_t value = 1;
  for (int i = 0; i < r; ++i) value *= primes_[static_cast<std::size_t>(i)];
  return value;
}

std::int64_t PrimeFactorization::divisor_value(std::uint32_t mask) const {
  std::int64_t value = 1;
  for (int i = 0; i < k(); ++i) {
    if (mask & (1u << i)) value *= primes_[static_cast<std::size_t>(i)];
  }
  return value;
}

std::optional<std::uint32_t> PrimeFactorization::divisor_mask(std::int64_t d) const {
  if (d <= 0 || n_ % d != 0) return std::nullopt;
  std::uint32_t mask = 0;
  for (int i = 0; i < k(); ++i) {
    if (d % primes_[static_cast<std::size_t>(i)] == 0) mask |= 1u << i;
  }
  return mask;
}

PrimeFactorization PrimeFactorization::with_prime(std::int64_t p) const {
  std::vector<std::int64_t> extended = primes_;
  extended.insert(std::upper_bound(extended.begin(), extended.end(), p), p);
  return from_primes(std::move(extended));
}

PrimeFactorization factorize_odd_squarefree(std::int64_t n) {
  if (n < 3) throw Error(ErrorKind::kUnitInput, "n must be at least 3, got " + std::to_string(n));
  if (n % 2 == 0) throw Error(ErrorKind::kEvenInput, std::to_string(n) + " is even");
  std::vector<std::int64_t> primes;
  std::int64_t rest = n;
  for (std::int64_t p = 3; p <= rest / p; p += 2) {
    if (rest % p != 0) continue;
    rest /= p;
    if (rest % p == 0) {
      throw Error(ErrorKind::kNotSquareFree,
                  std::to_string(n) + " is divisible by " + std::to_string(p) + "^2");
    }
    primes.push_back(p);
  }
  if (rest > 1) primes.push_back(rest);
  return PrimeFactorization::from_primes(std::move(primes));
}

bool DivisorSet::contains(std::int64_t d) const {
  return std::ranges::binary_search(elements, d, {}, &Divisor::value);
}

std::vector<std::int64_t> DivisorSet::values() const {
  std::vector<std::int64_t> out;
  out.reserve(elements.size());
  for (const auto& d : elements) out.push_back(d.value);
  return out;
}

namespace {

Divisor make_divisor(const PrimeFactorization& f, std::uint32_t mask) {
  Divisor d;
  d.mask = mask;
  d.value = f.divisor_value(mask);
  d.omega = std::popcount(mask);
  d.mobius_complement = parity(f.k() - d.omega);
  return d;
}

}  // namespace

DivisorSet divisors(const PrimeFactorization& f) {
  DivisorSet set;
  set.n = f.n();
  const std::uint32_t count = 1u << f.k();
  set.elements.reserve(count);
  for (std::uint32_t mask = 0; mask < count; ++mask) set.elements.push_back(make_divisor(f, mask));
  std::sort(set.elements.begin(), set.elements.end(),
            [](const Divisor& a, const Divisor& b) { return a.value < b.value; });
  return set;
}

DivisorSet make_divisor_set(const PrimeFactorization& f, std::span<const std::int64_t> values) {
  DivisorSet set;
  set.n = f.n();
  for (std::int64_t v : values) {
    const auto mask = f.divisor_mask(v);
    if (!mask) {
      throw Error(ErrorKind::kNotDivisor,
                  std::to_string(v) + " does not divide " + std::to_string(f.n()));
    }
    set.elements.push_back(make_divisor(f, *mask));
  }
  std::sort(set.elements.begin(), set.elements.end(),
            [](const Divisor& a, const Divisor& b) { return a.value < b.value; });
  set.elements.erase(std::unique(set.elements.begin(), set.elements.end()), set.elements.end());
  return set;
}

int mobius_complement(const PrimeFactorization& f, std::int64_t d) {
  const auto mask = f.divisor_mask(d);
  if (!mask) {
    throw Error(ErrorKind::kNotDivisor,
                std::to_string(d) + " does not divide " + std::to_string(f.n()));
  }
  return parity(f.k() - std::popcount(*mask));
}

std::int64_t euler_phi(std::span<const std::int64_t> primes) {
  std::int64_t value = 1;
  for (std::int64_t p : primes) value = checked_mul(value, p - 1);
  return value;
}

std::int64_t euler_phi(const PrimeFactorization& f) { return euler_phi(f.primes()); }

std::int64_t psi_degree(std::span<const std::int64_t> primes) {
  std::int64_t n = 1;
  for (std::int64_t p : primes) n = checked_mul(n, p);
  return n - euler_phi(primes);
}

std::int64_t psi_degree(const PrimeFactorization& f) { return f.n() - euler_phi(f); }

std::int64_t next_prime_in_class(std::int64_t m, std::int64_t r, std::int64_t ceiling) {
  if (m < 2 || r < 1 || r >= m || std::gcd(m, r) != 1) {
    throw Error(ErrorKind::kInvalidArgument,
                "residue " + std::to_string(r) + " is not a unit mod " + std::to_string(m));
  }
  for (std::int64_t p = checked_add(m, r); p <= ceiling; p = checked_add(p, m)) {
    if (is_prime(static_cast<std::uint64_t>(p))) return p;
  }
  throw Error(ErrorKind::kSearchCeiling, "no prime = " + std::to_string(r) + " mod " +
                                             std::to_string(m) + " below " +
                                             std::to_string(ceiling));
}

}  // namespace cyclogap
