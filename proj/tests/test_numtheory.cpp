#include <doctest.h>

#include <random>

#include "cyclogap/error.hpp"
#include "cyclogap/numtheory.hpp"
#include "oracles.hpp"

using namespace cyclogap;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::kIo;
}

std::vector<std::int64_t> as_vector(std::span<const std::int64_t> s) { return {s.begin(), s.end()}; }

}  // namespace

TEST_CASE("is_prime matches trial division below 10^5") {
  for (std::int64_t n = 0; n < 100000; ++n) {
    REQUIRE(is_prime(static_cast<std::uint64_t>(n)) == oracle::is_prime(n));
  }
}

TEST_CASE("is_prime on large inputs") {
  CHECK(is_prime(18446744073709551557ull));  // largest 64-bit prime
  CHECK_FALSE(is_prime(18446744073709551615ull));
  CHECK_FALSE(is_prime(3215031751ull));  // strong pseudoprime to bases 2, 3, 5, 7
  CHECK_FALSE(is_prime(3825123056546413051ull));
  CHECK(is_prime((1ull << 61) - 1));
  CHECK_FALSE(is_prime(1000000007ull * 998244353ull));
}

TEST_CASE("primes_up_to") {
  CHECK(primes_up_to(1).empty());
  CHECK(primes_up_to(2) == std::vector<std::int64_t>{2});
  CHECK(primes_up_to(30) == std::vector<std::int64_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
  CHECK(primes_up_to(15013).size() == 1755);  // 15013 itself is prime
  CHECK(primes_up_to(15012).size() == 1754);
}

TEST_CASE("parity") {
  CHECK(parity(0) == 1);
  CHECK(parity(3) == -1);
  CHECK(parity(-2) == 1);
}

TEST_CASE("factorize_odd_squarefree") {
  CHECK(as_vector(factorize_odd_squarefree(15).primes()) == std::vector<std::int64_t>{3, 5});
  CHECK(as_vector(factorize_odd_squarefree(105).primes()) == std::vector<std::int64_t>{3, 5, 7});
  CHECK(factorize_odd_squarefree(7).k() == 1);
  CHECK(kind_of([] { factorize_odd_squarefree(12); }) == ErrorKind::kEvenInput);
  CHECK(kind_of([] { factorize_odd_squarefree(45); }) == ErrorKind::kNotSquareFree);
  CHECK(kind_of([] { factorize_odd_squarefree(1); }) == ErrorKind::kUnitInput);
  CHECK(kind_of([] { factorize_odd_squarefree(-15); }) == ErrorKind::kUnitInput);
}

TEST_CASE("factorization agrees with trial division for odd n < 5000") {
  for (std::int64_t n = 3; n < 5000; n += 2) {
    if (!oracle::square_free(n)) {
      CHECK(kind_of([n] { factorize_odd_squarefree(n); }) == ErrorKind::kNotSquareFree);
      continue;
    }
    const auto f = factorize_odd_squarefree(n);
    const auto expected = oracle::prime_factors(n);
    REQUIRE(as_vector(f.primes()) == std::vector<std::int64_t>(expected.begin(), expected.end()));
    REQUIRE(f.n() == n);
  }
}

TEST_CASE("from_primes validation") {
  CHECK(kind_of([] { PrimeFactorization::from_primes({5, 3}); }) == ErrorKind::kInvalidArgument);
  CHECK(kind_of([] { PrimeFactorization::from_primes({3, 3}); }) == ErrorKind::kNotSquareFree);
  CHECK(kind_of([] { PrimeFactorization::from_primes({3, 9}); }) == ErrorKind::kInvalidArgument);
  CHECK(kind_of([] { PrimeFactorization::from_primes({2, 3}); }) == ErrorKind::kEvenInput);
  CHECK(kind_of([] { PrimeFactorization::from_primes({}); }) == ErrorKind::kUnitInput);
  CHECK(kind_of([] {
          PrimeFactorization::from_primes({1000003, 1000033, 1000037, 1000039});
        }) == ErrorKind::kOverflow);
}

TEST_CASE("prefix products and with_prime") {
  const auto f = PrimeFactorization::from_primes({3, 5, 7, 71});
  CHECK(f.prefix_product(0) == 1);
  CHECK(f.prefix_product(2) == 15);
  CHECK(f.prefix(3).n() == 105);
  CHECK(f.prime(4) == 71);
  CHECK(factorize_odd_squarefree(15).with_prime(7) == factorize_odd_squarefree(105));
  CHECK(factorize_odd_squarefree(35).with_prime(3) == factorize_odd_squarefree(105));
  CHECK_THROWS_AS(factorize_odd_squarefree(15).with_prime(5), Error);
}

TEST_CASE("divisors") {
  CHECK(divisors(factorize_odd_squarefree(15)).values() == std::vector<std::int64_t>{1, 3, 5, 15});
  const auto d105 = divisors(factorize_odd_squarefree(105));
  CHECK(d105.size() == 8);
  CHECK(d105.elements.front().value == 1);
  CHECK(d105.elements.back().value == 105);

  const auto f = PrimeFactorization::from_primes({7, 11, 13, 17});
  std::vector<std::int64_t> small;
  for (const Divisor& d : divisors(f).elements) {
    if (d.omega < 3) small.push_back(d.value);
  }
  CHECK(small == std::vector<std::int64_t>{1, 7, 11, 13, 17, 77, 91, 119, 143, 187, 221});
}

TEST_CASE("divisor lattice invariants for n <= 10^4") {
  for (std::int64_t n = 3; n <= 10000; n += 2) {
    if (!oracle::square_free(n)) continue;
    const auto f = factorize_odd_squarefree(n);
    const auto ds = divisors(f);
    REQUIRE(ds.size() == (std::size_t{1} << f.k()));
    std::int64_t mobius_sum = 0;
    std::vector<int> by_omega(static_cast<std::size_t>(f.k()) + 1, 0);
    for (const Divisor& d : ds.elements) {
      REQUIRE(n % d.value == 0);
      REQUIRE(d.mobius_complement == parity(f.k() - d.omega));
      REQUIRE(d.mobius_complement == oracle::mu(n / d.value));
      mobius_sum += d.mobius_complement * d.value;
      ++by_omega[static_cast<std::size_t>(d.omega)];
    }
    REQUIRE(mobius_sum == euler_phi(f));
    for (int j = 0; j <= f.k(); ++j) {
      std::int64_t binom = 1;
      for (int i = 0; i < j; ++i) binom = binom * (f.k() - i) / (i + 1);
      REQUIRE(by_omega[static_cast<std::size_t>(j)] == binom);
    }
  }
}

TEST_CASE("mobius_complement") {
  const auto f105 = factorize_odd_squarefree(105);
  CHECK(mobius_complement(f105, 105) == 1);
  CHECK(mobius_complement(f105, 15) == -1);
  CHECK(mobius_complement(factorize_odd_squarefree(1155), 1) == 1);
  CHECK(kind_of([&] { mobius_complement(f105, 9); }) == ErrorKind::kNotDivisor);
}

TEST_CASE("make_divisor_set") {
  const auto f = factorize_odd_squarefree(105);
  const std::vector<std::int64_t> values{35, 1, 3, 35};
  const auto s = make_divisor_set(f, values);
  CHECK(s.values() == std::vector<std::int64_t>{1, 3, 35});
  CHECK(s.contains(35));
  CHECK_FALSE(s.contains(5));
  const std::vector<std::int64_t> bad{2};
  CHECK(kind_of([&] { make_divisor_set(f, bad); }) == ErrorKind::kNotDivisor);
}

TEST_CASE("euler_phi and psi_degree") {
  CHECK(euler_phi(factorize_odd_squarefree(15)) == 8);
  CHECK(euler_phi(factorize_odd_squarefree(3)) == 2);
  CHECK(euler_phi(factorize_odd_squarefree(105)) == 48);
  CHECK(euler_phi(std::span<const std::int64_t>{}) == 1);
  CHECK(psi_degree(factorize_odd_squarefree(105)) == 57);
  CHECK(psi_degree(factorize_odd_squarefree(3)) == 1);
  CHECK(psi_degree(factorize_odd_squarefree(15)) == 7);
  for (std::int64_t n = 3; n < 600; n += 2) {
    if (!oracle::square_free(n)) continue;
    REQUIRE(euler_phi(factorize_odd_squarefree(n)) == oracle::phi(n));
  }
}

TEST_CASE("next_prime_in_class") {
  CHECK(next_prime_in_class(15, 1) == 31);
  CHECK(next_prime_in_class(3, 2) == 5);
  CHECK(next_prime_in_class(105, 2) == 107);
  CHECK(kind_of([] { next_prime_in_class(15, 3); }) == ErrorKind::kInvalidArgument);
  CHECK(kind_of([] { next_prime_in_class(15, 0); }) == ErrorKind::kInvalidArgument);
  CHECK(kind_of([] { next_prime_in_class(15, 15); }) == ErrorKind::kInvalidArgument);
  CHECK(kind_of([] { next_prime_in_class(15, 1, 20); }) == ErrorKind::kSearchCeiling);
}

TEST_CASE("next_prime_in_class is the smallest prime in its class above m") {
  std::mt19937_64 rng(20261017);
  for (int trial = 0; trial < 300; ++trial) {
    const std::int64_t m = std::uniform_int_distribution<std::int64_t>(3, 2000)(rng);
    const std::int64_t r = std::uniform_int_distribution<std::int64_t>(1, m - 1)(rng);
    if (std::gcd(m, r) != 1) continue;
    const std::int64_t p = next_prime_in_class(m, r);
    REQUIRE(p > m);
    REQUIRE(p % m == r);
    REQUIRE(oracle::is_prime(p));
    for (std::int64_t q = m + 1; q < p; ++q) {
      if (q % m == r) REQUIRE_FALSE(oracle::is_prime(q));
    }
  }
}
