#include <doctest.h>

#include <limits>
#include <random>

#include "cyclogap/error.hpp"
#include "cyclogap/polynomial.hpp"
#include "oracles.hpp"

using namespace cyclogap;

namespace {

IntPolynomial from_oracle(const oracle::Poly& p) {
  return IntPolynomial(std::vector<std::int64_t>(p.begin(), p.end()));
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::kIo;
}

std::vector<std::int64_t> odd_square_free_up_to(std::int64_t limit) {
  std::vector<std::int64_t> out;
  for (std::int64_t n = 3; n <= limit; n += 2) {
    if (oracle::square_free(n)) out.push_back(n);
  }
  return out;
}

const CyclotomicOptions kDivision{CyclotomicRoute::kIteratedDivision, kDefaultDegreeCeiling};

}  // namespace

TEST_CASE("IntPolynomial normalizes and evaluates") {
  const IntPolynomial p({1, 0, -2, 0, 0});
  CHECK(p.degree() == 2);
  CHECK(p.coeffs().size() == 3);
  CHECK(p.coeff(7) == 0);
  CHECK(p.coeff(-1) == 0);
  CHECK(p.value_at_one() == -1);
  CHECK(p.height() == 2);
  CHECK(IntPolynomial({0, 0}).is_zero());
  CHECK(IntPolynomial().degree() == -1);
  CHECK(IntPolynomial::binomial(3) == IntPolynomial({-1, 0, 0, 1}));
  CHECK(IntPolynomial::monomial(4, 2) == IntPolynomial({0, 0, 4}));
  CHECK(IntPolynomial::monomial(0, 5).is_zero());
  CHECK(IntPolynomial({0, 0, 3, 1}).trailing_degree() == 2);
}

TEST_CASE("IntPolynomial arithmetic") {
  const IntPolynomial a({1, 1});
  const IntPolynomial b({-1, 1});
  CHECK(a * b == IntPolynomial({-1, 0, 1}));
  CHECK(a + b == IntPolynomial({0, 2}));
  CHECK((a - a).is_zero());
  CHECK(a.substitute_power(3) == IntPolynomial({1, 0, 0, 1}));
  CHECK(IntPolynomial({1, 2, 3, 4}).truncate(2) == IntPolynomial({1, 2}));
  CHECK(IntPolynomial({1, 2}).shifted(2) == IntPolynomial({0, 0, 1, 2}));
  CHECK(exact_divide(IntPolynomial::binomial(6), IntPolynomial::binomial(2)) ==
        IntPolynomial({1, 0, 1, 0, 1}));
  CHECK(kind_of([] { exact_divide(IntPolynomial::binomial(5), IntPolynomial::binomial(2)); }) ==
        ErrorKind::kInvalidArgument);
  CHECK(kind_of([] { exact_divide(IntPolynomial::binomial(5), IntPolynomial()); }) ==
        ErrorKind::kZeroPolynomial);
}

TEST_CASE("arithmetic overflow is an error, not wraparound") {
  const std::int64_t big = std::numeric_limits<std::int64_t>::max();
  const IntPolynomial p({big});
  CHECK(kind_of([&] { return p + p; }) == ErrorKind::kOverflow);
  CHECK(kind_of([&] { return p * IntPolynomial({2}); }) == ErrorKind::kOverflow);
  CHECK(kind_of([&] { return IntPolynomial({-big - 1}) - IntPolynomial({1}); }) == ErrorKind::kOverflow);
}

TEST_CASE("support and max_gap") {
  const IntPolynomial phi15({1, -1, 0, 1, -1, 1, 0, -1, 1});
  CHECK(support(phi15) == std::vector<std::int64_t>{0, 1, 3, 4, 5, 7, 8});
  CHECK(support(IntPolynomial()).empty());
  CHECK(support(IntPolynomial::monomial(1, 5)) == std::vector<std::int64_t>{5});
  CHECK(max_gap(phi15) == MaxGapReport{2, 1, 3});
  CHECK(max_gap(IntPolynomial::monomial(3, 5)) == MaxGapReport{0, 5, 5});
  CHECK(kind_of([] { max_gap(IntPolynomial()); }) == ErrorKind::kZeroPolynomial);
  // Lowest witness wins a tie.
  CHECK(max_gap(IntPolynomial({1, 0, 0, 1, 0, 0, 1})) == MaxGapReport{3, 0, 3});
}

TEST_CASE("max_gap agrees with a two-pass scan on random polynomials") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t len = std::uniform_int_distribution<std::size_t>(1, 60)(rng);
    const double density = std::uniform_real_distribution<double>(0.05, 0.9)(rng);
    oracle::Poly raw(len, 0);
    for (auto& c : raw) {
      if (std::bernoulli_distribution(density)(rng)) c = std::uniform_int_distribution<long long>(-3, 3)(rng);
    }
    oracle::trim(raw);
    if (raw.empty()) continue;
    const MaxGapReport r = max_gap(from_oracle(raw));
    REQUIRE(r.gap == oracle::max_gap(raw));
    REQUIRE(r.witness_high - r.witness_low == r.gap);
    REQUIRE(raw[static_cast<std::size_t>(r.witness_low)] != 0);
    REQUIRE(raw[static_cast<std::size_t>(r.witness_high)] != 0);
    for (std::int64_t e = r.witness_low + 1; e < r.witness_high; ++e) REQUIRE(raw[static_cast<std::size_t>(e)] == 0);
    for (std::int64_t e = 0; e + r.gap < r.witness_high; ++e) {
      // No earlier pair of consecutive support points reaches the gap.
      if (raw[static_cast<std::size_t>(e)] == 0 || e == r.witness_low) continue;
      std::int64_t next = e + 1;
      while (next < static_cast<std::int64_t>(raw.size()) && raw[static_cast<std::size_t>(next)] == 0) ++next;
      if (next < r.witness_high) REQUIRE(next - e < r.gap);
    }
  }
}

TEST_CASE("small cyclotomic polynomials") {
  CHECK(cyclotomic(factorize_odd_squarefree(15)) == IntPolynomial({1, -1, 0, 1, -1, 1, 0, -1, 1}));
  CHECK(inverse_cyclotomic(factorize_odd_squarefree(15)) == IntPolynomial({-1, -1, -1, 0, 0, 1, 1, 1}));
  CHECK(cyclotomic(factorize_odd_squarefree(3)) == IntPolynomial({1, 1, 1}));
  CHECK(inverse_cyclotomic(factorize_odd_squarefree(3)) == IntPolynomial({-1, 1}));

  const auto f105 = factorize_odd_squarefree(105);
  const IntPolynomial phi105 = cyclotomic(f105);
  CHECK(phi105.coeff(7) == -2);
  CHECK(phi105.coeff(7) == oracle::cyclotomic(105)[7]);
  CHECK(phi105.height() == 2);
  const IntPolynomial psi105 = inverse_cyclotomic(f105);
  CHECK(psi105.degree() == 57);
  CHECK(max_gap(psi105).gap == 13);

  CHECK(max_gap(inverse_cyclotomic(factorize_odd_squarefree(1001))).gap == 7);
  CHECK(max_gap(cyclotomic(factorize_odd_squarefree(1155))).gap == 10);
}

TEST_CASE("both construction routes agree with the recursive oracle") {
  for (std::int64_t n : odd_square_free_up_to(700)) {
    const auto f = factorize_odd_squarefree(n);
    const IntPolynomial expected = from_oracle(oracle::cyclotomic(n));
    REQUIRE(cyclotomic(f) == expected);
    REQUIRE(cyclotomic(f, kDivision) == expected);
    const IntPolynomial expected_psi = from_oracle(oracle::inverse_cyclotomic(n));
    REQUIRE(inverse_cyclotomic(f) == expected_psi);
    REQUIRE(inverse_cyclotomic(f, kDivision) == expected_psi);
  }
}

TEST_CASE("structural identities for every odd square-free n <= 2000") {
  for (std::int64_t n : odd_square_free_up_to(2000)) {
    const auto f = factorize_odd_squarefree(n);
    const IntPolynomial phi = cyclotomic(f);
    const IntPolynomial psi = inverse_cyclotomic(f);
    REQUIRE(phi * psi == IntPolynomial::binomial(n));
    REQUIRE(phi.degree() == euler_phi(f));
    REQUIRE(psi.degree() == psi_degree(f));
    REQUIRE(phi.coeff(0) == 1);
    for (std::int64_t i = 0; i <= phi.degree(); ++i) REQUIRE(phi.coeff(i) == phi.coeff(phi.degree() - i));
    // Psi_n carries the factor x^{n/p_1} - 1.
    CHECK_NOTHROW(exact_divide(psi, IntPolynomial::binomial(n / f.prime(1))));
    REQUIRE(cyclotomic_max_gap(f) == max_gap(phi));
    const auto half = cyclotomic_low_half(f);
    REQUIRE(static_cast<std::int64_t>(half.size()) == phi.degree() / 2 + 1);
    for (std::size_t i = 0; i < half.size(); ++i) REQUIRE(half[i] == phi.coeff(static_cast<std::int64_t>(i)));
  }
}

TEST_CASE("Psi_{np}(x) = Phi_n(x) Psi_n(x^p)") {
  std::mt19937_64 rng(11);
  const auto ns = odd_square_free_up_to(400);
  const auto ps = primes_up_to(60);
  int sampled = 0;
  while (sampled < 50) {
    const std::int64_t n = ns[std::uniform_int_distribution<std::size_t>(0, ns.size() - 1)(rng)];
    const std::int64_t p = ps[std::uniform_int_distribution<std::size_t>(1, ps.size() - 1)(rng)];
    if (n % p == 0) continue;
    const auto f = factorize_odd_squarefree(n);
    REQUIRE(inverse_cyclotomic(f.with_prime(p)) == cyclotomic(f) * inverse_cyclotomic(f).substitute_power(p));
    ++sampled;
  }
}

TEST_CASE("degree ceiling") {
  const auto f = factorize_odd_squarefree(105);
  CHECK(kind_of([&] { cyclotomic(f, {CyclotomicRoute::kPowerSeries, 40}); }) == ErrorKind::kDegreeCeiling);
  CHECK(kind_of([&] { cyclotomic(f, {CyclotomicRoute::kIteratedDivision, 40}); }) == ErrorKind::kDegreeCeiling);
  CHECK(kind_of([&] { inverse_cyclotomic(f, {CyclotomicRoute::kPowerSeries, 50}); }) == ErrorKind::kDegreeCeiling);
  CHECK(kind_of([&] { cyclotomic_max_gap(f, 40); }) == ErrorKind::kDegreeCeiling);
  CHECK_NOTHROW(cyclotomic(f, {CyclotomicRoute::kPowerSeries, 48}));
}

TEST_CASE("block decomposition m=15, p=31") {
  const BlockDecomposition b = block_decompose(15, 31);
  CHECK(b.q == 2);
  CHECK(b.r == 1);
  CHECK(b.rows() == 8);
  const IntPolynomial phi465 = from_oracle(oracle::cyclotomic(465));
  CHECK(b.reassemble() == phi465);
  std::int64_t total = 0;
  for (const auto& row : b.blocks) {
    CHECK(row.size() == 3);
    for (const IntPolynomial& blk : row) {
      CHECK(blk.degree() < 15);
      total += blk.value_at_one();
    }
  }
  CHECK(total == phi465.value_at_one());

  const BlockProperties own = verify_block_properties(b);
  CHECK(own.c1);
  CHECK(own.c2);
  CHECK_FALSE(own.c3.has_value());
  const BlockDecomposition b61 = block_decompose(15, 61);
  const BlockProperties both = verify_block_properties(b, &b61);
  CHECK(both.c3 == true);
}

TEST_CASE("block decomposition m=3, p=5") {
  const BlockDecomposition b = block_decompose(3, 5);
  CHECK(b.q == 1);
  CHECK(b.r == 2);
  CHECK(b.rows() == 2);
  CHECK(b.reassemble() == cyclotomic(factorize_odd_squarefree(15)));
  const BlockProperties props = verify_block_properties(b);
  CHECK(props.c1);
  CHECK(props.c2);
}

TEST_CASE("block decomposition preconditions") {
  CHECK(kind_of([] { block_decompose(15, 13); }) == ErrorKind::kInvalidArgument);
  CHECK(kind_of([] { block_decompose(15, 33); }) == ErrorKind::kInvalidArgument);
  CHECK(kind_of([] { block_decompose(9, 11); }) == ErrorKind::kNotSquareFree);
  CHECK(kind_of([] { block_decompose(15, 17, cyclotomic(factorize_odd_squarefree(15))); }) ==
        ErrorKind::kInvalidArgument);
  const BlockDecomposition a = block_decompose(15, 31);
  const BlockDecomposition other_m = block_decompose(21, 31);
  const BlockDecomposition other_r = block_decompose(15, 17);
  CHECK(kind_of([&] { verify_block_properties(a, &other_m); }) == ErrorKind::kMismatchedModulus);
  CHECK(kind_of([&] { verify_block_properties(a, &other_r); }) == ErrorKind::kInvalidArgument);
}
