#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cyclogap/numtheory.hpp"

namespace cyclogap {

/// Dense polynomial with exact 64-bit coefficients; index = exponent.
///
/// Always normalized: the stored coefficient vector has no trailing zeros, so
/// the zero polynomial holds an empty vector. All arithmetic is overflow
/// checked and throws Error(kOverflow) rather than wrapping.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<std::int64_t> coeffs);

  static IntPolynomial monomial(std::int64_t coeff, std::int64_t exponent);
  /// x^e - 1.
  static IntPolynomial binomial(std::int64_t exponent);

  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  std::int64_t degree() const { return static_cast<std::int64_t>(coeffs_.size()) - 1; }
  std::int64_t coeff(std::int64_t exponent) const;
  std::span<const std::int64_t> coeffs() const { return coeffs_; }

  /// Trailing degree: the smallest exponent with a nonzero coefficient.
  std::int64_t trailing_degree() const;
  std::int64_t value_at_one() const;
  /// Largest |coefficient|.
  std::int64_t height() const;

  /// f(x^e).
  IntPolynomial substitute_power(std::int64_t e) const;
  /// f mod x^e, i.e. only the terms of degree < e.
  IntPolynomial truncate(std::int64_t e) const;
  IntPolynomial shifted(std::int64_t by) const;

  IntPolynomial operator+(const IntPolynomial& other) const;
  IntPolynomial operator-(const IntPolynomial& other) const;
  IntPolynomial operator*(const IntPolynomial& other) const;

  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

 private:
  void normalize();

  std::vector<std::int64_t> coeffs_;
};

/// Exact quotient num / den. Throws kInvalidArgument if den does not divide
/// num over the integers, kZeroPolynomial if den is zero.
IntPolynomial exact_divide(const IntPolynomial& num, const IntPolynomial& den);

/// Exponents with nonzero coefficient, ascending.
std::vector<std::int64_t> support(const IntPolynomial& p);

struct MaxGapReport {
  std::int64_t gap = 0;
  std::int64_t witness_low = 0;
  std::int64_t witness_high = 0;

  friend bool operator==(const MaxGapReport&, const MaxGapReport&) = default;
};

/// Largest difference of consecutive support exponents; 0 for a monomial.
/// The witness is the lowest pair attaining the maximum. Throws
/// kZeroPolynomial for the zero polynomial.
MaxGapReport max_gap(const IntPolynomial& p);
MaxGapReport max_gap_of_support(std::span<const std::int64_t> exponents);

enum class CyclotomicRoute {
  /// Product of (1 - x^d)^mu(n/d) over d | n, as a truncated power series.
  kPowerSeries,
  /// Phi_{mp}(x) = Phi_m(x^p) / Phi_m(x) by long division, and
  /// Psi_n = (x^n - 1) / Phi_n.
  kIteratedDivision,
};

inline constexpr std::int64_t kDefaultDegreeCeiling = 100'000'000;

struct CyclotomicOptions {
  CyclotomicRoute route = CyclotomicRoute::kPowerSeries;
  std::int64_t degree_ceiling = kDefaultDegreeCeiling;
};

IntPolynomial cyclotomic(const PrimeFactorization& f, const CyclotomicOptions& options = {});
IntPolynomial inverse_cyclotomic(const PrimeFactorization& f, const CyclotomicOptions& options = {});

/// The low half, coefficients 0..phi(n)/2, of Phi_n. Phi_n is palindromic
/// for n > 1, so this determines the whole polynomial.
std::vector<std::int64_t> cyclotomic_low_half(const PrimeFactorization& f,
                                              std::int64_t degree_ceiling = kDefaultDegreeCeiling);

/// max_gap(cyclotomic(f)) computed from the low half only.
MaxGapReport cyclotomic_max_gap(const PrimeFactorization& f,
                                std::int64_t degree_ceiling = kDefaultDegreeCeiling);

/// Phi_{mp} cut into rows f_{m,p,i} (the coefficients at ip .. ip+p-1) and
/// each row into blocks f_{m,p,i,j} (the coefficients at ip+jm .. ip+jm+m-1,
/// clipped to the row), for 0 <= i < phi(m) and 0 <= j <= q.
struct BlockDecomposition {
  std::int64_t m = 0;
  std::int64_t p = 0;
  std::int64_t q = 0;  // p / m
  std::int64_t r = 0;  // p % m
  /// blocks[i][j], each of degree < m.
  std::vector<std::vector<IntPolynomial>> blocks;

  std::int64_t rows() const { return static_cast<std::int64_t>(blocks.size()); }
  const IntPolynomial& block(std::int64_t i, std::int64_t j) const {
    return blocks.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(j));
  }
  /// f_{m,p,i} = sum_j f_{m,p,i,j} x^{jm}.
  IntPolynomial row(std::int64_t i) const;
  /// sum_i f_{m,p,i} x^{ip}; equals Phi_{mp}.
  IntPolynomial reassemble() const;
};

/// Requires m odd square-free, p prime, p > m.
BlockDecomposition block_decompose(std::int64_t m, std::int64_t p,
                                   const CyclotomicOptions& options = {});
/// Same, reusing an already computed Phi_{mp}.
BlockDecomposition block_decompose(std::int64_t m, std::int64_t p, const IntPolynomial& phi_mp);

struct BlockProperties {
  bool c1 = false;  // f_{i,0} = ... = f_{i,q-1}
  bool c2 = false;  // f_{i,q} = f_{i,0} mod x^r
  std::optional<bool> c3;  // f_{i,0} = f'_{i,0}; only when a second decomposition is given
};

/// Checks the repetition (C1), truncation (C2) and, given `other` with the
/// same m and p' = p (mod m), residue invariance (C3) of the blocks. Throws
/// kMismatchedModulus if `other` has a different m, kInvalidArgument if its
/// prime lies in another residue class.
BlockProperties verify_block_properties(const BlockDecomposition& b,
                                        const BlockDecomposition* other = nullptr);

}  // namespace cyclogap
