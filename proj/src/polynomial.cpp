#include "cyclogap/polynomial.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "cyclogap/checked.hpp"
#include "cyclogap/error.hpp"

namespace cyclogap {

namespace {

std::size_t idx(std::int64_t i) { return static_cast<std::size_t>(i); }

[[noreturn]] void throw_series_overflow() {
  throw Error(ErrorKind::kOverflow, "coefficient overflow while building cyclotomic polynomial");
}

// In-place power series arithmetic on a[0..T]. The overflow flag is folded
// across the loop so the hot path stays branch free.
void multiply_one_minus(std::vector<std::int64_t>& a, std::int64_t d) {
  const auto top = static_cast<std::int64_t>(a.size()) - 1;
  bool overflow = false;
  for (std::int64_t i = top; i >= d; --i) {
    overflow |= __builtin_sub_overflow(a[idx(i)], a[idx(i - d)], &a[idx(i)]);
  }
  if (overflow) throw_series_overflow();
}

void divide_one_minus(std::vector<std::int64_t>& a, std::int64_t d) {
  const auto top = static_cast<std::int64_t>(a.size()) - 1;
  bool overflow = false;
  for (std::int64_t i = d; i <= top; ++i) {
    overflow |= __builtin_add_overflow(a[idx(i)], a[idx(i - d)], &a[idx(i)]);
  }
  if (overflow) throw_series_overflow();
}

// prod over the listed d of (1 - x^d)^(+1 for `up`, -1 for `down`) mod x^(T+1).
// Multiplying everything first keeps each intermediate a genuine product of
// cyclotomic polynomials, so coefficients stay small.
std::vector<std::int64_t> binomial_series(std::int64_t top, std::span<const std::int64_t> up,
                                          std::span<const std::int64_t> down) {
  std::vector<std::int64_t> a(idx(top) + 1, 0);
  a[0] = 1;
  for (std::int64_t d : up) {
    if (d <= top) multiply_one_minus(a, d);
  }
  for (std::int64_t d : down) {
    if (d <= top) divide_one_minus(a, d);
  }
  return a;
}

void check_ceiling(std::int64_t degree, std::int64_t ceiling) {
  if (degree > ceiling) {
    throw Error(ErrorKind::kDegreeCeiling, "degree " + std::to_string(degree) +
                                               " exceeds ceiling " + std::to_string(ceiling));
  }
}

IntPolynomial cyclotomic_by_division(const PrimeFactorization& f, std::int64_t ceiling) {
  IntPolynomial phi = IntPolynomial::binomial(1);
  for (std::int64_t p : f.primes()) {
    check_ceiling(checked_mul(phi.degree(), p), ceiling);
    phi = exact_divide(phi.substitute_power(p), phi);
  }
  return phi;
}

}  // namespace

IntPolynomial::IntPolynomial(std::vector<std::int64_t> coeffs) : coeffs_(std::move(coeffs)) {
  normalize();
}

IntPolynomial IntPolynomial::monomial(std::int64_t coeff, std::int64_t exponent) {
  if (exponent < 0) throw Error(ErrorKind::kInvalidArgument, "negative exponent");
  std::vector<std::int64_t> c(idx(exponent) + 1, 0);
  c.back() = coeff;
  return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::binomial(std::int64_t exponent) {
  if (exponent < 1) throw Error(ErrorKind::kInvalidArgument, "binomial exponent must be positive");
  std::vector<std::int64_t> c(idx(exponent) + 1, 0);
  c.front() = -1;
  c.back() = 1;
  return IntPolynomial(std::move(c));
}

void IntPolynomial::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

std::int64_t IntPolynomial::coeff(std::int64_t exponent) const {
  if (exponent < 0 || exponent > degree()) return 0;
  return coeffs_[idx(exponent)];
}

std::int64_t IntPolynomial::trailing_degree() const {
  if (is_zero()) throw Error(ErrorKind::kZeroPolynomial, "trailing degree of zero polynomial");
  const auto it = std::find_if(coeffs_.begin(), coeffs_.end(), [](std::int64_t c) { return c != 0; });
  return it - coeffs_.begin();
}

std::int64_t IntPolynomial::value_at_one() const {
  std::int64_t sum = 0;
  for (std::int64_t c : coeffs_) sum = checked_add(sum, c);
  return sum;
}

std::int64_t IntPolynomial::height() const {
  std::int64_t h = 0;
  for (std::int64_t c : coeffs_) h = std::max(h, c < 0 ? checked_sub(0, c) : c);
  return h;
}

IntPolynomial IntPolynomial::substitute_power(std::int64_t e) const {
  if (e < 1) throw Error(ErrorKind::kInvalidArgument, "substitution exponent must be positive");
  if (is_zero()) return {};
  std::vector<std::int64_t> c(idx(checked_mul(degree(), e)) + 1, 0);
  for (std::int64_t i = 0; i <= degree(); ++i) c[idx(i * e)] = coeffs_[idx(i)];
  return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::truncate(std::int64_t e) const {
  if (e >= static_cast<std::int64_t>(coeffs_.size())) return *this;
  if (e <= 0) return {};
  return IntPolynomial(std::vector<std::int64_t>(coeffs_.begin(), coeffs_.begin() + e));
}

IntPolynomial IntPolynomial::shifted(std::int64_t by) const {
  if (by < 0) throw Error(ErrorKind::kInvalidArgument, "negative shift");
  if (is_zero()) return {};
  std::vector<std::int64_t> c(idx(by), 0);
  c.insert(c.end(), coeffs_.begin(), coeffs_.end());
  return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::operator+(const IntPolynomial& other) const {
  std::vector<std::int64_t> c(std::max(coeffs_.size(), other.coeffs_.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const std::int64_t a = i < coeffs_.size() ? coeffs_[i] : 0;
    const std::int64_t b = i < other.coeffs_.size() ? other.coeffs_[i] : 0;
    c[i] = checked_add(a, b);
  }
  return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::operator-(const IntPolynomial& other) const {
  std::vector<std::int64_t> c(std::max(coeffs_.size(), other.coeffs_.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const std::int64_t a = i < coeffs_.size() ? coeffs_[i] : 0;
    const std::int64_t b = i < other.coeffs_.size() ? other.coeffs_[i] : 0;
    c[i] = checked_sub(a, b);
  }
  return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::operator*(const IntPolynomial& other) const {
  if (is_zero() || other.is_zero()) return {};
  std::vector<std::int64_t> c(coeffs_.size() + other.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j) {
      if (other.coeffs_[j] == 0) continue;
      c[i + j] = checked_add(c[i + j], checked_mul(coeffs_[i], other.coeffs_[j]));
    }
  }
  return IntPolynomial(std::move(c));
}

IntPolynomial exact_divide(const IntPolynomial& num, const IntPolynomial& den) {
  if (den.is_zero()) throw Error(ErrorKind::kZeroPolynomial, "division by zero polynomial");
  if (num.is_zero()) return {};
  const std::int64_t dd = den.degree();
  const std::int64_t nd = num.degree();
  if (nd < dd) throw Error(ErrorKind::kInvalidArgument, "inexact polynomial division");
  const auto dc = den.coeffs();
  const std::int64_t lead = dc.back();
  std::vector<std::int64_t> rem(num.coeffs().begin(), num.coeffs().end());
  std::vector<std::int64_t> quo(idx(nd - dd) + 1, 0);
  for (std::int64_t i = nd - dd; i >= 0; --i) {
    const std::int64_t top = rem[idx(i + dd)];
    if (top == 0) continue;
    if (top % lead != 0) throw Error(ErrorKind::kInvalidArgument, "inexact polynomial division");
    const std::int64_t qc = top / lead;
    quo[idx(i)] = qc;
    for (std::int64_t j = 0; j <= dd; ++j) {
      if (dc[idx(j)] != 0) rem[idx(i + j)] = checked_sub(rem[idx(i + j)], checked_mul(qc, dc[idx(j)]));
    }
  }
  if (std::any_of(rem.begin(), rem.end(), [](std::int64_t c) { return c != 0; })) {
    throw Error(ErrorKind::kInvalidArgument, "inexact polynomial division");
  }
  return IntPolynomial(std::move(quo));
}

std::vector<std::int64_t> support(const IntPolynomial& p) {
  std::vector<std::int64_t> out;
  const auto c = p.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] != 0) out.push_back(static_cast<std::int64_t>(i));
  }
  return out;
}

MaxGapReport max_gap_of_support(std::span<const std::int64_t> exponents) {
  if (exponents.empty()) throw Error(ErrorKind::kZeroPolynomial, "maximum gap of zero polynomial");
  MaxGapReport report{0, exponents.front(), exponents.front()};
  for (std::size_t i = 1; i < exponents.size(); ++i) {
    const std::int64_t gap = exponents[i] - exponents[i - 1];
    if (gap > report.gap) report = {gap, exponents[i - 1], exponents[i]};
  }
  return report;
}

MaxGapReport max_gap(const IntPolynomial& p) {
  if (p.is_zero()) throw Error(ErrorKind::kZeroPolynomial, "maximum gap of zero polynomial");
  const auto c = p.coeffs();
  std::int64_t prev = p.trailing_degree();
  MaxGapReport report{0, prev, prev};
  for (std::int64_t i = prev + 1; i <= p.degree(); ++i) {
    if (c[idx(i)] == 0) continue;
    if (i - prev > report.gap) report = {i - prev, prev, i};
    prev = i;
  }
  return report;
}

std::vector<std::int64_t> cyclotomic_low_half(const PrimeFactorization& f,
                                              std::int64_t degree_ceiling) {
  const std::int64_t phi = euler_phi(f);
  check_ceiling(phi, degree_ceiling);
  std::vector<std::int64_t> up;
  std::vector<std::int64_t> down;
  for (const Divisor& d : divisors(f).elements) {
    (d.mobius_complement > 0 ? up : down).push_back(d.value);
  }
  return binomial_series(phi / 2, up, down);
}

IntPolynomial cyclotomic(const PrimeFactorization& f, const CyclotomicOptions& options) {
  if (options.route == CyclotomicRoute::kIteratedDivision) {
    check_ceiling(euler_phi(f), options.degree_ceiling);
    return cyclotomic_by_division(f, options.degree_ceiling);
  }
  const std::int64_t phi = euler_phi(f);
  const auto low = cyclotomic_low_half(f, options.degree_ceiling);
  std::vector<std::int64_t> c(idx(phi) + 1, 0);
  for (std::int64_t i = 0; i <= phi / 2; ++i) {
    c[idx(i)] = low[idx(i)];
    c[idx(phi - i)] = low[idx(i)];
  }
  return IntPolynomial(std::move(c));
}

IntPolynomial inverse_cyclotomic(const PrimeFactorization& f, const CyclotomicOptions& options) {
  const std::int64_t psi = psi_degree(f);
  check_ceiling(std::max(psi, euler_phi(f)), options.degree_ceiling);
  if (options.route == CyclotomicRoute::kIteratedDivision) {
    return exact_divide(IntPolynomial::binomial(f.n()), cyclotomic_by_division(f, options.degree_ceiling));
  }
  // Psi_n = (x^n - 1) / Phi_n = -prod_{d | n, d < n} (1 - x^d)^(-mu(n/d)).
  std::vector<std::int64_t> up;
  std::vector<std::int64_t> down;
  for (const Divisor& d : divisors(f).elements) {
    if (d.value == f.n()) continue;
    (d.mobius_complement < 0 ? up : down).push_back(d.value);
  }
  auto c = binomial_series(psi, up, down);
  for (auto& v : c) v = -v;
  return IntPolynomial(std::move(c));
}

MaxGapReport cyclotomic_max_gap(const PrimeFactorization& f, std::int64_t degree_ceiling) {
  const std::int64_t phi = euler_phi(f);
  const auto low = cyclotomic_low_half(f, degree_ceiling);
  const std::int64_t half = phi / 2;
  // Phi_n(0) = 1, so the scan starts at exponent 0.
  std::int64_t prev = 0;
  MaxGapReport report{0, 0, 0};
  for (std::int64_t i = 1; i <= half; ++i) {
    if (low[idx(i)] == 0) continue;
    if (i - prev > report.gap) report = {i - prev, prev, i};
    prev = i;
  }
  // Gaps above the middle mirror those below it and come later in ascending
  // order, so only the gap straddling the middle can still improve the witness.
  if (prev < half && phi - 2 * prev > report.gap) report = {phi - 2 * prev, prev, phi - prev};
  return report;
}

IntPolynomial BlockDecomposition::row(std::int64_t i) const {
  IntPolynomial out;
  for (std::int64_t j = 0; j <= q; ++j) out = out + block(i, j).shifted(j * m);
  return out;
}

IntPolynomial BlockDecomposition::reassemble() const {
  IntPolynomial out;
  for (std::int64_t i = 0; i < rows(); ++i) out = out + row(i).shifted(i * p);
  return out;
}

BlockDecomposition block_decompose(std::int64_t m, std::int64_t p, const IntPolynomial& phi_mp) {
  const PrimeFactorization fm = factorize_odd_squarefree(m);
  if (p <= m || !is_prime(static_cast<std::uint64_t>(p))) {
    throw Error(ErrorKind::kInvalidArgument,
                "block decomposition needs a prime p > m, got p = " + std::to_string(p));
  }
  const std::int64_t phi_m = euler_phi(fm);
  if (phi_mp.degree() != checked_mul(phi_m, p - 1)) {
    throw Error(ErrorKind::kInvalidArgument, "polynomial is not Phi_mp");
  }
  BlockDecomposition b;
  b.m = m;
  b.p = p;
  b.q = p / m;
  b.r = p % m;
  b.blocks.resize(idx(phi_m));
  for (std::int64_t i = 0; i < phi_m; ++i) {
    auto& row = b.blocks[idx(i)];
    row.reserve(idx(b.q) + 1);
    for (std::int64_t j = 0; j <= b.q; ++j) {
      const std::int64_t width = std::min(m, p - j * m);
      std::vector<std::int64_t> c(idx(width), 0);
      for (std::int64_t t = 0; t < width; ++t) c[idx(t)] = phi_mp.coeff(i * p + j * m + t);
      row.emplace_back(std::move(c));
    }
  }
  return b;
}

BlockDecomposition block_decompose(std::int64_t m, std::int64_t p, const CyclotomicOptions& options) {
  const PrimeFactorization fm = factorize_odd_squarefree(m);
  if (p <= m || !is_prime(static_cast<std::uint64_t>(p))) {
    throw Error(ErrorKind::kInvalidArgument,
                "block decomposition needs a prime p > m, got p = " + std::to_string(p));
  }
  return block_decompose(m, p, cyclotomic(fm.with_prime(p), options));
}

BlockProperties verify_block_properties(const BlockDecomposition& b, const BlockDecomposition* other) {
  BlockProperties props;
  props.c1 = true;
  props.c2 = true;
  for (std::int64_t i = 0; i < b.rows(); ++i) {
    const IntPolynomial& head = b.block(i, 0);
    for (std::int64_t j = 1; j < b.q; ++j) props.c1 = props.c1 && b.block(i, j) == head;
    props.c2 = props.c2 && b.block(i, b.q) == head.truncate(b.r);
  }
  if (other != nullptr) {
    if (other->m != b.m) {
      throw Error(ErrorKind::kMismatchedModulus, "block decompositions use different m");
    }
    if (other->r != b.r) {
      throw Error(ErrorKind::kInvalidArgument, "primes lie in different residue classes");
    }
    bool same = other->rows() == b.rows();
    for (std::int64_t i = 0; same && i < b.rows(); ++i) same = b.block(i, 0) == other->block(i, 0);
    props.c3 = same;
  }
  return props;
}

}  // namespace cyclogap
