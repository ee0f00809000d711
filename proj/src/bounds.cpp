#include "cyclogap/bounds.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "cyclogap/checked.hpp"
#include "cyclogap/error.hpp"
#include "cyclogap/polynomial.hpp"

namespace cyclogap {

std::string_view to_string(Sign s) { return s == Sign::kPlus ? "plus" : "minus"; }

bool index_eligible(int k, int r, Sign sign) {
  return r >= 1 && r < k && parity(k - r) == -sign_value(sign);
}

namespace {

template <typename Term>
Bound max_over_eligible(const PrimeFactorization& f, Sign sign, Term term) {
  Bound best;
  for (int r = 1; r < f.k(); ++r) {
    if (!index_eligible(f.k(), r, sign)) continue;
    const std::int64_t value = term(r);
    if (!best || value > *best) best = value;
  }
  return best;
}

// sum over d | n_j with omega(d) < r of sign * mu(n/d) * d.
std::int64_t restricted_sum(const PrimeFactorization& f, int j, int r, Sign sign) {
  std::int64_t sum = 0;
  const std::uint32_t limit = 1u << j;
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    const int omega = std::popcount(mask);
    if (omega >= r) continue;
    const std::int64_t term = sign_value(sign) * parity(f.k() - omega) * f.divisor_value(mask);
    sum = checked_add(sum, term);
  }
  return sum;
}

}  // namespace

Bound alpha_bound(const PrimeFactorization& f, Sign sign) {
  return max_over_eligible(f, sign, [&](int r) {
    return f.prime(r) - euler_phi(f.primes().first(static_cast<std::size_t>(r - 1)));
  });
}

Bound beta_bound(const PrimeFactorization& f, Sign sign) {
  return max_over_eligible(f, sign, [&](int r) {
    const auto head = f.primes().first(static_cast<std::size_t>(r));
    return std::min(f.prime(r + 1), f.prefix_product(r)) - psi_degree(head);
  });
}

Bound gamma_bound(const PrimeFactorization& f, Sign sign) {
  return max_over_eligible(f, sign, [&](int r) {
    return checked_sub(f.prefix_product(r), restricted_sum(f, f.k(), r, sign));
  });
}

std::int64_t delta_minus(const PrimeFactorization& f) {
  return checked_sub(checked_mul(2, f.n() / f.prime(1)), psi_degree(f));
}

std::int64_t signed_divisor_sum(const DivisorSet& b, Sign sign) {
  std::int64_t sum = 0;
  for (const Divisor& d : b.elements) {
    sum = checked_add(sum, sign_value(sign) * d.mobius_complement * d.value);
  }
  return sum;
}

bool c_condition(const DivisorSet& b, const PrimeFactorization& f, Sign sign) {
  if (b.n != f.n()) throw Error(ErrorKind::kInvalidArgument, "divisor set belongs to another n");
  // underline(B): every divisor of some element of B, as masks.
  std::vector<std::uint32_t> under;
  for (const Divisor& e : b.elements) {
    for (std::uint32_t sub = e.mask;; sub = (sub - 1) & e.mask) {
      if (std::find(under.begin(), under.end(), sub) == under.end()) under.push_back(sub);
      if (sub == 0) break;
    }
  }
  for (std::uint32_t d : under) {
    int same = 0;
    int opposite = 0;
    for (const Divisor& e : b.elements) {
      if ((d & ~e.mask) != 0) continue;
      (e.mobius_complement == sign_value(sign) ? same : opposite) += 1;
    }
    if (same < opposite) return false;
  }
  return true;
}

EpsilonResult epsilon_bound(const PrimeFactorization& f, Sign sign, int max_k) {
  const int k = f.k();
  if (k > std::min(max_k, 5)) {
    throw Error(ErrorKind::kInfeasibleEnumeration,
                "epsilon enumeration over 2^" + std::to_string((1 << k) - 1) +
                    " subsets exceeds the configured k <= " + std::to_string(std::min(max_k, 5)));
  }
  DivisorSet all = divisors(f);
  all.elements.pop_back();  // drop n itself
  const auto& proper = all.elements;
  const int count = static_cast<int>(proper.size());

  std::vector<std::uint32_t> divisors_of(proper.size(), 0);
  std::vector<std::uint32_t> multiples_of(proper.size(), 0);
  std::vector<std::int64_t> weight(proper.size(), 0);
  std::uint32_t same_sign = 0;
  for (int i = 0; i < count; ++i) {
    for (int j = 0; j < count; ++j) {
      if ((proper[i].mask & ~proper[j].mask) == 0) {
        multiples_of[i] |= 1u << j;
        divisors_of[j] |= 1u << i;
      }
    }
    if (proper[i].mobius_complement == sign_value(sign)) same_sign |= 1u << i;
    weight[i] = sign_value(sign) * proper[i].mobius_complement * proper[i].value;
  }
  const std::uint32_t opposite_sign = ~same_sign;

  const std::uint64_t full = (std::uint64_t{1} << count) - 1;
  EpsilonResult result;
  std::optional<std::uint32_t> best_mask;
  for (std::uint64_t wide = 0; wide < full; ++wide) {
    const auto b = static_cast<std::uint32_t>(wide);
    std::uint32_t under = 0;
    std::int64_t l = 0;
    for (std::uint32_t rest = b; rest != 0; rest &= rest - 1) {
      const int i = std::countr_zero(rest);
      under |= divisors_of[i];
      l += weight[i];
    }
    bool admissible = true;
    for (std::uint32_t rest = under; rest != 0 && admissible; rest &= rest - 1) {
      const std::uint32_t above = b & multiples_of[std::countr_zero(rest)];
      admissible = std::popcount(above & same_sign) >= std::popcount(above & opposite_sign);
    }
    if (!admissible) continue;
    ++result.admissible_pairs;
    const std::int64_t value = proper[std::countr_one(b)].value - l;
    if (!best_mask || value > result.value) {
      result.value = value;
      best_mask = b;
    }
  }

  // B = {} is always admissible, so a maximizer exists.
  DivisorPartition& part = result.argmax;
  part.sign = sign;
  part.a.n = part.b.n = f.n();
  for (int i = 0; i < count; ++i) {
    ((*best_mask >> i) & 1u ? part.b : part.a).elements.push_back(proper[i]);
  }
  part.u = part.a.elements.front().value;
  part.l_signed = signed_divisor_sum(part.b, sign);
  return result;
}

DivisorSet restricted_b(const PrimeFactorization& f, int j, int r) {
  const int k = f.k();
  if (r < 1 || r >= k || j < r - 1 || j > k) {
    throw Error(ErrorKind::kInvalidArgument, "restricted set needs 1 <= r < k and r-1 <= j <= k");
  }
  std::vector<std::int64_t> values;
  for (std::uint32_t mask = 0; mask < (1u << j); ++mask) {
    if (std::popcount(mask) < r) values.push_back(f.divisor_value(mask));
  }
  return make_divisor_set(f, values);
}

bool delta_sufficient(const PrimeFactorization& f) {
  return checked_mul(checked_mul(2, f.prime(1)), delta_minus(f)) >= f.n();
}

std::optional<bool> lemma_suff2_condition(const PrimeFactorization& f) {
  if (f.k() < 2) return std::nullopt;
  return f.prime(2) > checked_mul(f.k() - 1, 2 * f.prime(1) - 3);
}

namespace {

Bound max_defined(std::initializer_list<Bound> values) {
  Bound best;
  for (const Bound& v : values) {
    if (v && (!best || *v > *best)) best = v;
  }
  return best;
}

}  // namespace

Bound BoundsReport::special_plus() const { return max_defined({alpha_plus, beta_plus, gamma_plus}); }

Bound BoundsReport::special_minus() const {
  return max_defined({alpha_minus, beta_minus, gamma_minus, Bound(delta_minus)});
}

bool BoundsReport::special_exact_phi() const {
  const Bound s = special_plus();
  return s && *s == g_phi;
}

bool BoundsReport::special_exact_psi() const {
  const Bound s = special_minus();
  return s && *s == g_psi;
}

bool BoundsReport::eps_exact_phi() const { return epsilon_plus && *epsilon_plus == g_phi; }
bool BoundsReport::eps_exact_psi() const { return epsilon_minus && *epsilon_minus == g_psi; }

BoundsReport bounds_report_with_gaps(const PrimeFactorization& f, std::int64_t g_phi,
                                     std::int64_t g_psi, const BoundsOptions& options) {
  BoundsReport report;
  report.n = f.n();
  report.k = f.k();
  report.alpha_plus = alpha_bound(f, Sign::kPlus);
  report.beta_plus = beta_bound(f, Sign::kPlus);
  report.gamma_plus = gamma_bound(f, Sign::kPlus);
  report.alpha_minus = alpha_bound(f, Sign::kMinus);
  report.beta_minus = beta_bound(f, Sign::kMinus);
  report.gamma_minus = gamma_bound(f, Sign::kMinus);
  report.delta_minus = delta_minus(f);
  if (f.k() <= options.epsilon_max_k) {
    report.epsilon_plus = epsilon_bound(f, Sign::kPlus, options.epsilon_max_k).value;
    report.epsilon_minus = epsilon_bound(f, Sign::kMinus, options.epsilon_max_k).value;
  }
  report.g_phi = g_phi;
  report.g_psi = g_psi;
  return report;
}

BoundsReport bounds_report(const PrimeFactorization& f, const BoundsOptions& options) {
  CyclotomicOptions poly_options;
  poly_options.degree_ceiling = options.degree_ceiling;
  const std::int64_t g_phi = cyclotomic_max_gap(f, options.degree_ceiling).gap;
  const std::int64_t g_psi = max_gap(inverse_cyclotomic(f, poly_options)).gap;
  return bounds_report_with_gaps(f, g_phi, g_psi, options);
}

}  // namespace cyclogap
