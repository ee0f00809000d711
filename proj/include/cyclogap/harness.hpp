#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cyclogap/bounds.hpp"
#include "cyclogap/numtheory.hpp"

namespace cyclogap {

/// Odd square-free n < b with at least `min_k` prime factors, ascending.
std::vector<PrimeFactorization> enumerate_corpus(std::int64_t b, int min_k = 2);

/// Support digest: FNV-1a over the little-endian exponents.
std::uint64_t support_digest(std::span<const std::int64_t> exponents);

/// One scanned n: the bounds report plus digests of both supports.
struct CorpusRow {
  std::vector<std::int64_t> factors;
  BoundsReport report;
  std::uint64_t phi_digest = 0;
  std::uint64_t psi_digest = 0;
};

CorpusRow compute_corpus_row(const PrimeFactorization& f, const BoundsOptions& options = {});

/// Exact ratio hits / population, rendered with round-half-even.
std::string render_ratio(std::int64_t hits, std::int64_t population, int places = 4);

struct QualityStats {
  std::int64_t b = 0;
  std::int64_t population = 0;         // k >= 2, the scanned corpus
  std::int64_t population_k_ge1 = 0;   // k >= 1, reported for comparison
  std::int64_t hits_special_phi = 0;
  std::int64_t hits_special_psi = 0;
  std::int64_t hits_eps_phi = 0;
  std::int64_t hits_eps_psi = 0;
  /// The same four counts over the k >= 1 population. For a prime the
  /// special family for Phi_p is empty; it is scored as exact there, since
  /// g(Phi_p) = 1 is known outright.
  std::int64_t hits_special_phi_k_ge1 = 0;
  std::int64_t hits_special_psi_k_ge1 = 0;
  std::int64_t hits_eps_phi_k_ge1 = 0;
  std::int64_t hits_eps_psi_k_ge1 = 0;

  double ratio(std::int64_t hits) const {
    return population == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(population);
  }
  std::string rendered(std::int64_t hits) const { return render_ratio(hits, population); }
  std::string rendered_k_ge1(std::int64_t hits) const { return render_ratio(hits, population_k_ge1); }
};

QualityStats quality_stats(std::int64_t b, const std::vector<CorpusRow>& rows);

struct QualityOptions {
  int jobs = 1;
  /// Newline-delimited JSON cache; rows already present are reused and new
  /// rows are appended in ascending n, one chunk at a time.
  std::optional<std::filesystem::path> cache;
  std::size_t chunk = 256;
  BoundsOptions bounds;
};

struct QualityScan {
  QualityStats stats;
  std::vector<CorpusRow> rows;  // ascending n, k >= 1
};

inline constexpr std::int64_t kQualityBoundCeiling = 15015;

/// Scans every odd square-free n < b, primes included; `stats` reports
/// both conventions. Requires 15 <= b <= 15015 so that k <= 4.
QualityScan quality_scan(std::int64_t b, const QualityOptions& options = {});

/// Column order: n, k, factors, g_phi, alpha_p, beta_p, gamma_p, eps_p,
/// g_psi, alpha_m, beta_m, gamma_m, delta_m, eps_m, special_exact_phi,
/// special_exact_psi, eps_exact_phi, eps_exact_psi. Undefined bounds are
/// empty fields; flags are 0/1.
void write_quality_csv(std::ostream& out, const std::vector<CorpusRow>& rows);
std::string quality_csv_header();
std::string quality_csv_line(const CorpusRow& row);

std::string cache_line(const CorpusRow& row);
/// Parses one cache line; nullopt for malformed or truncated input.
std::optional<CorpusRow> parse_cache_line(const std::string& line);
std::map<std::int64_t, CorpusRow> load_cache(const std::filesystem::path& path);

struct DeltaRatioStats {
  int k = 0;
  std::int64_t p = 0;
  std::int64_t b = 0;
  std::int64_t numerator = 0;
  std::int64_t denominator = 0;

  double ratio() const {
    return denominator == 0 ? 0.0 : static_cast<double>(numerator) / static_cast<double>(denominator);
  }
};

/// Over n = p_1 ... p_k with p_1 = p and p_k <= b: how many satisfy
/// delta^-(n) >= n / (2 p_1).
DeltaRatioStats delta_ratio_scan(int k, std::int64_t p, std::int64_t b);

/// The same ratio at every prime b' <= b where the denominator grows.
std::vector<DeltaRatioStats> delta_ratio_curve(int k, std::int64_t p, std::int64_t b);

void write_delta_ratio_csv(std::ostream& out, const std::vector<DeltaRatioStats>& curve);

}  // namespace cyclogap
