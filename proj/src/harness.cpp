#include "cyclogap/harness.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "cyclogap/error.hpp"
#include "cyclogap/parallel.hpp"
#include "cyclogap/polynomial.hpp"

namespace cyclogap {

using nlohmann::json;

std::vector<PrimeFactorization> enumerate_corpus(std::int64_t b, int min_k) {
  std::vector<PrimeFactorization> out;
  if (b <= 3) return out;
  // Smallest prime factor sieve over odd numbers.
  std::vector<std::int64_t> spf(static_cast<std::size_t>(b), 0);
  for (std::int64_t i = 3; i < b; i += 2) {
    if (spf[static_cast<std::size_t>(i)] != 0) continue;
    for (std::int64_t j = i; j < b; j += 2 * i) {
      if (spf[static_cast<std::size_t>(j)] == 0) spf[static_cast<std::size_t>(j)] = i;
    }
  }
  for (std::int64_t n = 3; n < b; n += 2) {
    std::vector<std::int64_t> primes;
    std::int64_t rest = n;
    bool square_free = true;
    while (rest > 1) {
      const std::int64_t p = spf[static_cast<std::size_t>(rest)];
      rest /= p;
      if (rest % p == 0) {
        square_free = false;
        break;
      }
      primes.push_back(p);
    }
    if (!square_free || static_cast<int>(primes.size()) < min_k) continue;
    out.push_back(PrimeFactorization::from_primes(std::move(primes)));
  }
  return out;
}

std::uint64_t support_digest(std::span<const std::int64_t> exponents) {
  std::uint64_t h = 14695981039346656037ull;
  for (std::int64_t e : exponents) {
    auto v = static_cast<std::uint64_t>(e);
    for (int byte = 0; byte < 8; ++byte) {
      h ^= (v >> (8 * byte)) & 0xffu;
      h *= 1099511628211ull;
    }
  }
  return h;
}

CorpusRow compute_corpus_row(const PrimeFactorization& f, const BoundsOptions& options) {
  CyclotomicOptions poly;
  poly.degree_ceiling = options.degree_ceiling;
  const IntPolynomial phi = cyclotomic(f, poly);
  const IntPolynomial psi = inverse_cyclotomic(f, poly);
  const auto phi_support = support(phi);
  const auto psi_support = support(psi);
  CorpusRow row;
  row.factors.assign(f.primes().begin(), f.primes().end());
  row.report = bounds_report_with_gaps(f, max_gap_of_support(phi_support).gap,
                                       max_gap_of_support(psi_support).gap, options);
  row.phi_digest = support_digest(phi_support);
  row.psi_digest = support_digest(psi_support);
  return row;
}

std::string render_ratio(std::int64_t hits, std::int64_t population, int places) {
  if (population <= 0 || hits < 0 || hits > population) {
    throw Error(ErrorKind::kInvalidArgument, "ratio needs 0 <= hits <= population, population > 0");
  }
  std::int64_t scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  const __int128 scaled = static_cast<__int128>(hits) * scale;
  auto q = static_cast<std::int64_t>(scaled / population);
  const auto rem = static_cast<std::int64_t>(scaled % population);
  if (2 * static_cast<__int128>(rem) > population ||
      (2 * static_cast<__int128>(rem) == population && q % 2 == 1)) {
    ++q;
  }
  std::ostringstream out;
  out << q / scale;
  if (places > 0) out << '.' << std::setw(places) << std::setfill('0') << q % scale;
  return out.str();
}

QualityStats quality_stats(std::int64_t b, const std::vector<CorpusRow>& rows) {
  QualityStats stats;
  stats.b = b;
  for (const CorpusRow& row : rows) {
    const BoundsReport& r = row.report;
    if (r.n >= b) continue;
    const bool special_phi = r.k == 1 ? r.g_phi == 1 : r.special_exact_phi();
    ++stats.population_k_ge1;
    stats.hits_special_phi_k_ge1 += special_phi;
    stats.hits_special_psi_k_ge1 += r.special_exact_psi();
    stats.hits_eps_phi_k_ge1 += r.eps_exact_phi();
    stats.hits_eps_psi_k_ge1 += r.eps_exact_psi();
    if (r.k < 2) continue;
    ++stats.population;
    stats.hits_special_phi += special_phi;
    stats.hits_special_psi += r.special_exact_psi();
    stats.hits_eps_phi += r.eps_exact_phi();
    stats.hits_eps_psi += r.eps_exact_psi();
  }
  return stats;
}

namespace {

bool ends_mid_line(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in || in.tellg() <= 0) return false;
  in.seekg(-1, std::ios::end);
  return in.get() != '\n';
}

void append_cache(const std::filesystem::path& path, const std::vector<CorpusRow>& rows) {
  const bool torn = ends_mid_line(path);
  std::ofstream out(path, std::ios::app);
  if (torn) out << '\n';
  if (!out) throw Error(ErrorKind::kIo, "cannot open cache " + path.string());
  for (const CorpusRow& row : rows) out << cache_line(row) << '\n';
  out.flush();
  if (!out) throw Error(ErrorKind::kIo, "cannot write cache " + path.string());
}

}  // namespace

QualityScan quality_scan(std::int64_t b, const QualityOptions& options) {
  if (b < 15 || b > kQualityBoundCeiling) {
    throw Error(ErrorKind::kInvalidArgument, "quality scan bound must lie in [15, 15015]");
  }
  const auto corpus = enumerate_corpus(b, 1);
  std::map<std::int64_t, CorpusRow> cached;
  if (options.cache && std::filesystem::exists(*options.cache)) cached = load_cache(*options.cache);

  QualityScan scan;
  scan.rows.resize(corpus.size());
  std::vector<std::size_t> missing;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto hit = cached.find(corpus[i].n());
    if (hit != cached.end()) {
      scan.rows[i] = hit->second;
    } else {
      missing.push_back(i);
    }
  }

  const std::size_t chunk = std::max<std::size_t>(options.chunk, 1);
  for (std::size_t start = 0; start < missing.size(); start += chunk) {
    const std::size_t stop = std::min(missing.size(), start + chunk);
    parallel_for(stop - start, options.jobs, [&](std::size_t offset) {
      const std::size_t i = missing[start + offset];
      scan.rows[i] = compute_corpus_row(corpus[i], options.bounds);
    });
    if (options.cache) {
      std::vector<CorpusRow> fresh;
      for (std::size_t j = start; j < stop; ++j) fresh.push_back(scan.rows[missing[j]]);
      append_cache(*options.cache, fresh);
    }
  }
  scan.stats = quality_stats(b, scan.rows);
  return scan;
}

namespace {

std::string optional_field(const Bound& v) { return v ? std::to_string(*v) : std::string(); }

std::string join_factors(const std::vector<std::int64_t>& factors) {
  std::string out;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i > 0) out += '-';
    out += std::to_string(factors[i]);
  }
  return out;
}

json bound_json(const Bound& v) { return v ? json(*v) : json(nullptr); }

Bound bound_from_json(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<std::int64_t>();
}

std::string hex64(std::uint64_t v) {
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << v;
  return out.str();
}

}  // namespace

std::string quality_csv_header() {
  return "n,k,factors,g_phi,alpha_p,beta_p,gamma_p,eps_p,g_psi,alpha_m,beta_m,gamma_m,delta_m,"
         "eps_m,special_exact_phi,special_exact_psi,eps_exact_phi,eps_exact_psi";
}

std::string quality_csv_line(const CorpusRow& row) {
  const BoundsReport& r = row.report;
  std::ostringstream out;
  out << r.n << ',' << r.k << ',' << join_factors(row.factors) << ',' << r.g_phi << ','
      << optional_field(r.alpha_plus) << ',' << optional_field(r.beta_plus) << ','
      << optional_field(r.gamma_plus) << ',' << optional_field(r.epsilon_plus) << ',' << r.g_psi
      << ',' << optional_field(r.alpha_minus) << ',' << optional_field(r.beta_minus) << ','
      << optional_field(r.gamma_minus) << ',' << r.delta_minus << ','
      << optional_field(r.epsilon_minus) << ',' << int(r.special_exact_phi()) << ','
      << int(r.special_exact_psi()) << ',' << int(r.eps_exact_phi()) << ','
      << int(r.eps_exact_psi());
  return out.str();
}

void write_quality_csv(std::ostream& out, const std::vector<CorpusRow>& rows) {
  out << quality_csv_header() << '\n';
  for (const CorpusRow& row : rows) out << quality_csv_line(row) << '\n';
}

std::string cache_line(const CorpusRow& row) {
  const BoundsReport& r = row.report;
  json j;
  j["n"] = r.n;
  j["factors"] = row.factors;
  j["g_phi"] = r.g_phi;
  j["g_psi"] = r.g_psi;
  j["phi_support_digest"] = hex64(row.phi_digest);
  j["psi_support_digest"] = hex64(row.psi_digest);
  j["alpha_p"] = bound_json(r.alpha_plus);
  j["beta_p"] = bound_json(r.beta_plus);
  j["gamma_p"] = bound_json(r.gamma_plus);
  j["eps_p"] = bound_json(r.epsilon_plus);
  j["alpha_m"] = bound_json(r.alpha_minus);
  j["beta_m"] = bound_json(r.beta_minus);
  j["gamma_m"] = bound_json(r.gamma_minus);
  j["delta_m"] = r.delta_minus;
  j["eps_m"] = bound_json(r.epsilon_minus);
  return j.dump();
}

std::optional<CorpusRow> parse_cache_line(const std::string& line) {
  try {
    const json j = json::parse(line);
    CorpusRow row;
    row.factors = j.at("factors").get<std::vector<std::int64_t>>();
    const PrimeFactorization f = PrimeFactorization::from_primes(row.factors);
    BoundsReport& r = row.report;
    r.n = j.at("n").get<std::int64_t>();
    if (r.n != f.n()) return std::nullopt;
    r.k = f.k();
    r.g_phi = j.at("g_phi").get<std::int64_t>();
    r.g_psi = j.at("g_psi").get<std::int64_t>();
    row.phi_digest = std::stoull(j.at("phi_support_digest").get<std::string>(), nullptr, 16);
    row.psi_digest = std::stoull(j.at("psi_support_digest").get<std::string>(), nullptr, 16);
    r.alpha_plus = bound_from_json(j.at("alpha_p"));
    r.beta_plus = bound_from_json(j.at("beta_p"));
    r.gamma_plus = bound_from_json(j.at("gamma_p"));
    r.epsilon_plus = bound_from_json(j.at("eps_p"));
    r.alpha_minus = bound_from_json(j.at("alpha_m"));
    r.beta_minus = bound_from_json(j.at("beta_m"));
    r.gamma_minus = bound_from_json(j.at("gamma_m"));
    r.delta_minus = j.at("delta_m").get<std::int64_t>();
    r.epsilon_minus = bound_from_json(j.at("eps_m"));
    return row;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::map<std::int64_t, CorpusRow> load_cache(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot read cache " + path.string());
  std::map<std::int64_t, CorpusRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (auto row = parse_cache_line(line)) rows.insert_or_assign(row->report.n, std::move(*row));
  }
  return rows;
}

namespace {

struct TupleCounter {
  std::int64_t p1;
  std::span<const std::int64_t> primes;  // candidates for p_2 .. p_k, ascending
  std::vector<std::int64_t> numerator;    // indexed by position of p_k in primes
  std::vector<std::int64_t> denominator;

  // n and phi(n) of the prefix chosen so far.
  void walk(std::size_t from, int remaining, __int128 n, __int128 phi) {
    for (std::size_t i = from; i < primes.size(); ++i) {
      const __int128 next_n = n * primes[i];
      const __int128 next_phi = phi * (primes[i] - 1);
      if (remaining == 1) {
        ++denominator[i];
        // delta^- >= n / (2 p_1)  <=>  2 p_1 phi(n) >= (2 p_1 - 3) n
        if (2 * p1 * next_phi >= (2 * p1 - 3) * next_n) ++numerator[i];
      } else {
        walk(i + 1, remaining - 1, next_n, next_phi);
      }
    }
  }
};

TupleCounter count_tuples(int k, std::int64_t p, std::int64_t b) {
  if (k < 2) throw Error(ErrorKind::kInvalidArgument, "delta ratio needs k >= 2");
  if (p < 3 || !is_prime(static_cast<std::uint64_t>(p))) {
    throw Error(ErrorKind::kInvalidArgument, "delta ratio needs an odd prime p");
  }
  static thread_local std::vector<std::int64_t> candidates;
  candidates.clear();
  for (std::int64_t q : primes_up_to(b)) {
    if (q > p) candidates.push_back(q);
  }
  TupleCounter counter{p, candidates, std::vector<std::int64_t>(candidates.size(), 0),
                       std::vector<std::int64_t>(candidates.size(), 0)};
  counter.walk(0, k - 1, p, p - 1);
  return counter;
}

}  // namespace

DeltaRatioStats delta_ratio_scan(int k, std::int64_t p, std::int64_t b) {
  const TupleCounter counter = count_tuples(k, p, b);
  DeltaRatioStats stats{k, p, b, 0, 0};
  for (std::size_t i = 0; i < counter.primes.size(); ++i) {
    stats.numerator += counter.numerator[i];
    stats.denominator += counter.denominator[i];
  }
  return stats;
}

std::vector<DeltaRatioStats> delta_ratio_curve(int k, std::int64_t p, std::int64_t b) {
  const TupleCounter counter = count_tuples(k, p, b);
  std::vector<DeltaRatioStats> curve;
  DeltaRatioStats running{k, p, 0, 0, 0};
  for (std::size_t i = 0; i < counter.primes.size(); ++i) {
    if (counter.denominator[i] == 0) continue;
    running.b = counter.primes[i];
    running.numerator += counter.numerator[i];
    running.denominator += counter.denominator[i];
    curve.push_back(running);
  }
  return curve;
}

void write_delta_ratio_csv(std::ostream& out, const std::vector<DeltaRatioStats>& curve) {
  out << "k,p,b,numerator,denominator,ratio\n";
  for (const DeltaRatioStats& s : curve) {
    out << s.k << ',' << s.p << ',' << s.b << ',' << s.numerator << ',' << s.denominator << ','
        << render_ratio(s.numerator, s.denominator, 6) << '\n';
  }
}

}  // namespace cyclogap
