#include "cyclogap/cli.hpp"

#include <algorithm>
#include <fstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cyclogap/bounds.hpp"
#include "cyclogap/conjecture.hpp"
#include "cyclogap/error.hpp"
#include "cyclogap/harness.hpp"
#include "cyclogap/polynomial.hpp"

namespace cyclogap {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kSearchCeiling:
    case ErrorKind::kOverflow:
    case ErrorKind::kDegreeCeiling:
    case ErrorKind::kInfeasibleEnumeration:
      return kExitResource;
    case ErrorKind::kIo:
      return kExitInternal;
    default:
      return kExitValidation;
  }
}

IntPolynomial build(const std::string& kind, const PrimeFactorization& f) {
  return kind == "phi" ? cyclotomic(f) : inverse_cyclotomic(f);
}

ordered_json bound_json(const Bound& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }
std::string bound_text(const Bound& v) { return v ? std::to_string(*v) : "undefined"; }

std::string set_text(const DivisorSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.elements.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(s.elements[i].value);
  }
  return out + "}";
}

std::ofstream open_out(const std::string& path) {
  std::ofstream file(path);
  if (!file) throw Error(ErrorKind::kIo, "cannot open " + path);
  return file;
}

void print_bounds(std::ostream& out, const BoundsReport& r, bool as_json) {
  if (as_json) {
    ordered_json j;
    j["n"] = r.n;
    j["k"] = r.k;
    j["g_phi"] = r.g_phi;
    j["alpha_p"] = bound_json(r.alpha_plus);
    j["beta_p"] = bound_json(r.beta_plus);
    j["gamma_p"] = bound_json(r.gamma_plus);
    j["eps_p"] = bound_json(r.epsilon_plus);
    j["g_psi"] = r.g_psi;
    j["alpha_m"] = bound_json(r.alpha_minus);
    j["beta_m"] = bound_json(r.beta_minus);
    j["gamma_m"] = bound_json(r.gamma_minus);
    j["delta_m"] = r.delta_minus;
    j["eps_m"] = bound_json(r.epsilon_minus);
    j["special_exact_phi"] = r.special_exact_phi();
    j["special_exact_psi"] = r.special_exact_psi();
    j["eps_exact_phi"] = r.eps_exact_phi();
    j["eps_exact_psi"] = r.eps_exact_psi();
    out << j.dump() << '\n';
    return;
  }
  out << "n " << r.n << "\nk " << r.k << '\n'
      << "g_phi " << r.g_phi << "\nalpha_p " << bound_text(r.alpha_plus) << "\nbeta_p "
      << bound_text(r.beta_plus) << "\ngamma_p " << bound_text(r.gamma_plus) << "\neps_p "
      << bound_text(r.epsilon_plus) << '\n'
      << "g_psi " << r.g_psi << "\nalpha_m " << bound_text(r.alpha_minus) << "\nbeta_m "
      << bound_text(r.beta_minus) << "\ngamma_m " << bound_text(r.gamma_minus) << "\ndelta_m "
      << r.delta_minus << "\neps_m " << bound_text(r.epsilon_minus) << '\n';
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Maximum gaps of cyclotomic and inverse cyclotomic polynomials", "cyclogap"};
  app.require_subcommand(1);

  std::string kind;
  std::int64_t n = 0;
  bool as_json = false;

  auto* gap = app.add_subcommand("gap", "maximum gap of Phi_n or Psi_n");
  gap->add_option("kind", kind)->required()->check(CLI::IsMember({"phi", "psi"}));
  gap->add_option("n", n)->required();
  gap->add_flag("--json", as_json);

  auto* poly = app.add_subcommand("poly", "coefficients of Phi_n or Psi_n");
  poly->add_option("kind", kind)->required()->check(CLI::IsMember({"phi", "psi"}));
  poly->add_option("n", n)->required();

  auto* bounds = app.add_subcommand("bounds", "all lower bounds and both gaps for n");
  bounds->add_option("n", n)->required();
  bounds->add_flag("--json", as_json);

  std::string sign_name;
  int max_k = kDefaultEpsilonMaxK;
  auto* epsilon = app.add_subcommand("epsilon", "exhaustive epsilon bound");
  epsilon->add_option("n", n)->required();
  epsilon->add_option("--sign", sign_name)->required()->check(CLI::IsMember({"plus", "minus"}));
  epsilon->add_option("--max-k", max_k);

  auto* scan = app.add_subcommand("scan", "corpus experiments");
  scan->require_subcommand(1);
  std::int64_t bound = 0;
  std::string out_path;
  std::string cache_path;
  int jobs = 1;
  auto* quality = scan->add_subcommand("quality", "exactness ratios over the corpus below --bound");
  quality->add_option("--bound", bound)->required();
  quality->add_option("--out", out_path)->required();
  quality->add_option("--cache", cache_path);
  quality->add_option("--jobs", jobs)->check(CLI::PositiveNumber);

  int tuple_k = 0;
  std::int64_t first_prime = 0;
  auto* delta = scan->add_subcommand("delta-ratio", "share of n meeting the delta sufficiency test");
  delta->add_option("--k", tuple_k)->required();
  delta->add_option("--p", first_prime)->required();
  delta->add_option("--bound", bound)->required();
  delta->add_option("--out", out_path)->required();

  std::int64_t m_max = 0;
  ConjectureOptions conj;
  auto* conjecture = app.add_subcommand("conjecture", "verify g(Phi_mp) = phi(m) <=> p > m for m < --m-max");
  conjecture->add_option("--m-max", m_max)->required();
  conjecture->add_option("--jobs", jobs)->check(CLI::PositiveNumber);
  conjecture->add_option("--degree-ceiling", conj.degree_ceiling)->check(CLI::PositiveNumber);
  conjecture->add_option("--block-check-stride", conj.block_check_stride)->check(CLI::NonNegativeNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n' << app.help();
    return kExitUsage;
  }

  try {
    if (*gap) {
      const PrimeFactorization f = factorize_odd_squarefree(n);
      const MaxGapReport g = kind == "phi" ? cyclotomic_max_gap(f) : max_gap(inverse_cyclotomic(f));
      if (as_json) {
        ordered_json j;
        j["kind"] = kind;
        j["n"] = n;
        j["gap"] = g.gap;
        j["witness"] = {g.witness_low, g.witness_high};
        out << j.dump() << '\n';
      } else {
        out << g.gap << " (" << g.witness_low << "," << g.witness_high << ")\n";
      }
    } else if (*poly) {
      const IntPolynomial p = build(kind, factorize_odd_squarefree(n));
      bool first = true;
      for (std::int64_t e = 0; e <= p.degree(); ++e) {
        if (p.coeff(e) == 0) continue;
        out << (first ? "" : " ") << e << ':' << p.coeff(e);
        first = false;
      }
      out << '\n';
    } else if (*bounds) {
      print_bounds(out, bounds_report(factorize_odd_squarefree(n)), as_json);
    } else if (*epsilon) {
      const Sign sign = sign_name == "plus" ? Sign::kPlus : Sign::kMinus;
      const EpsilonResult e = epsilon_bound(factorize_odd_squarefree(n), sign, max_k);
      out << "value " << e.value << "\nadmissible_pairs " << e.admissible_pairs << "\nA "
          << set_text(e.argmax.a) << "\nB " << set_text(e.argmax.b) << '\n';
    } else if (*quality) {
      QualityOptions opts;
      opts.jobs = jobs;
      if (!cache_path.empty()) opts.cache = cache_path;
      const QualityScan result = quality_scan(bound, opts);
      std::ofstream file = open_out(out_path);
      write_quality_csv(file, result.rows);
      const QualityStats& s = result.stats;
      out << "bound " << s.b << "\npopulation_k_ge2 " << s.population << "\npopulation_k_ge1 "
          << s.population_k_ge1 << '\n';
      const auto line = [&](const char* name, std::int64_t hits, std::int64_t hits_k_ge1) {
        out << name << " k_ge2 " << hits << ' ' << s.rendered(hits) << " k_ge1 " << hits_k_ge1 << ' '
            << s.rendered_k_ge1(hits_k_ge1) << '\n';
      };
      line("special_phi", s.hits_special_phi, s.hits_special_phi_k_ge1);
      line("special_psi", s.hits_special_psi, s.hits_special_psi_k_ge1);
      line("eps_phi", s.hits_eps_phi, s.hits_eps_phi_k_ge1);
      line("eps_psi", s.hits_eps_psi, s.hits_eps_psi_k_ge1);
    } else if (*delta) {
      const auto curve = delta_ratio_curve(tuple_k, first_prime, bound);
      std::ofstream file = open_out(out_path);
      write_delta_ratio_csv(file, curve);
      if (curve.empty()) {
        out << "no tuples\n";
      } else {
        const DeltaRatioStats& last = curve.back();
        out << "ratio " << last.numerator << '/' << last.denominator << ' '
            << render_ratio(last.numerator, last.denominator, 6) << '\n';
      }
    } else if (*conjecture) {
      const auto verdicts = scan_m_range(m_max, conj, jobs);
      int refuted = 0;
      int incomplete = 0;
      std::int64_t anomalies = 0;
      for (const ConjectureVerdict& v : verdicts) {
        anomalies += v.block_anomalies;
        if (v.verdict == Verdict::kConfirmed && v.block_anomalies == 0) continue;
        out << "m=" << v.m << ' ' << to_string(v.verdict);
        if (v.counterexample) {
          out << " p=" << v.counterexample->p << " g=" << v.counterexample->gap
              << " phi(m)=" << v.counterexample->phi_m << " (" << v.counterexample->relation << ')';
        }
        if (!v.note.empty()) out << ' ' << v.note;
        out << '\n';
        refuted += v.verdict == Verdict::kRefuted;
        incomplete += v.verdict == Verdict::kIncomplete;
      }
      if (refuted > 0) {
        out << refuted << " refuted\n";
        return kExitRefuted;
      }
      if (incomplete > 0) {
        out << incomplete << " incomplete\n";
        return kExitResource;
      }
      if (anomalies > 0) {
        out << anomalies << " block cross-check anomalies\n";
        return kExitInternal;
      }
      out << "all confirmed (" << verdicts.size() << " values of m)\n";
    }
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace cyclogap
