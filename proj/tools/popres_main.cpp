// Command-line front end: population generation, noisy sample emission,
// recovery runs, benchmarking and field self-verification.
//
// Exit codes: 0 success, 1 recovery failure (filter-mass abort, LP failure
// or an out-of-tolerance point), 2 input error.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "popres/attenuated.hpp"
#include "popres/downset.hpp"
#include "popres/estimators.hpp"
#include "popres/filter_set.hpp"
#include "popres/io.hpp"
#include "popres/noise.hpp"
#include "popres/recovery.hpp"
#include "popres/rng.hpp"
#include "popres/sample_source.hpp"
#include "popres/verify.hpp"

using namespace popres;

namespace {

constexpr int kExitRecoveryFailure = 1;
constexpr int kExitInputError = 2;

void write_text(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open " + out_path + " for writing");
  out << text;
  if (!out) throw std::runtime_error("write failed: " + out_path);
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

std::vector<double> parse_double_list(const std::string& text,
                                      const std::string& flag) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (tok.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw std::invalid_argument(flag + ": cannot parse '" + tok + "'");
    }
  }
  if (out.empty()) throw std::invalid_argument(flag + ": empty list");
  return out;
}

std::vector<int> parse_int_list(const std::string& text,
                                const std::string& flag) {
  std::vector<int> out;
  for (double v : parse_double_list(text, flag)) {
    if (v != std::floor(v))
      throw std::invalid_argument(flag + ": '" + std::to_string(v) +
                                  "' is not an integer");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

// ---- gen -------------------------------------------------------------------

std::vector<double> profile_weights(const std::string& profile, int k,
                                    Rng& rng) {
  std::vector<double> w(static_cast<std::size_t>(k));
  if (profile == "uniform") {
    for (double& x : w) x = 1.0 / k;
  } else if (profile == "geometric") {
    const double denom = 2.0 - std::ldexp(1.0, 1 - k);
    for (int i = 0; i < k; ++i) w[i] = std::ldexp(1.0, -i) / denom;
  } else if (profile == "dirichlet") {
    double sum = 0.0;
    for (double& x : w) {
      x = -std::log(1.0 - rng.unit());
      sum += x;
    }
    for (double& x : w) x /= sum;
  } else {
    throw std::invalid_argument("unknown weight profile: " + profile);
  }
  // Pin the total mass to exactly one; the drift being absorbed is a few ulps.
  double partial = 0.0;
  for (int i = 0; i + 1 < k; ++i) partial += w[i];
  w[static_cast<std::size_t>(k - 1)] = 1.0 - partial;
  return w;
}

int cmd_gen(int n, int k, const std::string& profile, std::uint64_t seed,
            const std::string& out_path) {
  if (n <= 62 && static_cast<std::uint64_t>(k) > (std::uint64_t{1} << n)) {
    throw std::invalid_argument("k exceeds the number of points in the cube");
  }
  Rng rng(derive_seed(seed, 0, 0));
  std::unordered_set<BitVec, BitVecHash> seen;
  std::vector<BitVec> points;
  while (points.size() < static_cast<std::size_t>(k)) {
    BitVec p = random_point(n, rng);
    if (seen.insert(p).second) points.push_back(std::move(p));
  }
  const SparseDistribution dist(n, std::move(points),
                                profile_weights(profile, k, rng));
  write_population(out_path, dist);
  return 0;
}

// ---- sample ----------------------------------------------------------------

int cmd_sample(const std::string& pop_path, double mu, std::uint64_t count,
               std::uint64_t seed, const std::string& out_path) {
  const SparseDistribution dist = read_population(pop_path);
  NoisySampler sampler(dist, NoiseRate{mu}, seed);
  std::vector<BitVec> samples;
  samples.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) samples.push_back(sampler.draw());
  write_samples(out_path, mu, seed, samples);
  return 0;
}

// ---- recover ---------------------------------------------------------------

std::string report_to_csv(const RecoveryReport& report) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "target,ok,estimate,inner,upsilon,l1_norm,max_degree,support_size,"
        "downset_size,r,r_uncapped,far_threshold,far_count,delta,eta,"
        "samples_inner,samples_upsilon,audit_eta,audit_tail,audit_bound,"
        "error\n";
  for (const PointReport& row : report.rows) {
    os << row.target.to_string() << ',' << (row.ok ? 1 : 0) << ','
       << row.estimate << ',' << row.inner << ',' << row.upsilon << ','
       << row.l1_norm << ',' << row.max_degree << ',' << row.support_size
       << ',' << row.downset_size << ',' << row.r << ',' << row.r_uncapped
       << ',' << row.far_threshold << ',' << row.far_count << ',' << row.delta
       << ',' << row.eta << ',' << row.samples_inner << ','
       << row.samples_upsilon << ',' << row.audit.eta_term << ','
       << row.audit.tail_term << ',' << row.audit.bound << ','
       << csv_quote(row.error) << '\n';
  }
  for (const std::string& w : report.warnings) os << "# warning: " << w << '\n';
  return os.str();
}

nlohmann::json row_to_json(const PointReport& row) {
  return nlohmann::json{{"target", row.target.to_string()},
                        {"ok", row.ok},
                        {"estimate", row.estimate},
                        {"inner", row.inner},
                        {"upsilon", row.upsilon},
                        {"l1_norm", row.l1_norm},
                        {"max_degree", row.max_degree},
                        {"support_size", row.support_size},
                        {"downset_size", row.downset_size},
                        {"r", row.r},
                        {"r_uncapped", row.r_uncapped},
                        {"far_threshold", row.far_threshold},
                        {"far_count", row.far_count},
                        {"delta", row.delta},
                        {"eta", row.eta},
                        {"samples_inner", row.samples_inner},
                        {"samples_upsilon", row.samples_upsilon},
                        {"audit_eta", row.audit.eta_term},
                        {"audit_tail", row.audit.tail_term},
                        {"audit_bound", row.audit.bound},
                        {"error", row.error}};
}

std::string report_to_json(const RecoveryReport& report) {
  nlohmann::json doc;
  doc["all_ok"] = report.all_ok;
  doc["normalized"] = report.normalized;
  doc["warnings"] = report.warnings;
  doc["rows"] = nlohmann::json::array();
  for (const PointReport& row : report.rows) {
    doc["rows"].push_back(row_to_json(row));
  }
  return doc.dump(2) + "\n";
}

int cmd_recover(const std::string& pop_path, const std::string& samples_path,
                bool mu_given, double mu, const RecoveryConfig& cfg_in,
                const std::string& format, const std::string& out_path) {
  const SparseDistribution dist = read_population(pop_path);
  RecoveryConfig cfg = cfg_in;

  std::unique_ptr<SampleSource> source;
  if (!samples_path.empty()) {
    SampleFile sf = read_samples(samples_path);
    if (sf.n != dist.n) {
      throw std::invalid_argument(
          "sample file dimension disagrees with the population file");
    }
    if (mu_given && std::abs(mu - sf.mu) > 1e-12) {
      throw std::invalid_argument(
          "--mu disagrees with the sample file header; drop the flag or fix "
          "the file");
    }
    source = std::make_unique<VectorSampleSource>(std::move(sf.samples),
                                                  sf.mu);
  } else {
    if (!mu_given) {
      throw std::invalid_argument(
          "live sampling needs --mu (or pass --samples <file>)");
    }
    source = std::make_unique<NoisySampler>(dist, NoiseRate{mu}, cfg.seed);
  }

  RecoveryReport report;
  try {
    report = recover_distribution(*source, dist.points, cfg);
  } catch (const InsufficientSamplesError& e) {
    std::cerr << "samples file too short: the estimation tasks require "
              << e.required << " samples, the file holds " << e.available
              << "\n";
    return kExitInputError;
  }

  write_text(out_path,
             format == "json" ? report_to_json(report) : report_to_csv(report));
  return report.all_ok ? 0 : kExitRecoveryFailure;
}

// ---- bench -----------------------------------------------------------------

struct BenchFlags {
  std::string mus = "0.6";
  std::string ks = "3";
  std::string epsilons = "0.1";
  int reps = 3;
  int n = 10;
  int max_r = 24;
  double kappa = 0.05;
  double delta_override = -1.0;
  double eta_override = -1.0;
  std::uint64_t seed = 0;
  std::string out_path;
};

int cmd_bench(const BenchFlags& flags) {
  const std::vector<double> mus = parse_double_list(flags.mus, "--mus");
  const std::vector<int> ks = parse_int_list(flags.ks, "--ks");
  const std::vector<double> epsilons =
      parse_double_list(flags.epsilons, "--epsilons");
  std::ostringstream os;
  os << std::setprecision(17);
  os << "mu,k,epsilon,rep,n,r,downset_size,samples_inner,samples_upsilon,"
        "ell_l1,ell_l1_bound,ell_residual,ell0_l1,ell0_l1_bound,status\n";
  std::uint64_t cell = 0;
  for (double m : mus) {
    for (int k : ks) {
      for (double eps : epsilons) {
        ++cell;
        for (int rep = 0; rep < flags.reps; ++rep) {
          const NoiseRate mu{m};
          Rng rng(derive_seed(flags.seed, cell,
                              static_cast<std::uint64_t>(rep)));
          const auto support = random_support(flags.n, k, rng, true);
          const double delta = flags.delta_override > 0.0
                                   ? flags.delta_override
                                   : m * m / 16.0;
          const double eta =
              flags.eta_override > 0.0 ? flags.eta_override : eps / 16.0;
          const std::uint64_t r_uncapped =
              default_radius_uncapped(m, k, eps);
          const int r = static_cast<int>(
              std::min<std::uint64_t>(std::min(flags.n, flags.max_r),
                                      r_uncapped));
          std::vector<BitVec> gens;
          for (const BitVec& p : support) {
            if (p.popcount() <= r) gens.push_back(p);
          }
          auto ds = make_downset(flags.n, gens);

          os << m << ',' << k << ',' << eps << ',' << rep << ',' << flags.n
             << ',' << r << ',' << ds->size() << ',';
          try {
            const EllFunction ell = ds->max_weight() == 0
                                        ? build_ell_zero(ds)
                                        : build_ell(ds, delta, eta);
            const EllFunction ell0 = build_ell_zero(ds);
            const std::uint64_t samples_inner = inner_product_budget(
                ell.character, m, eps / 16.0, flags.kappa / 2.0);
            const std::uint64_t samples_upsilon =
                upsilon_budget(eps / 8.0, flags.kappa / 2.0);
            double residual = 0.0;
            for (const BitVec& y : ds->members()) {
              if (y.none()) continue;
              residual =
                  std::max(residual, std::abs(eval(ell.monomial, y)));
            }
            const double kk = static_cast<double>(gens.size());
            const double ell_bound =
                kk * kk * std::pow(1.0 + 2.0 * delta, ell.r) *
                std::pow(2.0 / eta, 1.0 / delta * std::log(2.0 / delta));
            const double ell0_bound = kk * std::ldexp(1.0, r);
            os << samples_inner << ',' << samples_upsilon << ','
               << ell.character.l1_norm() << ',' << ell_bound << ','
               << residual << ',' << ell0.character.l1_norm() << ','
               << ell0_bound << ",ok\n";
          } catch (const std::exception& e) {
            // A failed cell stays in the sweep, marked with its reason.
            std::string reason = e.what();
            for (char& c : reason) {
              if (c == ',' || c == '\n') c = ';';
            }
            os << "0,0,0,0,0,0,0," << csv_quote("failed: " + reason) << '\n';
          }
        }
      }
    }
  }
  write_text(flags.out_path, os.str());
  return 0;
}

// ---- verify ----------------------------------------------------------------

int cmd_verify(const VerifyOptions& opts) {
  const std::vector<CheckResult> results = run_verify_suite(opts);
  int failures = 0;
  for (const CheckResult& r : results) {
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name;
    if (!r.detail.empty()) std::cout << ": " << r.detail;
    std::cout << '\n';
    if (!r.pass) ++failures;
  }
  if (failures == 0) {
    std::cout << "verify: all " << results.size() << " checks passed\n";
    return 0;
  }
  std::cout << "verify: " << failures << " of " << results.size()
            << " checks failed\n";
  return kExitRecoveryFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Sparse population recovery from bit-flip-noised samples.\n"
      "Exit codes: 0 success, 1 recovery failure, 2 input error."};
  app.require_subcommand(1);

  // gen ----------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "Generate a synthetic population file");
  int gen_n = 10, gen_k = 3;
  std::string gen_profile = "uniform";
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("--n", gen_n, "Cube dimension")->required()
      ->check(CLI::Range(1, 4096));
  gen->add_option("--k", gen_k, "Support size")->required()
      ->check(CLI::PositiveNumber);
  gen->add_option("--profile", gen_profile,
                  "Weight profile: uniform | geometric | dirichlet")
      ->check(CLI::IsMember({"uniform", "geometric", "dirichlet"}));
  gen->add_option("--seed", gen_seed, "RNG seed");
  gen->add_option("--out", gen_out, "Output population file")->required();

  // sample -------------------------------------------------------------
  auto* sample =
      app.add_subcommand("sample", "Draw noisy samples from a population");
  std::string sample_pop, sample_out;
  double sample_mu = 0.0;
  std::uint64_t sample_count = 1000, sample_seed = 0;
  sample->add_option("--population", sample_pop, "Population file")
      ->required();
  sample->add_option("--mu", sample_mu,
                     "Channel correlation (flip probability (1-mu)/2)")
      ->required()
      ->check(CLI::Range(1e-9, 1.0));
  sample->add_option("--count", sample_count, "Number of samples")
      ->required();
  sample->add_option("--seed", sample_seed, "RNG seed");
  sample->add_option("--out", sample_out, "Output sample file")->required();

  // recover ------------------------------------------------------------
  auto* recover = app.add_subcommand(
      "recover",
      "Estimate every support weight from noisy samples.\n"
      "CSV columns: target,ok,estimate,inner,upsilon,l1_norm,max_degree,"
      "support_size,downset_size,r,r_uncapped,far_threshold,far_count,"
      "delta,eta,samples_inner,samples_upsilon,audit_eta,audit_tail,"
      "audit_bound,error");
  std::string rec_pop, rec_samples, rec_format = "csv", rec_out;
  double rec_mu = 0.0;
  RecoveryConfig cfg;
  recover->add_option("--population", rec_pop,
                      "Population file naming the candidate support")
      ->required();
  recover->add_option("--samples", rec_samples,
                      "Replay samples from this file instead of live draws");
  auto* rec_mu_opt =
      recover->add_option("--mu", rec_mu, "Channel correlation for live draws")
          ->check(CLI::Range(1e-9, 1.0));
  recover->add_option("--epsilon", cfg.epsilon, "Accuracy target")
      ->check(CLI::Range(1e-9, 1.0));
  recover->add_option("--kappa", cfg.kappa, "Failure probability")
      ->check(CLI::Range(1e-12, 1.0));
  recover->add_option("--seed", cfg.seed, "RNG seed");
  recover->add_option("--workers", cfg.workers, "Worker threads")
      ->check(CLI::Range(1, 256));
  recover->add_option("--max-r", cfg.max_r, "Cap on the interpolation radius")
      ->check(CLI::Range(0, 64));
  recover->add_option("--r", cfg.r_override,
                      "Force the interpolation radius (overrides the rule)");
  recover->add_option("--eta", cfg.eta_override,
                      "Override the off-origin leakage budget");
  recover->add_option("--delta", cfg.delta_override,
                      "Override the attenuation rate");
  recover->add_option("--far-constant", cfg.far_constant,
                      "Constant in the far-threshold rule")
      ->check(CLI::PositiveNumber);
  recover->add_flag("--normalize", cfg.normalize,
                    "Project the estimates onto the probability simplex");
  recover->add_option("--format", rec_format, "Report format")
      ->check(CLI::IsMember({"csv", "json"}));
  recover->add_option("--out", rec_out, "Report file (default stdout)");

  // bench ----------------------------------------------------------------
  auto* bench = app.add_subcommand(
      "bench",
      "Sweep (mu, k, epsilon) cells and record interpolator sizes.\n"
      "CSV columns: mu,k,epsilon,rep,n,r,downset_size,samples_inner,"
      "samples_upsilon,ell_l1,ell_l1_bound,ell_residual,ell0_l1,"
      "ell0_l1_bound,status");
  BenchFlags bf;
  bench->add_option("--mus", bf.mus, "Comma-separated mu grid");
  bench->add_option("--ks", bf.ks, "Comma-separated support-size grid");
  bench->add_option("--epsilons", bf.epsilons,
                    "Comma-separated accuracy grid");
  bench->add_option("--reps", bf.reps, "Repetitions per cell")
      ->check(CLI::Range(1, 1000));
  bench->add_option("--n", bf.n, "Cube dimension")->check(CLI::Range(1, 64));
  bench->add_option("--max-r", bf.max_r, "Cap on the interpolation radius")
      ->check(CLI::Range(0, 64));
  bench->add_option("--kappa", bf.kappa, "Failure probability")
      ->check(CLI::Range(1e-12, 1.0));
  bench->add_option("--delta", bf.delta_override,
                    "Override the attenuation rate");
  bench->add_option("--eta", bf.eta_override,
                    "Override the off-origin leakage budget");
  bench->add_option("--seed", bf.seed, "RNG seed");
  bench->add_option("--out", bf.out_path, "CSV file (default stdout)");

  // verify ---------------------------------------------------------------
  auto* verify = app.add_subcommand(
      "verify", "Cross-check the pipeline against exact small-n computations");
  VerifyOptions vo;
  verify->add_option("--n", vo.n, "Cube dimension for the dense checks")
      ->check(CLI::Range(2, 14));
  verify->add_option("--k", vo.k, "Support size of generated instances")
      ->check(CLI::Range(1, 32));
  verify->add_option("--mu", vo.mu, "Channel correlation")
      ->check(CLI::Range(1e-9, 1.0));
  verify->add_option("--epsilon", vo.epsilon, "Accuracy target")
      ->check(CLI::Range(1e-9, 1.0));
  verify->add_option("--seed", vo.seed, "RNG seed");
  verify->add_option("--instances", vo.instances,
                     "Random instances per check")
      ->check(CLI::Range(1, 1000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInputError;
  }

  try {
    if (gen->parsed()) {
      return cmd_gen(gen_n, gen_k, gen_profile, gen_seed, gen_out);
    }
    if (sample->parsed()) {
      return cmd_sample(sample_pop, sample_mu, sample_count, sample_seed,
                        sample_out);
    }
    if (recover->parsed()) {
      return cmd_recover(rec_pop, rec_samples, rec_mu_opt->count() > 0, rec_mu,
                         cfg, rec_format, rec_out);
    }
    if (bench->parsed()) {
      return cmd_bench(bf);
    }
    if (verify->parsed()) {
      return cmd_verify(vo);
    }
  } catch (const RecoveryError& e) {
    std::cerr << "recovery failed: " << e.what() << "\n";
    return kExitRecoveryFailure;
  } catch (const InsufficientSamplesError& e) {
    std::cerr << "samples file too short: the estimation tasks require "
              << e.required << " samples, the file holds " << e.available
              << "\n";
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return 0;
}
