// Python bindings for the main operations: sampling, recovery, the local
// inverse and the field self-check. Points cross the boundary as ASCII bit
// strings, leftmost character being coordinate 1.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "popres/distribution.hpp"
#include "popres/filter_set.hpp"
#include "popres/local_inverse.hpp"
#include "popres/noise.hpp"
#include "popres/recovery.hpp"
#include "popres/sample_source.hpp"
#include "popres/verify.hpp"

namespace py = pybind11;
using namespace popres;

namespace {

std::vector<BitVec> parse_points(const std::vector<std::string>& rows) {
  std::vector<BitVec> out;
  out.reserve(rows.size());
  for (const std::string& r : rows) out.push_back(BitVec::from_string(r));
  return out;
}

RecoveryConfig make_config(double epsilon, double kappa, double far_constant,
                           int max_r, int r, double delta, double eta,
                           int workers, bool normalize, std::uint64_t seed) {
  RecoveryConfig cfg;
  cfg.epsilon = epsilon;
  cfg.kappa = kappa;
  cfg.far_constant = far_constant;
  cfg.max_r = max_r;
  cfg.r_override = r;
  cfg.delta_override = delta;
  cfg.eta_override = eta;
  cfg.workers = workers;
  cfg.normalize = normalize;
  cfg.seed = seed;
  return cfg;
}

py::dict row_to_dict(const PointReport& row) {
  py::dict d;
  d["target"] = row.target.to_string();
  d["ok"] = row.ok;
  d["error"] = row.error;
  d["estimate"] = row.estimate;
  d["inner"] = row.inner;
  d["upsilon"] = row.upsilon;
  d["l1_norm"] = row.l1_norm;
  d["max_degree"] = row.max_degree;
  d["support_size"] = row.support_size;
  d["downset_size"] = row.downset_size;
  d["r"] = row.r;
  d["r_uncapped"] = row.r_uncapped;
  d["far_threshold"] = row.far_threshold;
  d["far_count"] = row.far_count;
  d["delta"] = row.delta;
  d["eta"] = row.eta;
  d["samples_inner"] = row.samples_inner;
  d["samples_upsilon"] = row.samples_upsilon;
  d["audit_eta"] = row.audit.eta_term;
  d["audit_tail"] = row.audit.tail_term;
  d["audit_bound"] = row.audit.bound;
  return d;
}

py::dict report_to_dict(const RecoveryReport& report) {
  py::list rows;
  for (const PointReport& row : report.rows) rows.append(row_to_dict(row));
  py::dict d;
  d["rows"] = rows;
  d["all_ok"] = report.all_ok;
  d["normalized"] = report.normalized;
  d["warnings"] = report.warnings;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Recovery of a sparse distribution on binary strings from "
      "bit-flip-noised samples.";

  m.def(
      "sample",
      [](const std::vector<std::string>& points,
         const std::vector<double>& weights, double mu, std::uint64_t count,
         std::uint64_t seed) {
        const SparseDistribution dist(
            points.empty() ? 0 : static_cast<int>(points.front().size()),
            parse_points(points), weights);
        NoisySampler sampler(dist, NoiseRate{mu}, seed);
        std::vector<std::string> out;
        out.reserve(count);
        for (std::uint64_t i = 0; i < count; ++i)
          out.push_back(sampler.draw().to_string());
        return out;
      },
      py::arg("points"), py::arg("weights"), py::arg("mu"), py::arg("count"),
      py::arg("seed") = 0,
      "Draw noisy samples from the given population: each coordinate of a "
      "population draw flips independently with probability (1 - mu) / 2.");

  m.def(
      "recover",
      [](const std::vector<std::string>& points,
         const std::vector<double>& weights, double mu, double epsilon,
         double kappa, double far_constant, int max_r, int r, double delta,
         double eta, int workers, bool normalize, std::uint64_t seed) {
        const SparseDistribution dist(
            points.empty() ? 0 : static_cast<int>(points.front().size()),
            parse_points(points), weights);
        NoisySampler sampler(dist, NoiseRate{mu}, seed);
        const RecoveryConfig cfg =
            make_config(epsilon, kappa, far_constant, max_r, r, delta, eta,
                        workers, normalize, seed);
        return report_to_dict(recover_distribution(sampler, dist.points, cfg));
      },
      py::arg("points"), py::arg("weights"), py::arg("mu"),
      py::arg("epsilon") = 0.1, py::arg("kappa") = 0.05,
      py::arg("far_constant") = 2.0, py::arg("max_r") = 24, py::arg("r") = -1,
      py::arg("delta") = -1.0, py::arg("eta") = -1.0, py::arg("workers") = 1,
      py::arg("normalize") = false, py::arg("seed") = 0,
      "Self-test recovery: draw live noisy samples from the given population "
      "and estimate every support weight. Returns the full report as a "
      "dict.");

  m.def(
      "recover_from_samples",
      [](const std::vector<std::string>& support,
         const std::vector<std::string>& samples, double mu, double epsilon,
         double kappa, double far_constant, int max_r, int r, double delta,
         double eta, int workers, bool normalize, std::uint64_t seed) {
        std::vector<BitVec> support_points = parse_points(support);
        VectorSampleSource source(parse_points(samples), mu);
        const RecoveryConfig cfg =
            make_config(epsilon, kappa, far_constant, max_r, r, delta, eta,
                        workers, normalize, seed);
        return report_to_dict(
            recover_distribution(source, support_points, cfg));
      },
      py::arg("support"), py::arg("samples"), py::arg("mu"),
      py::arg("epsilon") = 0.1, py::arg("kappa") = 0.05,
      py::arg("far_constant") = 2.0, py::arg("max_r") = 24, py::arg("r") = -1,
      py::arg("delta") = -1.0, py::arg("eta") = -1.0, py::arg("workers") = 1,
      py::arg("normalize") = false, py::arg("seed") = 0,
      "Recover support weights from pre-recorded noisy samples; raises if "
      "the sample list is shorter than the computed budget.");

  m.def(
      "local_inverse",
      [](double delta, int r, double epsilon) {
        const LocalInverse inv = local_inverse(delta, r, epsilon);
        py::dict d;
        d["v"] = inv.v;
        d["epsilon"] = inv.epsilon;
        d["residual"] = inv.residual;
        d["sensitivity"] = inv.sensitivity;
        return d;
      },
      py::arg("delta"), py::arg("r"), py::arg("epsilon"),
      "Robust local inverse of the binomial smearing matrix at level zero: "
      "(A v)_0 = 1, every other image coordinate within epsilon, bounded "
      "infinity norm.");

  m.def(
      "far_threshold",
      [](double mu, int k, double far_constant) {
        return far_threshold(NoiseRate{mu}, k, far_constant);
      },
      py::arg("mu"), py::arg("k"), py::arg("far_constant") = 2.0,
      "Minimum Hamming weight at which a translated support point counts as "
      "far for the distance filter.");

  m.def(
      "verify",
      [](int n, int k, double mu, double epsilon, std::uint64_t seed,
         int instances) {
        VerifyOptions opts;
        opts.n = n;
        opts.k = k;
        opts.mu = mu;
        opts.epsilon = epsilon;
        opts.seed = seed;
        opts.instances = instances;
        py::list out;
        for (const CheckResult& r : run_verify_suite(opts)) {
          py::dict d;
          d["name"] = r.name;
          d["pass"] = r.pass;
          d["detail"] = r.detail;
          out.append(d);
        }
        return out;
      },
      py::arg("n") = 10, py::arg("k") = 3, py::arg("mu") = 0.8,
      py::arg("epsilon") = 0.1, py::arg("seed") = 0x5eed,
      py::arg("instances") = 10,
      "Cross-check the pipeline against exact small-n computations; returns "
      "one dict per check.");
}
