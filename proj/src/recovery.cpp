#include "popres/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "popres/downset.hpp"
#include "popres/estimators.hpp"
#include "popres/filter_set.hpp"

namespace popres {

namespace {

void check_config(const RecoveryConfig& c) {
  if (!(c.epsilon > 0.0 && c.epsilon < 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1)");
  }
  if (!(c.kappa > 0.0 && c.kappa < 1.0)) {
    throw std::invalid_argument("kappa must lie in (0, 1)");
  }
  if (!(c.far_constant > 0.0)) {
    throw std::invalid_argument("far constant must be positive");
  }
  if (c.max_r < 0) throw std::invalid_argument("max_r must be >= 0");
  if (c.workers < 1) throw std::invalid_argument("workers must be >= 1");
}

// Projection of a vector onto the probability simplex (least squares):
// shift the largest entries by a common amount, zero the rest.
std::vector<double> project_to_simplex(const std::vector<double>& v) {
  std::vector<double> sorted = v;
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  double cumulative = 0.0;
  double theta = 0.0;
  int rho = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    cumulative += sorted[i];
    const double candidate =
        (cumulative - 1.0) / static_cast<double>(i + 1);
    if (sorted[i] - candidate > 0.0) {
      rho = static_cast<int>(i + 1);
      theta = candidate;
    }
  }
  (void)rho;
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = std::max(0.0, v[i] - theta);
  }
  return out;
}

}  // namespace

AuditBudget audit_error_budget(const EllFunction& ell, int r, double mu) {
  AuditBudget out;
  out.eta_term = ell.eta;
  out.tail_term =
      ell.character.l1_norm() * std::exp(-mu * mu * static_cast<double>(r) / 2.0);
  out.bound = out.eta_term + out.tail_term;
  return out;
}

std::uint64_t default_radius_uncapped(double mu, int k, double epsilon) {
  if (!(mu > 0.0 && mu <= 1.0)) {
    throw std::invalid_argument("noise rate must lie in (0, 1]");
  }
  if (k < 1) throw std::invalid_argument("support size must be positive");
  const double v = 100.0 / std::pow(mu, 4.0) * std::log(1.0 / mu) *
                   std::log(static_cast<double>(k) / epsilon);
  if (v <= 0.0) return 0;
  if (v >= 9e18) return std::uint64_t{9000000000000000000u};
  return static_cast<std::uint64_t>(std::ceil(v));
}

PointReport recover_point(SampleSource& source,
                          const std::vector<BitVec>& support,
                          const BitVec& target, const RecoveryConfig& config,
                          std::uint64_t task_base) {
  check_config(config);
  if (support.empty()) {
    throw std::invalid_argument("candidate support must be nonempty");
  }
  if (std::find(support.begin(), support.end(), target) == support.end()) {
    throw std::invalid_argument("target must be a candidate support point");
  }

  PointReport row;
  row.target = target;
  const int n = source.dimension();
  const double mu = source.mu();
  const int k = static_cast<int>(support.size());

  // Shift the target to the origin: samples and support move together, so
  // from here on the pipeline only ever estimates a mass at 0.
  TranslatedSource shifted(source, target);
  std::vector<BitVec> translated;
  translated.reserve(support.size());
  for (const BitVec& p : support) translated.push_back(p ^ target);

  FarSet fs = build_far_set(translated, NoiseRate{mu}, config.far_constant);
  row.far_threshold = fs.threshold;
  row.far_count = fs.far_points.size();

  row.delta = config.delta_override > 0.0 ? config.delta_override
                                          : mu * mu / 16.0;
  row.eta = config.eta_override > 0.0 ? config.eta_override
                                      : config.epsilon / 16.0;
  row.r_uncapped = default_radius_uncapped(mu, k, config.epsilon);
  if (config.r_override >= 0) {
    row.r = std::min(n, config.r_override);
  } else {
    const std::uint64_t capped =
        std::min<std::uint64_t>(static_cast<std::uint64_t>(config.max_r),
                                row.r_uncapped);
    row.r = static_cast<int>(
        std::min<std::uint64_t>(static_cast<std::uint64_t>(n), capped));
  }

  // Interpolation set: in-ball translated support. Points beyond the ball
  // are left to the filter, which the audit bound accounts for.
  std::vector<BitVec> generators;
  for (const BitVec& p : translated) {
    if (p.popcount() <= row.r) generators.push_back(p);
  }
  auto ds = make_downset(n, generators);
  row.downset_size = ds->size();

  EllFunction ell = row.r == 0 ? build_ell_zero(ds)
                               : build_ell(ds, row.delta, row.eta);
  row.audit = audit_error_budget(ell, row.r, mu);

  ParallelConfig par;
  par.workers = config.workers;
  par.task_id = task_base;
  InnerProductEstimate inner = estimate_inner_product(
      shifted, ell, fs, config.epsilon / 16.0, config.kappa / 2.0, par);
  row.inner = inner.value;
  row.l1_norm = inner.l1_norm;
  row.max_degree = inner.max_degree;
  row.support_size = inner.support_size;
  row.samples_inner = inner.samples;

  UpsilonEstimate ups =
      estimate_upsilon(fs, config.epsilon / 8.0, config.kappa / 2.0,
                       config.seed, task_base + 2, config.workers);
  row.upsilon = ups.value;
  row.samples_upsilon = ups.samples;

  if (ups.value < 0.25) {
    std::ostringstream msg;
    msg << "filter mass estimate " << ups.value
        << " fell below 1/4 (threshold " << fs.threshold << ", "
        << fs.far_points.size()
        << " far points); the far-set guarantee looks violated, refusing to "
           "divide";
    throw RecoveryError(msg.str());
  }

  row.estimate = std::clamp(inner.value / ups.value, 0.0, 1.0);
  row.ok = true;
  return row;
}

RecoveryReport recover_distribution(SampleSource& source,
                                    const std::vector<BitVec>& support,
                                    const RecoveryConfig& config) {
  check_config(config);
  RecoveryReport report;
  report.rows.reserve(support.size());
  bool all_ok = true;
  for (std::size_t i = 0; i < support.size(); ++i) {
    // Three RNG stream ids per point: inner product (open_task adds one to
    // its base) and the filter-mass estimate; keeping the ranges disjoint
    // keeps every estimate independent under one seed.
    const std::uint64_t task_base = 3 * static_cast<std::uint64_t>(i);
    try {
      report.rows.push_back(
          recover_point(source, support, support[i], config, task_base));
    } catch (const InsufficientSamplesError&) {
      throw;  // a short sample file poisons the whole run, not one point
    } catch (const std::invalid_argument&) {
      throw;  // caller errors should not be downgraded to row failures
    } catch (const std::exception& e) {
      PointReport row;
      row.target = support[i];
      row.ok = false;
      row.error = e.what();
      report.rows.push_back(std::move(row));
      all_ok = false;
    }
  }
  report.all_ok = all_ok;

  double sum = 0.0;
  for (const PointReport& row : report.rows) sum += row.estimate;
  const double slack =
      config.epsilon * static_cast<double>(support.size());
  if (all_ok && std::abs(sum - 1.0) > slack) {
    std::ostringstream msg;
    msg << "estimates sum to " << sum
        << "; the candidate support may not match the population";
    report.warnings.push_back(msg.str());
  }

  if (config.normalize && all_ok) {
    std::vector<double> est;
    est.reserve(report.rows.size());
    for (const PointReport& row : report.rows) est.push_back(row.estimate);
    const std::vector<double> proj = project_to_simplex(est);
    for (std::size_t i = 0; i < proj.size(); ++i) {
      report.rows[i].estimate = proj[i];
    }
    report.normalized = true;
  }
  return report;
}

}  // namespace popres
