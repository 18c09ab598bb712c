#include "popres/estimators.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace popres {

namespace {

void check_probability(double value, const char* what) {
  if (!(value > 0.0 && value < 1.0)) {
    throw std::invalid_argument(std::string(what) + " must lie in (0, 1)");
  }
}

double chi_sum_over_draws(SampleSource& source, const BitVec& S,
                          std::uint64_t total, const ParallelConfig& par) {
  const auto counts = split_counts(total, par.workers);
  auto drawers = source.open_task(par.task_id, counts);
  const auto partials = run_worker_partials(par.workers, [&](int w) {
    std::int64_t acc = 0;
    const std::uint64_t mine = counts[static_cast<std::size_t>(w)];
    auto& draw = drawers[static_cast<std::size_t>(w)];
    for (std::uint64_t i = 0; i < mine; ++i) acc += chi(S, draw());
    return static_cast<double>(acc);
  });
  double sum = 0.0;
  for (double p : partials) sum += p;  // integer-valued partials, exact
  return sum;
}

}  // namespace

EstimatorBudget make_budget(double epsilon, double kappa, double per_S_bound) {
  check_probability(epsilon, "accuracy");
  check_probability(kappa, "failure probability");
  if (!(per_S_bound > 0.0)) {
    throw std::invalid_argument("value bound must be positive");
  }
  EstimatorBudget b;
  b.epsilon = epsilon;
  b.kappa = kappa;
  b.per_S_bound = per_S_bound;
  const double m = 2.0 * per_S_bound * per_S_bound * std::log(2.0 / kappa) /
                   (epsilon * epsilon);
  b.M = static_cast<std::uint64_t>(std::ceil(m));
  if (b.M == 0) b.M = 1;
  return b;
}

double estimate_fourier(SampleSource& source, const BitVec& S,
                        const EstimatorBudget& budget,
                        const ParallelConfig& par) {
  if (S.dimension() != source.dimension()) {
    throw std::invalid_argument("estimate_fourier: dimension mismatch");
  }
  const double sum = chi_sum_over_draws(source, S, budget.M, par);
  const double unskew = std::pow(1.0 / source.mu(), S.popcount());
  return unskew * sum / static_cast<double>(budget.M);
}

double attenuated_kernel(const BitVec& z, const BitVec& S, NoiseRate mu,
                         const FarSet& fs, int max_set_bits) {
  if (z.dimension() != S.dimension() || z.dimension() != fs.n) {
    throw std::invalid_argument("attenuated_kernel: dimension mismatch");
  }
  const std::vector<int> spos = S.set_positions();
  const int m = static_cast<int>(spos.size());
  if (m > max_set_bits) {
    throw std::invalid_argument("attenuated_kernel: subset too large (" +
                                std::to_string(m) + " bits, cap " +
                                std::to_string(max_set_bits) + ")");
  }

  const std::size_t block = std::size_t{1} << m;
  std::vector<double> u(block, 0.0);
  std::size_t idx0 = 0;
  for (int j = 0; j < m; ++j) {
    if (z.get(spos[j])) idx0 |= std::size_t{1} << j;
  }
  u[idx0] = 1.0;

  const CoordKernel inv = coord_kernel(mu, true);
  const CoordKernel fwd = coord_kernel(mu, false);
  auto apply = [&](const CoordKernel& kern) {
    for (int j = 0; j < m; ++j) {
      const std::size_t stride = std::size_t{1} << j;
      for (std::size_t base = 0; base < block; ++base) {
        if (base & stride) continue;
        const double u0 = u[base];
        const double u1 = u[base | stride];
        u[base] = kern.m[0][0] * u0 + kern.m[0][1] * u1;
        u[base | stride] = kern.m[1][0] * u0 + kern.m[1][1] * u1;
      }
    }
  };

  apply(inv);
  for (std::size_t b = 0; b < block; ++b) {
    if (std::popcount(b) & 1) u[b] = -u[b];
  }
  apply(fwd);

  const BitVec base_point = z.and_not(S);
  double total = 0.0;
  for (std::size_t b = 0; b < block; ++b) {
    BitVec y = base_point;
    for (int j = 0; j < m; ++j) {
      if (b & (std::size_t{1} << j)) y.set(spos[j], true);
    }
    if (in_E(y, fs)) total += u[b];
  }
  return total;
}

GHatEstimate estimate_g_hat(SampleSource& source, const BitVec& S,
                            const FarSet& fs, const EstimatorBudget& budget,
                            const ParallelConfig& par) {
  if (S.dimension() != source.dimension()) {
    throw std::invalid_argument("estimate_g_hat: dimension mismatch");
  }
  const NoiseRate mu{source.mu()};
  const double bound = budget.per_S_bound * (1.0 + 1e-9);
  const auto counts = split_counts(budget.M, par.workers);
  auto drawers = source.open_task(par.task_id, counts);
  const auto partials = run_worker_partials(par.workers, [&](int w) {
    double acc = 0.0;
    const std::uint64_t mine = counts[static_cast<std::size_t>(w)];
    auto& draw = drawers[static_cast<std::size_t>(w)];
    for (std::uint64_t i = 0; i < mine; ++i) {
      const double v = attenuated_kernel(draw(), S, mu, fs);
      if (std::abs(v) > bound) {
        throw std::logic_error("kernel value escaped its bound");
      }
      acc += v;
    }
    return acc;
  });
  GHatEstimate out;
  out.S = S;
  out.budget = budget;
  double sum = 0.0;
  for (double p : partials) sum += p;  // worker order fixed
  out.value = sum / static_cast<double>(budget.M);
  if (std::abs(out.value) > bound) {
    throw std::logic_error("coefficient estimate escaped its bound");
  }
  return out;
}

std::uint64_t inner_product_budget(const CharacterExpansion& ell_hat,
                                   double mu, double epsilon, double kappa) {
  check_probability(epsilon, "accuracy");
  check_probability(kappa, "failure probability");
  if (!(mu > 0.0 && mu <= 1.0)) {
    throw std::invalid_argument("noise rate must lie in (0, 1]");
  }
  const double T = ell_hat.l1_norm();
  const std::uint64_t N = ell_hat.support_size();
  if (N == 0 || T == 0.0) return 1;
  const int S0 = ell_hat.max_degree();
  const double per_coeff = epsilon / T;
  const double bound = std::pow(1.0 / mu, S0);
  const double m = 2.0 * bound * bound *
                   std::log(2.0 * static_cast<double>(N) / kappa) /
                   (per_coeff * per_coeff);
  const double capped = std::ceil(m);
  if (!(capped < 9e18)) {
    throw std::invalid_argument(
        "inner-product budget overflows; loosen accuracy or lower the "
        "expansion degree");
  }
  const auto M = static_cast<std::uint64_t>(capped);
  return M == 0 ? 1 : M;
}

InnerProductEstimate estimate_inner_product(SampleSource& source,
                                            const EllFunction& ell,
                                            const FarSet& fs, double epsilon,
                                            double kappa,
                                            const ParallelConfig& par) {
  const CharacterExpansion& hat = ell.character;
  if (!hat.ds || hat.ds->dimension() != source.dimension()) {
    throw std::invalid_argument("estimate_inner_product: dimension mismatch");
  }
  InnerProductEstimate out;
  out.l1_norm = hat.l1_norm();
  out.max_degree = hat.max_degree();
  out.support_size = hat.support_size();
  out.samples = inner_product_budget(hat, source.mu(), epsilon, kappa);

  std::vector<std::size_t> support;
  support.reserve(out.support_size);
  for (std::size_t i = 0; i < hat.coeffs.size(); ++i) {
    if (hat.coeffs[i] != 0.0) support.push_back(i);
  }
  if (support.empty()) return out;

  const auto& members = hat.ds->members();
  const NoiseRate mu{source.mu()};
  const auto counts = split_counts(out.samples, par.workers);
  auto drawers = source.open_task(par.task_id, counts);

  // One batch serves every coefficient: each draw contributes its kernel
  // value to all support sets at once, and per-S unbiasedness survives the
  // reuse because the expectation is linear.
  std::vector<std::vector<double>> partial_sums(
      static_cast<std::size_t>(par.workers),
      std::vector<double>(support.size(), 0.0));
  run_worker_partials(par.workers, [&](int w) {
    auto& acc = partial_sums[static_cast<std::size_t>(w)];
    const std::uint64_t mine = counts[static_cast<std::size_t>(w)];
    auto& draw = drawers[static_cast<std::size_t>(w)];
    for (std::uint64_t i = 0; i < mine; ++i) {
      const BitVec z = draw();
      for (std::size_t t = 0; t < support.size(); ++t) {
        acc[t] += attenuated_kernel(z, members[support[t]], mu, fs);
      }
    }
    return 0.0;
  });

  double value = 0.0;
  for (std::size_t t = 0; t < support.size(); ++t) {
    double sum = 0.0;
    for (int w = 0; w < par.workers; ++w) {
      sum += partial_sums[static_cast<std::size_t>(w)][t];
    }
    const double g_hat = sum / static_cast<double>(out.samples);
    value += hat.coeffs[support[t]] * g_hat;
  }
  out.value = value;
  return out;
}

}  // namespace popres
