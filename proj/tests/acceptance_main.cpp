// Acceptance gate: one line per criterion, nonzero exit on any failure.
// Every numeric claim is checked against the brute-force oracles; the
// Monte-Carlo checks run under fixed seeds so a pass is reproducible.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "popres/attenuated.hpp"
#include "popres/downset.hpp"
#include "popres/estimators.hpp"
#include "popres/filter_set.hpp"
#include "popres/io.hpp"
#include "popres/local_inverse.hpp"
#include "popres/noise.hpp"
#include "popres/oracle.hpp"
#include "popres/recovery.hpp"
#include "popres/rng.hpp"
#include "popres/verify.hpp"

using namespace popres;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::string transcript;  // serialized numbers for the determinism rerun

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

void note(std::ostringstream& os, double v) {
  os << std::hexfloat << v << '\n' << std::defaultfloat;
}

// ---- criterion 1: integer transform pair ---------------------------------

Outcome criterion_mobius() {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  Rng rng(derive_seed(101, 0, 0));
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 4 + static_cast<int>(rng.next_u64() % 13);  // 4..16
    const int gens_count = 1 + static_cast<int>(rng.next_u64() % 6);
    std::vector<BitVec> gens;
    for (int g = 0; g < gens_count; ++g) {
      BitVec p(n);
      const int weight =
          std::min(n, static_cast<int>(rng.next_u64() % 7));  // 0..6
      while (p.popcount() < weight) {
        p.set(static_cast<int>(rng.next_u64() % n), true);
      }
      gens.push_back(p);
    }
    const Downset ds(n, gens);
    std::vector<std::int64_t> f(ds.size());
    for (auto& v : f) {
      v = static_cast<std::int64_t>(rng.next_u64() % 2000001) - 1000000;
    }
    if (mobius_transform(ds, zeta_transform(ds, f)) != f ||
        zeta_transform(ds, mobius_transform(ds, f)) != f) {
      out.fail("transform pair failed to invert on trial " +
               std::to_string(trial));
    }
  }
  const double secs = elapsed_seconds(start);
  if (secs >= 10.0) out.fail("took " + std::to_string(secs) + "s");
  if (out.pass) {
    out.detail = "50 downsets exact both ways in " + std::to_string(secs) + "s";
  }
  return out;
}

// ---- criterion 2: local inverse grid --------------------------------------

Outcome criterion_local_inverse() {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  const double eps = 0.1;
  for (double delta : {0.1, 0.25, 0.5}) {
    for (int r : {5, 10, 20}) {
      const LocalInverse inv = local_inverse(delta, r, eps);
      const NoiseMatrix A = build_noise_matrix(delta, r);
      const std::vector<double> image = apply_noise_matrix(A, inv.v);
      if (std::abs(image[0] - 1.0) > 1e-9) {
        out.fail("(Av)_0 off one at delta=" + std::to_string(delta) +
                 " r=" + std::to_string(r));
      }
      double residual = 0.0;
      for (std::size_t i = 1; i < image.size(); ++i) {
        residual = std::max(residual, std::abs(image[i]));
      }
      if (residual > eps + 1e-9) {
        out.fail("residual " + std::to_string(residual) + " at delta=" +
                 std::to_string(delta) + " r=" + std::to_string(r));
      }
      const double cap =
          std::pow(2.0 / eps, 2.0 / delta * std::log(1.0 / delta));
      if (inv.sensitivity > cap) {
        out.fail("sensitivity cap violated at delta=" + std::to_string(delta) +
                 " r=" + std::to_string(r));
      }
    }
  }
  for (double delta : {0.1, 0.25, 0.5}) {
    for (int r : {1, 2, 3}) {
      const NoiseMatrix A = build_noise_matrix(delta, r);
      const std::vector<double> w = solve_min_infnorm(A, eps);
      double norm = 0.0;
      for (double x : w) norm = std::max(norm, std::abs(x));
      const double want = testing::lp_oracle_min_infnorm(A, eps);
      if (std::abs(norm - want) > 1e-6) {
        out.fail("solver optimum " + std::to_string(norm) + " vs oracle " +
                 std::to_string(want) + " at delta=" + std::to_string(delta) +
                 " r=" + std::to_string(r));
      }
    }
  }
  const double secs = elapsed_seconds(start);
  if (secs >= 30.0) out.fail("took " + std::to_string(secs) + "s");
  if (out.pass) {
    out.detail = "9 grid cells + 9 oracle cells in " + std::to_string(secs) +
                 "s";
  }
  return out;
}

// ---- criteria 3 and 4: interpolators --------------------------------------

struct EllInstance {
  std::shared_ptr<const Downset> ds;
  int gens_count = 0;
  double delta = 0.0;
  double eta = 0.0;
};

std::vector<EllInstance> ell_instances() {
  std::vector<EllInstance> out;
  Rng rng(derive_seed(303, 0, 0));
  const int n = 10;
  while (out.size() < 25) {
    EllInstance inst;
    inst.gens_count = 2 + static_cast<int>(rng.next_u64() % 5);  // 2..6
    std::vector<BitVec> gens;
    gens.push_back(BitVec(n));
    for (int g = 1; g < inst.gens_count; ++g) {
      BitVec p(n);
      const int weight = 1 + static_cast<int>(rng.next_u64() % 8);  // 1..8
      while (p.popcount() < weight) {
        p.set(static_cast<int>(rng.next_u64() % n), true);
      }
      gens.push_back(p);
    }
    inst.ds = make_downset(n, gens);
    if (inst.ds->max_weight() == 0) continue;
    inst.delta = 0.1 + 0.4 * rng.unit();
    inst.eta = 0.01 + 0.19 * rng.unit();
    out.push_back(std::move(inst));
  }
  return out;
}

Outcome criterion_ell() {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  for (const EllInstance& inst : ell_instances()) {
    const EllFunction ell = build_ell(inst.ds, inst.delta, inst.eta);
    const auto& members = inst.ds->members();

    if (std::abs(eval(ell.monomial, BitVec(10)) - 1.0) > 1e-9) {
      out.fail("origin value drifted");
    }
    const NoiseMatrix A = build_noise_matrix(inst.delta, ell.r);
    const std::vector<double> image = apply_noise_matrix(A, ell.inverse->v);
    for (const BitVec& y : members) {
      const double v = eval(ell.monomial, y);
      if (!y.none() && std::abs(v) > inst.eta * (1.0 + 1e-6)) {
        out.fail("off-origin value above eta");
      }
      if (std::abs(v - image[static_cast<std::size_t>(y.popcount())]) > 1e-8) {
        out.fail("monomial path disagrees with the matrix row");
      }
    }
    const double k = static_cast<double>(inst.gens_count);
    const double cap =
        k * k * std::pow(1.0 + 2.0 * inst.delta, ell.r) *
        std::pow(2.0 / inst.eta,
                 1.0 / inst.delta * std::log(2.0 / inst.delta));
    if (ell.character.l1_norm() > cap) out.fail("L1 norm above the cap");

    const DenseFunction dense = dense_from_character(ell.character);
    for (std::uint64_t mask = 0; mask < 1024; ++mask) {
      const BitVec S = BitVec::from_u64(10, mask);
      const double coeff = exact_fourier(dense, S) / 1024.0;
      if (!inst.ds->contains(S) && std::abs(coeff) > 1e-12) {
        out.fail("character support escaped the downset");
      }
    }
  }
  const double secs = elapsed_seconds(start);
  if (secs >= 60.0) out.fail("took " + std::to_string(secs) + "s");
  if (out.pass) {
    out.detail = "25 instances: interpolation, norm cap, support in " +
                 std::to_string(secs) + "s";
  }
  return out;
}

Outcome criterion_ell_zero() {
  Outcome out;
  for (const EllInstance& inst : ell_instances()) {
    const EllFunction ell = build_ell_zero(inst.ds);
    const auto& members = inst.ds->members();
    const auto scaled = testing::ell_zero_scaled_character(*inst.ds);
    const std::int64_t scale = std::int64_t{1} << inst.ds->max_weight();
    for (std::size_t i = 0; i < members.size(); ++i) {
      std::int64_t acc = 0;
      for (std::size_t j = 0; j < members.size(); ++j) {
        acc += scaled[j] * chi(members[j], members[i]);
      }
      const std::int64_t want = members[i].none() ? scale : 0;
      if (acc != want) out.fail("baseline interpolation not exact");
    }
    const double cap = static_cast<double>(inst.gens_count) *
                       std::ldexp(1.0, inst.ds->max_weight());
    if (ell.character.l1_norm() > cap + 1e-9) {
      out.fail("baseline L1 norm above k 2^r");
    }
  }
  if (out.pass) out.detail = "25 instances: exact zeros, L1 within k 2^r";
  return out;
}

// ---- criterion 5: noise operators ------------------------------------------

Outcome criterion_noise_ops() {
  Outcome out;
  for (double m : {0.3, 0.6, 0.9}) {
    const CoordKernel f = coord_kernel(NoiseRate{m}, false);
    const CoordKernel inv = coord_kernel(NoiseRate{m}, true);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        double prod = 0.0;
        for (int t = 0; t < 2; ++t) prod += f.m[i][t] * inv.m[t][j];
        if (std::abs(prod - (i == j ? 1.0 : 0.0)) > 1e-12) {
          out.fail("kernel inverse identity failed at mu=" + std::to_string(m));
        }
      }
    }
    const double norm =
        std::max(std::abs(inv.m[0][0]) + std::abs(inv.m[1][0]),
                 std::abs(inv.m[0][1]) + std::abs(inv.m[1][1]));
    if (std::abs(norm - 1.0 / m) > 1e-12) {
      out.fail("inverse norm off 1/mu at mu=" + std::to_string(m));
    }
  }
  Rng rng(derive_seed(505, 0, 0));
  const int n = 8;
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> table(std::size_t{1} << n);
    for (double& v : table) v = rng.unit() * 2.0 - 1.0;
    const double m1 = 0.3 + 0.65 * rng.unit();
    const double m2 = 0.3 + 0.65 * rng.unit();
    const auto chained =
        apply_T_mu_dense(apply_T_mu_dense(table, NoiseRate{m1}), NoiseRate{m2});
    const auto direct = apply_T_mu_dense(table, NoiseRate{m1 * m2});
    for (std::size_t i = 0; i < chained.size(); ++i) {
      if (std::abs(chained[i] - direct[i]) > 1e-10) {
        out.fail("semigroup gap at n=8");
        break;
      }
    }
  }
  if (out.pass) out.detail = "identities, norms and semigroup at stated tolerances";
  return out;
}

// ---- criterion 6: filter set ------------------------------------------------

Outcome criterion_filter(std::uint64_t seed_base) {
  Outcome out;
  std::ostringstream transcript;
  Rng rng(derive_seed(606, 0, 0));
  FarSet first_fs;
  bool have_first = false;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 10 + static_cast<int>(rng.next_u64() % 5);  // 10..14
    const int k = 2 + static_cast<int>(rng.next_u64() % 4);   // 2..5
    const double m = 0.5 + 0.4 * rng.unit();
    auto support = random_support(n, k, rng, true);
    const FarSet fs = build_far_set(support, NoiseRate{m}, 2.0);
    if (!have_first && !fs.far_points.empty()) {
      first_fs = fs;
      have_first = true;
    }
    const double at_origin = exact_T_mu_E(BitVec(n), fs);
    note(transcript, at_origin);
    if (at_origin < 0.5) out.fail("origin mass below 1/2");
    for (const BitVec& p : fs.far_points) {
      const double damped = exact_T_mu_E(p, fs);
      note(transcript, damped);
      if (damped > std::exp(-m * m * p.popcount() / 2.0)) {
        out.fail("far decay bound violated");
      }
    }
  }
  if (!have_first) {
    // The random stream above always produces far points in practice; keep
    // the Monte-Carlo leg meaningful if it ever stops doing so.
    first_fs = build_far_set(
        {BitVec(12), BitVec::from_string("111111111111")}, NoiseRate{0.6}, 2.0);
  }
  const double eps = 0.1;
  const double kappa = 0.1;
  const double exact = exact_T_mu_E(BitVec(first_fs.n), first_fs);
  int failures = 0;
  for (int t = 0; t < 200; ++t) {
    const UpsilonEstimate est = estimate_upsilon(
        first_fs, eps, kappa, seed_base + static_cast<std::uint64_t>(t), 0, 2);
    note(transcript, est.value);
    if (std::abs(est.value - exact) > eps) ++failures;
  }
  const double slack = 3.0 * std::sqrt(kappa * (1.0 - kappa) / 200.0);
  const int allowed = static_cast<int>(std::floor(200.0 * (kappa + slack)));
  if (failures > allowed) {
    out.fail(std::to_string(failures) + " of 200 trials out of tolerance");
  }
  if (out.pass) {
    out.detail = "20 exhaustive instances; " + std::to_string(failures) +
                 "/200 trials out of tolerance (allowed " +
                 std::to_string(allowed) + ")";
  }
  out.transcript = transcript.str();
  return out;
}

// ---- criterion 7: kernel and estimators -------------------------------------

Outcome criterion_kernel(std::uint64_t seed_base) {
  Outcome out;
  std::ostringstream transcript;
  Rng rng(derive_seed(seed_base, 0, 0));
  int kernel_cases = 0;
  while (kernel_cases < 1000) {
    const int n = 5 + static_cast<int>(rng.next_u64() % 6);  // 5..10
    const double m = 0.35 + 0.6 * rng.unit();
    auto support = random_support(n, 3, rng, true);
    const FarSet fs = build_far_set(support, NoiseRate{m}, 2.0);
    for (int c = 0; c < 10 && kernel_cases < 1000; ++c, ++kernel_cases) {
      const BitVec z = random_point(n, rng);
      BitVec S(n);
      for (int b = 0; b < n; ++b) {
        if (rng.bernoulli(0.35) && S.popcount() < 4) S.set(b, true);
      }
      const double fast = attenuated_kernel(z, S, NoiseRate{m}, fs);
      const double slow = testing::dense_kernel_oracle(z, S, NoiseRate{m}, fs);
      note(transcript, fast);
      if (std::abs(fast - slow) > 1e-9) out.fail("kernel off the dense oracle");
      if (std::abs(fast) > std::pow(1.0 / m, S.popcount()) * (1.0 + 1e-12)) {
        out.fail("kernel escaped its magnitude bound");
      }
    }
  }

  for (int trial = 0; trial < 10; ++trial) {
    const int n = 7 + static_cast<int>(rng.next_u64() % 4);  // 7..10
    const double m = 0.5 + 0.4 * rng.unit();
    SparseDistribution f = random_sparse(n, 3, rng, true);
    const FarSet fs = build_far_set(f.points, NoiseRate{m}, 2.0);
    const DenseFunction smoothed = exact_T_mu(f, NoiseRate{m});
    const DenseFunction g = exact_g(f, fs);
    BitVec S(n);
    for (int b = 0; b < n; ++b) {
      if (rng.bernoulli(0.3) && S.popcount() < 4) S.set(b, true);
    }
    double expectation = 0.0;
    for (std::uint64_t z = 0; z < (std::uint64_t{1} << n); ++z) {
      expectation += smoothed.values[z] *
                     attenuated_kernel(BitVec::from_u64(n, z), S,
                                       NoiseRate{m}, fs);
    }
    const double want = exact_fourier(g, S);
    note(transcript, expectation);
    if (std::abs(expectation - want) > 1e-9) {
      out.fail("kernel expectation off the filtered coefficient");
    }

    std::vector<BitVec> gens;
    for (const BitVec& p : f.points) {
      if (p.popcount() <= 5) gens.push_back(p);
    }
    auto ds = make_downset(n, gens);
    const EllFunction ell =
        ds->max_weight() == 0
            ? build_ell_zero(ds)
            : build_ell(ds, m * m / 16.0, 0.01);
    double via_coeffs = 0.0;
    const auto& members = ds->members();
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (ell.character.coeffs[i] == 0.0) continue;
      via_coeffs += ell.character.coeffs[i] * exact_fourier(g, members[i]);
    }
    const double via_points =
        exact_inner_product(dense_from_character(ell.character), g);
    note(transcript, via_coeffs);
    if (std::abs(via_coeffs - via_points) > 1e-9) {
      out.fail("coefficient pairing off the pointwise pairing");
    }
  }
  if (out.pass) {
    out.detail = "1000 kernel cases, 10 expectation and pairing instances";
  }
  out.transcript = transcript.str();
  return out;
}

// ---- criterion 8: error budget ----------------------------------------------

Outcome criterion_audit() {
  Outcome out;
  Rng rng(derive_seed(808, 0, 0));
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 9 + static_cast<int>(rng.next_u64() % 4);  // 9..12
    const double m = 0.55 + 0.35 * rng.unit();
    SparseDistribution f = random_sparse(n, 4, rng, true);
    const FarSet fs = build_far_set(f.points, NoiseRate{m}, 2.0);
    // One below the far threshold: out-of-ball support is then always far,
    // the regime the budget's two terms actually cover.
    const int r = std::min(n, fs.threshold - 1);
    std::vector<BitVec> gens;
    for (const BitVec& p : f.points) {
      if (p.popcount() <= r) gens.push_back(p);
    }
    auto ds = make_downset(n, gens);
    const EllFunction ell = ds->max_weight() == 0
                                ? build_ell_zero(ds)
                                : build_ell(ds, m * m / 16.0, 0.01);
    const DenseFunction g = exact_g(f, fs);
    const double inner =
        exact_inner_product(dense_from_character(ell.character), g);
    const double upsilon = exact_T_mu_E(BitVec(n), fs);
    const AuditBudget audit = audit_error_budget(ell, r, m);
    if (std::abs(inner - f.weights[0] * upsilon) > audit.bound + 1e-12) {
      out.fail("exact pairing escaped the budget on trial " +
               std::to_string(trial));
    }
  }
  if (out.pass) out.detail = "20 oracle-exact instances inside the budget";
  return out;
}

// ---- criterion 9: end-to-end ------------------------------------------------

SparseDistribution planted_population() {
  return SparseDistribution(
      12,
      {BitVec::from_string("000000000000"), BitVec::from_string("111111110000"),
       BitVec::from_string("000011111111"), BitVec::from_string("111100001111")},
      {0.4, 0.3, 0.2, 0.1});
}

Outcome criterion_end_to_end(std::uint64_t seed_base) {
  Outcome out;
  std::ostringstream transcript;
  const SparseDistribution truth = planted_population();
  RecoveryConfig cfg;
  cfg.epsilon = 0.1;
  cfg.kappa = 0.05;
  // Pairwise distance 8 lets a radius-7 ball isolate each point while the
  // far set (threshold 6 at this mu) damps the other three.
  cfg.far_constant = 1.0;
  cfg.max_r = 7;
  cfg.workers = 2;

  int good_runs = 0;
  double worst_secs = 0.0;
  double worst_err = 0.0;
  for (int run = 0; run < 20; ++run) {
    const std::uint64_t seed = seed_base + static_cast<std::uint64_t>(run);
    cfg.seed = seed;
    NoisySampler sampler(truth, NoiseRate{0.6}, seed);
    const auto start = std::chrono::steady_clock::now();
    const RecoveryReport report =
        recover_distribution(sampler, truth.points, cfg);
    worst_secs = std::max(worst_secs, elapsed_seconds(start));
    bool all_within = report.all_ok;
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
      note(transcript, report.rows[i].estimate);
      const double err = std::abs(report.rows[i].estimate - truth.weights[i]);
      worst_err = std::max(worst_err, err);
      if (err > 0.1) all_within = false;
    }
    if (all_within) ++good_runs;
  }
  if (good_runs < 18) {
    out.fail("only " + std::to_string(good_runs) +
             "/20 runs recovered every weight");
  }
  if (worst_secs > 300.0) {
    out.fail("a run took " + std::to_string(worst_secs) + "s");
  }
  if (out.pass) {
    std::ostringstream d;
    d << good_runs << "/20 runs within 0.1 (worst error "
      << std::setprecision(3) << worst_err << ", worst run "
      << std::setprecision(3) << worst_secs << "s)";
    out.detail = d.str();
  }
  out.transcript = transcript.str();
  return out;
}

}  // namespace

int main() {
  int failures = 0;
  const auto report = [&failures](const std::string& name,
                                  const Outcome& outcome) {
    std::cout << (outcome.pass ? "[PASS] " : "[FAIL] ") << name << ": "
              << outcome.detail << std::endl;
    if (!outcome.pass) ++failures;
  };

  report("criterion 1 (transform inversion)", criterion_mobius());
  report("criterion 2 (local inverse)", criterion_local_inverse());
  report("criterion 3 (test function)", criterion_ell());
  report("criterion 4 (baseline interpolator)", criterion_ell_zero());
  report("criterion 5 (noise operators)", criterion_noise_ops());
  const Outcome filter_a = criterion_filter(4242);
  report("criterion 6 (filter set)", filter_a);
  const Outcome kernel_a = criterion_kernel(7777);
  report("criterion 7 (kernel and estimators)", kernel_a);
  report("criterion 8 (error budget)", criterion_audit());
  const Outcome e2e_a = criterion_end_to_end(90210);
  report("criterion 9 (end-to-end recovery)", e2e_a);

  {
    Outcome det;
    const Outcome filter_b = criterion_filter(4242);
    const Outcome kernel_b = criterion_kernel(7777);
    const Outcome e2e_b = criterion_end_to_end(90210);
    if (filter_a.transcript != filter_b.transcript) {
      det.fail("filter-set outputs changed between identical runs");
    }
    if (kernel_a.transcript != kernel_b.transcript) {
      det.fail("kernel outputs changed between identical runs");
    }
    if (e2e_a.transcript != e2e_b.transcript) {
      det.fail("end-to-end outputs changed between identical runs");
    }
    if (det.pass) {
      det.detail = "criteria 6, 7, 9 bit-identical on rerun";
    }
    report("criterion 10 (determinism)", det);
  }

  std::cout << (failures == 0 ? "acceptance: all criteria passed"
                              : "acceptance: " + std::to_string(failures) +
                                    " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
