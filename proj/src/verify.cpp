#include "popres/verify.hpp"

#include <cmath>
#include <cstdint>
#include <sstream>
#include <unordered_set>

#include "popres/estimators.hpp"
#include "popres/filter_set.hpp"
#include "popres/noise.hpp"
#include "popres/oracle.hpp"
#include "popres/recovery.hpp"

namespace popres {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

CheckResult result(const std::string& name, bool pass,
                   const std::string& detail) {
  return CheckResult{name, pass, detail};
}

VerifyOptions clamp_options(VerifyOptions o) {
  if (o.n < 2) o.n = 2;
  if (o.n > 14) o.n = 14;
  if (o.k < 1) o.k = 1;
  const std::uint64_t space = std::uint64_t{1} << o.n;
  if (static_cast<std::uint64_t>(o.k) > space) o.k = static_cast<int>(space);
  if (o.instances < 1) o.instances = 1;
  return o;
}

// Generators for test-function checks: a handful of random points of
// weight at most r, plus the origin's mandatory membership via closure.
std::vector<BitVec> random_generators(int n, int count, int max_weight,
                                      Rng& rng) {
  std::vector<BitVec> gens;
  gens.push_back(BitVec(n));
  for (int i = 0; i < count; ++i) {
    BitVec p(n);
    int budget = max_weight;
    for (int b = 0; b < n && budget > 0; ++b) {
      if (rng.bernoulli(static_cast<double>(max_weight) / n)) {
        p.set(b, true);
        --budget;
      }
    }
    gens.push_back(p);
  }
  return gens;
}

}  // namespace

BitVec random_point(int n, Rng& rng) {
  BitVec p(n);
  for (int b = 0; b < n; ++b) {
    if (rng.bernoulli(0.5)) p.set(b, true);
  }
  return p;
}

std::vector<BitVec> random_support(int n, int k, Rng& rng, bool with_origin) {
  std::unordered_set<BitVec, BitVecHash> seen;
  std::vector<BitVec> out;
  if (with_origin) {
    BitVec origin(n);
    seen.insert(origin);
    out.push_back(origin);
  }
  while (static_cast<int>(out.size()) < k) {
    BitVec p = random_point(n, rng);
    if (seen.insert(p).second) out.push_back(p);
  }
  return out;
}

SparseDistribution random_sparse(int n, int k, Rng& rng, bool with_origin) {
  std::vector<BitVec> points = random_support(n, k, rng, with_origin);
  std::vector<double> weights(points.size());
  double total = 0.0;
  for (double& w : weights) {
    w = -std::log(1.0 - rng.unit());  // exponential spacings: flat simplex
    total += w;
  }
  for (double& w : weights) w /= total;
  return SparseDistribution(n, points, weights);
}

CheckResult check_mobius_inverts_zeta(const Downset& ds,
                                      const std::vector<std::int64_t>& values,
                                      const IntTransform& mobius_fn) {
  const std::vector<std::int64_t> zetaed = zeta_transform(ds, values);
  const std::vector<std::int64_t> back = mobius_fn(ds, zetaed);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (back[i] != values[i]) {
      std::ostringstream os;
      os << "member " << ds.members()[i].to_string() << ": got " << back[i]
         << ", want " << values[i];
      return result("mobius-zeta-roundtrip", false, os.str());
    }
  }
  return result("mobius-zeta-roundtrip", true,
                std::to_string(values.size()) + " members exact");
}

std::vector<CheckResult> run_verify_suite(const VerifyOptions& raw) {
  const VerifyOptions opts = clamp_options(raw);
  std::vector<CheckResult> out;
  Rng rng(derive_seed(opts.seed, 0xfeed, 0));

  {  // Integer transform pair on random downsets.
    bool pass = true;
    std::string detail;
    for (int t = 0; t < opts.instances && pass; ++t) {
      auto gens = random_generators(opts.n, 4, 5, rng);
      Downset ds(opts.n, gens);
      std::vector<std::int64_t> values(ds.size());
      for (auto& v : values) {
        v = static_cast<std::int64_t>(rng.next_u64() % 2001) - 1000;
      }
      CheckResult r = check_mobius_inverts_zeta(
          ds, values, [](const Downset& d, const std::vector<std::int64_t>& f) {
            return mobius_transform(d, f);
          });
      pass = r.pass;
      detail = r.detail;
    }
    out.push_back(result("mobius-zeta-roundtrip", pass, detail));
  }

  {  // Coordinate kernel: inverse is a true inverse, with norm 1/mu.
    bool pass = true;
    std::string detail = "identity and norm within 1e-12";
    for (double m : {0.3, 0.6, 0.9, opts.mu}) {
      const CoordKernel f = coord_kernel(NoiseRate{m}, false);
      const CoordKernel inv = coord_kernel(NoiseRate{m}, true);
      for (int i = 0; i < 2 && pass; ++i) {
        for (int j = 0; j < 2 && pass; ++j) {
          double prod = 0.0;
          for (int t = 0; t < 2; ++t) prod += f.m[i][t] * inv.m[t][j];
          const double want = i == j ? 1.0 : 0.0;
          if (std::abs(prod - want) > 1e-12) {
            pass = false;
            detail = "kernel product off identity at mu=" + fmt(m);
          }
        }
      }
      const double norm =
          std::max(std::abs(inv.m[0][0]) + std::abs(inv.m[1][0]),
                   std::abs(inv.m[0][1]) + std::abs(inv.m[1][1]));
      if (std::abs(norm - 1.0 / m) > 1e-12) {
        pass = false;
        detail = "inverse norm " + fmt(norm) + " != 1/mu at mu=" + fmt(m);
      }
    }
    out.push_back(result("coordinate-kernel-inverse", pass, detail));
  }

  {  // Dense smoothing: semigroup law and mass conservation.
    bool pass = true;
    std::string detail = "semigroup within 1e-10, mass within 1e-12";
    const int n = std::min(opts.n, 8);
    for (int t = 0; t < opts.instances && pass; ++t) {
      SparseDistribution f = random_sparse(n, std::min(opts.k, 1 << n), rng);
      DenseFunction table = dense_from_sparse(f);
      const double m1 = 0.4 + 0.5 * rng.unit();
      const double m2 = 0.4 + 0.5 * rng.unit();
      auto once = apply_T_mu_dense(
          apply_T_mu_dense(table.values, NoiseRate{m1}), NoiseRate{m2});
      auto direct = apply_T_mu_dense(table.values, NoiseRate{m1 * m2});
      double worst = 0.0;
      double mass = 0.0;
      for (std::size_t i = 0; i < once.size(); ++i) {
        worst = std::max(worst, std::abs(once[i] - direct[i]));
        mass += once[i];
      }
      if (worst > 1e-10 || std::abs(mass - 1.0) > 1e-12) {
        pass = false;
        detail = "worst gap " + fmt(worst) + ", mass " + fmt(mass);
      }
    }
    out.push_back(result("dense-noise-semigroup", pass, detail));
  }

  {  // Coefficient map and its synthesis inverse.
    bool pass = true;
    std::string detail = "synthesis matches the table within 1e-9";
    const int n = std::min(opts.n, 10);
    SparseDistribution f = random_sparse(n, std::min(opts.k, 1 << n), rng);
    DenseFunction table = dense_from_sparse(f);
    for (int t = 0; t < opts.instances && pass; ++t) {
      const BitVec x = random_point(n, rng);
      const double synth = fourier_synthesis(table, x);
      if (std::abs(synth - table.values[x.to_u64()]) > 1e-9) {
        pass = false;
        detail = "gap " + fmt(std::abs(synth - table.values[x.to_u64()])) +
                 " at " + x.to_string();
      }
    }
    out.push_back(result("fourier-roundtrip", pass, detail));
  }

  {  // Filter keeps the origin's mass and damps far points.
    bool pass = true;
    std::string detail = "origin mass >= 1/2 and far decay on every instance";
    for (int t = 0; t < opts.instances && pass; ++t) {
      auto support =
          random_support(opts.n, std::min(opts.k + 1, 1 << opts.n), rng, true);
      FarSet fs = build_far_set(support, NoiseRate{opts.mu}, 2.0);
      const double at_origin = exact_T_mu_E(BitVec(opts.n), fs);
      if (at_origin < 0.5) {
        pass = false;
        detail = "origin mass " + fmt(at_origin);
        break;
      }
      for (const BitVec& p : fs.far_points) {
        const double damped = exact_T_mu_E(p, fs);
        const double cap =
            std::exp(-opts.mu * opts.mu * p.popcount() / 2.0);
        if (damped > cap) {
          pass = false;
          detail = "far point " + p.to_string() + " keeps " + fmt(damped) +
                   " > " + fmt(cap);
        }
      }
    }
    out.push_back(result("filter-mass-and-decay", pass, detail));
  }

  {  // Per-sample kernel is unbiased for the filtered coefficient.
    bool pass = true;
    std::string detail = "exact expectation matches g_hat within 1e-9";
    const int n = std::min(opts.n, 10);
    for (int t = 0; t < opts.instances && pass; ++t) {
      SparseDistribution f =
          random_sparse(n, std::min(opts.k, 1 << n), rng, true);
      FarSet fs = build_far_set(f.points, NoiseRate{opts.mu}, 2.0);
      DenseFunction smoothed = exact_T_mu(f, NoiseRate{opts.mu});
      DenseFunction g = exact_g(f, fs);
      BitVec S(n);
      for (int b = 0; b < n; ++b) {
        if (rng.bernoulli(0.2) && S.popcount() < 4) S.set(b, true);
      }
      double expectation = 0.0;
      for (std::uint64_t z = 0; z < (std::uint64_t{1} << n); ++z) {
        const BitVec zv = BitVec::from_u64(n, z);
        expectation +=
            smoothed.values[z] * attenuated_kernel(zv, S, NoiseRate{opts.mu}, fs);
      }
      const double want = exact_fourier(g, S);
      if (std::abs(expectation - want) > 1e-9) {
        pass = false;
        detail = "expectation " + fmt(expectation) + " vs g_hat " + fmt(want);
      }
    }
    out.push_back(result("kernel-unbiasedness", pass, detail));
  }

  {  // Test function: interpolation quality and evaluation-path agreement.
    bool pass = true;
    std::string detail = "origin 1, members within eta, paths within 1e-8";
    for (int t = 0; t < opts.instances && pass; ++t) {
      auto gens = random_generators(opts.n, std::min(opts.k, 5), 5, rng);
      auto ds = make_downset(opts.n, gens);
      const double delta = opts.mu * opts.mu / 16.0;
      const double eta = opts.epsilon / 16.0;
      EllFunction ell =
          ds->max_weight() == 0 ? build_ell_zero(ds) : build_ell(ds, delta, eta);
      const auto& members = ds->members();
      for (std::size_t i = 0; i < members.size() && pass; ++i) {
        const double via_mono = eval(ell.monomial, members[i]);
        const double via_char = eval(ell.character, members[i]);
        if (std::abs(via_mono - via_char) > 1e-8) {
          pass = false;
          detail = "evaluation paths disagree by " +
                   fmt(std::abs(via_mono - via_char));
        }
        if (ell.inverse) {
          const double via_matrix =
              apply_noise_matrix(build_noise_matrix(ell.delta, ell.r),
                                 ell.inverse->v)
                  [static_cast<std::size_t>(members[i].popcount())];
          if (std::abs(via_mono - via_matrix) > 1e-8) {
            pass = false;
            detail = "member value drifts from the matrix row by " +
                     fmt(std::abs(via_mono - via_matrix));
          }
        }
      }
    }
    out.push_back(result("test-function-interpolation", pass, detail));
  }

  {  // Pairing identity: coefficient pairing equals pointwise pairing.
    bool pass = true;
    std::string detail = "coefficient and pointwise pairings within 1e-9";
    const int n = std::min(opts.n, 10);
    for (int t = 0; t < opts.instances && pass; ++t) {
      SparseDistribution f =
          random_sparse(n, std::min(opts.k, 1 << n), rng, true);
      FarSet fs = build_far_set(f.points, NoiseRate{opts.mu}, 2.0);
      std::vector<BitVec> gens;
      for (const BitVec& p : f.points) {
        if (p.popcount() <= 5) gens.push_back(p);
      }
      auto ds = make_downset(n, gens);
      EllFunction ell = ds->max_weight() == 0
                            ? build_ell_zero(ds)
                            : build_ell(ds, opts.mu * opts.mu / 16.0,
                                        opts.epsilon / 16.0);
      DenseFunction g = exact_g(f, fs);
      double via_coeffs = 0.0;
      const auto& members = ds->members();
      for (std::size_t i = 0; i < members.size(); ++i) {
        if (ell.character.coeffs[i] == 0.0) continue;
        via_coeffs += ell.character.coeffs[i] * exact_fourier(g, members[i]);
      }
      const double via_points =
          exact_inner_product(dense_from_character(ell.character), g);
      if (std::abs(via_coeffs - via_points) > 1e-9) {
        pass = false;
        detail = "pairings differ by " + fmt(std::abs(via_coeffs - via_points));
      }
    }
    out.push_back(result("pairing-identity", pass, detail));
  }

  {  // End-to-end with exact quantities: the audit bound really holds.
    bool pass = true;
    std::string detail = "oracle-exact estimate within the audit budget";
    const int n = std::min(opts.n, 12);
    for (int t = 0; t < opts.instances && pass; ++t) {
      SparseDistribution f =
          random_sparse(n, std::min(opts.k, 1 << n), rng, true);
      FarSet fs = build_far_set(f.points, NoiseRate{opts.mu}, 2.0);
      // Ball radius one below the far threshold: every support point is
      // then either interpolated or damped, the regime the budget covers.
      const int r = std::min(n, fs.threshold - 1);
      std::vector<BitVec> gens;
      for (const BitVec& p : f.points) {
        if (p.popcount() <= r) gens.push_back(p);
      }
      auto ds = make_downset(n, gens);
      EllFunction ell = ds->max_weight() == 0
                            ? build_ell_zero(ds)
                            : build_ell(ds, opts.mu * opts.mu / 16.0,
                                        opts.epsilon / 16.0);
      DenseFunction g = exact_g(f, fs);
      const double inner =
          exact_inner_product(dense_from_character(ell.character), g);
      const double upsilon = exact_T_mu_E(BitVec(n), fs);
      const AuditBudget audit = audit_error_budget(ell, r, opts.mu);
      const double gap = std::abs(inner - f.weights[0] * upsilon);
      if (gap > audit.bound + 1e-12) {
        pass = false;
        detail = "pairing sits " + fmt(gap) + " from the filtered mass, over " +
                 fmt(audit.bound);
      }
      if (std::abs(inner / upsilon - f.weights[0]) >
          audit.bound / upsilon + 1e-12) {
        pass = false;
        detail = "ratio estimate misses the origin weight beyond the budget";
      }
    }
    out.push_back(result("oracle-recovery-audit", pass, detail));
  }

  return out;
}

}  // namespace popres
