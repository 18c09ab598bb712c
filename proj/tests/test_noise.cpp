#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "popres/distribution.hpp"
#include "popres/noise.hpp"
#include "popres/oracle.hpp"
#include "popres/rng.hpp"

using namespace popres;

namespace {

SparseDistribution tiny_dist(int n) {
  return SparseDistribution(
      n,
      {BitVec::from_u64(n, 0), BitVec::from_u64(n, 0b11),
       BitVec::from_u64(n, 0b101)},
      {0.5, 0.3, 0.2});
}

}  // namespace

TEST_CASE("noise rate validates its range") {
  CHECK_THROWS_AS(NoiseRate{0.0}, std::invalid_argument);
  CHECK_THROWS_AS(NoiseRate{-0.2}, std::invalid_argument);
  CHECK_THROWS_AS(NoiseRate{1.5}, std::invalid_argument);
  CHECK(NoiseRate{1.0}.mu == 1.0);
}

TEST_CASE("coordinate kernel inverts exactly") {
  for (double m : {0.3, 0.6, 0.9}) {
    const CoordKernel f = coord_kernel(NoiseRate{m}, false);
    const CoordKernel inv = coord_kernel(NoiseRate{m}, true);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        double prod = 0.0;
        for (int t = 0; t < 2; ++t) prod += f.m[i][t] * inv.m[t][j];
        CHECK(std::abs(prod - (i == j ? 1.0 : 0.0)) < 1e-12);
      }
    }
    const double norm = std::abs(inv.m[0][0]) + std::abs(inv.m[1][0]);
    CHECK(std::abs(norm - 1.0 / m) < 1e-12);
    CHECK(std::abs(f.m[0][0] + f.m[0][1] - 1.0) < 1e-15);
  }
}

TEST_CASE("sample_noise flips at the channel rate") {
  const double mu = 0.6;
  Rng rng(123);
  const int n = 32;
  const int draws = 20000;
  std::int64_t flips = 0;
  for (int i = 0; i < draws; ++i) flips += sample_noise(NoiseRate{mu}, n, rng).popcount();
  const double mean = static_cast<double>(flips) / (n * draws);
  const double want = (1.0 - mu) / 2.0;
  const double sigma = std::sqrt(want * (1.0 - want) / (n * draws));
  CHECK(std::abs(mean - want) < 4.0 * sigma);
}

TEST_CASE("noiseless sampler reproduces the support") {
  NoisySampler sampler(tiny_dist(4), NoiseRate{1.0}, 7);
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t v = sampler.draw().to_u64();
    CHECK((v == 0 || v == 0b11 || v == 0b101));
  }
}

TEST_CASE("sampler streams are seed-deterministic") {
  NoisySampler a(tiny_dist(6), NoiseRate{0.7}, 99);
  NoisySampler b(tiny_dist(6), NoiseRate{0.7}, 99);
  for (int i = 0; i < 50; ++i) CHECK(a.draw() == b.draw());

  auto da = a.open_task(3, {10, 10});
  auto db = b.open_task(3, {10, 10});
  for (int w = 0; w < 2; ++w) {
    for (int i = 0; i < 10; ++i) CHECK(da[w]() == db[w]());
  }

  NoisySampler c(tiny_dist(6), NoiseRate{0.7}, 100);
  auto dc = c.open_task(3, {10});
  bool all_same = true;
  auto da2 = a.open_task(3, {10});
  for (int i = 0; i < 10; ++i) all_same = all_same && (dc[0]() == da2[0]());
  CHECK_FALSE(all_same);
}

TEST_CASE("empirical sample law matches the smoothed distribution") {
  const int n = 6;
  const double mu = 0.9;
  SparseDistribution f = tiny_dist(n);
  DenseFunction exact = exact_T_mu(f, NoiseRate{mu});

  NoisySampler sampler(f, NoiseRate{mu}, 2024);
  const int draws = 100000;
  std::vector<double> freq(std::size_t{1} << n, 0.0);
  auto drawers = sampler.open_task(0, {static_cast<std::uint64_t>(draws)});
  for (int i = 0; i < draws; ++i) freq[drawers[0]().to_u64()] += 1.0;

  double tv = 0.0;
  for (std::size_t x = 0; x < freq.size(); ++x) {
    tv += std::abs(freq[x] / draws - exact.values[x]);
  }
  tv /= 2.0;
  CHECK(tv < 0.02);
}

TEST_CASE("dense smoothing conserves mass and composes") {
  const int n = 6;
  DenseFunction f = dense_from_sparse(tiny_dist(n));
  auto once = apply_T_mu_dense(f.values, NoiseRate{0.8});
  double mass = 0.0;
  for (double v : once) mass += v;
  CHECK(std::abs(mass - 1.0) < 1e-12);

  auto twice = apply_T_mu_dense(once, NoiseRate{0.5});
  auto direct = apply_T_mu_dense(f.values, NoiseRate{0.4});
  for (std::size_t i = 0; i < twice.size(); ++i) {
    CHECK(std::abs(twice[i] - direct[i]) < 1e-12);
  }

  auto noiseless = apply_T_mu_dense(f.values, NoiseRate{1.0});
  for (std::size_t i = 0; i < noiseless.size(); ++i) {
    CHECK(noiseless[i] == f.values[i]);
  }
}

TEST_CASE("replayed source slices are disjoint and bounded") {
  std::vector<BitVec> samples;
  for (int i = 0; i < 10; ++i) samples.push_back(BitVec::from_u64(4, i));
  VectorSampleSource src(samples, 0.8);
  CHECK(src.dimension() == 4);
  CHECK(src.remaining() == 10);

  auto drawers = src.open_task(0, {3, 4});
  CHECK(drawers[0]().to_u64() == 0);
  CHECK(drawers[1]().to_u64() == 3);
  CHECK(drawers[1]().to_u64() == 4);
  CHECK(src.remaining() == 3);

  try {
    src.open_task(1, {2, 2});
    FAIL("expected exhaustion");
  } catch (const InsufficientSamplesError& e) {
    CHECK(e.required == 11);
    CHECK(e.available == 10);
  }
}

TEST_CASE("derived seeds separate tasks and workers") {
  CHECK(derive_seed(1, 2, 3) != derive_seed(1, 2, 4));
  CHECK(derive_seed(1, 2, 3) != derive_seed(1, 3, 3));
  CHECK(derive_seed(1, 2, 3) != derive_seed(2, 2, 3));
  CHECK(derive_seed(1, 2, 3) == derive_seed(1, 2, 3));
  Rng r(5);
  for (int i = 0; i < 1000; ++i) {
    const double u = r.unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}
