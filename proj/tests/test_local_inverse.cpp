#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "popres/local_inverse.hpp"

using namespace popres;

namespace {

double binom(int n, int k) {
  double v = 1.0;
  for (int i = 0; i < k; ++i) v = v * (n - i) / (i + 1);
  return v;
}

}  // namespace

TEST_CASE("noise matrix entries follow the binomial law") {
  const double delta = 0.3;
  const NoiseMatrix A = build_noise_matrix(delta, 6);
  for (int i = 0; i <= 6; ++i) {
    double row_sum = 0.0;
    for (int j = 0; j <= 6; ++j) {
      const double want =
          j > i ? 0.0
                : binom(i, j) * std::pow(delta, j) * std::pow(1 - delta, i - j);
      CHECK(std::abs(A.a[i][j] - want) < 1e-13);
      row_sum += A.a[i][j];
    }
    CHECK(std::abs(row_sum - 1.0) < 1e-13);
  }
  CHECK_THROWS_AS(build_noise_matrix(0.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(build_noise_matrix(1.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(build_noise_matrix(0.5, -1), std::invalid_argument);
}

TEST_CASE("matrix application is plain row action") {
  const NoiseMatrix A = build_noise_matrix(0.25, 2);
  const std::vector<double> v = {1.0, -2.0, 4.0};
  const std::vector<double> out = apply_noise_matrix(A, v);
  REQUIRE(out.size() == 3);
  for (int i = 0; i <= 2; ++i) {
    double want = 0.0;
    for (int j = 0; j <= 2; ++j) want += A.a[i][j] * v[j];
    CHECK(std::abs(out[i] - want) < 1e-15);
  }
}

TEST_CASE("local inverse meets its contract at moderate size") {
  const double eps = 0.1;
  const LocalInverse inv = local_inverse(0.25, 10, eps);
  REQUIRE(inv.v.size() == 11);
  CHECK(inv.v[0] == 1.0);  // zeroth row of A is e_0, so normalization is exact
  CHECK(inv.residual <= eps + 1e-9);
  CHECK(inv.sensitivity >= 1.0);

  const NoiseMatrix A = build_noise_matrix(0.25, 10);
  const std::vector<double> image = apply_noise_matrix(A, inv.v);
  CHECK(std::abs(image[0] - 1.0) < 1e-9);
  for (int i = 1; i <= 10; ++i) CHECK(std::abs(image[i]) <= eps + 1e-9);
}

TEST_CASE("solver optimum matches the vertex-enumeration oracle") {
  for (double delta : {0.1, 0.25, 0.5}) {
    for (int r : {1, 2, 3}) {
      for (double eps : {0.05, 0.1, 0.3}) {
        const NoiseMatrix A = build_noise_matrix(delta, r);
        const std::vector<double> w = solve_min_infnorm(A, eps);
        double norm = 0.0;
        for (double x : w) norm = std::max(norm, std::abs(x));
        const double want = testing::lp_oracle_min_infnorm(A, eps);
        CAPTURE(delta);
        CAPTURE(r);
        CAPTURE(eps);
        CHECK(std::abs(norm - want) < 1e-6);
      }
    }
  }
}

TEST_CASE("sensitivity stays under the closed-form cap") {
  const double eps = 0.1;
  for (double delta : {0.25, 0.5}) {
    for (int r : {5, 10}) {
      const LocalInverse inv = local_inverse(delta, r, eps);
      const double cap =
          std::pow(2.0 / eps, 2.0 / delta * std::log(1.0 / delta));
      CHECK(inv.sensitivity <= cap);
    }
  }
}

TEST_CASE("degenerate level-zero instance still normalizes") {
  const LocalInverse inv = local_inverse(0.3, 0, 0.1);
  REQUIRE(inv.v.size() == 1);
  CHECK(inv.v[0] == 1.0);
  CHECK(inv.residual == 0.0);
}
