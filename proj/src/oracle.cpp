#include "popres/oracle.hpp"

#include <stdexcept>

#include "popres/noise.hpp"

namespace popres {

namespace {

constexpr int kMaxDenseDim = 20;

void check_dim(int n) {
  if (n < 1 || n > kMaxDenseDim) {
    throw std::invalid_argument("dense oracle limited to 1 <= n <= 20");
  }
}

void check_table(const DenseFunction& f) {
  check_dim(f.n);
  if (f.values.size() != (std::size_t{1} << f.n)) {
    throw std::invalid_argument("dense table size must be exactly 2^n");
  }
}

}  // namespace

DenseFunction dense_zero(int n) {
  check_dim(n);
  DenseFunction f;
  f.n = n;
  f.values.assign(std::size_t{1} << n, 0.0);
  return f;
}

DenseFunction dense_from_sparse(const SparseDistribution& f) {
  DenseFunction out = dense_zero(f.n);
  for (std::size_t i = 0; i < f.points.size(); ++i) {
    out.values[f.points[i].to_u64()] += f.weights[i];
  }
  return out;
}

DenseFunction dense_from_monomial(const MonomialExpansion& e) {
  DenseFunction out = dense_zero(e.ds->dimension());
  const std::uint64_t size = std::uint64_t{1} << out.n;
  for (std::uint64_t x = 0; x < size; ++x) {
    out.values[x] = eval(e, BitVec::from_u64(out.n, x));
  }
  return out;
}

DenseFunction dense_from_character(const CharacterExpansion& e) {
  DenseFunction out = dense_zero(e.ds->dimension());
  const std::uint64_t size = std::uint64_t{1} << out.n;
  for (std::uint64_t x = 0; x < size; ++x) {
    out.values[x] = eval(e, BitVec::from_u64(out.n, x));
  }
  return out;
}

double exact_fourier(const DenseFunction& f, const BitVec& S) {
  check_table(f);
  if (S.dimension() != f.n) {
    throw std::invalid_argument("exact_fourier: dimension mismatch");
  }
  double s = 0.0;
  const std::uint64_t size = std::uint64_t{1} << f.n;
  for (std::uint64_t x = 0; x < size; ++x) {
    s += f.values[x] * chi(S, BitVec::from_u64(f.n, x));
  }
  return s;
}

double fourier_synthesis(const DenseFunction& f, const BitVec& x) {
  check_table(f);
  if (x.dimension() != f.n) {
    throw std::invalid_argument("fourier_synthesis: dimension mismatch");
  }
  double s = 0.0;
  const std::uint64_t size = std::uint64_t{1} << f.n;
  for (std::uint64_t mask = 0; mask < size; ++mask) {
    const BitVec S = BitVec::from_u64(f.n, mask);
    s += exact_fourier(f, S) * chi(S, x);
  }
  return s / static_cast<double>(size);
}

DenseFunction exact_g(const SparseDistribution& f, const FarSet& fs) {
  if (f.n != fs.n) throw std::invalid_argument("exact_g: dimension mismatch");
  DenseFunction out = dense_zero(f.n);
  for (std::size_t i = 0; i < f.points.size(); ++i) {
    out.values[f.points[i].to_u64()] +=
        f.weights[i] * exact_T_mu_E(f.points[i], fs);
  }
  return out;
}

double exact_inner_product(const DenseFunction& a, const DenseFunction& b) {
  check_table(a);
  check_table(b);
  if (a.n != b.n) {
    throw std::invalid_argument("exact_inner_product: dimension mismatch");
  }
  double s = 0.0;
  for (std::size_t x = 0; x < a.values.size(); ++x) {
    s += a.values[x] * b.values[x];
  }
  return s;
}

DenseFunction exact_T_mu(const SparseDistribution& f, NoiseRate mu) {
  DenseFunction out = dense_from_sparse(f);
  out.values = apply_T_mu_dense(out.values, mu);
  return out;
}

}  // namespace popres
