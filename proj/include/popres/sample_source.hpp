#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <vector>

#include "popres/bitvec.hpp"

namespace popres {

using Drawer = std::function<BitVec()>;

// Thrown when a replayed sample file cannot cover a requested estimation
// task; `required` counts from the start of the file.
class InsufficientSamplesError : public std::runtime_error {
 public:
  InsufficientSamplesError(std::uint64_t required_, std::uint64_t available_);
  std::uint64_t required;
  std::uint64_t available;
};

// Where estimators get their noisy samples. An estimation task announces
// how many draws each worker will make; the source hands back one drawer
// per worker. Live sources derive independent RNG streams from
// (seed, task_id, worker); replayed files hand out disjoint slices. Either
// way the stream each worker sees depends only on the seed, the task id
// and the worker index, which pins down every estimate bit for bit.
class SampleSource {
 public:
  virtual ~SampleSource() = default;
  virtual int dimension() const = 0;
  virtual double mu() const = 0;
  virtual std::vector<Drawer> open_task(
      std::uint64_t task_id, const std::vector<std::uint64_t>& counts) = 0;
};

// View of another source with every drawn sample XOR-shifted. Recovery at
// target t runs all estimation against samples shifted by t, which turns
// the unknown distribution into its translate with t at the origin.
class TranslatedSource : public SampleSource {
 public:
  TranslatedSource(SampleSource& base, BitVec shift)
      : base_(base), shift_(std::move(shift)) {
    if (shift_.dimension() != base.dimension())
      throw std::invalid_argument("TranslatedSource: dimension mismatch");
  }

  int dimension() const override { return base_.dimension(); }
  double mu() const override { return base_.mu(); }

  std::vector<Drawer> open_task(
      std::uint64_t task_id,
      const std::vector<std::uint64_t>& counts) override {
    std::vector<Drawer> inner = base_.open_task(task_id, counts);
    std::vector<Drawer> out;
    out.reserve(inner.size());
    for (auto& d : inner)
      out.push_back([d = std::move(d), this]() { return d() ^ shift_; });
    return out;
  }

 private:
  SampleSource& base_;
  BitVec shift_;
};

// Replays samples loaded from a file, consuming them front to back.
// Workers of one task read disjoint contiguous slices in worker order.
class VectorSampleSource : public SampleSource {
 public:
  VectorSampleSource(std::vector<BitVec> samples, double mu_value);

  int dimension() const override { return n_; }
  double mu() const override { return mu_; }
  std::vector<Drawer> open_task(
      std::uint64_t task_id,
      const std::vector<std::uint64_t>& counts) override;

  std::uint64_t remaining() const { return samples_.size() - cursor_; }

 private:
  std::vector<BitVec> samples_;
  int n_;
  double mu_;
  std::uint64_t cursor_ = 0;
};

}  // namespace popres
