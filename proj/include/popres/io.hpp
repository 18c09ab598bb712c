#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "popres/distribution.hpp"

namespace popres {

// Population files: a header line "n=<n> k=<k>" followed by one
// "<bitstring> <weight>" row per support point. Weights are written with
// 17 significant digits so a round trip reproduces them to 1e-12; on load
// the total mass may drift up to 1e-9 and is renormalized.
void write_population(const std::string& path, const SparseDistribution& dist);
SparseDistribution read_population(const std::string& path);

// Sample files: a header line "n=<n> mu=<mu> seed=<seed> count=<m>"
// followed by one ASCII bit string per line, leftmost character being
// coordinate 1.
struct SampleFile {
  int n = 0;
  double mu = 0.0;
  std::uint64_t seed = 0;
  std::vector<BitVec> samples;
};

void write_samples(const std::string& path, double mu, std::uint64_t seed,
                   const std::vector<BitVec>& samples);
SampleFile read_samples(const std::string& path);

}  // namespace popres
