#pragma once

#include <cstdint>
#include <random>

namespace popres {

// 64-bit finalizer used to derive stream seeds. Distinct (seed, task,
// worker) triples land on distinct streams with overwhelming probability,
// which is what makes parallel estimation reproducible for a fixed seed
// and worker count.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t task,
                                 std::uint64_t worker) {
  std::uint64_t s = splitmix64(seed ^ 0x8f1bbcdcbfa53e0bULL);
  s = splitmix64(s ^ task);
  return splitmix64(s ^ (worker * 0xd1342543de82ef95ULL + 1));
}

// Seedable generator with a platform-independent stream. mt19937_64 output
// is pinned by the standard; unit() maps it to [0,1) directly instead of
// going through std::uniform_real_distribution, whose draw sequence is
// implementation defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0,1) with 53 random bits.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return unit() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace popres
