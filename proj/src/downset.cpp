#include "popres/downset.hpp"

#include <algorithm>
#include <stdexcept>

namespace popres {

namespace {

// Generators above this weight would expand into closures too large to
// hold in memory (the closure of one generator has 2^weight members).
constexpr int kMaxGeneratorWeight = 26;

}  // namespace

Downset::Downset(int n, std::vector<BitVec> generators)
    : n_(n), generators_(std::move(generators)) {
  if (generators_.empty())
    throw std::invalid_argument("Downset: empty generator list");
  std::unordered_map<BitVec, std::uint32_t, BitVecHash> seen;
  for (const BitVec& g : generators_) {
    if (g.dimension() != n_)
      throw std::invalid_argument("Downset: generator dimension mismatch");
    int w = g.popcount();
    if (w > kMaxGeneratorWeight)
      throw std::invalid_argument("Downset: generator weight too large");
    max_weight_ = std::max(max_weight_, w);
    // All submasks of g, walked by subsets of its set-bit positions.
    std::vector<int> pos = g.set_positions();
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << w); ++s) {
      BitVec m(n_);
      for (int b = 0; b < w; ++b)
        if ((s >> b) & 1) m.set(pos[static_cast<std::size_t>(b)], true);
      seen.emplace(std::move(m), 0);
    }
  }
  members_.reserve(seen.size());
  for (const auto& [m, unused] : seen) members_.push_back(m);
  std::sort(members_.begin(), members_.end(), BitVec::weight_value_less);
  index_.reserve(members_.size());
  for (std::uint32_t i = 0; i < members_.size(); ++i)
    index_.emplace(members_[i], i);
}

bool Downset::contains(const BitVec& x) const {
  return index_.find(x) != index_.end();
}

std::uint32_t Downset::index_of(const BitVec& x) const {
  auto it = index_.find(x);
  if (it == index_.end())
    throw std::out_of_range("Downset::index_of: not a member");
  return it->second;
}

Downset generate_downset(int n, const std::vector<BitVec>& generators) {
  return Downset(n, generators);
}

std::shared_ptr<const Downset> make_downset(
    int n, const std::vector<BitVec>& generators) {
  return std::make_shared<const Downset>(n, generators);
}

}  // namespace popres
