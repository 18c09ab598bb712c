#pragma once

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include "popres/bitvec.hpp"

namespace popres {

// Downward closure of a generator list under the subset order: every
// submask of every generator, stored once. Members are kept in the
// canonical enumeration order (ascending weight, then ascending mask
// value), and vectors indexed by member position are how functions on the
// downset are represented throughout.
class Downset {
 public:
  Downset(int n, std::vector<BitVec> generators);

  int dimension() const { return n_; }
  std::size_t size() const { return members_.size(); }
  const std::vector<BitVec>& members() const { return members_; }
  const std::vector<BitVec>& generators() const { return generators_; }
  int max_weight() const { return max_weight_; }

  bool contains(const BitVec& x) const;
  // Position of x among the members; throws if x is not a member.
  std::uint32_t index_of(const BitVec& x) const;

 private:
  int n_ = 0;
  int max_weight_ = 0;
  std::vector<BitVec> generators_;
  std::vector<BitVec> members_;
  std::unordered_map<BitVec, std::uint32_t, BitVecHash> index_;
};

Downset generate_downset(int n, const std::vector<BitVec>& generators);
std::shared_ptr<const Downset> make_downset(
    int n, const std::vector<BitVec>& generators);

// Superset-sum transform: out(x) = sum over members y with y superset x of
// f(y). Quadratic in the member count by design; the downsets here are
// small.
template <typename T>
std::vector<T> zeta_transform(const Downset& ds, const std::vector<T>& f) {
  if (f.size() != ds.size())
    throw std::invalid_argument("zeta_transform: size mismatch");
  const auto& mem = ds.members();
  std::vector<T> out(f.size(), T(0));
  for (std::size_t i = 0; i < mem.size(); ++i)
    for (std::size_t j = 0; j < mem.size(); ++j)
      if (mem[i].is_subset_of(mem[j])) out[i] += f[j];
  return out;
}

// Inverse of the superset-sum: out(x) = sum over members y superset x of
// (-1)^{|y \ x|} f(y). Exact on integer inputs, and mobius(zeta(f)) = f.
template <typename T>
std::vector<T> mobius_transform(const Downset& ds, const std::vector<T>& f) {
  if (f.size() != ds.size())
    throw std::invalid_argument("mobius_transform: size mismatch");
  const auto& mem = ds.members();
  std::vector<T> out(f.size(), T(0));
  for (std::size_t i = 0; i < mem.size(); ++i) {
    for (std::size_t j = 0; j < mem.size(); ++j) {
      if (!mem[i].is_subset_of(mem[j])) continue;
      int d = mem[j].popcount() - mem[i].popcount();
      if (d & 1)
        out[i] -= f[j];
      else
        out[i] += f[j];
    }
  }
  return out;
}

}  // namespace popres
