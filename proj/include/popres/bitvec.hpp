#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace popres {

// Point of the n-dimensional Boolean cube, bit-packed into 64-bit words.
// Coordinate i (1-based in the serialized form) lives at bit i-1, so the
// leftmost character of the ASCII form is coordinate 1. Bits at positions
// >= n are kept zero, which keeps whole-word operations exact. Dimensions
// up to 64 stay in a single word; larger dimensions spill into more words.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(int n);

  // Low `n` bits of `bits`; requires n <= 64 and no set bit at or above n.
  static BitVec from_u64(int n, std::uint64_t bits);
  // Parses a '0'/'1' string; dimension is the string length.
  static BitVec from_string(std::string_view s);
  static BitVec from_positions(int n, const std::vector<int>& set_bits);

  int dimension() const { return n_; }
  bool get(int i) const;
  void set(int i, bool value);
  int popcount() const;
  bool none() const;

  // Integer value of the packed bits; requires n <= 64. Used to index
  // dense tables, whose slot for x is exactly this value.
  std::uint64_t to_u64() const;

  std::string to_string() const;
  std::vector<int> set_positions() const;

  BitVec operator^(const BitVec& o) const;
  BitVec operator&(const BitVec& o) const;
  BitVec operator|(const BitVec& o) const;
  BitVec and_not(const BitVec& o) const;
  bool is_subset_of(const BitVec& o) const;

  bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }
  bool operator!=(const BitVec& o) const { return !(*this == o); }

  // Canonical enumeration order: ascending weight, then ascending integer
  // value of the mask (most significant word decides first).
  static bool weight_value_less(const BitVec& a, const BitVec& b);

  std::size_t hash() const;

  const std::vector<std::uint64_t>& words() const { return w_; }

 private:
  void check_same_dimension(const BitVec& o) const;

  int n_ = 0;
  std::vector<std::uint64_t> w_;
};

struct BitVecHash {
  std::size_t operator()(const BitVec& v) const { return v.hash(); }
};

// Character chi_S(x) = (-1)^{|S  AND  x|}; the sign is the parity of the
// overlap between the index set and the point.
int chi(const BitVec& S, const BitVec& x);

int hamming_distance(const BitVec& a, const BitVec& b);

}  // namespace popres
