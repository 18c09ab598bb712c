#include "popres/bitvec.hpp"

#include <bit>
#include <stdexcept>

namespace popres {

namespace {

constexpr int kWordBits = 64;

int word_count(int n) { return (n + kWordBits - 1) / kWordBits; }

}  // namespace

BitVec::BitVec(int n) : n_(n), w_(word_count(n), 0) {
  if (n <= 0) throw std::invalid_argument("BitVec: dimension must be positive");
}

BitVec BitVec::from_u64(int n, std::uint64_t bits) {
  if (n > kWordBits) throw std::invalid_argument("BitVec::from_u64: n > 64");
  BitVec v(n);
  if (n < kWordBits && (bits >> n) != 0)
    throw std::invalid_argument("BitVec::from_u64: bits set beyond dimension");
  v.w_[0] = bits;
  return v;
}

BitVec BitVec::from_string(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("BitVec::from_string: empty string");
  BitVec v(static_cast<int>(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1')
      v.set(static_cast<int>(i), true);
    else if (s[i] != '0')
      throw std::invalid_argument("BitVec::from_string: invalid character");
  }
  return v;
}

BitVec BitVec::from_positions(int n, const std::vector<int>& set_bits) {
  BitVec v(n);
  for (int i : set_bits) v.set(i, true);
  return v;
}

bool BitVec::get(int i) const {
  if (i < 0 || i >= n_) throw std::out_of_range("BitVec::get: index");
  return (w_[i / kWordBits] >> (i % kWordBits)) & 1u;
}

void BitVec::set(int i, bool value) {
  if (i < 0 || i >= n_) throw std::out_of_range("BitVec::set: index");
  std::uint64_t mask = 1ULL << (i % kWordBits);
  if (value)
    w_[i / kWordBits] |= mask;
  else
    w_[i / kWordBits] &= ~mask;
}

int BitVec::popcount() const {
  int c = 0;
  for (std::uint64_t w : w_) c += std::popcount(w);
  return c;
}

bool BitVec::none() const {
  for (std::uint64_t w : w_)
    if (w != 0) return false;
  return true;
}

std::uint64_t BitVec::to_u64() const {
  if (n_ > kWordBits) throw std::logic_error("BitVec::to_u64: n > 64");
  return w_[0];
}

std::string BitVec::to_string() const {
  std::string s(static_cast<std::size_t>(n_), '0');
  for (int i = 0; i < n_; ++i)
    if (get(i)) s[static_cast<std::size_t>(i)] = '1';
  return s;
}

std::vector<int> BitVec::set_positions() const {
  std::vector<int> out;
  for (std::size_t wi = 0; wi < w_.size(); ++wi) {
    std::uint64_t w = w_[wi];
    while (w != 0) {
      int b = std::countr_zero(w);
      out.push_back(static_cast<int>(wi) * kWordBits + b);
      w &= w - 1;
    }
  }
  return out;
}

void BitVec::check_same_dimension(const BitVec& o) const {
  if (n_ != o.n_) throw std::invalid_argument("BitVec: dimension mismatch");
}

BitVec BitVec::operator^(const BitVec& o) const {
  check_same_dimension(o);
  BitVec r = *this;
  for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] ^= o.w_[i];
  return r;
}

BitVec BitVec::operator&(const BitVec& o) const {
  check_same_dimension(o);
  BitVec r = *this;
  for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] &= o.w_[i];
  return r;
}

BitVec BitVec::operator|(const BitVec& o) const {
  check_same_dimension(o);
  BitVec r = *this;
  for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] |= o.w_[i];
  return r;
}

BitVec BitVec::and_not(const BitVec& o) const {
  check_same_dimension(o);
  BitVec r = *this;
  for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] &= ~o.w_[i];
  return r;
}

bool BitVec::is_subset_of(const BitVec& o) const {
  check_same_dimension(o);
  for (std::size_t i = 0; i < w_.size(); ++i)
    if ((w_[i] & o.w_[i]) != w_[i]) return false;
  return true;
}

bool BitVec::weight_value_less(const BitVec& a, const BitVec& b) {
  int wa = a.popcount(), wb = b.popcount();
  if (wa != wb) return wa < wb;
  for (std::size_t i = a.w_.size(); i-- > 0;)
    if (a.w_[i] != b.w_[i]) return a.w_[i] < b.w_[i];
  return false;
}

std::size_t BitVec::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ static_cast<std::uint64_t>(n_);
  for (std::uint64_t w : w_) {
    h ^= w;
    h *= 0x100000001b3ULL;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

int chi(const BitVec& S, const BitVec& x) {
  return ((S & x).popcount() & 1) ? -1 : 1;
}

int hamming_distance(const BitVec& a, const BitVec& b) {
  return (a ^ b).popcount();
}

}  // namespace popres
