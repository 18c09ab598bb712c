#include <algorithm>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "popres/bitvec.hpp"

using namespace popres;

TEST_CASE("string form: leftmost character is coordinate 1") {
  const BitVec v = BitVec::from_string("1010");
  CHECK(v.dimension() == 4);
  CHECK(v.get(0));
  CHECK_FALSE(v.get(1));
  CHECK(v.get(2));
  CHECK_FALSE(v.get(3));
  CHECK(v.to_string() == "1010");
  CHECK(v.popcount() == 2);
}

TEST_CASE("u64 and position forms round-trip") {
  const BitVec v = BitVec::from_u64(6, 0b100101);
  CHECK(v.to_u64() == 0b100101);
  CHECK(v.set_positions() == std::vector<int>{0, 2, 5});
  CHECK(BitVec::from_positions(6, {0, 2, 5}) == v);
  CHECK_THROWS_AS(BitVec::from_u64(3, 0b1000), std::invalid_argument);
  CHECK_THROWS_AS(BitVec::from_u64(65, 1), std::invalid_argument);
}

TEST_CASE("construction validates") {
  CHECK_THROWS_AS(BitVec(0), std::invalid_argument);
  CHECK_THROWS_AS(BitVec::from_string("01x"), std::invalid_argument);
  CHECK_THROWS_AS(BitVec::from_positions(4, {4}), std::out_of_range);
  const BitVec v(5);
  CHECK(v.none());
  CHECK_THROWS_AS(v.get(5), std::out_of_range);
}

TEST_CASE("bitwise algebra") {
  const BitVec a = BitVec::from_string("1100");
  const BitVec b = BitVec::from_string("0110");
  CHECK((a ^ b).to_string() == "1010");
  CHECK((a & b).to_string() == "0100");
  CHECK((a | b).to_string() == "1110");
  CHECK(a.and_not(b).to_string() == "1000");
  CHECK(hamming_distance(a, b) == 2);
  CHECK((a & b).is_subset_of(a));
  CHECK_FALSE(a.is_subset_of(b));
  CHECK_THROWS_AS(a ^ BitVec(3), std::invalid_argument);
}

TEST_CASE("character sign is overlap parity") {
  const BitVec S = BitVec::from_string("110");
  CHECK(chi(S, BitVec::from_string("000")) == 1);
  CHECK(chi(S, BitVec::from_string("100")) == -1);
  CHECK(chi(S, BitVec::from_string("110")) == 1);
  CHECK(chi(S, BitVec::from_string("111")) == 1);
  CHECK(chi(S, BitVec::from_string("010")) == -1);
}

TEST_CASE("characters multiply: chi_S(x ^ y) = chi_S(x) chi_S(y)") {
  for (std::uint64_t s = 0; s < 16; ++s) {
    for (std::uint64_t x = 0; x < 16; ++x) {
      for (std::uint64_t y = 0; y < 16; ++y) {
        const BitVec S = BitVec::from_u64(4, s);
        const BitVec xv = BitVec::from_u64(4, x);
        const BitVec yv = BitVec::from_u64(4, y);
        CHECK(chi(S, xv ^ yv) == chi(S, xv) * chi(S, yv));
      }
    }
  }
}

TEST_CASE("canonical order sorts by weight then mask value") {
  std::vector<BitVec> pts = {
      BitVec::from_u64(3, 0b110), BitVec::from_u64(3, 0b001),
      BitVec::from_u64(3, 0b000), BitVec::from_u64(3, 0b011),
      BitVec::from_u64(3, 0b100)};
  std::sort(pts.begin(), pts.end(), BitVec::weight_value_less);
  std::vector<std::uint64_t> got;
  for (const auto& p : pts) got.push_back(p.to_u64());
  CHECK(got == std::vector<std::uint64_t>{0b000, 0b001, 0b100, 0b011, 0b110});
}

TEST_CASE("wide vectors keep word boundaries straight") {
  BitVec v(100);
  v.set(0, true);
  v.set(63, true);
  v.set(64, true);
  v.set(99, true);
  CHECK(v.popcount() == 4);
  CHECK(v.set_positions() == std::vector<int>{0, 63, 64, 99});
  BitVec w(100);
  w.set(63, true);
  w.set(99, true);
  CHECK(w.is_subset_of(v));
  CHECK((v ^ w).set_positions() == std::vector<int>{0, 64});
  CHECK(hamming_distance(v, w) == 2);
  CHECK(v.to_string().size() == 100);
  CHECK(BitVec::from_string(v.to_string()) == v);
  CHECK_THROWS_AS(v.to_u64(), std::logic_error);
}
