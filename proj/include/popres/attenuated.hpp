#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

#include "popres/downset.hpp"
#include "popres/local_inverse.hpp"

namespace popres {

// Function written in the AND-indicator basis over a downset: coefficient
// c_z multiplies AND_z(x) = [z subset x]. Evaluation at any point only
// ever reads members lying below that point.
struct MonomialExpansion {
  std::shared_ptr<const Downset> ds;
  std::vector<double> coeffs;  // one per downset member, member order
};

// The same function space in the character basis: f = sum_S c_S chi_S with
// S ranging over the downset members. The L1 norm of the coefficient list
// bounds |f| everywhere and drives every sample budget downstream.
struct CharacterExpansion {
  std::shared_ptr<const Downset> ds;
  std::vector<double> coeffs;

  double l1_norm() const;
  int max_degree() const;       // heaviest member with a nonzero coefficient
  std::size_t support_size() const;
};

double eval(const MonomialExpansion& e, const BitVec& x);
double eval(const CharacterExpansion& e, const BitVec& x);

// AND_z in the character basis: 2^{-|z|} sum_{T subset z} (-1)^{|T|} chi_T,
// carried by the downset generated by z alone. Its L1 norm is exactly one.
CharacterExpansion and_character_expansion(const BitVec& z);

// Attenuated indicator: on downset members y it evaluates to
// [z subset y] (1-delta)^{|y|-|z|}, and its character support stays inside
// the downset. Built as AND_z times the attenuating product over the
// coordinates outside z, which in the monomial basis puts weight
// (-delta)^{|m|-|z|} on every member m above z.
MonomialExpansion build_and_delta(std::shared_ptr<const Downset> ds,
                                  double delta, const BitVec& z);

CharacterExpansion to_character(const MonomialExpansion& m);

// Interpolating test function: value 1 at the origin, at most eta in
// magnitude on every other downset member, character support inside the
// downset, L1 norm certified by the local-inverse sensitivity. For the
// plain baseline (exact zeros, no attenuation) `inverse` is absent.
struct EllFunction {
  double delta = 0.0;
  double eta = 0.0;
  int r = 0;  // largest member weight
  std::optional<LocalInverse> inverse;
  MonomialExpansion monomial;
  CharacterExpansion character;
};

// ell = sum_z v_{|z|} delta^{|z|} AND_{delta,z}; on a member y of the
// downset this telescopes to (A v)_{|y|}, so the local inverse pins the
// origin value to one and every other member below eta.
EllFunction build_ell(std::shared_ptr<const Downset> ds, double delta,
                      double eta);

// Baseline with delta = 0: alternating-sign AND coefficients, exact zeros
// off the origin, L1 norm at most the member count.
EllFunction build_ell_zero(std::shared_ptr<const Downset> ds);

void dump_expansion_csv(std::ostream& out, const EllFunction& ell);

}  // namespace popres
