#include "popres/attenuated.hpp"

#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace popres {

namespace {

void check_expansion(const std::shared_ptr<const Downset>& ds,
                     const std::vector<double>& coeffs) {
  if (!ds) throw std::invalid_argument("expansion needs a downset");
  if (coeffs.size() != ds->size()) {
    throw std::invalid_argument("coefficient count must match downset size");
  }
}

}  // namespace

double CharacterExpansion::l1_norm() const {
  double s = 0.0;
  for (double c : coeffs) s += std::abs(c);
  return s;
}

int CharacterExpansion::max_degree() const {
  int deg = 0;
  const auto& members = ds->members();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] != 0.0) deg = std::max(deg, members[i].popcount());
  }
  return deg;
}

std::size_t CharacterExpansion::support_size() const {
  std::size_t c = 0;
  for (double v : coeffs) {
    if (v != 0.0) ++c;
  }
  return c;
}

double eval(const MonomialExpansion& e, const BitVec& x) {
  check_expansion(e.ds, e.coeffs);
  double s = 0.0;
  const auto& members = e.ds->members();
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (e.coeffs[i] != 0.0 && members[i].is_subset_of(x)) s += e.coeffs[i];
  }
  return s;
}

double eval(const CharacterExpansion& e, const BitVec& x) {
  check_expansion(e.ds, e.coeffs);
  double s = 0.0;
  const auto& members = e.ds->members();
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (e.coeffs[i] != 0.0) s += e.coeffs[i] * chi(members[i], x);
  }
  return s;
}

CharacterExpansion and_character_expansion(const BitVec& z) {
  auto ds = make_downset(z.dimension(), {z});
  CharacterExpansion out;
  out.ds = ds;
  out.coeffs.assign(ds->size(), 0.0);
  const double scale = std::ldexp(1.0, -z.popcount());
  const auto& members = ds->members();
  for (std::size_t i = 0; i < members.size(); ++i) {
    out.coeffs[i] = (members[i].popcount() & 1) ? -scale : scale;
  }
  return out;
}

MonomialExpansion build_and_delta(std::shared_ptr<const Downset> ds,
                                  double delta, const BitVec& z) {
  if (!ds) throw std::invalid_argument("build_and_delta needs a downset");
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw std::invalid_argument("attenuation must lie in [0, 1]");
  }
  if (z.dimension() != ds->dimension()) {
    throw std::invalid_argument("point dimension must match downset");
  }
  if (!ds->contains(z)) {
    throw std::invalid_argument("base point must be a downset member");
  }
  MonomialExpansion out;
  out.ds = ds;
  out.coeffs.assign(ds->size(), 0.0);
  // Expanding prod_{i not in z}(1 - delta x_i) against AND_z and keeping
  // only the factors that land inside the downset: each member m above z
  // arises from exactly one subset of m\z, with weight (-delta)^{|m|-|z|}.
  const int base = z.popcount();
  const auto& members = ds->members();
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (!z.is_subset_of(members[i])) continue;
    const int extra = members[i].popcount() - base;
    double w = 1.0;
    for (int t = 0; t < extra; ++t) w *= -delta;
    out.coeffs[i] = w;
  }
  return out;
}

CharacterExpansion to_character(const MonomialExpansion& m) {
  check_expansion(m.ds, m.coeffs);
  CharacterExpansion out;
  out.ds = m.ds;
  out.coeffs.assign(m.ds->size(), 0.0);
  const auto& members = m.ds->members();
  for (std::size_t i = 0; i < members.size(); ++i) {
    const double cz = m.coeffs[i];
    if (cz == 0.0) continue;
    const double scale = std::ldexp(cz, -members[i].popcount());
    // AND_z = 2^{-|z|} sum_{T subset z} (-1)^{|T|} chi_T; every T below a
    // member is itself a member, so the accumulation stays in-index.
    for (std::size_t j = 0; j < members.size(); ++j) {
      if (!members[j].is_subset_of(members[i])) continue;
      out.coeffs[j] += (members[j].popcount() & 1) ? -scale : scale;
    }
  }
  return out;
}

EllFunction build_ell(std::shared_ptr<const Downset> ds, double delta,
                      double eta) {
  if (!ds) throw std::invalid_argument("build_ell needs a downset");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("attenuation must lie in (0, 1)");
  }
  if (!(eta > 0.0 && eta < 1.0)) {
    throw std::invalid_argument("off-origin bound must lie in (0, 1)");
  }
  const int r = ds->max_weight();
  LocalInverse inv = local_inverse(delta, r, eta);

  EllFunction out;
  out.delta = delta;
  out.eta = eta;
  out.r = r;

  MonomialExpansion mono;
  mono.ds = ds;
  mono.coeffs.assign(ds->size(), 0.0);
  const auto& members = ds->members();
  // Sum of v_{|z|} delta^{|z|} AND_{delta,z} over all members z. The
  // monomial weight a member m picks up from z below it is
  // v_{|z|} delta^{|z|} (-delta)^{|m|-|z|}, so accumulate over the
  // submembers of each member directly.
  std::vector<double> delta_pow(static_cast<std::size_t>(r) + 1, 1.0);
  for (int t = 1; t <= r; ++t) delta_pow[t] = delta_pow[t - 1] * delta;
  std::vector<double> sign(static_cast<std::size_t>(r) + 1, 1.0);
  for (int t = 1; t <= r; ++t) sign[t] = -sign[t - 1];
  for (std::size_t i = 0; i < members.size(); ++i) {
    const int wm = members[i].popcount();
    double acc = 0.0;
    for (std::size_t j = 0; j < members.size(); ++j) {
      if (!members[j].is_subset_of(members[i])) continue;
      const int wz = members[j].popcount();
      acc += inv.v[wz] * delta_pow[wz] * sign[wm - wz] * delta_pow[wm - wz];
    }
    mono.coeffs[i] = acc;
  }

  // The construction makes ell on a member y equal (A v)_{|y|}: exactly 1
  // at the origin and within eta elsewhere. Verify both before handing the
  // function to any estimator.
  const BitVec origin(ds->dimension());
  const double at_origin = eval(mono, origin);
  if (std::abs(at_origin - 1.0) > 1e-9) {
    throw std::runtime_error("test function origin value drifted: " +
                             std::to_string(at_origin));
  }
  const double slack = eta * (1.0 + 1e-6);
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (members[i].none()) continue;
    const double val = eval(mono, members[i]);
    if (std::abs(val) > slack) {
      throw std::runtime_error(
          "test function exceeds its off-origin bound at a member: " +
          std::to_string(val));
    }
  }

  out.inverse = std::move(inv);
  out.character = to_character(mono);
  out.monomial = std::move(mono);
  return out;
}

EllFunction build_ell_zero(std::shared_ptr<const Downset> ds) {
  if (!ds) throw std::invalid_argument("build_ell_zero needs a downset");
  EllFunction out;
  out.delta = 0.0;
  out.eta = 0.0;
  out.r = ds->max_weight();

  MonomialExpansion mono;
  mono.ds = ds;
  mono.coeffs.assign(ds->size(), 0.0);
  const auto& members = ds->members();
  for (std::size_t i = 0; i < members.size(); ++i) {
    mono.coeffs[i] = (members[i].popcount() & 1) ? -1.0 : 1.0;
  }

  // Inclusion-exclusion: sum over z below y of (-1)^{|z|} vanishes for
  // every nonempty y and equals one at the origin. Coefficients are +-1 so
  // the check below is exact integer arithmetic in disguise.
  for (std::size_t i = 0; i < members.size(); ++i) {
    std::int64_t acc = 0;
    for (std::size_t j = 0; j < members.size(); ++j) {
      if (!members[j].is_subset_of(members[i])) continue;
      acc += (members[j].popcount() & 1) ? -1 : 1;
    }
    const std::int64_t want = members[i].none() ? 1 : 0;
    if (acc != want) {
      throw std::runtime_error("baseline interpolation failed on a member");
    }
  }

  out.character = to_character(mono);
  out.monomial = std::move(mono);
  return out;
}

void dump_expansion_csv(std::ostream& out, const EllFunction& ell) {
  out << "member,weight,monomial,character\n";
  const auto& members = ell.monomial.ds->members();
  for (std::size_t i = 0; i < members.size(); ++i) {
    out << members[i].to_string() << ',' << members[i].popcount() << ','
        << ell.monomial.coeffs[i] << ',' << ell.character.coeffs[i] << '\n';
  }
}

}  // namespace popres
