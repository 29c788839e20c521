#pragma once

// Rational places of the Garcia-Stichtenoth tower over GF(q), q = ell^2,
// and the action of the explicit automorphism subgroup
//   sigma(y_i) = c y_i (i < m),  sigma(y_m) = c y_m + a,
// with c in F_ell^* and a^ell + a = 0.

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "lrc/galois.hpp"

namespace lrc::tower {

using galois::Elem;
using galois::Field;

/// (alpha_1, ..., alpha_m) with alpha_1^ell + alpha_1 != 0 and
/// alpha_i^ell + alpha_i = alpha_{i-1}^ell / (alpha_{i-1}^(ell-1) + 1).
struct TowerPlace {
  std::vector<Elem> coords;

  std::size_t level() const noexcept { return coords.size(); }
  Elem last() const { return coords.back(); }
  auto operator<=>(const TowerPlace&) const = default;
};

struct AutMap {
  Elem c = 1;
  Elem a = 0;
  auto operator<=>(const AutMap&) const = default;
};

struct AutSubgroup {
  std::vector<AutMap> elements;  // sorted by (c, a)
  std::uint64_t u = 1;
  std::uint32_t v = 0;
  std::uint64_t order() const noexcept { return elements.size(); }
  std::uint64_t locality() const noexcept { return elements.size() - 1; }
};

struct AdmissibleParam {
  std::uint64_t u;
  std::uint32_t v;
  std::uint64_t r;
  auto operator<=>(const AdmissibleParam&) const = default;
};

inline constexpr std::uint64_t kMaxPlaces = 1'000'000;

bool is_valid_place(const Field& f, const TowerPlace& place);

/// All places at level m, lexicographic in canonical element order.
/// Count is ell^(m-1) (q - ell).
std::vector<TowerPlace> enumerate_places(const Field& f, std::uint32_t m);

std::uint64_t place_count(std::uint64_t ell, std::uint32_t m);

/// Genus of T_m; throws TooLarge on overflow.
std::uint64_t genus(std::uint64_t ell, std::uint32_t m);
std::uint64_t genus(const Field& f, std::uint32_t m);

/// Every (u, v) with u | gcd(p^v - 1, ell - 1), r = u p^v - 1 >= 1, sorted by r.
std::vector<AdmissibleParam> admissible_params(std::uint32_t p, std::uint32_t half_degree);
std::vector<AdmissibleParam> admissible_params(const Field& f);

/// (u, v) for an admissible r, or nullopt.
std::optional<AdmissibleParam> params_for_locality(std::uint32_t p, std::uint32_t half_degree,
                                                   std::uint64_t r);

/// Composition of coordinate maps: (c1, a1) o (c2, a2) = (c1 c2, c1 a2 + a1).
AutMap compose(const Field& f, const AutMap& first, const AutMap& second);
AutMap inverse(const Field& f, const AutMap& sigma);

/// {(c, a) : c in unit_subgroup(u), a in repair_subspace(u, v)}, closure checked.
AutSubgroup build_subgroup(const Field& f, std::uint32_t u, std::uint32_t v);

/// sigma^{-1}(P) = (c alpha_1, ..., c alpha_{m-1}, c alpha_m + a).
TowerPlace act_inverse(const Field& f, const AutMap& sigma, const TowerPlace& place);

/// Orbits of `places` under G as index lists. Members are sorted canonically,
/// orbits are sorted by their smallest member.
std::vector<std::vector<std::size_t>> orbit_partition(const Field& f, const AutSubgroup& group,
                                                      std::span<const TowerPlace> places);

struct CodeParams {
  std::uint64_t n;
  std::uint64_t genus;
  std::int64_t k_lower;
  std::int64_t d_lower;
};

/// Length and dimension / distance lower bounds of the level-m code family for
/// locality r and divisor multiple s.
CodeParams family_params(const Field& f, std::uint32_t m, std::uint64_t r, std::int64_t s);

}  // namespace lrc::tower
