#include "lrc/tower.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "lrc/error.hpp"

namespace lrc::tower {

namespace {

std::uint32_t require_ell(const Field& f) {
  const auto ell = f.ell();
  if (!ell) {
    throw Error(ErrorKind::NoSquareRoot, "GF(" + std::to_string(f.q()) + ") is not a square field");
  }
  return *ell;
}

Elem trace(const Field& f, std::uint32_t ell, Elem y) { return f.add(f.pow(y, ell), y); }

// Right-hand side of the tower recursion, or nullopt where it has a pole.
std::optional<Elem> recursion_rhs(const Field& f, std::uint32_t ell, Elem prev) {
  const Elem denom = f.add(f.pow(prev, ell - 1), f.one());
  if (denom == 0) return std::nullopt;
  return f.div(f.pow(prev, ell), denom);
}

std::uint64_t checked(std::optional<std::uint64_t> v) {
  if (!v) throw Error(ErrorKind::TooLarge, "tower parameter overflows 64 bits");
  return *v;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) throw Error(ErrorKind::TooLarge, "tower parameter overflows 64 bits");
  return a * b;
}

}  // namespace

bool is_valid_place(const Field& f, const TowerPlace& place) {
  const std::uint32_t ell = require_ell(f);
  if (place.coords.empty()) return false;
  for (Elem c : place.coords) {
    if (!f.contains(c)) return false;
  }
  if (trace(f, ell, place.coords[0]) == 0) return false;
  for (std::size_t i = 1; i < place.coords.size(); ++i) {
    const auto rhs = recursion_rhs(f, ell, place.coords[i - 1]);
    if (!rhs || trace(f, ell, place.coords[i]) != *rhs) return false;
  }
  return true;
}

std::uint64_t place_count(std::uint64_t ell, std::uint32_t m) {
  if (m == 0) throw Error(ErrorKind::DomainError, "tower level must be >= 1");
  return checked_mul(checked(galois::checked_pow(ell, m - 1)), checked_mul(ell, ell) - ell);
}

std::vector<TowerPlace> enumerate_places(const Field& f, std::uint32_t m) {
  const std::uint32_t ell = require_ell(f);
  const std::uint64_t expected = place_count(ell, m);
  if (expected > kMaxPlaces) {
    throw Error(ErrorKind::TooLarge, std::to_string(expected) + " places exceed the enumeration guard");
  }
  // Preimages of each value under y -> y^ell + y, in canonical order.
  std::vector<std::vector<Elem>> preimages(f.q());
  for (Elem y = 0; y < f.q(); ++y) preimages[trace(f, ell, y)].push_back(y);

  std::vector<TowerPlace> out;
  out.reserve(expected);
  TowerPlace current;
  current.coords.reserve(m);
  auto extend = [&](auto&& self, std::span<const Elem> choices) -> void {
    for (Elem alpha : choices) {
      current.coords.push_back(alpha);
      if (current.coords.size() == m) {
        out.push_back(current);
      } else {
        const auto rhs = recursion_rhs(f, ell, alpha);
        if (rhs) self(self, preimages[*rhs]);
      }
      current.coords.pop_back();
    }
  };
  std::vector<Elem> first;
  for (Elem a = 0; a < f.q(); ++a) {
    if (trace(f, ell, a) != 0) first.push_back(a);
  }
  extend(extend, first);
  if (out.size() != expected) {
    throw Error(ErrorKind::InvariantViolation, "place count " + std::to_string(out.size()) +
                                                   " differs from " + std::to_string(expected));
  }
  return out;
}

std::uint64_t genus(std::uint64_t ell, std::uint32_t m) {
  if (m == 0) throw Error(ErrorKind::DomainError, "tower level must be >= 1");
  if (m % 2 == 0) {
    const std::uint64_t a = checked(galois::checked_pow(ell, m / 2)) - 1;
    return checked_mul(a, a);
  }
  const std::uint64_t a = checked(galois::checked_pow(ell, (m + 1) / 2)) - 1;
  const std::uint64_t b = checked(galois::checked_pow(ell, (m - 1) / 2)) - 1;
  return checked_mul(a, b);
}

std::uint64_t genus(const Field& f, std::uint32_t m) { return genus(require_ell(f), m); }

std::vector<AdmissibleParam> admissible_params(std::uint32_t p, std::uint32_t half_degree) {
  const std::uint64_t ell = checked(galois::checked_pow(p, half_degree));
  std::vector<AdmissibleParam> out;
  for (std::uint32_t v = 0; v <= half_degree; ++v) {
    const std::uint64_t pv = checked(galois::checked_pow(p, v));
    const std::uint64_t g = (v == 0) ? ell - 1 : std::gcd(pv - 1, ell - 1);
    for (std::uint64_t u = 1; u <= g; ++u) {
      if (g % u != 0) continue;
      const std::uint64_t r = checked_mul(u, pv) - 1;
      if (r == 0) continue;
      out.push_back({u, v, r});
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.r != b.r ? a.r < b.r : a.v < b.v;
  });
  out.erase(std::unique(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.r == b.r; }),
            out.end());
  return out;
}

std::vector<AdmissibleParam> admissible_params(const Field& f) {
  require_ell(f);
  return admissible_params(f.p(), *f.half_degree());
}

std::optional<AdmissibleParam> params_for_locality(std::uint32_t p, std::uint32_t half_degree,
                                                   std::uint64_t r) {
  if (r == 0) return std::nullopt;
  std::uint64_t u = r + 1;
  std::uint32_t v = 0;
  while (u % p == 0) {
    u /= p;
    ++v;
  }
  if (!galois::is_admissible(p, half_degree, u, v)) return std::nullopt;
  return AdmissibleParam{u, v, r};
}

AutMap compose(const Field& f, const AutMap& first, const AutMap& second) {
  return {f.mul(first.c, second.c), f.add(f.mul(first.c, second.a), first.a)};
}

AutMap inverse(const Field& f, const AutMap& sigma) {
  const Elem ci = f.inv(sigma.c);
  return {ci, f.neg(f.mul(ci, sigma.a))};
}

AutSubgroup build_subgroup(const Field& f, std::uint32_t u, std::uint32_t v) {
  const std::uint32_t ell = require_ell(f);
  if (!galois::is_admissible(f.p(), *f.half_degree(), u, v)) {
    throw Error(ErrorKind::NotAdmissible, "(u=" + std::to_string(u) + ", v=" + std::to_string(v) +
                                              ") is not admissible");
  }
  const auto units = galois::unit_subgroup(f, u);
  const auto subspace = galois::repair_subspace(f, u, v);
  AutSubgroup g;
  g.u = u;
  g.v = v;
  for (Elem c : units) {
    for (Elem a : subspace.elements) g.elements.push_back({c, a});
  }
  std::sort(g.elements.begin(), g.elements.end());

  for (const auto& s : g.elements) {
    if (f.pow(s.c, ell) != s.c || trace(f, ell, s.a) != 0) {
      throw Error(ErrorKind::InvariantViolation, "subgroup element outside the automorphism family");
    }
    for (const auto& t : g.elements) {
      if (!std::binary_search(g.elements.begin(), g.elements.end(), compose(f, s, t))) {
        throw Error(ErrorKind::InvariantViolation, "subgroup is not closed under composition");
      }
    }
    if (!std::binary_search(g.elements.begin(), g.elements.end(), inverse(f, s))) {
      throw Error(ErrorKind::InvariantViolation, "subgroup is not closed under inverses");
    }
  }
  return g;
}

TowerPlace act_inverse(const Field& f, const AutMap& sigma, const TowerPlace& place) {
  TowerPlace image;
  image.coords.reserve(place.coords.size());
  for (Elem alpha : place.coords) image.coords.push_back(f.mul(sigma.c, alpha));
  image.coords.back() = f.add(image.coords.back(), sigma.a);
  if (!is_valid_place(f, image)) {
    throw Error(ErrorKind::InvariantViolation, "automorphism image is not a valid place");
  }
  return image;
}

std::vector<std::vector<std::size_t>> orbit_partition(const Field& f, const AutSubgroup& group,
                                                      std::span<const TowerPlace> places) {
  std::vector<std::size_t> by_place(places.size());
  std::iota(by_place.begin(), by_place.end(), std::size_t{0});
  std::sort(by_place.begin(), by_place.end(),
            [&](std::size_t a, std::size_t b) { return places[a] < places[b]; });
  auto index_of = [&](const TowerPlace& p) -> std::size_t {
    auto it = std::lower_bound(by_place.begin(), by_place.end(), p,
                               [&](std::size_t i, const TowerPlace& key) { return places[i] < key; });
    if (it == by_place.end() || places[*it] != p) {
      throw Error(ErrorKind::InvariantViolation, "orbit leaves the supplied place set");
    }
    return *it;
  };

  std::vector<char> assigned(places.size(), 0);
  std::vector<std::vector<std::size_t>> orbits;
  for (std::size_t start : by_place) {
    if (assigned[start]) continue;
    std::vector<std::size_t> orbit;
    for (const auto& sigma : group.elements) orbit.push_back(index_of(act_inverse(f, sigma, places[start])));
    std::sort(orbit.begin(), orbit.end(),
              [&](std::size_t a, std::size_t b) { return places[a] < places[b]; });
    orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
    if (orbit.size() != group.order()) {
      throw Error(ErrorKind::InvariantViolation, "orbit of size " + std::to_string(orbit.size()) +
                                                     " under a group of order " +
                                                     std::to_string(group.order()));
    }
    std::vector<Elem> lasts;
    for (std::size_t i : orbit) {
      if (assigned[i]) throw Error(ErrorKind::InvariantViolation, "orbits overlap");
      assigned[i] = 1;
      lasts.push_back(places[i].last());
    }
    std::sort(lasts.begin(), lasts.end());
    if (std::adjacent_find(lasts.begin(), lasts.end()) != lasts.end()) {
      throw Error(ErrorKind::InvariantViolation, "last coordinates collide within an orbit");
    }
    orbits.push_back(std::move(orbit));
  }
  // Starting points were visited in canonical order, so orbits are already
  // sorted by representative.
  return orbits;
}

CodeParams family_params(const Field& f, std::uint32_t m, std::uint64_t r, std::int64_t s) {
  const std::uint32_t ell = require_ell(f);
  if (!params_for_locality(f.p(), *f.half_degree(), r)) {
    throw Error(ErrorKind::NotAdmissible, "r = " + std::to_string(r) + " is not admissible");
  }
  CodeParams out{};
  out.n = place_count(ell, m);
  out.genus = genus(ell, m);
  using i128 = __int128;
  const i128 rr = static_cast<i128>(r);
  const i128 g = static_cast<i128>(out.genus);
  const i128 upper = (m == 1) ? i128{ell} - 1 : static_cast<i128>(place_count(ell, m - 1));
  // (g - 1)/(r + 1) <= s, and s >= 0 at genus 0.
  const bool below = (m == 1) ? s < 0 : static_cast<i128>(s) * (rr + 1) < g - 1;
  if (below || static_cast<i128>(s) > upper) {
    throw Error(ErrorKind::SOutOfRange, "s = " + std::to_string(s) + " outside the admissible range");
  }
  const i128 num = rr * s * (rr + 1) - rr * (g - 1);
  const i128 den = rr + 1;
  const i128 k_lb = num >= 0 ? (num + den - 1) / den : -((-num) / den);
  const i128 ell_pow = static_cast<i128>(checked(galois::checked_pow(ell, m - 1)));
  const i128 d_lb = static_cast<i128>(out.n) - (rr + 1) * s - (rr - 1) * ell_pow;
  if (d_lb < 1) {
    throw Error(ErrorKind::DistanceNonpositive, "distance lower bound " +
                                                    std::to_string(static_cast<std::int64_t>(d_lb)) +
                                                    " is not positive");
  }
  out.k_lower = static_cast<std::int64_t>(k_lb);
  out.d_lower = static_cast<std::int64_t>(d_lb);
  return out;
}

}  // namespace lrc::tower
