#pragma once

// Exact arithmetic in GF(p^w), plus the subfield / subgroup / subspace
// helpers used to assemble automorphism subgroups of the tower.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace lrc::galois {

/// Packed field element: sum of c_i * p^i over the polynomial-basis
/// coefficients c_0..c_{w-1}. The integer order of codes is the canonical
/// element order used everywhere in the library.
using Elem = std::uint32_t;

inline constexpr std::uint64_t kMaxFieldSize = std::uint64_t{1} << 20;

bool is_prime(std::uint64_t n);

/// Integer power with overflow detection; nullopt on overflow of uint64.
std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp);

struct PrimePower {
  std::uint64_t p;
  unsigned w;
};

/// Decomposes q = p^w; nullopt when q is not a prime power.
std::optional<PrimePower> prime_power(std::uint64_t q);

class FieldElement;

/// GF(p^w) with a deterministic modulus: the lexicographically smallest monic
/// irreducible of degree w, coefficients compared low-degree-first. For w = 1
/// the modulus is X and arithmetic is plain Z_p.
class Field : public std::enable_shared_from_this<Field> {
 public:
  static std::shared_ptr<const Field> create(std::uint32_t p, std::uint32_t w);

  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t w() const noexcept { return w_; }
  std::uint32_t q() const noexcept { return q_; }
  /// sqrt(q) when w is even.
  std::optional<std::uint32_t> ell() const noexcept;
  /// w / 2 when w is even: the exponent with ell = p^(w/2).
  std::optional<std::uint32_t> half_degree() const noexcept;
  /// Length w+1, low-degree first, monic.
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

  Elem zero() const noexcept { return 0; }
  Elem one() const noexcept { return 1; }
  Elem from_int(std::int64_t v) const noexcept;

  Elem add(Elem a, Elem b) const noexcept;
  Elem sub(Elem a, Elem b) const noexcept { return add(a, neg_[b]); }
  Elem neg(Elem a) const noexcept { return neg_[a]; }
  Elem mul(Elem a, Elem b) const noexcept {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const noexcept;

  /// x lies in the subfield GF(p^d) iff x^(p^d) = x.
  bool in_subfield(Elem x, std::uint32_t d) const noexcept;

  std::vector<std::uint32_t> coeffs(Elem a) const;
  /// Throws FormatError on wrong length or out-of-range coefficients.
  Elem from_coeffs(std::span<const std::uint32_t> c) const;

  FieldElement element(Elem v) const;
  bool contains(Elem v) const noexcept { return v < q_; }

  bool same_as(const Field& other) const noexcept {
    return p_ == other.p_ && w_ == other.w_;
  }

 private:
  Field(std::uint32_t p, std::uint32_t w);

  std::uint32_t p_;
  std::uint32_t w_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<Elem> exp_;             // size 2(q-1)
  std::vector<std::uint32_t> log_;    // size q, log_[0] unused
  std::vector<Elem> neg_;
  std::vector<Elem> add_table_;       // q*q entries for small odd-p fields
};

/// Value-semantic element bound to its field; mixed-field operations throw
/// SpecMismatch.
class FieldElement {
 public:
  FieldElement(std::shared_ptr<const Field> field, Elem value);

  const Field& field() const noexcept { return *field_; }
  const std::shared_ptr<const Field>& field_ptr() const noexcept { return field_; }
  Elem value() const noexcept { return value_; }
  bool is_zero() const noexcept { return value_ == 0; }
  std::vector<std::uint32_t> coeffs() const { return field_->coeffs(value_); }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement inv() const;
  FieldElement pow(std::uint64_t e) const;

  bool operator==(const FieldElement& o) const;

 private:
  const Field& check(const FieldElement& o) const;

  std::shared_ptr<const Field> field_;
  Elem value_;
};

/// {a : a^ell + a = 0}, canonical order. Throws NoSquareRoot for odd w.
std::vector<Elem> artin_schreier_kernel(const Field& f);

/// The order-u subgroup of F_ell^*, canonical order. Throws NotDivisor when
/// u does not divide ell - 1.
std::vector<Elem> unit_subgroup(const Field& f, std::uint32_t u);

/// min{t > 0 : u | p^t - 1}.
std::uint32_t multiplicative_order_degree(std::uint32_t p, std::uint32_t u);

/// u | gcd(p^v - 1, ell - 1) with gcd(0, ell - 1) = ell - 1 at v = 0, and
/// 0 <= v <= half_degree.
bool is_admissible(std::uint32_t p, std::uint32_t half_degree, std::uint64_t u,
                   std::uint32_t v);

struct RepairSubspace {
  std::uint32_t h = 1;           // W is a vector space over GF(p^h)
  std::vector<Elem> basis;       // v/h vectors
  std::vector<Elem> elements;    // p^v elements, canonical order
};

/// Deterministic GF(p^h)-subspace of the Artin-Schreier kernel of size p^v.
std::vector<Elem> kernel_basis(const Field& f, std::uint32_t h);
RepairSubspace repair_subspace(const Field& f, std::uint32_t u, std::uint32_t v);

}  // namespace lrc::galois
