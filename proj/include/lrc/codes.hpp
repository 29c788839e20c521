#pragma once

// Linear codes with locality: the automorphism construction evaluated on the
// rational places of T_1, the parity-augmentation construction, encoding,
// single-erasure local repair, and brute-force verification.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lrc/galois.hpp"
#include "lrc/linalg.hpp"

namespace lrc::codes {

using galois::Elem;
using galois::Field;
using linalg::Matrix;

enum class Construction { rational_aut, naive, custom };

struct CodeMeta {
  Construction construction = Construction::custom;
  std::optional<std::uint32_t> u;
  std::optional<std::uint32_t> v;
  std::optional<std::int64_t> s;
  std::string source;                  // naive codes: where the parent came from
  std::optional<std::int64_t> d_lower;
};

struct LinearCode {
  std::shared_ptr<const Field> field;
  std::size_t n = 0;
  std::size_t k = 0;
  std::uint64_t r = 0;
  Matrix generator;                                 // k x n, full row rank
  std::vector<std::vector<std::size_t>> repair_groups;
  std::vector<Elem> y_values;                       // evaluation point per coordinate
  CodeMeta meta;

  const Field& gf() const { return *field; }
};

/// Checks rank, shapes and the repair-group partition; throws on violation.
void validate(const LinearCode& code);

/// Wraps a full-rank generator; groups may be empty (r = 0 then).
LinearCode make_code(std::shared_ptr<const Field> field, Matrix generator,
                     std::vector<std::vector<std::size_t>> repair_groups = {});

using Poly = std::vector<Elem>;  // low-degree first

Elem poly_eval(const Field& f, const Poly& p, Elem x);
Poly poly_mul(const Field& f, const Poly& a, const Poly& b);

/// t(y) = (prod_{a in W} (y - a))^u: constant on orbits of the subgroup built
/// from (u, v), degree u p^v. Invariance is checked on every rational place.
Poly good_function(const Field& f, std::uint32_t u, std::uint32_t v);

struct EvaluationBasis {
  Poly t_poly;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> exponents;  // (i, j): y^i t^j
};

EvaluationBasis evaluation_basis(const Field& f, std::uint32_t u, std::uint32_t v, std::int64_t s);

/// [q - ell, r(s+1), >= q - ell - (r+1)s - (r-1)] code with locality r = u p^v - 1.
LinearCode build_rational_lrc(std::shared_ptr<const Field> field, std::uint32_t u, std::uint32_t v,
                              std::int64_t s);

/// Parity-check matrix (rows span the dual).
Matrix parity_check(const LinearCode& code);

/// Subcode with n/(r+1) disjoint all-ones parity checks appended.
LinearCode naive_lrc(const LinearCode& base, std::uint64_t r);

std::vector<Elem> encode(const LinearCode& code, std::span<const Elem> message);

using ErasedWord = std::vector<std::optional<Elem>>;

/// Recovers position idx from the other members of its repair group.
Elem local_repair(const LinearCode& code, std::span<const std::optional<Elem>> word, std::size_t idx);

/// Calls fn on every codeword (q^k of them). Throws TooLarge above limit.
void for_each_codeword(const LinearCode& code, std::uint64_t limit,
                       const std::function<void(std::span<const Elem>)>& fn);

inline constexpr std::uint64_t kDistanceLimit = std::uint64_t{1} << 22;
inline constexpr std::uint64_t kLocalityLimit = std::uint64_t{1} << 18;

/// q^k, saturating at UINT64_MAX.
std::uint64_t codeword_count(const LinearCode& code);

/// Exact minimum distance by scanning all nonzero codewords (up to scalars).
std::int64_t min_distance(const LinearCode& code, std::uint64_t limit = kDistanceLimit);

/// Exact minimum distance from column ranks: d = n - max{|S| : rank(G_S) < k}.
/// Enumerates coordinate subsets; throws TooLarge beyond subset_limit.
std::int64_t min_distance_by_supports(const LinearCode& code, std::uint64_t subset_limit = 50'000'000);

/// Smallest nonzero weight over `samples` pseudo-random messages: an upper
/// bound on d, never a certificate.
std::int64_t sampled_distance_upper_bound(const LinearCode& code, std::uint64_t samples,
                                          std::uint64_t seed);

enum class ExhaustiveMethod { codeword_pairs, kernel, skipped };

struct CoordinateLocality {
  std::size_t index = 0;
  std::vector<std::size_t> recovery_set;
  bool algebraic = false;
  std::optional<bool> exhaustive;
};

struct LocalityReport {
  std::vector<CoordinateLocality> coords;
  ExhaustiveMethod method = ExhaustiveMethod::skipped;

  bool algebraic_pass() const;
  bool exhaustive_pass() const;  // false when skipped
  bool passed() const { return algebraic_pass() && (method == ExhaustiveMethod::skipped || exhaustive_pass()); }
};

/// (a) generator column i lies in the span of the columns of its recovery set;
/// (b) any two codewords agreeing on the recovery set agree at i. (b) walks
/// all codewords when q^k <= limit, otherwise all codewords vanishing on the
/// recovery set when that subspace has at most `limit` elements.
LocalityReport verify_locality(const LinearCode& code, std::uint64_t limit = kLocalityLimit);

std::string_view to_string(Construction c) noexcept;
std::string_view to_string(ExhaustiveMethod m) noexcept;

}  // namespace lrc::codes
