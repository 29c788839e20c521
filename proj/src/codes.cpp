#include "lrc/codes.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <unordered_map>

#include "lrc/error.hpp"
#include "lrc/tower.hpp"

namespace lrc::codes {

namespace {

std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && out > UINT64_MAX / base) return UINT64_MAX;
    out *= base;
  }
  return out;
}

const std::vector<std::size_t>& group_containing(const LinearCode& code, std::size_t idx) {
  for (const auto& g : code.repair_groups) {
    if (std::find(g.begin(), g.end(), idx) != g.end()) return g;
  }
  throw Error(ErrorKind::InvariantViolation, "coordinate " + std::to_string(idx) + " is in no repair group");
}

std::vector<std::size_t> recovery_set(const std::vector<std::size_t>& group, std::size_t idx) {
  std::vector<std::size_t> out;
  for (std::size_t j : group) {
    if (j != idx) out.push_back(j);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Odometer over all vectors of length `len` with entries in [0, q). Calls
// step(position, old, new) for each digit change so callers can update a
// running linear combination incrementally. Returns false when exhausted.
template <typename Step>
bool advance(std::vector<Elem>& digits, std::uint32_t q, Step&& step) {
  for (std::size_t i = 0; i < digits.size(); ++i) {
    const Elem old = digits[i];
    if (old + 1 < q) {
      digits[i] = old + 1;
      step(i, old, old + 1);
      return true;
    }
    digits[i] = 0;
    step(i, old, Elem{0});
  }
  return false;
}

// c += (next - prev) * row
void shift_by_row(const Field& f, std::span<Elem> c, std::span<const Elem> row, Elem prev, Elem next) {
  const Elem delta = f.sub(next, prev);
  for (std::size_t j = 0; j < c.size(); ++j) c[j] = f.add(c[j], f.mul(delta, row[j]));
}

std::size_t weight(std::span<const Elem> c) {
  return static_cast<std::size_t>(std::count_if(c.begin(), c.end(), [](Elem x) { return x != 0; }));
}

std::string describe(const LinearCode& code) {
  switch (code.meta.construction) {
    case Construction::rational_aut:
      return "rational-aut(q=" + std::to_string(code.gf().q()) + ",u=" + std::to_string(code.meta.u.value_or(0)) +
             ",v=" + std::to_string(code.meta.v.value_or(0)) + ",s=" + std::to_string(code.meta.s.value_or(0)) + ")";
    case Construction::naive:
      return "naive(" + code.meta.source + ",r=" + std::to_string(code.r) + ")";
    case Construction::custom:
      return code.meta.source.empty() ? "custom" : code.meta.source;
  }
  return "custom";
}

}  // namespace

void validate(const LinearCode& code) {
  if (!code.field) throw Error(ErrorKind::InvariantViolation, "code has no field");
  const Field& f = code.gf();
  if (code.generator.rows() != code.k || code.generator.cols() != code.n) {
    throw Error(ErrorKind::LengthMismatch, "generator shape does not match n, k");
  }
  for (std::size_t i = 0; i < code.k; ++i) {
    for (Elem x : code.generator.row(i)) {
      if (!f.contains(x)) throw Error(ErrorKind::FormatError, "generator entry outside the field");
    }
  }
  if (linalg::rank(f, code.generator) != code.k) {
    throw Error(ErrorKind::RankDeficiency, "generator rank is below k = " + std::to_string(code.k));
  }
  if (!code.y_values.empty() && code.y_values.size() != code.n) {
    throw Error(ErrorKind::LengthMismatch, "y_values length differs from n");
  }
  if (code.repair_groups.empty()) return;
  std::vector<bool> seen(code.n, false);
  for (const auto& g : code.repair_groups) {
    if (g.size() != code.r + 1) {
      throw Error(ErrorKind::InvariantViolation, "repair group of size " + std::to_string(g.size()) +
                                                     ", expected " + std::to_string(code.r + 1));
    }
    for (std::size_t j : g) {
      if (j >= code.n || seen[j]) throw Error(ErrorKind::InvariantViolation, "repair groups do not partition the coordinates");
      seen[j] = true;
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw Error(ErrorKind::InvariantViolation, "repair groups do not cover every coordinate");
  }
}

LinearCode make_code(std::shared_ptr<const Field> field, Matrix generator,
                     std::vector<std::vector<std::size_t>> repair_groups) {
  LinearCode code;
  code.field = std::move(field);
  code.k = generator.rows();
  code.n = generator.cols();
  code.r = repair_groups.empty() ? 0 : repair_groups.front().size() - 1;
  code.generator = std::move(generator);
  code.repair_groups = std::move(repair_groups);
  validate(code);
  return code;
}

Elem poly_eval(const Field& f, const Poly& p, Elem x) {
  Elem acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = f.add(f.mul(acc, x), *it);
  return acc;
}

Poly poly_mul(const Field& f, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = f.add(out[i + j], f.mul(a[i], b[j]));
  }
  return out;
}

Poly good_function(const Field& f, std::uint32_t u, std::uint32_t v) {
  const auto half = f.half_degree();
  if (!half) throw Error(ErrorKind::NoSquareRoot, "GF(" + std::to_string(f.q()) + ") is not a square field");
  if (!galois::is_admissible(f.p(), *half, u, v) || static_cast<std::uint64_t>(u) * galois::checked_pow(f.p(), v).value() < 2) {
    throw Error(ErrorKind::NotAdmissible, "(u, v) = (" + std::to_string(u) + ", " + std::to_string(v) + ") is not admissible");
  }
  const auto W = galois::repair_subspace(f, u, v);
  Poly lw{1};
  for (Elem a : W.elements) lw = poly_mul(f, lw, Poly{f.neg(a), 1});
  Poly t{1};
  for (std::uint32_t i = 0; i < u; ++i) t = poly_mul(f, t, lw);

  const auto group = tower::build_subgroup(f, u, v);
  for (const auto& place : tower::enumerate_places(f, 1)) {
    const Elem base = poly_eval(f, t, place.last());
    for (const auto& sigma : group.elements) {
      const Elem moved = tower::act_inverse(f, sigma, place).last();
      if (poly_eval(f, t, moved) != base) {
        throw Error(ErrorKind::InvariantViolation, "good function is not invariant at y = " + std::to_string(place.last()));
      }
    }
  }
  return t;
}

EvaluationBasis evaluation_basis(const Field& f, std::uint32_t u, std::uint32_t v, std::int64_t s) {
  EvaluationBasis out;
  out.t_poly = good_function(f, u, v);
  const std::uint64_t r = out.t_poly.size() - 2;
  tower::family_params(f, 1, r, s);
  for (std::int64_t j = 0; j <= s; ++j) {
    for (std::uint64_t i = 0; i < r; ++i) out.exponents.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
  }
  return out;
}

LinearCode build_rational_lrc(std::shared_ptr<const Field> field, std::uint32_t u, std::uint32_t v,
                              std::int64_t s) {
  const Field& f = *field;
  const auto basis = evaluation_basis(f, u, v, s);
  const std::uint64_t r = basis.t_poly.size() - 2;
  const auto params = tower::family_params(f, 1, r, s);

  const auto places = tower::enumerate_places(f, 1);
  const auto group = tower::build_subgroup(f, u, v);
  const auto orbits = tower::orbit_partition(f, group, places);

  LinearCode code;
  code.field = field;
  code.n = places.size();
  code.r = r;
  std::vector<Elem> t_values;
  std::vector<Elem> orbit_t;
  for (const auto& orbit : orbits) {
    std::vector<std::size_t> block;
    const Elem t0 = poly_eval(f, basis.t_poly, places[orbit.front()].last());
    for (std::size_t idx : orbit) {
      const Elem y = places[idx].last();
      if (poly_eval(f, basis.t_poly, y) != t0) {
        throw Error(ErrorKind::InvariantViolation, "good function is not constant on an orbit");
      }
      block.push_back(code.y_values.size());
      code.y_values.push_back(y);
      t_values.push_back(t0);
    }
    orbit_t.push_back(t0);
    code.repair_groups.push_back(std::move(block));
  }
  std::sort(orbit_t.begin(), orbit_t.end());
  if (std::adjacent_find(orbit_t.begin(), orbit_t.end()) != orbit_t.end()) {
    throw Error(ErrorKind::InvariantViolation, "good function repeats a value across orbits");
  }

  Matrix g(basis.exponents.size(), code.n);
  for (std::size_t row = 0; row < basis.exponents.size(); ++row) {
    const auto [i, j] = basis.exponents[row];
    for (std::size_t col = 0; col < code.n; ++col) {
      g(row, col) = f.mul(f.pow(code.y_values[col], i), f.pow(t_values[col], j));
    }
  }
  if (linalg::rank(f, g) != g.rows()) {
    throw Error(ErrorKind::RankDeficiency, "evaluation map is not injective on the basis");
  }
  code.k = g.rows();
  code.generator = std::move(g);
  code.meta.construction = Construction::rational_aut;
  code.meta.u = u;
  code.meta.v = v;
  code.meta.s = s;
  code.meta.d_lower = params.d_lower;
  validate(code);
  return code;
}

Matrix parity_check(const LinearCode& code) { return linalg::nullspace(code.gf(), code.generator); }

LinearCode naive_lrc(const LinearCode& base, std::uint64_t r) {
  const Field& f = base.gf();
  if (r == 0 || base.n % (r + 1) != 0) {
    throw Error(ErrorKind::NotDivisible, "r + 1 = " + std::to_string(r + 1) + " does not divide n = " + std::to_string(base.n));
  }
  if (r * base.k < base.n) {
    throw Error(ErrorKind::LocalityTooSmall, "r = " + std::to_string(r) + " is below n/k = " + std::to_string(base.n) +
                                                 "/" + std::to_string(base.k));
  }
  Matrix h = parity_check(base);
  if (h.cols() != base.n) h = Matrix(0, base.n);
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t t = 0; t < base.n / (r + 1); ++t) {
    std::vector<Elem> row(base.n, 0);
    std::vector<std::size_t> block;
    for (std::size_t j = t * (r + 1); j < (t + 1) * (r + 1); ++j) {
      row[j] = f.one();
      block.push_back(j);
    }
    h.append_row(row);
    groups.push_back(std::move(block));
  }
  LinearCode code;
  code.field = base.field;
  code.generator = linalg::nullspace(f, h);
  if (code.generator.cols() != base.n) code.generator = Matrix(0, base.n);
  code.n = base.n;
  code.k = code.generator.rows();
  code.r = r;
  code.repair_groups = std::move(groups);
  code.meta.construction = Construction::naive;
  code.meta.source = describe(base);
  code.meta.d_lower = base.meta.d_lower;
  validate(code);
  return code;
}

std::vector<Elem> encode(const LinearCode& code, std::span<const Elem> message) {
  if (message.size() != code.k) {
    throw Error(ErrorKind::LengthMismatch, "message length " + std::to_string(message.size()) + " differs from k = " +
                                               std::to_string(code.k));
  }
  for (Elem x : message) {
    if (!code.gf().contains(x)) throw Error(ErrorKind::SpecMismatch, "message symbol outside the code's field");
  }
  return linalg::row_times(code.gf(), message, code.generator);
}

Elem local_repair(const LinearCode& code, std::span<const std::optional<Elem>> word, std::size_t idx) {
  if (code.repair_groups.empty()) throw Error(ErrorKind::NoGroups, "code carries no repair groups");
  if (word.size() != code.n) {
    throw Error(ErrorKind::LengthMismatch, "word length " + std::to_string(word.size()) + " differs from n = " +
                                               std::to_string(code.n));
  }
  if (idx >= code.n) throw Error(ErrorKind::LengthMismatch, "position " + std::to_string(idx) + " is out of range");
  const Field& f = code.gf();
  const auto& group = group_containing(code, idx);
  for (std::size_t j : group) {
    if (j != idx && !word[j]) {
      throw Error(ErrorKind::NotRepairable, "more than one erasure in the repair group of " + std::to_string(idx));
    }
  }

  if (code.meta.construction == Construction::naive) {
    Elem acc = 0;
    for (std::size_t j : group) {
      if (j != idx) acc = f.add(acc, *word[j]);
    }
    return f.neg(acc);
  }

  if (code.meta.construction == Construction::rational_aut && code.y_values.size() == code.n) {
    const Elem x = code.y_values[idx];
    Elem acc = 0;
    for (std::size_t j : group) {
      if (j == idx) continue;
      Elem num = 1;
      Elem den = 1;
      for (std::size_t l : group) {
        if (l == idx || l == j) continue;
        num = f.mul(num, f.sub(x, code.y_values[l]));
        den = f.mul(den, f.sub(code.y_values[j], code.y_values[l]));
      }
      acc = f.add(acc, f.mul(*word[j], f.div(num, den)));
    }
    return acc;
  }

  const auto rest = recovery_set(group, idx);
  const Matrix cols = code.generator.columns(rest).transpose();
  std::vector<Elem> target(code.k);
  for (std::size_t i = 0; i < code.k; ++i) target[i] = code.generator(i, idx);
  const auto coeffs = linalg::solve_row_combination(f, cols, target);
  if (!coeffs) throw Error(ErrorKind::NotRepairable, "position " + std::to_string(idx) + " is not determined by its group");
  Elem acc = 0;
  for (std::size_t j = 0; j < rest.size(); ++j) acc = f.add(acc, f.mul((*coeffs)[j], *word[rest[j]]));
  return acc;
}

std::uint64_t codeword_count(const LinearCode& code) { return saturating_pow(code.gf().q(), code.k); }

void for_each_codeword(const LinearCode& code, std::uint64_t limit,
                       const std::function<void(std::span<const Elem>)>& fn) {
  const std::uint64_t total = codeword_count(code);
  if (total > limit) {
    throw Error(ErrorKind::TooLarge, std::to_string(code.gf().q()) + "^" + std::to_string(code.k) +
                                         " codewords exceed the enumeration limit " + std::to_string(limit));
  }
  const Field& f = code.gf();
  std::vector<Elem> digits(code.k, 0);
  std::vector<Elem> c(code.n, 0);
  fn(c);
  while (advance(digits, f.q(), [&](std::size_t i, Elem prev, Elem next) {
    shift_by_row(f, c, code.generator.row(i), prev, next);
  })) {
    fn(c);
  }
}

std::int64_t min_distance(const LinearCode& code, std::uint64_t limit) {
  if (codeword_count(code) > limit) {
    throw Error(ErrorKind::TooLarge,
                std::to_string(code.gf().q()) + "^" + std::to_string(code.k) + " codewords exceed the limit " +
                    std::to_string(limit) + "; check d_lower by sampling instead (a sampled weight only bounds d from above)");
  }
  if (code.k == 0) throw Error(ErrorKind::DomainError, "zero-dimensional code has no minimum distance");
  const Field& f = code.gf();
  std::size_t best = code.n;
  // One representative per projective point: the leading nonzero coefficient is 1.
  for (std::size_t lead = 0; lead < code.k; ++lead) {
    std::vector<Elem> c(code.generator.row(lead).begin(), code.generator.row(lead).end());
    std::vector<Elem> digits(code.k - lead - 1, 0);
    best = std::min(best, weight(c));
    while (advance(digits, f.q(), [&](std::size_t i, Elem prev, Elem next) {
      shift_by_row(f, c, code.generator.row(lead + 1 + i), prev, next);
    })) {
      best = std::min(best, weight(c));
    }
  }
  return static_cast<std::int64_t>(best);
}

std::int64_t min_distance_by_supports(const LinearCode& code, std::uint64_t subset_limit) {
  if (code.k == 0) throw Error(ErrorKind::DomainError, "zero-dimensional code has no minimum distance");
  const Field& f = code.gf();
  std::uint64_t visited = 0;
  // Rank deficiency is inherited by subsets, so the first size t at which every
  // t-subset has full rank gives max{|S| : rank(G_S) < k} = t - 1.
  for (std::size_t t = code.k; t <= code.n; ++t) {
    std::vector<std::size_t> subset(t);
    for (std::size_t i = 0; i < t; ++i) subset[i] = i;
    bool all_full = true;
    while (true) {
      if (++visited > subset_limit) {
        throw Error(ErrorKind::TooLarge, "column-subset scan exceeds " + std::to_string(subset_limit) + " subsets");
      }
      if (linalg::rank(f, code.generator.columns(subset)) < code.k) {
        all_full = false;
        break;
      }
      std::size_t i = t;
      while (i > 0 && subset[i - 1] == code.n - t + i - 1) --i;
      if (i == 0) break;
      ++subset[i - 1];
      for (std::size_t j = i; j < t; ++j) subset[j] = subset[j - 1] + 1;
    }
    if (all_full) return static_cast<std::int64_t>(code.n - t + 1);
  }
  throw Error(ErrorKind::RankDeficiency, "generator does not have full rank");
}

std::int64_t sampled_distance_upper_bound(const LinearCode& code, std::uint64_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Elem> pick(0, code.gf().q() - 1);
  std::size_t best = code.n;
  std::vector<Elem> message(code.k);
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (auto& x : message) x = pick(rng);
    const auto c = encode(code, message);
    const std::size_t w = weight(c);
    if (w > 0) best = std::min(best, w);
  }
  return static_cast<std::int64_t>(best);
}

bool LocalityReport::algebraic_pass() const {
  return !coords.empty() && std::all_of(coords.begin(), coords.end(), [](const auto& c) { return c.algebraic; });
}

bool LocalityReport::exhaustive_pass() const {
  return method != ExhaustiveMethod::skipped && !coords.empty() &&
         std::all_of(coords.begin(), coords.end(), [](const auto& c) { return c.exhaustive.value_or(false); });
}

LocalityReport verify_locality(const LinearCode& code, std::uint64_t limit) {
  if (code.repair_groups.empty()) throw Error(ErrorKind::NoGroups, "code carries no repair groups");
  const Field& f = code.gf();
  LocalityReport report;
  for (std::size_t i = 0; i < code.n; ++i) {
    CoordinateLocality c;
    c.index = i;
    c.recovery_set = recovery_set(group_containing(code, i), i);
    const Matrix cols = code.generator.columns(c.recovery_set).transpose();
    std::vector<Elem> target(code.k);
    for (std::size_t row = 0; row < code.k; ++row) target[row] = code.generator(row, i);
    c.algebraic = linalg::solve_row_combination(f, cols, target).has_value();
    report.coords.push_back(std::move(c));
  }

  if (codeword_count(code) <= limit) {
    // Two codewords agreeing on I_i must agree at i: remember the symbol at i
    // seen for each restriction to I_i.
    report.method = ExhaustiveMethod::codeword_pairs;
    const std::uint64_t q = f.q();
    struct Table {
      bool dense = true;
      std::vector<Elem> values;
      std::unordered_map<std::string, Elem> sparse;
      bool ok = true;
    };
    std::vector<Table> tables(report.coords.size());
    std::uint64_t dense_total = 0;
    for (std::size_t idx = 0; idx < tables.size(); ++idx) {
      const std::uint64_t keys = saturating_pow(q, report.coords[idx].recovery_set.size());
      tables[idx].dense = keys <= (std::uint64_t{1} << 24) && dense_total + keys <= (std::uint64_t{1} << 26);
      if (tables[idx].dense) {
        dense_total += keys;
        tables[idx].values.assign(keys, static_cast<Elem>(q));
      }
    }
    // One pass over the code fills every coordinate's table.
    for_each_codeword(code, limit, [&](std::span<const Elem> word) {
      for (std::size_t idx = 0; idx < tables.size(); ++idx) {
        Table& t = tables[idx];
        if (!t.ok) continue;
        const auto& c = report.coords[idx];
        Elem* slot = nullptr;
        if (t.dense) {
          std::uint64_t key = 0;
          for (auto it = c.recovery_set.rbegin(); it != c.recovery_set.rend(); ++it) key = key * q + word[*it];
          slot = &t.values[key];
        } else {
          std::string key;
          for (std::size_t j : c.recovery_set) key.append(reinterpret_cast<const char*>(&word[j]), sizeof(Elem));
          slot = &t.sparse.try_emplace(std::move(key), static_cast<Elem>(q)).first->second;
        }
        if (*slot == q) {
          *slot = word[c.index];
        } else if (*slot != word[c.index]) {
          t.ok = false;
        }
      }
    });
    for (std::size_t idx = 0; idx < tables.size(); ++idx) report.coords[idx].exhaustive = tables[idx].ok;
    return report;
  }

  // By linearity, pairs agreeing on I_i differ by a codeword vanishing on I_i.
  std::vector<Matrix> kernels;
  for (const auto& c : report.coords) {
    Matrix k = linalg::nullspace(f, code.generator.columns(c.recovery_set).transpose());
    if (k.cols() != code.k) k = Matrix(0, code.k);
    if (saturating_pow(f.q(), k.rows()) > limit) return report;
    kernels.push_back(std::move(k));
  }
  report.method = ExhaustiveMethod::kernel;
  for (std::size_t idx = 0; idx < report.coords.size(); ++idx) {
    auto& c = report.coords[idx];
    const Matrix& k = kernels[idx];
    std::vector<Elem> column(code.k);
    for (std::size_t row = 0; row < code.k; ++row) column[row] = code.generator(row, c.index);
    // Image of each kernel basis vector at coordinate i.
    std::vector<Elem> images(k.rows());
    for (std::size_t b = 0; b < k.rows(); ++b) {
      Elem acc = 0;
      for (std::size_t row = 0; row < code.k; ++row) acc = f.add(acc, f.mul(k(b, row), column[row]));
      images[b] = acc;
    }
    bool ok = true;
    std::vector<Elem> digits(k.rows(), 0);
    Elem value = 0;
    do {
      if (value != 0) ok = false;
    } while (ok && advance(digits, f.q(), [&](std::size_t b, Elem prev, Elem next) {
      value = f.add(value, f.mul(f.sub(next, prev), images[b]));
    }));
    c.exhaustive = ok;
  }
  return report;
}

std::string_view to_string(Construction c) noexcept {
  switch (c) {
    case Construction::rational_aut: return "rational-aut";
    case Construction::naive: return "naive";
    case Construction::custom: return "custom";
  }
  return "custom";
}

std::string_view to_string(ExhaustiveMethod m) noexcept {
  switch (m) {
    case ExhaustiveMethod::codeword_pairs: return "codeword-pairs";
    case ExhaustiveMethod::kernel: return "kernel";
    case ExhaustiveMethod::skipped: return "skipped";
  }
  return "skipped";
}

}  // namespace lrc::codes
