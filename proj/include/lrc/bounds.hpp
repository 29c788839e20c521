#pragma once

// Asymptotic rate bounds for q-ary codes with locality r, evaluated in
// double precision. Everything here is a pure function of its arguments.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace lrc::bounds {

enum class BoundId {
  rate_cap,
  singleton_asym,
  plotkin,
  lp,
  gv,
  main,
  btv1,
  btv2,
  naive_gv,
  naive_tvz,
};

std::string_view to_string(BoundId id) noexcept;
/// Throws DomainError for unknown names.
BoundId parse_bound_id(std::string_view name);
std::span<const BoundId> all_bound_ids() noexcept;

struct BoundQuery {
  BoundId id;
  double q;
  std::int64_t r;
  double delta;
};

/// One point of a bound curve. `value` is NaN when the query fell outside the
/// bound's domain.
struct CurveRow {
  double delta;
  BoundId id;
  double value;

  bool in_domain() const noexcept { return value == value; }
};

/// q-ary entropy H_q(x) on [0, 1 - 1/q], with 0 log 0 = 0.
double entropy(double q, double x);

/// n - k - ceil(k/r) + 2.
std::int64_t singleton_finite(std::int64_t n, std::int64_t k, std::int64_t r);

/// rate_cap, singleton_asym, plotkin, main, btv1, btv2, naive_gv, naive_tvz.
/// Values may be negative.
double closed_bound(BoundId id, double q, std::int64_t r, double delta);

/// Any bound, dispatching lp and gv to their optimizers.
double evaluate(const BoundQuery& query);

/// H_q((sqrt((q-1)(1-x)) - sqrt(x))^2 / q) for x <= 1 - 1/q, and 0 beyond.
double lp_inner(double q, double x);

/// min over tau in [0, (1-delta)/(r+1)] of tau r + (1 - tau(r+1)) f_q(delta / (1 - tau(r+1))).
double lp_bound(double q, std::int64_t r, double delta);
/// The objective minimized by lp_bound, exposed for oracles.
double lp_objective(double q, std::int64_t r, double delta, double tau);

/// h(s) = log_q((1+(q-1)s)^(r+1) + (q-1)(1-s)^(r+1)) / (r+1) - delta log_q(s),
/// computed in the log domain.
double gv_objective(double q, std::int64_t r, double delta, double s);

/// Sign of h'(s): -1, 0 or +1, evaluated without overflow for huge q and r.
int gv_derivative_sign(double q, std::int64_t r, double delta, double s);

/// h'(s) in natural units times ln(q) (may overflow to +-inf only for
/// pathological inputs; used for diagnostics).
double gv_derivative(double q, std::int64_t r, double delta, double s);

struct GvMinimum {
  double s;      // minimizer of h
  double value;  // h(s)
};

/// Golden-section minimization of h over (0, 1].
GvMinimum gv_minimize(double q, std::int64_t r, double delta);

/// 1 - min_{0 < s <= 1} h(s).
double gv_bound(double q, std::int64_t r, double delta);

/// Unique critical point of h, by bisection on the sign of h'.
double find_s0(double q, std::int64_t r, double delta);

/// Localities r in `candidates` where main exceeds gv by more than 1e-9.
/// `q` must be an even power of a prime and every candidate admissible.
std::vector<std::int64_t> beats_gv_localities(std::uint64_t q, double delta,
                                              std::span<const std::int64_t> candidates);

inline constexpr double kBeatsTolerance = 1e-9;

/// (r(r-1) - sqrt q) / (q - sqrt q): naive_tvz < main exactly for delta above it.
double crossover_delta_naive(double q, std::int64_t r);

/// One row per (delta, id), delta-major in grid order; out-of-domain points
/// carry NaN.
std::vector<CurveRow> sweep(std::span<const BoundId> ids, double q, std::int64_t r,
                            std::span<const double> delta_grid);

}  // namespace lrc::bounds
