#include "lrc/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "lrc/error.hpp"
#include "lrc/galois.hpp"

namespace lrc::bounds {

namespace {

constexpr std::array<BoundId, 10> kAllIds = {
    BoundId::rate_cap, BoundId::singleton_asym, BoundId::plotkin, BoundId::lp,
    BoundId::gv,       BoundId::main,           BoundId::btv1,    BoundId::btv2,
    BoundId::naive_gv, BoundId::naive_tvz,
};

// Slack for comparisons of delta against 1 - 1/q computed in floating point.
constexpr double kDomainSlack = 1e-12;

const double kInvPhi = (std::sqrt(5.0) - 1.0) / 2.0;

[[noreturn]] void domain_error(const std::string& msg) { throw Error(ErrorKind::DomainError, msg); }

void check_q_r(double q, std::int64_t r) {
  if (!(q >= 2.0) || !std::isfinite(q)) domain_error("q must be a finite real >= 2");
  if (r < 1) domain_error("locality r must be a positive integer");
}

void check_delta(double delta, double hi) {
  if (!std::isfinite(delta) || delta < 0.0 || delta > hi + kDomainSlack) {
    domain_error("delta = " + std::to_string(delta) + " outside [0, " + std::to_string(hi) + "]");
  }
}

double gv_corner(double q) { return 1.0 - 1.0 / q; }

double sqrt_of_square(double q) {
  const double s = std::round(std::sqrt(q));
  if (s * s != q) {
    throw Error(ErrorKind::NoSquareRoot, "q = " + std::to_string(q) + " is not a perfect square");
  }
  return s;
}

double log_sum_exp(double a, double b) {
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  if (hi == -std::numeric_limits<double>::infinity()) return hi;
  return hi + std::log1p(std::exp(lo - hi));
}

// Golden-section search for the minimum of a unimodal f on [a, b].
template <class F>
std::pair<double, double> golden_section(F&& f, double a, double b, double tol, int max_iter = 400) {
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return fc < fd ? std::pair{c, fc} : std::pair{d, fd};
}

// Below this s, h is guaranteed decreasing: h'(s) s ln q <= r q^2 s^2 < delta.
double gv_search_floor(double q, std::int64_t r, double delta) {
  return std::max(0.5 * std::sqrt(delta / static_cast<double>(r)) / q, 1e-300);
}

}  // namespace

std::string_view to_string(BoundId id) noexcept {
  switch (id) {
    case BoundId::rate_cap: return "rate_cap";
    case BoundId::singleton_asym: return "singleton_asym";
    case BoundId::plotkin: return "plotkin";
    case BoundId::lp: return "lp";
    case BoundId::gv: return "gv";
    case BoundId::main: return "main";
    case BoundId::btv1: return "btv1";
    case BoundId::btv2: return "btv2";
    case BoundId::naive_gv: return "naive_gv";
    case BoundId::naive_tvz: return "naive_tvz";
  }
  return "unknown";
}

BoundId parse_bound_id(std::string_view name) {
  for (BoundId id : kAllIds) {
    if (to_string(id) == name) return id;
  }
  domain_error("unknown bound id '" + std::string(name) + "'");
}

std::span<const BoundId> all_bound_ids() noexcept { return kAllIds; }

double entropy(double q, double x) {
  if (!(q >= 2.0)) domain_error("q must be >= 2");
  check_delta(x, gv_corner(q));
  x = std::min(x, gv_corner(q));
  const double ln_q = std::log(q);
  double h = 0.0;
  if (x > 0.0) h += x * std::log(q - 1.0) - x * std::log(x);
  if (x < 1.0) h -= (1.0 - x) * std::log1p(-x);
  return h / ln_q;
}

std::int64_t singleton_finite(std::int64_t n, std::int64_t k, std::int64_t r) {
  if (k < 1 || k > n || r < 1 || r > k) {
    domain_error("singleton_finite requires 1 <= k <= n and 1 <= r <= k");
  }
  return n - k - (k + r - 1) / r + 2;
}

double closed_bound(BoundId id, double q, std::int64_t r, double delta) {
  check_q_r(q, r);
  const double rr = static_cast<double>(r);
  const double frac = rr / (rr + 1.0);
  switch (id) {
    case BoundId::rate_cap:
      return frac;
    case BoundId::singleton_asym:
      check_delta(delta, 1.0);
      return frac * (1.0 - delta);
    case BoundId::plotkin:
      check_delta(delta, gv_corner(q));
      return frac * (1.0 - q * delta / (q - 1.0));
    case BoundId::main: {
      const double sq = sqrt_of_square(q);
      check_delta(delta, 1.0);
      return frac * (1.0 - delta - (sq + rr - 1.0) / (q - sq));
    }
    case BoundId::btv1: {
      const double sq = sqrt_of_square(q);
      if (rr != sq - 1.0) {
        throw Error(ErrorKind::NotAdmissible, "btv1 requires r = sqrt(q) - 1");
      }
      check_delta(delta, 1.0);
      return frac * (1.0 - delta - 3.0 / (sq + 1.0));
    }
    case BoundId::btv2: {
      const double sq = sqrt_of_square(q);
      if (std::fmod(sq + 1.0, rr + 1.0) != 0.0) {
        throw Error(ErrorKind::NotAdmissible, "btv2 requires (r + 1) | (sqrt(q) + 1)");
      }
      check_delta(delta, 1.0);
      return frac * (1.0 - delta - (sq + rr) / (q - 1.0));
    }
    case BoundId::naive_gv:
      return frac - entropy(q, delta);
    case BoundId::naive_tvz: {
      const double sq = sqrt_of_square(q);
      check_delta(delta, 1.0);
      return frac - delta - 1.0 / (sq - 1.0);
    }
    case BoundId::lp:
    case BoundId::gv:
      break;
  }
  domain_error(std::string(to_string(id)) + " has no closed form");
}

double evaluate(const BoundQuery& query) {
  switch (query.id) {
    case BoundId::lp: return lp_bound(query.q, query.r, query.delta);
    case BoundId::gv: return gv_bound(query.q, query.r, query.delta);
    default: return closed_bound(query.id, query.q, query.r, query.delta);
  }
}

double lp_inner(double q, double x) {
  if (x >= gv_corner(q)) return 0.0;
  const double root = std::sqrt((q - 1.0) * (1.0 - x)) - std::sqrt(x);
  const double arg = std::clamp(root * root / q, 0.0, gv_corner(q));
  return entropy(q, arg);
}

double lp_objective(double q, std::int64_t r, double delta, double tau) {
  const double rr = static_cast<double>(r);
  const double denom = 1.0 - tau * (rr + 1.0);
  if (denom <= 0.0) return tau * rr;
  return tau * rr + denom * lp_inner(q, std::min(delta / denom, 1.0));
}

double lp_bound(double q, std::int64_t r, double delta) {
  check_q_r(q, r);
  check_delta(delta, gv_corner(q));
  const double tau_max = (1.0 - delta) / (static_cast<double>(r) + 1.0);
  if (tau_max <= 0.0) return lp_objective(q, r, delta, 0.0);
  constexpr int kGrid = 1 << 12;
  auto phi = [&](double tau) { return lp_objective(q, r, delta, tau); };
  int best = 0;
  double best_val = phi(0.0);
  for (int i = 1; i <= kGrid; ++i) {
    const double v = phi(tau_max * i / kGrid);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  const double lo = tau_max * std::max(best - 1, 0) / kGrid;
  const double hi = tau_max * std::min(best + 1, kGrid) / kGrid;
  const auto [tau, val] = golden_section(phi, lo, hi, 1e-12);
  return std::min(best_val, val);
}

double gv_objective(double q, std::int64_t r, double delta, double s) {
  if (!(s > 0.0) || s > 1.0) domain_error("gv objective requires 0 < s <= 1");
  const double r1 = static_cast<double>(r) + 1.0;
  const double first = r1 * std::log1p((q - 1.0) * s);
  const double second = (s == 1.0) ? -std::numeric_limits<double>::infinity()
                                   : std::log(q - 1.0) + r1 * std::log1p(-s);
  return (log_sum_exp(first, second) / r1 - delta * std::log(s)) / std::log(q);
}

int gv_derivative_sign(double q, std::int64_t r, double delta, double s) {
  // sign(h') = sign(X^r ((1-delta)(q-1)s - delta) - (q-1) Y^r (delta + (1-delta)s))
  // with X = 1 + (q-1)s and Y = 1 - s.
  const double rr = static_cast<double>(r);
  const double t = (1.0 - delta) * (q - 1.0) * s - delta;
  const double right_tail = delta + (1.0 - delta) * s;
  if (s >= 1.0 || right_tail <= 0.0) return (t > 0.0) - (t < 0.0);
  if (t <= 0.0) return -1;
  const double lhs = rr * std::log1p((q - 1.0) * s) + std::log(t);
  const double rhs = std::log(q - 1.0) + rr * std::log1p(-s) + std::log(right_tail);
  return (lhs > rhs) - (lhs < rhs);
}

double gv_derivative(double q, std::int64_t r, double delta, double s) {
  const double rr = static_cast<double>(r);
  const double ln_x = std::log1p((q - 1.0) * s);
  const double ln_y = (s == 1.0) ? -std::numeric_limits<double>::infinity() : std::log1p(-s);
  const double ln_a = log_sum_exp((rr + 1.0) * ln_x, std::log(q - 1.0) + (rr + 1.0) * ln_y);
  const double term = (q - 1.0) * (std::exp(rr * ln_x - ln_a) - std::exp(rr * ln_y - ln_a));
  return (term - delta / s) / std::log(q);
}

GvMinimum gv_minimize(double q, std::int64_t r, double delta) {
  check_q_r(q, r);
  if (!(delta > 0.0)) domain_error("gv bound requires delta > 0");
  check_delta(delta, gv_corner(q));
  auto h_of_x = [&](double x) { return gv_objective(q, r, delta, std::min(std::exp(x), 1.0)); };

  GvMinimum best{1.0, gv_objective(q, r, delta, 1.0)};
  auto consider = [&](double x, double v) {
    if (v < best.value) best = {std::min(std::exp(x), 1.0), v};
  };
  constexpr double kTol = 1e-14;

  // Seeded interval around 1/(q-1).
  const double seed_lo = 1.0 / (q - 1.0);
  if (seed_lo < 1.0) {
    const double seed_hi = std::min(1.0, seed_lo + std::ldexp(1.0, -static_cast<int>(std::min<std::int64_t>(r, 1000))) + 1e-3);
    const auto [x, v] = golden_section(h_of_x, std::log(seed_lo), std::log(seed_hi), kTol);
    consider(x, v);
  }

  // Full-interval log grid, then golden refinement around its best cell.
  constexpr int kGrid = 2048;
  const double x_lo = std::log(gv_search_floor(q, r, delta));
  int best_i = kGrid;
  double best_v = h_of_x(0.0);
  for (int i = 0; i < kGrid; ++i) {
    const double v = h_of_x(x_lo + (0.0 - x_lo) * i / kGrid);
    if (v < best_v) {
      best_v = v;
      best_i = i;
    }
  }
  const double step = -x_lo / kGrid;
  const double a = x_lo + step * std::max(best_i - 1, 0);
  const double b = std::min(x_lo + step * (best_i + 1), 0.0);
  consider(x_lo + step * best_i, best_v);
  const auto [x, v] = golden_section(h_of_x, a, b, kTol);
  consider(x, v);
  return best;
}

double gv_bound(double q, std::int64_t r, double delta) { return 1.0 - gv_minimize(q, r, delta).value; }

double find_s0(double q, std::int64_t r, double delta) {
  check_q_r(q, r);
  if (!(delta > 0.0)) domain_error("find_s0 requires delta > 0");
  check_delta(delta, gv_corner(q));
  double lo = 1.0 / (q - 1.0);
  if (lo >= 1.0 || gv_derivative_sign(q, r, delta, lo) >= 0) lo = gv_search_floor(q, r, delta);
  if (gv_derivative_sign(q, r, delta, lo) >= 0) {
    throw Error(ErrorKind::ConvergenceFailure, "h' is not negative at the lower bracket");
  }
  double hi = 1.0;
  const int sign_hi = gv_derivative_sign(q, r, delta, hi);
  if (sign_hi == 0) return hi;
  if (sign_hi < 0) throw Error(ErrorKind::ConvergenceFailure, "h' does not change sign on (0, 1]");
  for (int it = 0; it < 5000; ++it) {
    const double mid = (hi > 4.0 * lo) ? std::sqrt(lo * hi) : lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const int sg = gv_derivative_sign(q, r, delta, mid);
    if (sg == 0) return mid;
    (sg < 0 ? lo : hi) = mid;
  }
  return lo + 0.5 * (hi - lo);
}

std::vector<std::int64_t> beats_gv_localities(std::uint64_t q, double delta,
                                              std::span<const std::int64_t> candidates) {
  const auto pp = galois::prime_power(q);
  if (!pp) domain_error(std::to_string(q) + " is not a prime power");
  if (pp->w % 2 != 0) throw Error(ErrorKind::NoSquareRoot, std::to_string(q) + " is not a square");
  const auto p = static_cast<std::uint32_t>(pp->p);
  const unsigned half = pp->w / 2;
  const double qd = static_cast<double>(q);
  std::vector<std::int64_t> out;
  for (std::int64_t r : candidates) {
    if (r < 1) throw Error(ErrorKind::NotAdmissible, "locality must be positive");
    std::uint64_t u = static_cast<std::uint64_t>(r) + 1;
    std::uint32_t v = 0;
    while (u % p == 0) {
      u /= p;
      ++v;
    }
    if (!galois::is_admissible(p, half, u, v)) {
      throw Error(ErrorKind::NotAdmissible, "r = " + std::to_string(r) + " is not admissible");
    }
    if (closed_bound(BoundId::main, qd, r, delta) > gv_bound(qd, r, delta) + kBeatsTolerance) {
      out.push_back(r);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double crossover_delta_naive(double q, std::int64_t r) {
  check_q_r(q, r);
  const double sq = sqrt_of_square(q);
  const double rr = static_cast<double>(r);
  return (rr * (rr - 1.0) - sq) / (q - sq);
}

std::vector<CurveRow> sweep(std::span<const BoundId> ids, double q, std::int64_t r,
                            std::span<const double> delta_grid) {
  check_q_r(q, r);
  for (std::size_t i = 1; i < delta_grid.size(); ++i) {
    if (!(delta_grid[i] > delta_grid[i - 1])) domain_error("delta grid must be strictly increasing");
  }
  std::vector<CurveRow> rows;
  rows.reserve(ids.size() * delta_grid.size());
  for (double delta : delta_grid) {
    for (BoundId id : ids) {
      double value = std::numeric_limits<double>::quiet_NaN();
      try {
        value = evaluate({id, q, r, delta});
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::DomainError) throw;
      }
      rows.push_back({delta, id, value});
    }
  }
  return rows;
}

}  // namespace lrc::bounds
