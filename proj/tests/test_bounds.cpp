#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstring>
#include <random>

#include "lrc/bounds.hpp"
#include "lrc/error.hpp"
#include "oracles.hpp"

using namespace lrc;
using namespace lrc::bounds;

namespace {

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an lrc::Error");
  return ErrorKind::FormatError;
}

}  // namespace

TEST_CASE("bound ids round-trip through names") {
  for (BoundId id : all_bound_ids()) CHECK(parse_bound_id(to_string(id)) == id);
  CHECK(all_bound_ids().size() == 10);
  CHECK(kind_of([] { parse_bound_id("nope"); }) == ErrorKind::DomainError);
}

TEST_CASE("entropy") {
  CHECK(entropy(2, 0.5) == doctest::Approx(1.0).epsilon(1e-15));
  for (double q : {2.0, 4.0, 9.0, 256.0, 1e9}) CHECK(entropy(q, 0.0) == 0.0);
  for (double q : {4.0, 9.0, 256.0}) CHECK(entropy(q, 1 - 1 / q) == doctest::Approx(1.0).epsilon(1e-14));
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    const double q = 2 + std::uniform_real_distribution<double>(0, 1000)(rng);
    const double x = std::uniform_real_distribution<double>(0, 1 - 1 / q)(rng);
    CHECK(entropy(q, x) == doctest::Approx(oracle::entropy(q, x)).epsilon(1e-12));
  }
  CHECK(kind_of([] { entropy(4, 0.8); }) == ErrorKind::DomainError);
  CHECK(kind_of([] { entropy(4, -0.1); }) == ErrorKind::DomainError);
}

TEST_CASE("finite Singleton-type bound") {
  CHECK(singleton_finite(12, 4, 2) == 8);
  for (std::int64_t n = 2; n < 30; ++n) {
    for (std::int64_t k = 1; k <= n; ++k) {
      CHECK(singleton_finite(n, k, k) == n - k + 1);
      CHECK(singleton_finite(n, k, 1) == n - 2 * k + 2);
    }
  }
  CHECK(kind_of([] { singleton_finite(4, 5, 1); }) == ErrorKind::DomainError);
  CHECK(kind_of([] { singleton_finite(6, 3, 4); }) == ErrorKind::DomainError);
}

TEST_CASE("closed forms") {
  CHECK(closed_bound(BoundId::main, 256, 2, 0.5) == doctest::Approx(2.0 / 3.0 * (0.5 - 17.0 / 240.0)).epsilon(1e-15));
  CHECK(closed_bound(BoundId::main, 256, 2, 0.5) == doctest::Approx(0.2861111111111).epsilon(1e-12));
  CHECK(closed_bound(BoundId::btv1, 256, 15, 0.5) == doctest::Approx(15.0 / 16.0 * (0.5 - 3.0 / 17.0)).epsilon(1e-15));
  CHECK(closed_bound(BoundId::btv1, 256, 15, 0.5) == doctest::Approx(0.3033088235294).epsilon(1e-12));
  CHECK(closed_bound(BoundId::naive_tvz, 256, 3, 0.5) == doctest::Approx(0.75 - 0.5 - 1.0 / 15.0).epsilon(1e-15));
  CHECK(closed_bound(BoundId::rate_cap, 7, 3, 0.2) == 0.75);
  CHECK(closed_bound(BoundId::singleton_asym, 9, 2, 1.0) == 0.0);
  CHECK(closed_bound(BoundId::plotkin, 9, 2, 0.3) == doctest::Approx(2.0 / 3.0 * (1 - 9 * 0.3 / 8)));
  CHECK(closed_bound(BoundId::btv2, 81, 4, 0.1) == doctest::Approx(0.8 * (0.9 - 13.0 / 80.0)));
  CHECK(closed_bound(BoundId::naive_gv, 16, 3, 0.2) == doctest::Approx(0.75 - oracle::entropy(16, 0.2)));
  CHECK(closed_bound(BoundId::main, 9, 5, 0.9) < 0.0);

  CHECK(kind_of([] { closed_bound(BoundId::main, 10, 2, 0.5); }) == ErrorKind::NoSquareRoot);
  CHECK(kind_of([] { closed_bound(BoundId::btv1, 256, 14, 0.5); }) == ErrorKind::NotAdmissible);
  CHECK(kind_of([] { closed_bound(BoundId::btv2, 81, 3, 0.5); }) == ErrorKind::NotAdmissible);
  CHECK(kind_of([] { closed_bound(BoundId::plotkin, 4, 2, 0.9); }) == ErrorKind::DomainError);
  CHECK(kind_of([] { closed_bound(BoundId::main, 9, 0, 0.5); }) == ErrorKind::DomainError);
  CHECK(kind_of([] { closed_bound(BoundId::main, 1.5, 1, 0.5); }) == ErrorKind::DomainError);
  CHECK(kind_of([] { closed_bound(BoundId::gv, 9, 1, 0.5); }) == ErrorKind::DomainError);
}

TEST_CASE("LP bound") {
  CHECK(lp_inner(4, 0.0) == doctest::Approx(oracle::lp_fq(4, 0.0)));
  CHECK(lp_inner(9, 0.95) == 0.0);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const double q = 2 + std::uniform_real_distribution<double>(0, 300)(rng);
    const double x = std::uniform_real_distribution<double>(0, 1)(rng);
    CHECK(lp_inner(q, x) == doctest::Approx(oracle::lp_fq(q, x)).epsilon(1e-10));
  }
  SUBCASE("tau = 0 endpoint dominates") {
    for (double d : {0.0, 0.1, 0.3, 0.5, 0.7}) CHECK(lp_bound(4, 2, d) <= lp_inner(4, d) + 1e-15);
  }
  SUBCASE("dense grid oracle") {
    CHECK(lp_bound(4, 2, 0.0) == doctest::Approx(oracle::lp_grid(4, 2, 0.0, 200000)).epsilon(1e-9));
    CHECK(lp_bound(4, 2, 0.0) <= 1.0);
    CHECK(lp_bound(9, 3, 1 - 1.0 / 9) == doctest::Approx(oracle::lp_grid(9, 3, 1 - 1.0 / 9, 200000)).epsilon(1e-9));
    for (auto [q, r, d] : std::vector<std::tuple<double, long, double>>{{16, 1, 0.2}, {64, 3, 0.4}, {256, 7, 0.1}, {3, 2, 0.5}}) {
      CHECK(std::abs(lp_bound(q, r, d) - oracle::lp_grid(q, r, d, 200000)) < 1e-9);
    }
  }
  CHECK(kind_of([] { lp_bound(4, 2, 0.8); }) == ErrorKind::DomainError);
}

TEST_CASE("GV bound") {
  SUBCASE("objective matches the definition") {
    for (double s : {1e-9, 1e-4, 0.01, 0.3, 0.99, 1.0}) {
      CHECK(gv_objective(81, 2, 0.3, s) == doctest::Approx(static_cast<double>(oracle::gv_h(81, 2, 0.3, s))).epsilon(1e-13));
    }
    for (double q : {2.0, 9.0, 1e6}) CHECK(gv_objective(q, 4, 0.3, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("small delta approaches the rate cap") {
    for (std::int64_t r : {1, 2, 5, 40}) {
      CHECK(gv_bound(64, r, 1e-12) == doctest::Approx(static_cast<double>(r) / (r + 1)).epsilon(1e-8));
    }
  }
  SUBCASE("values lie in [0, rate cap]") {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 300; ++i) {
      const double q = std::pow(2.0, std::uniform_real_distribution<double>(1, 64)(rng));
      const std::int64_t r = std::uniform_int_distribution<std::int64_t>(1, 2000)(rng);
      const double d = std::uniform_real_distribution<double>(1e-6, 1 - 1 / q)(rng);
      const double v = gv_bound(q, r, d);
      CHECK(v >= -1e-12);
      CHECK(v <= static_cast<double>(r) / (r + 1) + 1e-12);
    }
  }
  SUBCASE("grid oracle") {
    for (auto [q, r, d] : std::vector<std::tuple<double, long, double>>{
             {729, 2, 0.5}, {4, 1, 0.3}, {65536, 32, 0.5}, {81, 2, 0.2}, {1.8446744073709552e19, 10, 0.5}}) {
      CHECK(std::abs(gv_bound(q, r, d) - oracle::gv_grid(q, r, d, 300000)) < 1e-9);
    }
  }
  SUBCASE("non-increasing in delta") {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 20; ++t) {
      const double q = std::pow(2.0, std::uniform_real_distribution<double>(1, 20)(rng));
      const std::int64_t r = std::uniform_int_distribution<std::int64_t>(1, 50)(rng);
      double prev = 2.0;
      for (int i = 1; i <= 100; ++i) {
        const double v = gv_bound(q, r, (1 - 1 / q) * i / 100.0);
        CHECK(v <= prev + 1e-12);
        prev = v;
      }
    }
  }
  SUBCASE("main is below GV at the noted exceptions, above for list members") {
    CHECK(closed_bound(BoundId::main, 729, 2, 0.5) > gv_bound(729, 2, 0.5));
    CHECK(closed_bound(BoundId::main, 64, 3, 0.5) < gv_bound(64, 3, 0.5));
  }
  CHECK(kind_of([] { gv_bound(9, 2, 0.0); }) == ErrorKind::DomainError);
  CHECK(kind_of([] { gv_bound(9, 2, 0.95); }) == ErrorKind::DomainError);
}

TEST_CASE("critical point of the GV objective") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 200; ++i) {
    const double q = std::pow(2.0, std::uniform_real_distribution<double>(1, 40)(rng));
    const std::int64_t r = std::uniform_int_distribution<std::int64_t>(1, 300)(rng);
    const double d = std::uniform_real_distribution<double>(0.01, 1 - 1 / q)(rng);
    if (q > 2) CHECK(gv_derivative_sign(q, r, 0.5, 1 / (q - 1)) < 0);
    CHECK(gv_derivative_sign(q, r, d, 1.0) > 0);
    const double s0 = find_s0(q, r, d);
    CHECK(gv_derivative_sign(q, r, d, s0 * (1 - 1e-9)) <= 0);
    CHECK(gv_derivative_sign(q, r, d, std::min(1.0, s0 * (1 + 1e-9))) >= 0);
    CHECK(1 - gv_objective(q, r, d, s0) == doctest::Approx(gv_bound(q, r, d)).epsilon(1e-10));
  }
  SUBCASE("q = 2^16, r = 32 lands in the stated interval") {
    const double q = 65536;
    const double s0 = find_s0(q, 32, 0.5);
    CHECK(s0 > 1 / (q - 1));
    CHECK(s0 < 1 / (q - 1) + std::ldexp(1.0, -32));
    CHECK(std::abs((1 - gv_objective(q, 32, 0.5, s0)) - oracle::gv_grid(q, 32, 0.5, 300000)) < 1e-10);
  }
  CHECK(gv_derivative(81, 2, 0.5, 1.0 / 80) < 0);
  CHECK(gv_derivative(81, 2, 0.5, 1.0) > 0);
}

TEST_CASE("localities beating GV") {
  const std::vector<std::int64_t> adm256{1, 2, 4, 14, 15};
  CHECK(beats_gv_localities(256, 0.5, std::vector<std::int64_t>{1, 2, 3, 4, 14, 15}) == std::vector<std::int64_t>{1, 2});
  const std::vector<std::int64_t> l7{1, 3, 4, 9, 19, 24, 30, 49, 61};
  CHECK(beats_gv_localities(15625, 0.5, l7) == l7);
  const std::vector<std::int64_t> l5{1, 2, 3, 4, 5, 7, 8, 9, 15, 17, 19, 26, 35, 39, 53, 71, 79, 80};
  CHECK(beats_gv_localities(6561, 0.5, l5) == l5);
  CHECK(kind_of([] { beats_gv_localities(256, 0.5, std::vector<std::int64_t>{5}); }) == ErrorKind::NotAdmissible);
  CHECK(kind_of([] { beats_gv_localities(512, 0.5, std::vector<std::int64_t>{1}); }) == ErrorKind::NoSquareRoot);
  CHECK(kind_of([] { beats_gv_localities(100, 0.5, std::vector<std::int64_t>{1}); }) == ErrorKind::DomainError);
}

TEST_CASE("naive crossover") {
  CHECK(crossover_delta_naive(256, 4) == doctest::Approx(-1.0 / 60.0));
  CHECK(crossover_delta_naive(256, 17) > 1 - 1.0 / 256);
  std::mt19937_64 rng(2);
  for (int i = 0; i < 500; ++i) {
    const double sq = std::uniform_int_distribution<int>(2, 200)(rng);
    const std::int64_t r = std::uniform_int_distribution<std::int64_t>(1, 300)(rng);
    const double q = sq * sq;
    const double d = std::uniform_real_distribution<double>(0, 1)(rng);
    const double c = crossover_delta_naive(q, r);
    if (std::abs(d - c) < 1e-9) continue;
    CHECK((closed_bound(BoundId::naive_tvz, q, r, d) > closed_bound(BoundId::main, q, r, d)) == (d < c));
  }
  for (double sq = 7; sq <= 100; ++sq) {
    for (double d : {0.0, 0.25, 0.5, 0.9}) {
      CHECK(closed_bound(BoundId::naive_tvz, sq * sq, static_cast<std::int64_t>(sq) - 1, d) >=
            closed_bound(BoundId::btv1, sq * sq, static_cast<std::int64_t>(sq) - 1, d));
    }
  }
}

TEST_CASE("ordering chain") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 300; ++i) {
    const double sq = std::uniform_int_distribution<int>(2, 300)(rng);
    const double q = sq * sq;
    const std::int64_t r = std::uniform_int_distribution<std::int64_t>(1, 100)(rng);
    const double d = std::uniform_real_distribution<double>(1e-4, 1 - 1 / q)(rng);
    CHECK(gv_bound(q, r, d) <= closed_bound(BoundId::rate_cap, q, r, d));
    CHECK(closed_bound(BoundId::plotkin, q, r, d) <= closed_bound(BoundId::singleton_asym, q, r, d));
    CHECK(closed_bound(BoundId::main, q, r, d) <= closed_bound(BoundId::singleton_asym, q, r, d));
    CHECK(closed_bound(BoundId::naive_gv, q, r, d) <= gv_bound(q, r, d) + 1e-9);
    CHECK(lp_bound(q, r, d) <= lp_inner(q, d) + 1e-12);
  }
}

TEST_CASE("sweep") {
  const std::vector<BoundId> ids{BoundId::main, BoundId::gv};
  std::vector<double> grid;
  for (int i = 0; i <= 66; ++i) grid.push_back(i * 0.01);
  const auto rows = sweep(ids, 729, 2, grid);
  REQUIRE(rows.size() == 134);
  CHECK(rows[0].id == BoundId::main);
  CHECK(rows[1].id == BoundId::gv);
  CHECK_FALSE(rows[1].in_domain());  // gv needs delta > 0
  for (std::size_t i = 2; i < rows.size(); i += 2) CHECK(rows[i].delta > rows[i - 2].delta);
  CHECK(rows[100].delta == 0.5);
  CHECK(rows[100].value > rows[101].value);
  CHECK(sweep(std::vector<BoundId>{BoundId::singleton_asym}, 9, 2, std::vector<double>{1.0})[0].value == 0.0);
  CHECK_FALSE(sweep(std::vector<BoundId>{BoundId::plotkin}, 9, 2, std::vector<double>{0.95})[0].in_domain());
  CHECK(sweep(ids, 4096, 6, std::vector<double>{0.5})[0].value > sweep(ids, 4096, 6, std::vector<double>{0.5})[1].value);
  CHECK(kind_of([&] { sweep(ids, 729, 2, std::vector<double>{0.2, 0.1}); }) == ErrorKind::DomainError);
  CHECK(kind_of([&] { sweep(ids, 730, 2, std::vector<double>{0.2}); }) == ErrorKind::NoSquareRoot);
  const auto again = sweep(ids, 729, 2, grid);
  REQUIRE(again.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(std::memcmp(&again[i].value, &rows[i].value, sizeof(double)) == 0);
  }
}
