#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "sfdd/dtd.hpp"
#include "sfdd/kernels.hpp"

using namespace sfdd;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double one(double) { return 1.0; }
}  // namespace

TEST_CASE("mode vectors match their defining entries") {
  const int n1 = 12;
  const double th = 0.83, r = 0.64;
  const ModeVectors mv = mode_vectors(n1, th, r);
  REQUIRE(mv.c.size() == 7);
  REQUIRE(mv.s.size() == 5);
  CHECK(mv.c[0] == 0.5);
  for (int k = 1; k < 6; ++k) {
    CHECK(mv.c[k] == doctest::Approx(std::pow(r, k) * std::cos(k * th)).scale(1).epsilon(1e-14));
    CHECK(mv.s[k - 1] == doctest::Approx(std::pow(r, k) * std::sin(k * th)).scale(1).epsilon(1e-14));
  }
  CHECK(mv.c[6] == doctest::Approx(0.5 * std::pow(r, 6) * std::cos(6 * th)).scale(1).epsilon(1e-14));
}

TEST_CASE("Q mask flags exactly the interior nodes") {
  const DiscPair pair = DiscPair::from_discs(1.4, 1.2);
  const SnappedScenario s = snap_to_grids(pair.theta1_star(), pair.theta2_star(), 42, 50);
  const QMask q = qmask_gamma1(s);
  REQUIRE(q.n1 == 42);
  int count = 0;
  for (int l = 0; l < 42; ++l) {
    const bool inside = l < s.ell1 || l > 42 - s.ell1;
    CHECK(q.interior[l] == inside);
    count += q.interior[l];
  }
  CHECK(count == 2 * s.ell1 - 1);
  // the intersection nodes themselves are masked out
  CHECK_FALSE(q.interior[s.ell1]);
  CHECK_FALSE(q.interior[42 - s.ell1]);
}

TEST_CASE("exact profile of the constant datum is the contraction constant") {
  const DiscPair pair = DiscPair::from_discs(1.4, 1.2);
  const DtDProfile prof = dtd_exact_profile(pair, one, 32);
  REQUIRE(prof.values.size() == 32);
  const double c1 = pair.contraction();
  const auto [mn, mx] = std::minmax_element(prof.values.begin(), prof.values.end());
  CHECK(*mx - *mn < 1e-4);
  for (double v : prof.values) CHECK(v == doctest::Approx(c1).scale(1).epsilon(1e-6));
  REQUIRE(prof.endpoints.has_value());
  CHECK(prof.endpoints->first == doctest::Approx(c1).scale(1).epsilon(1e-4));
  CHECK(prof.endpoints->second == doctest::Approx(c1).scale(1).epsilon(1e-4));

  // zero datum gives the zero profile
  const DtDProfile zero = dtd_exact_profile(pair, [](double) { return 0.0; }, 16);
  for (double v : zero.values) CHECK(v == 0.0);
}

TEST_CASE("exact norm equals the contraction constant") {
  for (auto [m, R] : {std::pair{1.4, 1.2}, {2.1, 1.2}, {0.75, 1.7}}) {
    const DiscPair pair = DiscPair::from_discs(m, R);
    CHECK(dtd_exact_norm(pair) == doctest::Approx(pair.contraction()).scale(1).epsilon(1e-4));
  }
}

TEST_CASE("projection profile: plateau, endpoints and domination") {
  const DiscPair pair = DiscPair::from_discs(1.4, 1.2);
  const double c1 = pair.contraction();

  const DtDProfile p25 = dtd_projection_profile(pair, 25, one, 64);
  const double r25 = positivity_radius_theory(25);
  for (size_t i = 0; i < p25.thetas.size(); ++i) {
    const PolarPoint p = gamma2_to_b1_polar(pair, p25.thetas[i]);
    if (p.r <= r25) CHECK(std::abs(p25.values[i] - c1) < 0.01);
  }

  // endpoint values approach the jump midpoint as N grows
  const DtDProfile p80 = dtd_projection_profile(pair, 80, one, 32);
  REQUIRE(p80.endpoints.has_value());
  CHECK(std::abs(p80.endpoints->first - 0.5) < 0.05);
  CHECK(std::abs(p80.endpoints->second - 0.5) < 0.05);

  // zero datum
  const DtDProfile zero = dtd_projection_profile(pair, 25, [](double) { return 0.0; }, 16);
  for (double v : zero.values) CHECK(v == 0.0);

  // plateau obeys the contraction-plus-tail bound on the positive region
  const double eps25 = epsilon_quadrature(25, r25);
  for (size_t i = 0; i < p25.thetas.size(); ++i) {
    const PolarPoint p = gamma2_to_b1_polar(pair, p25.thetas[i]);
    if (p.r <= r25) CHECK(p25.values[i] <= c1 + eps25 + 1e-6);
  }

  // random data are dominated by the indicator response where the kernel
  // is nonnegative
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int rep = 0; rep < 5; ++rep) {
    const double a1 = dist(rng), b1 = dist(rng), a2 = dist(rng);
    auto v = [&](double t) {
      return 0.5 * (a1 * std::cos(t) + b1 * std::sin(3 * t) + a2 * std::cos(2 * t));
    };
    const DtDProfile pv = dtd_projection_profile(pair, 25, v, 64);
    for (size_t i = 0; i < pv.thetas.size(); ++i) {
      const PolarPoint p = gamma2_to_b1_polar(pair, pv.thetas[i]);
      if (p.r <= r25) CHECK(std::abs(pv.values[i]) <= p25.values[i] + 1e-8);
    }
  }
}

TEST_CASE("interpolation apply: validation and equivalences") {
  const DiscPair pair = DiscPair::from_discs(1.4, 1.2);
  const SnappedScenario s = snap_to_grids(pair.theta1_star(), pair.theta2_star(), 42, 50);
  const QMask mask = qmask_gamma1(s);

  std::vector<double> bad(42, 0.0);
  bad[s.ell1] = 1.0;  // an intersection node
  CHECK_THROWS_AS(dtd_interpolation_apply(s, bad, 0.1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(dtd_interpolation_apply(s, std::vector<double>(10, 0.0), 0.1, 0.5),
                  std::invalid_argument);

  CHECK(dtd_interpolation_apply(s, std::vector<double>(42, 0.0), 0.3, 0.7) == 0.0);

  // two-path equality against interpolate + harmonic_eval
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  double worst = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<double> v(42, 0.0);
    for (int l = 0; l < 42; ++l)
      if (mask.interior[l]) v[l] = dist(rng);
    const double th = dist(rng) * kPi;
    const double r = 0.5 * (dist(rng) + 1.0);
    const double direct = dtd_interpolation_apply(s, v, th, r);
    const double series = harmonic_eval(interpolate(v), th, r);
    worst = std::max(worst, std::abs(direct - series));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("interpolation bound profile: endpoints, plateau, duality") {
  const DiscPair pair = DiscPair::from_discs(1.4, 1.2);
  const SnappedScenario s = snap_to_grids(pair.theta1_star(), pair.theta2_star(), 42, 50);

  const DtDProfile grid = interp_bound_profile(s, 0, true);
  REQUIRE(grid.values.size() == static_cast<size_t>(50 - 2 * s.ell2 + 1));
  CHECK(grid.values.front() == 0.0);
  CHECK(grid.values.back() == 0.0);
  CHECK(std::all_of(grid.grid_marks.begin(), grid.grid_marks.end(), [](bool b) { return b; }));

  const DtDProfile cont = interp_bound_profile(s, 101, false);
  CHECK(cont.values.front() == 0.0);
  CHECK(cont.values.back() == 0.0);
  CHECK(cont.grid_marks.front());
  CHECK(cont.grid_marks.back());
  CHECK(std::is_sorted(cont.thetas.begin(), cont.thetas.end()));

  const double plateau = (s.theta2_int - s.theta1_int) / kPi;
  const size_t n = grid.values.size();
  for (size_t i = n / 3; i < 2 * n / 3; ++i)
    CHECK(grid.values[i] == doctest::Approx(plateau).scale(1).epsilon(0.05));

  const double bound = interp_contraction_bound(s);
  CHECK(bound == *std::max_element(grid.values.begin(), grid.values.end()));
  CHECK(bound < 1.0);
  CHECK(bound > 0.3);

  // l1 duality: the sign vector attains the bound exactly
  const InterpMatrices M = interp_matrices(42);
  const QMask mask = qmask_gamma1(s);
  for (size_t k : {size_t{10}, size_t{50}, size_t{90}}) {
    const PolarPoint p = gamma2_to_b1_polar(s.base, cont.thetas[k]);
    const ModeVectors mv = mode_vectors(42, p.theta, p.r);
    std::vector<double> v(42, 0.0);
    for (int i = 0; i < 42; ++i) {
      if (!mask.interior[i]) continue;
      double row = 0.0;
      for (int j = 0; j <= 21; ++j) row += M.c(i, j) * mv.c[j];
      for (int j = 0; j < 20; ++j) row += M.s(i, j) * mv.s[j];
      v[i] = row >= 0.0 ? 1.0 : -1.0;
    }
    CHECK(dtd_interpolation_apply(s, v, p.theta, p.r) == cont.values[k]);
  }
}

TEST_CASE("grid values escape the Gibbs oscillations") {
  const DiscPair wide = DiscPair::from_discs(0.75, 1.7);
  for (auto [n1, n2] : {std::pair{42, 72}, {82, 140}}) {
    const SnappedScenario s = snap_to_grids(wide.theta1_star(), wide.theta2_star(), n1, n2);
    const double plateau = (s.theta2_int - s.theta1_int) / kPi;
    const double grid_max = interp_bound_profile(s, 0, true).max_value();
    const double cont_max = interp_bound_profile(s, 401, false).max_value();
    CHECK(grid_max <= plateau + 0.05);
    CHECK(cont_max > plateau + 0.05);  // the continuous profile does oscillate
  }
}

TEST_CASE("grid mismatch destroys the large-overlap contraction") {
  // n2 must track R * n1; a 1.8x oversampled second grid loses the small
  // bound at large theta1
  const double R = 1.7;
  const int n1 = 82;
  for (double t1 : {2.75, 3.05}) {
    const double t2 = kPi - std::asin(std::sin(t1) / R);
    const SnappedScenario matched = snap_to_grids(t1, t2, n1, matched_n2(R, n1));
    const SnappedScenario mismatched = snap_to_grids(t1, t2, n1, matched_n2(R, n1, 1.8));
    const double cb_matched = interp_contraction_bound(matched);
    const double cb_mismatched = interp_contraction_bound(mismatched);
    CHECK(cb_matched <= 0.11);
    CHECK(cb_mismatched > cb_matched + 0.3);
  }
}

TEST_CASE("symmetric-scenario bound tracks the closed-form contraction") {
  // equal radii: theta2 = pi - theta1 and matching grids n2 = n1 = 2(N+1)
  const int N = 40, n1 = 82;
  for (int ell1 : {5, 10, 15, 19}) {
    const double t1 = ell1 * kTwoPi / n1;
    const SnappedScenario s = snap_to_grids(t1, kPi - t1, n1, n1);
    CHECK(s.ell1 == ell1);
    CHECK(s.ell2 == n1 / 2 - ell1);
    const double bound = interp_contraction_bound(s);
    CHECK(std::abs(bound - contraction_symmetric(s.theta1_int)) <= 0.05);
  }
  (void)N;
}
