#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sfdd/dtd.hpp"
#include "sfdd/errors.hpp"
#include "sfdd/kernels.hpp"
#include "sfdd/schwarz.hpp"

using namespace sfdd;

namespace {
constexpr double kPi = std::numbers::pi;

SchwarzConfig base_config(const DiscPair& pair) {
  SchwarzConfig config{pair};
  config.variant = SolveVariant::exact;
  config.mode = SweepMode::additive;
  config.tol = 1e-8;
  config.max_sweeps = 40;
  return config;
}
}  // namespace

TEST_CASE("manufactured solutions are harmonic and honor their domain") {
  const DiscPair pair = DiscPair::from_discs(1.4, 1.2);
  CHECK(manufactured_harmonic_polynomial(0).u(0.3, -0.8) == 1.0);
  const ManufacturedSolution p2 = manufactured_harmonic_polynomial(2);
  CHECK(p2.u(0.5, 0.25) == doctest::Approx(0.5 * 0.5 - 0.25 * 0.25).epsilon(1e-14));
  CHECK_THROWS_AS(manufactured_harmonic_polynomial(7), std::domain_error);
  CHECK_THROWS_AS(manufactured_harmonic_polynomial(-1), std::domain_error);

  // sources must clear the domain
  CHECK_THROWS_AS(manufactured_log_source(0.5, 0.0, pair), std::domain_error);
  CHECK_THROWS_AS(manufactured_log_source(2.65, 0.0, pair), std::domain_error);
  const ManufacturedSolution log_ms = manufactured_log_source(3.0, 1.0, pair);

  // five-point stencil residual vanishes inside the domain
  for (const ManufacturedSolution& ms :
       {p2, manufactured_harmonic_polynomial(5), log_ms}) {
    const double h = 1e-4;  // balances stencil truncation against roundoff
    double worst = 0.0;
    for (const auto& [x, y] : overlap_sample_points(pair, 100, 0.05)) {
      const double lap = (ms.u(x + h, y) + ms.u(x - h, y) + ms.u(x, y + h) +
                          ms.u(x, y - h) - 4.0 * ms.u(x, y)) /
                         (h * h);
      worst = std::max(worst, std::abs(lap));
    }
    CHECK(worst < 1e-6);
  }
}

TEST_CASE("boundary data restrict the manufactured solution") {
  const DiscPair pair = DiscPair::from_discs(1.4, 1.2);
  const ManufacturedSolution ms = manufactured_harmonic_polynomial(3);
  const OmegaBoundaryData g = boundary_data(ms, pair);
  CHECK(g.g1(1.5) == doctest::Approx(ms.u(std::cos(1.5), std::sin(1.5))).epsilon(1e-14));
  CHECK(g.g2(-0.5) ==
        doctest::Approx(ms.u(pair.m() + pair.R() * std::cos(0.5),
                             -pair.R() * std::sin(0.5))).epsilon(1e-14));
}

TEST_CASE("config validation") {
  const DiscPair pair = DiscPair::from_discs(1.4, 1.2);
  const OmegaBoundaryData zero{[](double) { return 0.0; }, [](double) { return 0.0; }};
  SchwarzConfig config = base_config(pair);
  config.variant = SolveVariant::interpolation;  // no snapped scenario attached
  CHECK_THROWS_AS(initial_state(config, zero), std::invalid_argument);
  config = base_config(pair);
  config.tol = 0.0;
  CHECK_THROWS_AS(initial_state(config, zero), std::invalid_argument);
}

TEST_CASE("zero data fix the zero state for all variants") {
  const DiscPair pair = DiscPair::from_discs(1.4, 1.2);
  const OmegaBoundaryData zero{[](double) { return 0.0; }, [](double) { return 0.0; }};
  for (SolveVariant variant :
       {SolveVariant::exact, SolveVariant::projection, SolveVariant::interpolation}) {
    SchwarzConfig config = base_config(pair);
    config.variant = variant;
    config.N = 8;
    config.trace_samples = 17;
    config.max_sweeps = 2;
    if (variant == SolveVariant::interpolation)
      config.snapped = snap_to_grids(pair.theta1_star(), pair.theta2_star(), 42, 50);
    const IterationTrace trace = run(config, zero);
    CHECK(trace.converged);
    for (double e : trace.update_max) CHECK(e == 0.0);
  }
}

TEST_CASE("observed_rate statistics") {
  IterationTrace trace;
  for (int n = 1; n <= 10; ++n) trace.update_max.push_back(std::pow(0.5, n));
  CHECK(observed_rate(trace) == doctest::Approx(0.5).epsilon(1e-12));

  IterationTrace flat;
  flat.update_max = {0.0, 0.0, 0.0, 0.0};
  CHECK_THROWS_AS(observed_rate(flat), insufficient_data_error);
  IterationTrace brief;
  brief.update_max = {1.0, 0.5};
  CHECK_THROWS_AS(observed_rate(brief), insufficient_data_error);
}

TEST_CASE("exact variant: contraction, fixed point, manufactured solution") {
  const DiscPair pair = DiscPair::from_discs(1.4, 1.2);
  const ManufacturedSolution ms = manufactured_harmonic_polynomial(2);
  const OmegaBoundaryData g = boundary_data(ms, pair);
  SchwarzConfig config = base_config(pair);

  const IterationTrace trace = run(config, g, &ms);
  CHECK(trace.converged);
  const double rate = observed_rate(trace);
  CHECK(rate <= pair.contraction() + 0.02);

  // per-sweep ratios respect the operator-norm bound (with sampling slack)
  for (size_t i = trace.ratios.size() / 2; i < trace.ratios.size(); ++i)
    CHECK(trace.ratios[i] <= pair.contraction() + 0.03);

  // the manufactured error is driven to the discretization floor
  CHECK(trace.manufactured_error.back() < 5e-3);

  // u1 and u2 agree on the overlap after convergence
  auto u1 = disc1_evaluator(config, *trace.final_state, g);
  auto u2 = disc2_evaluator(config, *trace.final_state, g);
  double sup_pair = 0.0, sup_exact = 0.0;
  for (const auto& [x, y] : overlap_sample_points(pair, 50, 0.02)) {
    sup_pair = std::max(sup_pair, std::abs(u1(x, y) - u2(x, y)));
    sup_exact = std::max(sup_exact, std::abs(u1(x, y) - ms.u(x, y)));
  }
  CHECK(sup_pair < 1e-4);
  CHECK(sup_exact < 5e-3);
}

TEST_CASE("multiplicative mode contracts like the square") {
  const DiscPair pair = DiscPair::from_discs(1.4, 1.2);
  const ManufacturedSolution ms = manufactured_harmonic_polynomial(2);
  const OmegaBoundaryData g = boundary_data(ms, pair);

  SchwarzConfig add = base_config(pair);
  SchwarzConfig mult = base_config(pair);
  mult.mode = SweepMode::multiplicative;
  const double add_rate = observed_rate(run(add, g));
  const double mult_rate = observed_rate(run(mult, g));
  const double c1 = pair.contraction();
  CHECK(mult_rate <= c1 * c1 + 0.02);
  CHECK(mult_rate <= add_rate * add_rate + 0.05);
}

TEST_CASE("projection variant converges near the exact rate") {
  const DiscPair pair = DiscPair::from_discs(1.4, 1.2);
  const ManufacturedSolution ms = manufactured_harmonic_polynomial(2);
  const OmegaBoundaryData g = boundary_data(ms, pair);

  SchwarzConfig config = base_config(pair);
  config.variant = SolveVariant::projection;
  config.N = 20;
  config.max_sweeps = 60;
  const IterationTrace trace = run(config, g, &ms);
  CHECK(trace.converged);
  CHECK(trace.sweeps <= 60);
  // errors decay geometrically; the tail is monotone
  for (size_t i = trace.update_max.size() / 2; i + 1 < trace.update_max.size(); ++i)
    if (trace.update_max[i] > 1e-13) CHECK(trace.update_max[i + 1] < trace.update_max[i]);
}

TEST_CASE("interpolation variant: pinned nodes and bounded rate") {
  const DiscPair pair = DiscPair::from_discs(1.4, 1.2);
  const ManufacturedSolution ms = manufactured_harmonic_polynomial(2);
  const OmegaBoundaryData g = boundary_data(ms, pair);

  SchwarzConfig config = base_config(pair);
  config.variant = SolveVariant::interpolation;
  config.snapped = snap_to_grids(pair.theta1_star(), pair.theta2_star(), 42, 50);
  config.max_sweeps = 30;
  const IterationTrace trace = run(config, g, &ms);
  CHECK(trace.converged);

  REQUIRE(!trace.z_node_update.empty());
  for (double e : trace.z_node_update) CHECK(e == 0.0);

  const double bound = interp_contraction_bound(*config.snapped);
  CHECK(observed_rate(trace) <= bound + 0.02);
}

TEST_CASE("interpolation multiplicative mode squares the bound") {
  const DiscPair pair = DiscPair::from_discs(1.4, 1.2);
  const ManufacturedSolution ms = manufactured_harmonic_polynomial(2);
  const OmegaBoundaryData g = boundary_data(ms, pair);
  SchwarzConfig config = base_config(pair);
  config.variant = SolveVariant::interpolation;
  config.mode = SweepMode::multiplicative;
  config.snapped = snap_to_grids(pair.theta1_star(), pair.theta2_star(), 42, 50);
  const IterationTrace trace = run(config, g);
  CHECK(trace.converged);
  const double bound = interp_contraction_bound(*config.snapped);
  CHECK(observed_rate(trace) <= bound * bound + 0.02);
}

TEST_CASE("projection fixed points approach the exact fixed point") {
  const DiscPair pair = DiscPair::from_discs(1.4, 1.2);
  const ManufacturedSolution ms = manufactured_harmonic_polynomial(2);
  const OmegaBoundaryData g = boundary_data(ms, pair);

  SchwarzConfig exact_config = base_config(pair);
  exact_config.tol = 1e-9;
  exact_config.max_sweeps = 50;
  const IterationTrace exact_trace = run(exact_config, g);
  REQUIRE(exact_trace.converged);

  const double r_common = positivity_radius_theory(10);
  const auto angles = gamma2_sample_angles(exact_config);
  double prev = 1e300;
  for (int N : {10, 20, 40, 80}) {
    SchwarzConfig pc = base_config(pair);
    pc.variant = SolveVariant::projection;
    pc.N = N;
    pc.tol = 1e-10;
    pc.max_sweeps = 120;
    const IterationTrace pt = run(pc, g);
    double sup = 0.0;
    for (size_t i = 0; i < angles.size(); ++i) {
      const PolarPoint p = gamma2_to_b1_polar(pair, angles[i]);
      if (p.r <= r_common)
        sup = std::max(sup, std::abs(pt.final_state->trace_gamma2[i] -
                                     exact_trace.final_state->trace_gamma2[i]));
    }
    CHECK(sup < prev);
    prev = sup;
  }
}

TEST_CASE("sweep is the single-step building block of run") {
  const DiscPair pair = DiscPair::from_discs(1.4, 1.2);
  const ManufacturedSolution ms = manufactured_harmonic_polynomial(1);
  const OmegaBoundaryData g = boundary_data(ms, pair);
  SchwarzConfig config = base_config(pair);
  config.variant = SolveVariant::projection;
  config.N = 10;

  const SchwarzState s0 = initial_state(config, g);
  const SchwarzState s1 = sweep(s0, config, g);
  const SchwarzState s2 = sweep(s1, config, g);
  CHECK(s1.sweep_count == 1);
  CHECK(s2.sweep_count == 2);
  // contraction between consecutive updates
  double e1 = 0.0, e2 = 0.0;
  for (size_t i = 0; i < s0.trace_gamma2.size(); ++i) {
    e1 = std::max(e1, std::abs(s1.trace_gamma2[i] - s0.trace_gamma2[i]));
    e2 = std::max(e2, std::abs(s2.trace_gamma2[i] - s1.trace_gamma2[i]));
  }
  CHECK(e2 <= (pair.contraction() + 0.05) * e1 + 1e-3);
}

TEST_CASE("small-overlap geometry contracts at its slower constant") {
  const DiscPair pair = DiscPair::from_discs(2.1, 1.2);  // C1 = 0.806
  const ManufacturedSolution ms = manufactured_harmonic_polynomial(2);
  const OmegaBoundaryData g = boundary_data(ms, pair);
  SchwarzConfig config = base_config(pair);
  config.max_sweeps = 25;
  config.tol = 1e-10;
  const IterationTrace trace = run(config, g);
  CHECK(observed_rate(trace) <= pair.contraction() + 0.02);
}

TEST_CASE("non-convergence is flagged, not thrown") {
  const DiscPair pair = DiscPair::from_discs(2.1, 1.2);  // slow contraction
  const ManufacturedSolution ms = manufactured_harmonic_polynomial(2);
  const OmegaBoundaryData g = boundary_data(ms, pair);
  SchwarzConfig config = base_config(pair);
  config.variant = SolveVariant::projection;
  config.N = 12;
  config.max_sweeps = 5;
  config.tol = 1e-12;
  const IterationTrace trace = run(config, g);
  CHECK_FALSE(trace.converged);
  CHECK(trace.sweeps == 5);
}

TEST_CASE("overlap sample points stay inside both discs") {
  const DiscPair pair = DiscPair::from_discs(1.4, 1.2);
  const auto pts = overlap_sample_points(pair, 50, 0.02);
  REQUIRE(pts.size() == 50);
  for (const auto& [x, y] : pts) {
    CHECK(std::hypot(x, y) <= 1.0 - 0.02 + 1e-12);
    CHECK(std::hypot(x - pair.m(), y) <= pair.R() - 0.02 + 1e-12);
  }
}
