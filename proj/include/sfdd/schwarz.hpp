#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sfdd/fourier.hpp"
#include "sfdd/geometry.hpp"

namespace sfdd {

enum class SolveVariant { exact, projection, interpolation };
enum class SweepMode { additive, multiplicative };

/** Continuous boundary data on the outer boundary of the two-disc union:
 * g1 on the B1 arc outside B2 (angle in [theta1*, 2pi - theta1*]) and g2
 * on the B2 arc outside B1 (angle in [-theta2*, theta2*]). */
struct OmegaBoundaryData {
  std::function<double(double)> g1;
  std::function<double(double)> g2;
};

/** A known harmonic function used as convergence oracle. */
struct ManufacturedSolution {
  std::string name;
  std::function<double(double, double)> u;
};

/** Real part of (x + i y)^k, harmonic for any k; k in [0, 6]. */
ManufacturedSolution manufactured_harmonic_polynomial(int k);

/** ln |x - x0| with the source point x0 at distance >= 0.1 outside the
 * closed union of the two discs. */
ManufacturedSolution manufactured_log_source(double x0, double y0, const DiscPair& pair);

/** Trace of a manufactured solution on the outer boundary. */
OmegaBoundaryData boundary_data(const ManufacturedSolution& ms, const DiscPair& pair);

struct SchwarzConfig {
  DiscPair pair;
  SolveVariant variant = SolveVariant::exact;
  SweepMode mode = SweepMode::additive;
  /** Fourier order for the projection variant (same order on both discs). */
  int N = 20;
  /** Snapped grids; required for the interpolation variant, which takes its
   * per-disc orders from n1, n2. */
  std::optional<SnappedScenario> snapped{};
  int max_sweeps = 60;
  double tol = 1e-8;
  int trace_samples = 101;
};

/** Iteration state: the two interface traces sampled at fixed angles, plus
 * the variant-specific solution descriptor (Fourier coefficients for the
 * inexact variants, node data vectors for interpolation). States are
 * replaced wholesale by sweep(); no in-place mutation. */
struct SchwarzState {
  std::vector<double> trace_gamma2;  // u1 at the Gamma2 sample angles
  std::vector<double> trace_gamma1;  // u2 at the Gamma1 sample angles
  std::optional<FourierCoeffs> coef1, coef2;
  std::vector<double> nodes1, nodes2;
  int sweep_count = 0;
};

/** Sample angles of the two interfaces (open-arc offset convention). */
std::vector<double> gamma2_sample_angles(const SchwarzConfig& config);
std::vector<double> gamma1_sample_angles(const SchwarzConfig& config);

SchwarzState initial_state(const SchwarzConfig& config, const OmegaBoundaryData& g);

/** One sweep: additive mode updates both discs from the previous state,
 * multiplicative updates disc 1 first and lets disc 2 use the fresh
 * disc-1 solution. */
SchwarzState sweep(const SchwarzState& state, const SchwarzConfig& config,
                   const OmegaBoundaryData& g);

struct IterationTrace {
  std::vector<double> update_gamma2;  // sup of the per-sweep update on Gamma2
  std::vector<double> update_gamma1;
  std::vector<double> update_max;
  std::vector<double> ratios;             // update_max[i] / update_max[i-1]
  std::vector<double> manufactured_error; // sup vs the oracle, when given
  std::vector<double> z_node_update;      // interpolation: update at intersection nodes
  bool converged = false;
  int sweeps = 0;
  std::optional<SchwarzState> final_state;
};

/** Iterate until the interface update drops below config.tol or max_sweeps
 * is reached (non-convergence is a flag, not an error). */
IterationTrace run(const SchwarzConfig& config, const OmegaBoundaryData& g,
                   const ManufacturedSolution* oracle = nullptr);

/** Geometric-mean ratio of successive interface updates over the last half
 * of the usable trace. Requires at least 4 sweeps with updates above
 * 100 times machine epsilon (insufficient_data_error otherwise). */
double observed_rate(const IterationTrace& trace);

/** Evaluators of the current per-disc solutions at Cartesian points of the
 * respective open disc. */
std::function<double(double, double)> disc1_evaluator(const SchwarzConfig& config,
                                                      const SchwarzState& state,
                                                      const OmegaBoundaryData& g);
std::function<double(double, double)> disc2_evaluator(const SchwarzConfig& config,
                                                      const SchwarzState& state,
                                                      const OmegaBoundaryData& g);

/** Deterministic set of points inside the overlap, at distance >= margin
 * from both circles. */
std::vector<std::array<double, 2>> overlap_sample_points(const DiscPair& pair, int count,
                                                         double margin);

}  // namespace sfdd
