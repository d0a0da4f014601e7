#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "sfdd/fourier.hpp"
#include "sfdd/geometry.hpp"

namespace sfdd {

enum class DtDVariant { exact, projection, interpolation, interpolation_bound };

/** Values of a disc-to-disc map (or of its node-vector bound) sampled
 * along Gamma2, parameterized by the B2-polar angle theta_tilde in
 * [theta2*, 2pi - theta2*]. For the exact and projection variants the
 * interior samples exclude the endpoints by a small offset and the
 * endpoint values are reported separately (one-sided extrapolation for
 * the exact variant, direct boundary-trace evaluation otherwise). */
struct DtDProfile {
  DtDProfile(DiscPair scenario_, DtDVariant variant_)
      : scenario(scenario_), variant(variant_) {}

  DiscPair scenario;
  DtDVariant variant;
  std::optional<int> N;
  std::vector<double> thetas;
  std::vector<double> values;
  std::vector<bool> grid_marks;  // sample coincides with a G_{2,n2} node
  std::optional<std::pair<double, double>> endpoints;

  double max_value() const;
};

/** Mode vectors of the interpolation-space harmonic extension at (theta, r):
 * c = (1/2, r cos t, ..., (1/2) r^{n1/2} cos((n1/2) t)), s likewise with
 * sines and without the constant/Nyquist entries. */
struct ModeVectors {
  std::vector<double> c;  // length n1/2 + 1
  std::vector<double> s;  // length n1/2 - 1
};

ModeVectors mode_vectors(int n1, double theta, double r);

/** Node-indicator projection onto the interior of Gamma1: flag l is true
 * iff node angle l 2pi/n1 lies strictly inside (-theta1_int, theta1_int).
 * Under the snapping assumption the two intersection nodes are excluded. */
struct QMask {
  int n1 = 0;
  std::vector<bool> interior;
};

QMask qmask_gamma1(const SnappedScenario& s);

/** Trace along Gamma2 of the harmonic extension of data (0, v), where v
 * lives on Gamma1 as a function of the B1-angle in [-theta1*, theta1*].
 * Exact subdomain solve by Poisson quadrature. */
DtDProfile dtd_exact_profile(const DiscPair& pair, const std::function<double(double)>& v,
                             int samples);

/** Same trace for the degree-N Fourier-projected solve. */
DtDProfile dtd_projection_profile(const DiscPair& pair, int N,
                                  const std::function<double(double)>& v, int samples);

/** Interpolation-variant map applied to a node-value vector v (length n1,
 * zero at and outside the intersection nodes), evaluated at B1-polar
 * (theta, r): v^T Q (C c(theta, r) + S s(theta, r)). */
double dtd_interpolation_apply(const SnappedScenario& s, const std::vector<double>& v_samples,
                               double theta, double r);

/** Profile of the masked l1 bound ||Q (C c + S s)||_1 along Gamma2; with
 * grid_only the samples are the nodes of G_{2,n2} on the closed arc. The
 * two intersection nodes carry the exact value 0. */
DtDProfile interp_bound_profile(const SnappedScenario& s, int samples, bool grid_only);

/** Contraction bound of the interpolation-variant map: maximum of the
 * masked l1 bound over the grid nodes on the closed Gamma2 arc. */
double interp_contraction_bound(const SnappedScenario& s);

/** Maximum-norm of the exact disc-to-disc map, realized by the constant
 * datum v = 1; equals the contraction constant of the geometry. */
double dtd_exact_norm(const DiscPair& pair);

}  // namespace sfdd
