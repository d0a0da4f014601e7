#pragma once

#include <functional>
#include <vector>

namespace sfdd {

struct QuadOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_intervals = 8192;
};

/** Globally adaptive Gauss-Kronrod 15(7) integration of f over [a, b].
 * Throws accuracy_error if the tolerance cannot be met within the
 * interval budget. */
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadOptions& opt = {});

/** As integrate(), but the interval is pre-split at the given interior
 * points (breakpoints of the integrand, kernel peaks, ...). Split points
 * outside (a, b) are ignored. */
double integrate_split(const std::function<double(double)>& f, double a, double b,
                       const std::vector<double>& splits, const QuadOptions& opt = {});

/** Composite 16-point Gauss-Legendre rule with a fixed panel count.
 * No error control; panel count must resolve the integrand. */
double integrate_panels(const std::function<double(double)>& f, double a, double b,
                        int panels);

/** Nodes and weights of the composite 16-point Gauss-Legendre rule on
 * [a, b], for callers that evaluate one integrand against many test
 * functions. */
void gauss_legendre_panels(double a, double b, int panels,
                           std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace sfdd
