#pragma once

#include <span>

#include "gim/geometry.hpp"

namespace gim {

// Tolerance on the weight sum of an affine average.
inline constexpr double kWeightSumTolerance = 1e-12;
// Palindromic weights must match to this tolerance.
inline constexpr double kSymmetryTolerance = 1e-14;

// Geodesic inductive mean. Weights must sum to one and be sorted
// non-increasing; the points are folded in one at a time,
//   A_m = M_{w_m / (w_1 + ... + w_m)}(A_{m-1}, p_m),
// which on euclidean data is exactly the weighted arithmetic mean. Zero
// weights are dropped before folding.
ManifoldPoint inductive_mean(std::span<const ManifoldPoint> points, std::span<const double> weights);

// Symmetric variant for palindromic weights (points in their natural order).
// Front and back halves are averaged separately with the same sorted,
// renormalized half-weights and joined by a geodesic midpoint. For an odd
// count the middle weight is split in two and the middle point duplicated.
ManifoldPoint symmetric_mean(std::span<const ManifoldPoint> points, std::span<const double> weights);

// Bound C with max_i d(mean, p_i) <= C * delta(p). For `symmetric` the
// weights are taken in natural (palindromic) order and the returned value is
// 2 C_l + 1/2 with C_l computed on the sorted half-weights; otherwise the
// weights must already be sorted. A single point gives 0.
double displacement_constant(std::span<const double> weights, bool symmetric);

struct KarcherOptions {
  int max_iter = 200;
  double tol = 1e-10;
};

struct KarcherResult {
  ManifoldPoint point;
  int iterations = 0;
  // Norm of sum_j w_j log(point, p_j) at the returned point.
  double stationarity = 0.0;
};

// Weighted Riemannian center of mass by the fixed-point iteration
// x <- exp(x, sum_j w_j log(x, p_j)), started from the inductive mean.
// Requires positive weights; on the sphere and rotation backends every pair
// of points must lie within pi/2 of each other.
KarcherResult karcher_mean(std::span<const ManifoldPoint> points, std::span<const double> weights,
                           const KarcherOptions& options = {});

}  // namespace gim
