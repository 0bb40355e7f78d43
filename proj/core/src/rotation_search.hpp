#pragma once

// Internal helpers for aligning direction sequences under a single-axis
// rotation. Shared by the embedding decision and the CVM template matcher;
// not installed.

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "gesem/geometry.hpp"

namespace gesem::detail {

struct DirectionConstraint {
  Vec3 from;  // unit vector to be rotated
  Vec3 to;    // unit vector to land on (within tolerance)
};

/// Union of non-wrapping angle intervals within [0, 2pi).
struct ArcSet {
  std::vector<std::pair<double, double>> arcs;

  static ArcSet full();
  bool empty() const { return arcs.empty(); }
  /// Intersects with the circular arc centered at mid with given half-width.
  void intersect(double mid, double half_width);
};

/// R_axis(theta) * from . to  ==  a*cos(theta) + b*sin(theta) + c.
struct CosineProfile {
  double a = 0.0, b = 0.0, c = 0.0;

  double value(double theta) const {
    return a * std::cos(theta) + b * std::sin(theta) + c;
  }
};

CosineProfile cosine_profile(const DirectionConstraint& dc, const Vec3& axis);

/// Angles theta for which every constraint stays within tol of its target.
ArcSet feasible_rotations(const std::vector<DirectionConstraint>& constraints,
                          const Vec3& axis, double tol);

/// Sum of angular deviations at theta.
double total_residual(const std::vector<DirectionConstraint>& constraints,
                      const Vec3& axis, double theta);

/// Minimizer of the total residual inside the feasible set (nullopt when the
/// set is empty). Deterministic: dense scan at the given resolution per arc,
/// then local ternary refinement.
std::optional<double> best_rotation(
    const std::vector<DirectionConstraint>& constraints, const Vec3& axis,
    double tol, int samples);

/// Wraps to (-pi, pi].
double wrap_angle(double theta);

}  // namespace gesem::detail
