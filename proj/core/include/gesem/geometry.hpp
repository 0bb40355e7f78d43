#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gesem/errors.hpp"

namespace gesem {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double k) const { return {x * k, y * k, z * k}; }
  Vec3 operator-() const { return {-x, -y, -z}; }

  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const { return std::sqrt(dot(*this)); }
  bool finite() const {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
  }
  /// Unit vector in the same direction; zero vectors are left unchanged.
  Vec3 normalized() const {
    double n = norm();
    return n > 0.0 ? Vec3{x / n, y / n, z / n} : *this;
  }
};

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 operator-(const Point3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Point3 operator+(const Vec3& v) const { return {x + v.x, y + v.y, z + v.z}; }
};

/// Angle between two vectors in [0, pi]; zero vectors yield pi (maximally
/// misaligned, so degenerate segments never match anything).
double angle_between(const Vec3& a, const Vec3& b);

/// The six half-axes of an oriented vector space. Coordinate convention,
/// fixed library-wide: X = RT, Y = FT, Z = UP.
enum class OrientingLevel { Rt, NegRt, Ft, NegFt, Up, NegUp };

Vec3 unit(OrientingLevel level);
OrientingLevel inverse(OrientingLevel level);
std::string to_string(OrientingLevel level);
std::optional<OrientingLevel> level_from_string(std::string_view s);

enum class RotationAxis { X, Y, Z };

std::string to_string(RotationAxis axis);
std::optional<RotationAxis> axis_from_string(std::string_view s);

/// Joint classes between consecutive path segments: Line joints are sharp
/// corners, Arc joints are blended.
enum class JointKind { Line, Arc };

enum class Closure { Open, Closed };

std::string to_string(Closure c);

/// A polyline through >= 2 points. joints[i] classifies the joint between
/// segment i and segment i+1, so joints.size() == segments() - 1 (empty for
/// a single segment).
struct Path3 {
  std::vector<Point3> points;
  std::vector<JointKind> joints;

  std::size_t segments() const {
    return points.size() < 2 ? 0 : points.size() - 1;
  }
  Vec3 segment(std::size_t i) const { return points[i + 1] - points[i]; }

  /// Throws errc::invalid_argument when the point/joint counts disagree or a
  /// point is non-finite.
  void validate() const;
};

/// Sum of straight segment lengths.
double path_length(const Path3& p);

/// Applies the rotation matrix R_axis(theta) to v. Norm is preserved.
Vec3 rotate(const Vec3& v, RotationAxis axis, double theta);

/// Scalar multiplication with k > 0. Negative or zero scale factors are
/// rejected: mirroring is not an admissible model transformation.
Vec3 scale(const Vec3& v, double k);

/// Orthogonal projection of v onto the level's axis.
Vec3 project(const Vec3& v, OrientingLevel level);

/// Signed component of v along the level's unit vector. Flips sign between a
/// level and its inverse while project() does not.
double component(const Vec3& v, OrientingLevel level);

inline constexpr double kClosureEps = 0.05;

/// Closed iff start and end points coincide within eps * path length.
/// Zero-length paths have no closure class and raise degenerate_path.
Closure closure_of(const Path3& p, double eps = kClosureEps);

inline constexpr int kArcSamplesPerQuarterTurn = 16;

/// Concrete geometry for a path with Arc joints: each blended joint is
/// replaced by a sampled circular fillet tangent to both segments
/// (kArcSamplesPerQuarterTurn points per quarter turn). Endpoints are
/// preserved. Line joints and straight continuations pass through unchanged.
Path3 sample_arcs(const Path3& p, int samples_per_quarter_turn = kArcSamplesPerQuarterTurn);

}  // namespace gesem
