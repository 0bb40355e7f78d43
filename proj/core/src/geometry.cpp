#include "gesem/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace gesem {

const char* to_string(errc code) {
  switch (code) {
    case errc::invalid_argument: return "invalid-argument";
    case errc::degenerate_path: return "degenerate-path";
    case errc::parse_error: return "parse-error";
    case errc::arity_error: return "arity-error";
    case errc::empty_trajectory: return "empty-trajectory";
    case errc::mode_error: return "mode-error";
    case errc::anisotropy_violation: return "anisotropy-violation";
    case errc::reference_error: return "reference-error";
    case errc::frame_error: return "frame-error";
    case errc::no_spatial_extension: return "no-spatial-extension";
    case errc::not_found: return "not-found";
    case errc::type_error: return "type-error";
    case errc::mode_mismatch: return "mode-mismatch";
    case errc::closure_error: return "closure-error";
    case errc::stale_label: return "stale-label";
    case errc::ambiguous_resolution: return "ambiguous-resolution";
    case errc::io_error: return "io-error";
  }
  return "unknown";
}

double angle_between(const Vec3& a, const Vec3& b) {
  double na = a.norm();
  double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return M_PI;
  double c = a.dot(b) / (na * nb);
  c = std::clamp(c, -1.0, 1.0);
  return std::acos(c);
}

Vec3 unit(OrientingLevel level) {
  switch (level) {
    case OrientingLevel::Rt: return {1.0, 0.0, 0.0};
    case OrientingLevel::NegRt: return {-1.0, 0.0, 0.0};
    case OrientingLevel::Ft: return {0.0, 1.0, 0.0};
    case OrientingLevel::NegFt: return {0.0, -1.0, 0.0};
    case OrientingLevel::Up: return {0.0, 0.0, 1.0};
    case OrientingLevel::NegUp: return {0.0, 0.0, -1.0};
  }
  return {};
}

OrientingLevel inverse(OrientingLevel level) {
  switch (level) {
    case OrientingLevel::Rt: return OrientingLevel::NegRt;
    case OrientingLevel::NegRt: return OrientingLevel::Rt;
    case OrientingLevel::Ft: return OrientingLevel::NegFt;
    case OrientingLevel::NegFt: return OrientingLevel::Ft;
    case OrientingLevel::Up: return OrientingLevel::NegUp;
    case OrientingLevel::NegUp: return OrientingLevel::Up;
  }
  return level;
}

std::string to_string(OrientingLevel level) {
  switch (level) {
    case OrientingLevel::Rt: return "RT";
    case OrientingLevel::NegRt: return "-RT";
    case OrientingLevel::Ft: return "FT";
    case OrientingLevel::NegFt: return "-FT";
    case OrientingLevel::Up: return "UP";
    case OrientingLevel::NegUp: return "-UP";
  }
  return "?";
}

std::optional<OrientingLevel> level_from_string(std::string_view s) {
  if (s == "RT") return OrientingLevel::Rt;
  if (s == "-RT") return OrientingLevel::NegRt;
  if (s == "FT") return OrientingLevel::Ft;
  if (s == "-FT") return OrientingLevel::NegFt;
  if (s == "UP") return OrientingLevel::Up;
  if (s == "-UP") return OrientingLevel::NegUp;
  return std::nullopt;
}

std::string to_string(RotationAxis axis) {
  switch (axis) {
    case RotationAxis::X: return "x";
    case RotationAxis::Y: return "y";
    case RotationAxis::Z: return "z";
  }
  return "?";
}

std::optional<RotationAxis> axis_from_string(std::string_view s) {
  if (s == "x" || s == "X") return RotationAxis::X;
  if (s == "y" || s == "Y") return RotationAxis::Y;
  if (s == "z" || s == "Z") return RotationAxis::Z;
  return std::nullopt;
}

std::string to_string(Closure c) {
  return c == Closure::Open ? "open" : "closed";
}

void Path3::validate() const {
  if (points.size() < 2)
    throw error(errc::invalid_argument, "path needs at least two points");
  std::size_t expected = segments() > 0 ? segments() - 1 : 0;
  if (joints.size() != expected)
    throw error(errc::invalid_argument,
                "path has " + std::to_string(joints.size()) + " joints, expected " +
                    std::to_string(expected));
  for (const Point3& p : points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
      throw error(errc::invalid_argument, "path point is not finite");
  }
}

double path_length(const Path3& p) {
  double total = 0.0;
  for (std::size_t i = 0; i < p.segments(); ++i) total += p.segment(i).norm();
  return total;
}

Vec3 rotate(const Vec3& v, RotationAxis axis, double theta) {
  if (!std::isfinite(theta))
    throw error(errc::invalid_argument, "rotation angle is not finite");
  double c = std::cos(theta);
  double s = std::sin(theta);
  switch (axis) {
    case RotationAxis::X:
      return {v.x, c * v.y - s * v.z, s * v.y + c * v.z};
    case RotationAxis::Y:
      return {c * v.x + s * v.z, v.y, -s * v.x + c * v.z};
    case RotationAxis::Z:
      return {c * v.x - s * v.y, s * v.x + c * v.y, v.z};
  }
  return v;
}

Vec3 scale(const Vec3& v, double k) {
  if (!(k > 0.0) || !std::isfinite(k))
    throw error(errc::invalid_argument,
                "scale factor must be a positive real, got " + std::to_string(k));
  return {v.x * k, v.y * k, v.z * k};
}

Vec3 project(const Vec3& v, OrientingLevel level) {
  Vec3 u = unit(level);
  return u * v.dot(u);
}

double component(const Vec3& v, OrientingLevel level) {
  return v.dot(unit(level));
}

Closure closure_of(const Path3& p, double eps) {
  p.validate();
  double total = path_length(p);
  if (total <= 0.0)
    throw error(errc::degenerate_path, "path has zero length");
  double gap = (p.points.front() - p.points.back()).norm();
  return gap <= eps * total ? Closure::Closed : Closure::Open;
}

namespace {

struct PathNode {
  Point3 point;
  JointKind joint;  // class of the junction at this interior point
};

// Circular fillet at a blended corner: trims both adjacent segments and
// inserts samples of the arc tangent to both. Endpoints of the overall path
// are untouched. Straight continuations and full reversals have no fillet.
void append_fillet(std::vector<PathNode>& nodes, const Point3& corner,
                   const Vec3& in_dir, const Vec3& out_dir, double trim,
                   int samples_per_quarter_turn) {
  double turn = angle_between(in_dir, out_dir);
  if (turn < 1e-9 || turn > M_PI - 1e-9) {
    nodes.push_back({corner, JointKind::Arc});
    return;
  }
  Vec3 a = in_dir.normalized();
  Vec3 b = out_dir.normalized();
  Point3 start = corner + (-a) * trim;
  double radius = trim / std::tan(turn / 2.0);
  Vec3 normal = a.cross(b).normalized();
  Point3 center = start + normal.cross(a).normalized() * radius;
  Vec3 r0 = start - center;
  int steps = std::max(2, static_cast<int>(std::ceil(
                              samples_per_quarter_turn * turn / (M_PI / 2.0))));
  for (int k = 0; k <= steps; ++k) {
    double t = turn * k / steps;
    // Rodrigues rotation of r0 about the joint normal.
    Vec3 rk = r0 * std::cos(t) + normal.cross(r0) * std::sin(t) +
              normal * (normal.dot(r0) * (1.0 - std::cos(t)));
    nodes.push_back({center + rk, JointKind::Arc});
  }
}

}  // namespace

Path3 sample_arcs(const Path3& p, int samples_per_quarter_turn) {
  p.validate();
  if (samples_per_quarter_turn < 1)
    throw error(errc::invalid_argument, "need at least one sample per quarter turn");
  bool any_arc = false;
  for (JointKind j : p.joints) any_arc |= (j == JointKind::Arc);
  if (!any_arc) return p;

  std::vector<PathNode> nodes;
  for (std::size_t i = 1; i + 1 < p.points.size(); ++i) {
    if (p.joints[i - 1] == JointKind::Line) {
      nodes.push_back({p.points[i], JointKind::Line});
      continue;
    }
    Vec3 in_dir = p.segment(i - 1);
    Vec3 out_dir = p.segment(i);
    double trim = 0.5 * std::min(in_dir.norm(), out_dir.norm());
    append_fillet(nodes, p.points[i], in_dir, out_dir, trim,
                  samples_per_quarter_turn);
  }

  Path3 out;
  out.points.push_back(p.points.front());
  for (const PathNode& n : nodes) {
    // Adjacent fillets with maximal trim meet exactly; drop the zero segment.
    if ((n.point - out.points.back()).norm() < 1e-12) continue;
    out.points.push_back(n.point);
    out.joints.push_back(n.joint);
  }
  if ((p.points.back() - out.points.back()).norm() < 1e-12) {
    if (!out.joints.empty()) out.joints.pop_back();
  } else {
    out.points.push_back(p.points.back());
  }
  out.validate();
  return out;
}

}  // namespace gesem
