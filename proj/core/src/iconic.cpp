#include "gesem/iconic.hpp"

#include <cmath>
#include <sstream>

namespace gesem {

JointKind joint_of(Connector c) {
  return c == Connector::Perp ? JointKind::Line : JointKind::Arc;
}

std::string to_string(Connector c) {
  return c == Connector::Perp ? "⊥" : "∘";  // ⊥ / ∘
}

std::string to_string(Mode m) {
  switch (m) {
    case Mode::Acting: return "acting";
    case Mode::Molding: return "molding";
    case Mode::Drawing: return "drawing";
  }
  return "?";
}

std::optional<Mode> mode_from_string(std::string_view s) {
  if (s == "acting") return Mode::Acting;
  if (s == "molding") return Mode::Molding;
  if (s == "drawing") return Mode::Drawing;
  return std::nullopt;
}

TrajAtom TrajAtom::from_vec(const Vec3& v) {
  TrajAtom a{v, std::nullopt};
  double n = v.norm();
  if (n > 0.0) {
    for (OrientingLevel l :
         {OrientingLevel::Rt, OrientingLevel::NegRt, OrientingLevel::Ft,
          OrientingLevel::NegFt, OrientingLevel::Up, OrientingLevel::NegUp}) {
      if ((v - unit(l) * n).norm() <= 1e-9 * n) {
        a.level = l;
        break;
      }
    }
  }
  return a;
}

IconicModel vectorize(const KinematicAnnotation& ann, Mode mode,
                      bool perspectival) {
  if (ann.wrist_dirs.empty())
    throw error(errc::empty_trajectory,
                "static gesture has no movement trajectory to vectorize");
  IconicModel m;
  m.hs = ann.handshape;
  for (DirectionCode d : ann.wrist_dirs)
    m.traj.push_back(TrajAtom::from_level(level_of(d)));
  // The continuation stroke's path label types the joint it arrives through.
  for (std::size_t i = 1; i < ann.wrist_paths.size(); ++i)
    m.connectors.push_back(ann.wrist_paths[i] == PathLabel::Arc
                               ? Connector::Round
                               : Connector::Perp);
  m.closure = ann.s_loc == ann.e_loc ? Closure::Closed : Closure::Open;
  if (mode == Mode::Acting) {
    m.quoted_handshape = true;
    m.perspectival = true;
  } else {
    m.perspectival = perspectival;
  }
  return m;
}

std::set<RotationAxis> allowed_rotation_axes(const IconicModel& m) {
  if (m.perspectival) return {};
  constexpr double kEps = 1e-9;
  bool dim[3] = {false, false, false};
  for (const TrajAtom& a : m.traj) {
    if (std::abs(a.dir.x) > kEps) dim[0] = true;
    if (std::abs(a.dir.y) > kEps) dim[1] = true;
    if (std::abs(a.dir.z) > kEps) dim[2] = true;
  }
  int used = dim[0] + dim[1] + dim[2];
  if (used == 2) {
    if (!dim[0]) return {RotationAxis::X};
    if (!dim[1]) return {RotationAxis::Y};
    return {RotationAxis::Z};
  }
  return {RotationAxis::Z};
}

IconicModel transform(const IconicModel& m, const Transform& t) {
  if (t.angle != 0.0) {
    std::set<RotationAxis> allowed = allowed_rotation_axes(m);
    if (!allowed.count(t.axis))
      throw error(errc::anisotropy_violation,
                  "rotation about " + to_string(t.axis) +
                      " is not admissible for this model");
  }
  IconicModel out = m;
  out.traj.clear();
  for (const TrajAtom& a : m.traj)
    out.traj.push_back(TrajAtom::from_vec(rotate(scale(a.dir, t.scale_k),
                                                 t.axis, t.angle)));
  return out;
}

Path3 realize(const IconicModel& m, Point3 origin, double unit) {
  if (m.traj.empty())
    throw error(errc::empty_trajectory, "cannot realize an empty trajectory");
  if (!(unit > 0.0))
    throw error(errc::invalid_argument, "realization unit must be positive");
  Path3 p;
  p.points.push_back(origin);
  for (const TrajAtom& a : m.traj)
    p.points.push_back(p.points.back() + a.dir * unit);
  for (Connector c : m.connectors) p.joints.push_back(joint_of(c));
  p.validate();
  return p;
}

HsqPredicate hsq_constraint(const IconicModel& m) {
  if (!m.quoted_handshape)
    throw error(errc::mode_error,
                "handshape quotation applies to acting gestures only");
  return HsqPredicate{m.hs};
}

double extent_unit(Extent e) {
  switch (e) {
    case Extent::Small: return 0.5;
    case Extent::Medium: return 1.0;
    case Extent::Large: return 2.0;
  }
  return 1.0;
}

namespace {

std::string atom_to_string(const TrajAtom& a) {
  if (a.level) {
    double n = a.dir.norm();
    std::string name = to_string(*a.level);
    if (std::abs(n - 1.0) <= 1e-9) return name;
    std::ostringstream out;
    out << name << "·" << n;  // e.g. RT·2
    return out.str();
  }
  std::ostringstream out;
  out << "(" << a.dir.x << ", " << a.dir.y << ", " << a.dir.z << ")";
  return out.str();
}

}  // namespace

std::string traj_to_string(const IconicModel& m) {
  std::string out;
  for (std::size_t i = 0; i < m.traj.size(); ++i) {
    if (i) out += to_string(m.connectors[i - 1]);
    out += atom_to_string(m.traj[i]);
  }
  return out;
}

std::string to_string(const IconicModel& m) {
  std::ostringstream out;
  out << "hs " << m.hs.code << ", traj " << traj_to_string(m) << ", "
      << to_string(m.closure);
  if (m.perspectival) out << ", perspectival";
  if (m.quoted_handshape) out << ", HSQ";
  return out.str();
}

bool same_model(const IconicModel& a, const IconicModel& b, double tol) {
  if (!(a.hs == b.hs) || a.traj.size() != b.traj.size() ||
      a.connectors != b.connectors || a.closure != b.closure ||
      a.perspectival != b.perspectival ||
      a.quoted_handshape != b.quoted_handshape)
    return false;
  for (std::size_t i = 0; i < a.traj.size(); ++i)
    if ((a.traj[i].dir - b.traj[i].dir).norm() > tol) return false;
  return true;
}

}  // namespace gesem
