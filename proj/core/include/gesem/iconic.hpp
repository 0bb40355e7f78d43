#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gesem/annotation.hpp"
#include "gesem/geometry.hpp"

namespace gesem {

/// Joint symbols of an iconic model trajectory: Perp comes from a `line`
/// continuation, Round from an `arc` continuation.
enum class Connector { Perp, Round };

JointKind joint_of(Connector c);
std::string to_string(Connector c);

/// Mode of representation of an iconic gesture. Acting quotes the handshape
/// and fixes speaker perspective; molding and drawing are purely spatial.
enum class Mode { Acting, Molding, Drawing };

std::string to_string(Mode m);
std::optional<Mode> mode_from_string(std::string_view s);

/// One trajectory atom: a concrete direction vector, remembered as an
/// orienting level while it still lies exactly on a half-axis.
struct TrajAtom {
  Vec3 dir;
  std::optional<OrientingLevel> level;

  static TrajAtom from_level(OrientingLevel l) { return {unit(l), l}; }
  static TrajAtom from_vec(const Vec3& v);
};

struct IconicModel {
  HandshapeLabel hs;
  std::vector<TrajAtom> traj;
  std::vector<Connector> connectors;  // size == max(traj.size() - 1, 0)
  Closure closure = Closure::Open;
  bool perspectival = false;
  bool quoted_handshape = false;
};

struct Transform {
  double scale_k = 1.0;
  RotationAxis axis = RotationAxis::Z;
  double angle = 0.0;
};

/// The gesture vectorization function: handshape copied verbatim, one
/// direction atom per (path, dir) stroke, connectors from the continuation
/// stroke's path label, closure from the start/end slots. Static gestures
/// (no strokes) are rejected.
IconicModel vectorize(const KinematicAnnotation& ann, Mode mode = Mode::Drawing,
                      bool perspectival = false);

/// Horizontal-vertical anisotropy: perspectival models admit no rotation;
/// a trajectory spanning exactly two coordinate dimensions frees the unused
/// third axis; everything else rotates horizontally (about Z).
std::set<RotationAxis> allowed_rotation_axes(const IconicModel& m);

/// Rotates and scales every trajectory atom. Connectors and closure are
/// untouched. The rotation axis must be admissible unless the angle is zero.
IconicModel transform(const IconicModel& m, const Transform& t);

/// Head-to-tail realization: one straight segment of length unit * |atom|
/// per atom, joints labelled from the connectors. Use sample_arcs() on the
/// result when blended corners are needed concretely.
Path3 realize(const IconicModel& m, Point3 origin = {}, double unit = 1.0);

/// Handshape quotation: the demonstration predicate an acting gesture
/// imposes on events. True of an event iff the event's recorded manner
/// handshape equals the quoted one.
struct HsqPredicate {
  HandshapeLabel hs;

  bool matches(const std::optional<HandshapeLabel>& event_manner) const {
    return event_manner.has_value() && *event_manner == hs;
  }
};

HsqPredicate hsq_constraint(const IconicModel& m);

/// Relative realization unit for an annotated extent; diagnostic only.
double extent_unit(Extent e);

std::string traj_to_string(const IconicModel& m);
std::string to_string(const IconicModel& m);

bool same_model(const IconicModel& a, const IconicModel& b, double tol = 1e-9);

}  // namespace gesem
