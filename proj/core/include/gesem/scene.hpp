#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "gesem/annotation.hpp"
#include "gesem/geometry.hpp"

namespace gesem {

/// Orienting frame of a located vector space. Rows must be orthonormal.
struct Frame {
  Vec3 rt{1.0, 0.0, 0.0};
  Vec3 ft{0.0, 1.0, 0.0};
  Vec3 up{0.0, 0.0, 1.0};

  bool orthonormal(double tol = 1e-9) const;
  /// World direction expressed in frame coordinates (x=RT, y=FT, z=UP).
  Vec3 to_local(const Vec3& world) const {
    return {world.dot(rt), world.dot(ft), world.dot(up)};
  }
};

struct NamedPath {
  std::string label;
  Path3 path;
};

struct Entity {
  std::string id;
  std::string sort;
  Point3 position;
  Frame frame;
  std::vector<NamedPath> axes;  // main axis first
};

struct Event {
  std::string id;
  std::string predicate;
  std::map<std::string, std::string> roles;  // role -> entity id
  std::optional<Path3> place_path;           // world coordinates
  std::optional<HandshapeLabel> manner_handshape;
  std::set<std::string> cvm_tags;
};

struct Scene {
  std::vector<Entity> entities;
  std::vector<Event> events;
  std::string speaker;
  double near_tau = 1.0;

  const Entity* find_entity(std::string_view id) const;
  const Event* find_event(std::string_view id) const;
  const Entity& entity(std::string_view id) const;   // reference-error if absent
  const Event& event(std::string_view id) const;

  void validate() const;
};

Scene parse_scene(std::string_view text);
Scene load_scene(const std::filesystem::path& file);
std::string serialize(const Scene& s);

/// The three readings of `above`, by decreasing strength. Components are
/// taken in the reference entity's frame; the zero vector satisfies none.
enum class AboveReading { VerticalOnly, Dominant, AnyPositive };

std::function<bool(const Vec3&)> region_above(const Scene& s,
                                              std::string_view entity_id,
                                              AboveReading reading);

/// |position(a) - position(b)| <= tau.
bool near(const Scene& s, std::string_view a, std::string_view b, double tau);

/// A located, oriented vector space projected from an entity or event.
struct VecSpace {
  enum class Kind { Entity, Event };
  Kind kind = Kind::Entity;
  std::string ref;
  Point3 origin;
  Frame frame;
  std::vector<NamedPath> paths;  // axis paths, or the event's place path

  /// Main axis path / place path; no-spatial-extension when there is none.
  const Path3& primary_path() const;
};

/// Entity: its own frame and axis paths. Event: its place path wrapped with
/// the speaker's frame.
VecSpace vecspace_of(const Scene& s, std::string_view ref_id);

}  // namespace gesem
