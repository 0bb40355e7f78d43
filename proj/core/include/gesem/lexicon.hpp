#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gesem/iconic.hpp"

namespace gesem {

enum class MatchMode { RotationFree, Perspectival };

/// Conceptual vector meaning: a visuo-spatial template acting as a binary
/// perceptual classifier over iconic models. Wildcard atoms (nullopt) unify
/// with any direction.
struct CvmTemplate {
  std::string name;  // "<lemma>-CVM"
  std::vector<std::optional<TrajAtom>> traj;
  std::vector<Connector> connectors;
  Closure closure = Closure::Open;
  bool requires_quotation = false;
  MatchMode match_mode = MatchMode::RotationFree;
};

/// 1 if the model matches the template (equal arity, connectors and closure;
/// concrete atoms aligned modulo the model's admissible rotations and
/// scaling; quotation satisfied when required), else 0. The codomain is
/// [0,1] but only the binary endpoints are produced.
double cvm_score(const CvmTemplate& c, const IconicModel& m);

enum class SpaceKind { Entity, Event };

enum class VisKind { PlacePath, Axis };

/// A lexical vector condition: existence of a place path or of an axis,
/// anchored at the event variable ("e"), the entry's own referent ("self"),
/// or a declared role.
struct VisConstraint {
  VisKind kind = VisKind::PlacePath;
  std::string target = "e";
};

/// Gesture form features plus visually presupposed features available for
/// extended exemplification.
enum class GestureFeature {
  CvmMatch,
  SpeakerAsAgent,
  VirtualObject,
  VirtualTrajectory,
  FreeRideDistance,
};

std::string to_string(GestureFeature f);
std::optional<GestureFeature> feature_from_string(std::string_view s);

/// Link from a lexical entry to an evoked frame: which of the entry's
/// arguments bind which core frame elements ("self" = the entry's referent).
struct FrameBinding {
  std::string frame;
  std::map<std::string, std::string> core_map;  // core element -> role/self
};

struct LexEntry {
  std::string lemma;
  std::string category;            // v, n, a, pron, adv
  std::vector<std::string> roles;  // application order: last role first
  std::string sort;                // ontological sort of the denoted content
  SpaceKind mode_affinity = SpaceKind::Entity;
  std::vector<VisConstraint> vis;
  std::optional<CvmTemplate> cvm;
  std::vector<FrameBinding> frames;
  /// Argument slots of the predicate for extemplification, in order.
  std::vector<std::string> args;
  /// Which gesture feature may witness each argument slot. Deliberately
  /// allowed to be partial: an unmapped slot blocks extemplification.
  std::map<std::string, GestureFeature> arg_map;
};

/// Frame with core and non-core elements; non-core elements carry the hard
/// sort that R-resolution matches against.
struct FrameDef {
  std::string name;
  std::vector<std::pair<std::string, std::string>> core;
  std::vector<std::pair<std::string, std::string>> non_core;
};

struct Lexicon {
  std::vector<LexEntry> entries;
  std::vector<FrameDef> frames;

  const LexEntry& lookup(std::string_view lemma) const;  // not-found
  const LexEntry* find(std::string_view lemma) const;
  const FrameDef& frame(std::string_view name) const;
  const FrameDef* find_frame(std::string_view name) const;

  void validate() const;
};

Lexicon parse_lexicon(std::string_view text);
Lexicon load_lexicon(const std::filesystem::path& file);
std::string serialize(const Lexicon& lex);

std::string to_string(SpaceKind k);
std::string to_string(VisKind k);

}  // namespace gesem
