#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "gesem/geometry.hpp"

namespace gesem {

enum class Hand { Left, Right };

/// M3D wrist movement direction codes, one per orienting level.
enum class DirectionCode { ML, MR, MU, MD, MF, MB };

OrientingLevel level_of(DirectionCode d);
DirectionCode direction_of(OrientingLevel level);
std::string to_string(DirectionCode d);
std::optional<DirectionCode> direction_from_string(std::string_view s);

/// Wrist path labels: the shape of one movement stroke.
enum class PathLabel { Line, Arc };

enum class Extent { Small, Medium, Large };

enum class SyncConfig { RHA, LHA, BHA };

/// McNeill-style gesture space slot: one of the nine center-grid sectors
/// plus a near/middle/far depth.
struct GridLocation {
  std::string sector = "CC";  // CC CL CR CU CB CUL CUR CBL CBR
  char depth = 'M';           // N M F

  bool operator==(const GridLocation&) const = default;
};

bool valid_sector(std::string_view s);

struct HandshapeLabel {
  std::string code;

  bool operator==(const HandshapeLabel&) const = default;
};

/// One hand's kinematic record, mirroring the annotation AVMs. Palm and
/// back-of-hand orientations are carried along for consistency monitoring
/// but take part in no interpretation.
struct KinematicAnnotation {
  std::string id;  // optional reference name; empty when not declared
  Hand hand = Hand::Right;
  HandshapeLabel handshape;
  std::string palm_orient;
  std::string boh_orient;
  std::vector<PathLabel> wrist_paths;
  std::vector<DirectionCode> wrist_dirs;
  Extent extent = Extent::Medium;
  SyncConfig sync_config = SyncConfig::RHA;
  std::string rel_mov = "none";
  GridLocation s_loc;
  GridLocation e_loc;

  bool operator==(const KinematicAnnotation&) const = default;
};

struct AnnotationOptions {
  /// Admissible handshape codes; anything else is rejected at parse time.
  std::set<std::string> handshapes;

  AnnotationOptions();
};

/// Parses an annotation document (one block per hand, blocks introduced by
/// `hand:` or `id:`). Unknown labels and misaligned path/dir lists raise
/// parse_error / arity-error with the offending location.
std::vector<KinematicAnnotation> parse_annotations(
    std::string_view text, const AnnotationOptions& options = {});

std::vector<KinematicAnnotation> load_annotations(
    const std::filesystem::path& file, const AnnotationOptions& options = {});

std::string serialize(const KinematicAnnotation& a);
std::string serialize(const std::vector<KinematicAnnotation>& all);

/// Looks up a record by declared id, falling back to 1-based ordinal when
/// the reference is "#N".
const KinematicAnnotation& find_annotation(
    const std::vector<KinematicAnnotation>& all, std::string_view ref);

std::string to_string(Hand h);
std::string to_string(PathLabel p);
std::string to_string(Extent e);
std::string to_string(SyncConfig s);
std::string to_string(const GridLocation& g);

}  // namespace gesem
