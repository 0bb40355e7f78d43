#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "gesem/iconic.hpp"
#include "gesem/scene.hpp"

namespace gesem {

struct EmbedOptions {
  double scale_min = 0.01;
  double scale_max = 1000.0;
  double angle_tolerance = M_PI / 8.0;
  int rotation_samples = 360;

  void validate() const;
};

struct SegmentResidual {
  double angle = 0.0;   // radians between model atom and target segment
  double length = 0.0;  // k*|atom| - |target segment|
};

struct EmbeddingResult {
  bool success = false;
  std::optional<Transform> witness;
  std::vector<SegmentResidual> residuals;
  std::string reason;  // filled on failure

  explicit operator bool() const { return success; }
};

/// Decides whether the (transformed) iconic model embeds into the target
/// path: equal segment count, per-segment direction within the angle
/// tolerance under some admissible rotation, compatible joint classes, and
/// matching closure. The witness minimizes total angular residual; ties are
/// broken by smallest |angle|, then scale closest to 1. The target path is
/// taken in the coordinates of the located space's frame.
EmbeddingResult embed(const IconicModel& m, const VecSpace& target,
                      const EmbedOptions& opts = {});

/// Same decision against a path already expressed in local coordinates.
EmbeddingResult embed(const IconicModel& m, const Path3& target_local,
                      const EmbedOptions& opts = {});

/// Exhaustive grid-search oracle: rotation_samples angles on each admissible
/// axis crossed with a geometric scale grid. Agrees with embed() on
/// success/failure.
EmbeddingResult brute_force_embed(const IconicModel& m, const VecSpace& target,
                                  const EmbedOptions& opts = {});
EmbeddingResult brute_force_embed(const IconicModel& m,
                                  const Path3& target_local,
                                  const EmbedOptions& opts = {});

}  // namespace gesem
