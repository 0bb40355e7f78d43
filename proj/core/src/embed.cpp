#include "gesem/embed.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "rotation_search.hpp"

namespace gesem {

using detail::DirectionConstraint;

void EmbedOptions::validate() const {
  if (!(scale_min > 0.0) || !(scale_min <= scale_max))
    throw error(errc::invalid_argument, "scale bounds must satisfy 0 < min <= max");
  if (!(angle_tolerance > 0.0) || !(angle_tolerance < M_PI / 2.0))
    throw error(errc::invalid_argument, "angle tolerance must lie in (0, pi/2)");
  if (rotation_samples < 4)
    throw error(errc::invalid_argument, "need at least 4 rotation samples");
}

namespace {

struct LocalTarget {
  std::vector<Vec3> dirs;    // unit segment directions, frame-local
  std::vector<double> lens;  // segment lengths
  std::vector<JointKind> joints;
  Closure closure = Closure::Open;
};

LocalTarget localize(const Path3& path, const Frame& frame) {
  path.validate();
  LocalTarget t;
  for (std::size_t i = 0; i < path.segments(); ++i) {
    Vec3 seg = frame.to_local(path.segment(i));
    double len = seg.norm();
    if (len <= 0.0)
      throw error(errc::degenerate_path, "target path has a zero segment");
    t.dirs.push_back(seg * (1.0 / len));
    t.lens.push_back(len);
  }
  t.joints = path.joints;
  t.closure = closure_of(path);
  return t;
}

// Structural compatibility shared by both search strategies. Returns a
// failure reason, or nothing when the angle search may proceed.
std::optional<std::string> structural_mismatch(const IconicModel& m,
                                               const LocalTarget& t,
                                               double tol) {
  if (m.traj.size() != t.dirs.size()) {
    std::ostringstream out;
    out << "segment count " << m.traj.size() << " vs " << t.dirs.size();
    return out.str();
  }
  if (m.closure != t.closure)
    return "closure class " + to_string(m.closure) + " vs " +
           to_string(t.closure);
  for (std::size_t i = 0; i < m.connectors.size(); ++i) {
    double turn = angle_between(t.dirs[i], t.dirs[i + 1]);
    if (m.connectors[i] == Connector::Perp) {
      if (t.joints[i] != JointKind::Line)
        return "connector " + std::to_string(i + 1) +
               ": sharp joint required, target joint is blended";
      if (turn < tol)
        return "connector " + std::to_string(i + 1) +
               ": sharp joint required, target continues straight";
    } else {
      if (t.joints[i] != JointKind::Arc)
        return "connector " + std::to_string(i + 1) +
               ": blended joint required, target joint is sharp";
    }
  }
  return std::nullopt;
}

std::vector<DirectionConstraint> constraints_of(const IconicModel& m,
                                                const LocalTarget& t) {
  std::vector<DirectionConstraint> cs;
  for (std::size_t i = 0; i < m.traj.size(); ++i)
    cs.push_back({m.traj[i].dir.normalized(), t.dirs[i]});
  return cs;
}

double fit_scale(const IconicModel& m, const LocalTarget& t,
                 const EmbedOptions& opts) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < m.traj.size(); ++i) {
    double a = m.traj[i].dir.norm();
    num += a * t.lens[i];
    den += a * a;
  }
  double k = den > 0.0 ? num / den : 1.0;
  return std::clamp(k, opts.scale_min, opts.scale_max);
}

// Witness scale from a geometric grid: the exhaustive oracle never solves
// for k in closed form.
double grid_scale(const IconicModel& m, const LocalTarget& t,
                  const EmbedOptions& opts) {
  constexpr int kGridPoints = 48;
  double best_k = opts.scale_min;
  double best_cost = std::numeric_limits<double>::infinity();
  for (int g = 0; g < kGridPoints; ++g) {
    double k = opts.scale_min *
               std::pow(opts.scale_max / opts.scale_min,
                        static_cast<double>(g) / (kGridPoints - 1));
    double cost = 0.0;
    for (std::size_t i = 0; i < m.traj.size(); ++i) {
      double d = k * m.traj[i].dir.norm() - t.lens[i];
      cost += d * d;
    }
    if (cost + 1e-15 < best_cost ||
        (std::abs(cost - best_cost) <= 1e-15 &&
         std::abs(k - 1.0) < std::abs(best_k - 1.0))) {
      best_cost = cost;
      best_k = k;
    }
  }
  return best_k;
}

EmbeddingResult finish(const IconicModel& m, const LocalTarget& t,
                       const EmbedOptions& opts, RotationAxis axis,
                       double theta, std::optional<double> k_override = {}) {
  EmbeddingResult r;
  r.success = true;
  double k = k_override ? *k_override : fit_scale(m, t, opts);
  r.witness = Transform{k, axis, theta};
  for (std::size_t i = 0; i < m.traj.size(); ++i) {
    Vec3 rotated = rotate(m.traj[i].dir.normalized(), axis, theta);
    SegmentResidual res;
    res.angle = angle_between(rotated, t.dirs[i]);
    res.length = k * m.traj[i].dir.norm() - t.lens[i];
    r.residuals.push_back(res);
  }
  return r;
}

EmbeddingResult fail(const IconicModel& m, const LocalTarget& t,
                     const std::string& reason) {
  EmbeddingResult r;
  r.reason = reason;
  if (m.traj.size() == t.dirs.size()) {
    for (std::size_t i = 0; i < m.traj.size(); ++i) {
      SegmentResidual res;
      res.angle = angle_between(m.traj[i].dir, t.dirs[i]);
      res.length = m.traj[i].dir.norm() - t.lens[i];
      r.residuals.push_back(res);
    }
  }
  return r;
}

bool zero_rotation_fits(const std::vector<DirectionConstraint>& cs,
                        double tol) {
  for (const DirectionConstraint& dc : cs)
    if (angle_between(dc.from, dc.to) > tol) return false;
  return true;
}

EmbeddingResult embed_local(const IconicModel& m, const LocalTarget& t,
                            const EmbedOptions& opts, bool exhaustive) {
  opts.validate();
  if (m.traj.empty())
    throw error(errc::empty_trajectory, "cannot embed an empty trajectory");
  if (m.connectors.size() != m.traj.size() - 1)
    throw error(errc::invalid_argument,
                "model has " + std::to_string(m.connectors.size()) +
                    " connectors for " + std::to_string(m.traj.size()) +
                    " atoms");
  if (auto reason = structural_mismatch(m, t, opts.angle_tolerance))
    return fail(m, t, *reason);

  std::vector<DirectionConstraint> cs = constraints_of(m, t);
  double tol = opts.angle_tolerance;

  std::set<RotationAxis> axes = allowed_rotation_axes(m);
  if (axes.empty()) {
    // Perspectival: orientationally faithful, zero rotation only.
    if (zero_rotation_fits(cs, tol))
      return finish(m, t, opts, RotationAxis::Z, 0.0);
    return fail(m, t, "direction mismatch under fixed perspective");
  }

  EmbeddingResult best;
  for (RotationAxis axis : axes) {
    Vec3 u = axis == RotationAxis::X   ? Vec3{1, 0, 0}
             : axis == RotationAxis::Y ? Vec3{0, 1, 0}
                                       : Vec3{0, 0, 1};
    std::optional<double> theta;
    if (exhaustive) {
      double best_res = std::numeric_limits<double>::infinity();
      double best_theta = 0.0;
      bool found = false;
      for (int j = 0; j < opts.rotation_samples; ++j) {
        double th = 2.0 * M_PI * j / opts.rotation_samples;
        bool ok = true;
        for (const DirectionConstraint& dc : cs) {
          Vec3 rotated = rotate(dc.from, axis, th);
          if (angle_between(rotated, dc.to) > tol) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        double res = detail::total_residual(cs, u, th);
        double wrapped = std::abs(detail::wrap_angle(th));
        double best_wrapped = std::abs(detail::wrap_angle(best_theta));
        if (!found || res + 1e-12 < best_res ||
            (std::abs(res - best_res) <= 1e-12 && wrapped < best_wrapped)) {
          found = true;
          best_res = res;
          best_theta = th;
        }
      }
      if (found) theta = detail::wrap_angle(best_theta);
    } else {
      theta = detail::best_rotation(cs, u, tol, opts.rotation_samples);
    }
    if (!theta) continue;
    EmbeddingResult candidate =
        exhaustive ? finish(m, t, opts, axis, *theta, grid_scale(m, t, opts))
                   : finish(m, t, opts, axis, *theta);
    if (!best.success) {
      best = candidate;
    }
  }
  if (best.success) return best;
  return fail(m, t, "no admissible rotation aligns the trajectory");
}

}  // namespace

EmbeddingResult embed(const IconicModel& m, const VecSpace& target,
                      const EmbedOptions& opts) {
  return embed_local(m, localize(target.primary_path(), target.frame), opts,
                     /*exhaustive=*/false);
}

EmbeddingResult embed(const IconicModel& m, const Path3& target_local,
                      const EmbedOptions& opts) {
  return embed_local(m, localize(target_local, Frame{}), opts,
                     /*exhaustive=*/false);
}

EmbeddingResult brute_force_embed(const IconicModel& m, const VecSpace& target,
                                  const EmbedOptions& opts) {
  return embed_local(m, localize(target.primary_path(), target.frame), opts,
                     /*exhaustive=*/true);
}

EmbeddingResult brute_force_embed(const IconicModel& m,
                                  const Path3& target_local,
                                  const EmbedOptions& opts) {
  return embed_local(m, localize(target_local, Frame{}), opts,
                     /*exhaustive=*/true);
}

}  // namespace gesem
