#include "rotation_search.hpp"

#include <algorithm>

namespace gesem::detail {

namespace {

constexpr double kTau = 2.0 * M_PI;

double mod_tau(double x) {
  double m = std::fmod(x, kTau);
  if (m < 0.0) m += kTau;
  return m;
}

}  // namespace

double wrap_angle(double theta) {
  double m = mod_tau(theta);
  return m > M_PI ? m - kTau : m;
}

ArcSet ArcSet::full() { return ArcSet{{{0.0, kTau}}}; }

void ArcSet::intersect(double mid, double half_width) {
  if (half_width >= M_PI - 1e-15) return;  // no restriction
  double lo = mod_tau(mid - half_width);
  double hi = lo + 2.0 * half_width;

  // The constraint arc, split into non-wrapping pieces.
  std::vector<std::pair<double, double>> pieces;
  if (hi <= kTau) {
    pieces.emplace_back(lo, hi);
  } else {
    pieces.emplace_back(lo, kTau);
    pieces.emplace_back(0.0, hi - kTau);
  }

  std::vector<std::pair<double, double>> result;
  for (const auto& [alo, ahi] : arcs) {
    for (const auto& [plo, phi] : pieces) {
      double nlo = std::max(alo, plo);
      double nhi = std::min(ahi, phi);
      if (nlo < nhi) result.emplace_back(nlo, nhi);
    }
  }
  std::sort(result.begin(), result.end());
  arcs = std::move(result);
}

CosineProfile cosine_profile(const DirectionConstraint& dc, const Vec3& axis) {
  double ua = axis.dot(dc.from);
  double ut = axis.dot(dc.to);
  CosineProfile p;
  p.a = dc.from.dot(dc.to) - ua * ut;
  p.b = axis.cross(dc.from).dot(dc.to);
  p.c = ua * ut;
  return p;
}

ArcSet feasible_rotations(const std::vector<DirectionConstraint>& constraints,
                          const Vec3& axis, double tol) {
  ArcSet set = ArcSet::full();
  double threshold = std::cos(tol);
  for (const DirectionConstraint& dc : constraints) {
    CosineProfile p = cosine_profile(dc, axis);
    double r0 = std::hypot(p.a, p.b);
    if (r0 < 1e-15) {
      if (p.c < threshold) return ArcSet{};  // constant and unsatisfiable
      continue;
    }
    double q = (threshold - p.c) / r0;
    if (q > 1.0) return ArcSet{};
    if (q < -1.0) continue;  // satisfied for every angle
    double phi = std::atan2(p.b, p.a);
    set.intersect(phi, std::acos(q));
    if (set.empty()) return set;
  }
  return set;
}

double total_residual(const std::vector<DirectionConstraint>& constraints,
                      const Vec3& axis, double theta) {
  double sum = 0.0;
  for (const DirectionConstraint& dc : constraints) {
    double c = std::clamp(cosine_profile(dc, axis).value(theta), -1.0, 1.0);
    sum += std::acos(c);
  }
  return sum;
}

std::optional<double> best_rotation(
    const std::vector<DirectionConstraint>& constraints, const Vec3& axis,
    double tol, int samples) {
  ArcSet feasible = feasible_rotations(constraints, axis, tol);
  if (feasible.empty()) return std::nullopt;

  auto better = [&](double lhs_res, double lhs_theta, double rhs_res,
                    double rhs_theta) {
    if (lhs_res + 1e-12 < rhs_res) return true;
    if (rhs_res + 1e-12 < lhs_res) return false;
    return std::abs(wrap_angle(lhs_theta)) <
           std::abs(wrap_angle(rhs_theta)) - 1e-15;
  };

  double best_theta = 0.0;
  double best_res = std::numeric_limits<double>::infinity();
  bool found = false;
  for (const auto& [lo, hi] : feasible.arcs) {
    double span = hi - lo;
    int steps = std::max(8, static_cast<int>(std::ceil(samples * span / kTau)));
    double local_best = lo;
    double local_res = total_residual(constraints, axis, lo);
    for (int i = 1; i <= steps; ++i) {
      double theta = lo + span * i / steps;
      double r = total_residual(constraints, axis, theta);
      if (better(r, theta, local_res, local_best)) {
        local_res = r;
        local_best = theta;
      }
    }
    // Refine within one step around the best sample.
    double step = span / steps;
    double a = std::max(lo, local_best - step);
    double b = std::min(hi, local_best + step);
    for (int iter = 0; iter < 80; ++iter) {
      double m1 = a + (b - a) / 3.0;
      double m2 = b - (b - a) / 3.0;
      if (total_residual(constraints, axis, m1) <=
          total_residual(constraints, axis, m2))
        b = m2;
      else
        a = m1;
    }
    double mid = 0.5 * (a + b);
    double mid_res = total_residual(constraints, axis, mid);
    if (better(mid_res, mid, local_res, local_best)) {
      local_res = mid_res;
      local_best = mid;
    }
    // Zero rotation wins ties; test it explicitly when feasible.
    for (double zero : {0.0, kTau}) {
      if (zero >= lo && zero <= hi) {
        double r = total_residual(constraints, axis, zero);
        if (better(r, 0.0, local_res, local_best)) {
          local_res = r;
          local_best = 0.0;
        }
      }
    }
    if (!found || better(local_res, local_best, best_res, best_theta)) {
      best_res = local_res;
      best_theta = local_best;
      found = true;
    }
  }
  if (!found) return std::nullopt;
  return wrap_angle(best_theta);
}

}  // namespace gesem::detail
