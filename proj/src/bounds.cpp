#include "rbb/bounds.hpp"

#include <cmath>

namespace rbb {

Vector lower_bound(const Vector& f_mid, const Vector& lipschitz, double box_width) {
  if (box_width == 0.0) return f_mid;
  return f_mid - 0.5 * box_width * lipschitz;
}

Vector lower_bound(const Problem& prob, const BoxXd& b, const Vector& lipschitz) {
  return lower_bound(evaluate(prob, midpoint(b)), lipschitz, width(b));
}

std::pair<Vector, Vector> upper_bound(const Problem& prob, const BoxXd& b) {
  Vector mid = midpoint(b);
  Vector f = evaluate(prob, mid);
  return {std::move(f), std::move(mid)};
}

Vector bound_constants(const Problem& prob, const BoxXd& b, const Vector& f_mid) {
  Vector L = box_lipschitz(prob, b);
  const double w = width(b);
  if (!prob.has_enclosures() || w == 0.0) return L;
  const std::vector<Interval> range = objective_enclosures(prob, b);
  for (Eigen::Index i = 0; i < prob.m; ++i) {
    if (!std::isfinite(range[i].lo())) continue;
    const double capped = std::nextafter(2.0 * (f_mid[i] - range[i].lo()) / w, HUGE_VAL);
    L[i] = std::min(L[i], std::max(capped, 0.0));
  }
  return L;
}

BoundedBox bound(const Problem& prob, const BoxXd& b) {
  BoundedBox bb;
  bb.box = b;
  auto [f_mid, mid] = upper_bound(prob, b);
  bb.constants = bound_constants(prob, b, f_mid);
  bb.lower = lower_bound(f_mid, bb.constants, width(b));
  bb.has_upper = prob.p == 0 || is_feasible(evaluate_constraints(prob, mid));
  bb.upper = std::move(f_mid);
  bb.upper_preimage = std::move(mid);
  return bb;
}

BoundsTracker BoundsTracker::empty(Eigen::Index m) {
  BoundsTracker t;
  t.ideal = Vector::Constant(m, HUGE_VAL);
  t.nadir = Vector::Constant(m, -HUGE_VAL);
  t.keeper_boxes.assign(static_cast<std::size_t>(m), npos);
  t.keeper_values = Vector::Constant(m, HUGE_VAL);
  return t;
}

BoundsTracker initial_tracker(const Problem& prob) {
  BoundsTracker t = BoundsTracker::empty(prob.m);
  if (!prob.has_enclosures()) return t;
  const std::vector<Interval> range = objective_enclosures(prob, prob.domain);
  for (Eigen::Index i = 0; i < prob.m; ++i) {
    t.ideal[i] = range[i].lo();
    t.nadir[i] = range[i].hi();
  }
  return t;
}

namespace {
bool better_keeper(double value, std::size_t id, double cur_value, std::size_t cur_id) {
  return value < cur_value || (value == cur_value && id < cur_id);
}
}  // namespace

BoundsTracker update_ideal(BoundsTracker t, const Vector& lower, std::size_t id) {
  for (Eigen::Index i = 0; i < t.ideal.size(); ++i) {
    t.ideal[i] = std::min(t.ideal[i], lower[i]);
    if (better_keeper(lower[i], id, t.keeper_values[i], t.keeper_boxes[i])) {
      t.keeper_values[i] = lower[i];
      t.keeper_boxes[i] = id;
    }
  }
  return t;
}

BoundsTracker update_tracker(BoundsTracker t, const BoundedBox& bb, std::size_t id) {
  t = update_ideal(std::move(t), bb.lower, id);
  if (bb.has_upper) t.nadir = t.nadir.cwiseMax(bb.upper);
  return t;
}

BoundsTracker update_nadir(BoundsTracker t, const Vector& upper) {
  t.nadir = t.nadir.cwiseMax(upper);
  return t;
}

BoundsTracker merge(const BoundsTracker& a, const BoundsTracker& b) {
  BoundsTracker t = a;
  t.ideal = a.ideal.cwiseMin(b.ideal);
  t.nadir = a.nadir.cwiseMax(b.nadir);
  for (Eigen::Index i = 0; i < t.ideal.size(); ++i) {
    if (better_keeper(b.keeper_values[i], b.keeper_boxes[i], t.keeper_values[i], t.keeper_boxes[i])) {
      t.keeper_values[i] = b.keeper_values[i];
      t.keeper_boxes[i] = b.keeper_boxes[i];
    }
  }
  return t;
}

}  // namespace rbb
