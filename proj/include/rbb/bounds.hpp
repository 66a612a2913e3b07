#ifndef RBB_BOUNDS_HPP
#define RBB_BOUNDS_HPP

#include "rbb/box.hpp"
#include "rbb/problems.hpp"

#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

namespace rbb {

/// A box with its componentwise lower bound l(B) and the image u(B) of a
/// point of the box. `has_upper` is false when the midpoint is infeasible;
/// such a box still carries a lower bound.
struct BoundedBox {
  BoxXd box;
  Vector lower;
  Vector upper;
  Vector upper_preimage;
  Vector constants;  // per-objective constants used for `lower`
  bool has_upper = true;
};

/// l_i = f_mid_i - (L_i / 2) * box_width
Vector lower_bound(const Vector& f_mid, const Vector& lipschitz, double box_width);

/// Lower bound at the box midpoint with the given constants.
Vector lower_bound(const Problem& prob, const BoxXd& b, const Vector& lipschitz);

/// (F(m(B)), m(B))
std::pair<Vector, Vector> upper_bound(const Problem& prob, const BoxXd& b);

/// Constants used for the bound on b: per-box Lipschitz constants, each
/// capped by the constant that reproduces the interval-extension minimum,
/// 2 (f_i(m) - lo_i) / w(B). Both keep the lower bound valid; the cap keeps
/// the bound finite where the gradient enclosure is unbounded.
Vector bound_constants(const Problem& prob, const BoxXd& b, const Vector& f_mid);

/// Full bounding step for one box.
BoundedBox bound(const Problem& prob, const BoxXd& b);

/// Running ideal/nadir estimates plus, per objective, the box carrying the
/// smallest lower bound.
struct BoundsTracker {
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  Vector ideal;
  Vector nadir;
  std::vector<std::size_t> keeper_boxes;
  Vector keeper_values;  // lower-bound value of each keeper

  static BoundsTracker empty(Eigen::Index m);
};

/// Tracker seeded from the natural interval extension over the domain.
BoundsTracker initial_tracker(const Problem& prob);

/// Folds one bounded box into the tracker. Keepers change only on a strictly
/// smaller value or an equal value carried by a smaller id.
BoundsTracker update_tracker(BoundsTracker t, const BoundedBox& bb, std::size_t id);

/// Folds a lower bound into the ideal and keepers only.
BoundsTracker update_ideal(BoundsTracker t, const Vector& lower, std::size_t id);

/// Folds an upper bound into the nadir only.
BoundsTracker update_nadir(BoundsTracker t, const Vector& upper);

/// Associative, commutative merge of two partial trackers.
BoundsTracker merge(const BoundsTracker& a, const BoundsTracker& b);

}  // namespace rbb

#endif  // RBB_BOUNDS_HPP
