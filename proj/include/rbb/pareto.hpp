#ifndef RBB_PARETO_HPP
#define RBB_PARETO_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

namespace rbb {

/// a <= b componentwise with a != b.
template <typename DerivedA, typename DerivedB>
bool dominates(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  bool strict = false;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
    if (a[i] < b[i]) strict = true;
  }
  return strict;
}

/// a <= b componentwise.
template <typename DerivedA, typename DerivedB>
bool weakly_dominates(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  return (a.array() <= b.array()).all();
}

/// Indices of the points not dominated by any other point, in input order.
/// Duplicates do not dominate each other, so all copies are kept.
template <typename VectorT>
std::vector<std::size_t> nondominated_indices(const std::vector<VectorT>& pts) {
  std::vector<std::size_t> order(pts.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  // A point can only be dominated by one that precedes it lexicographically.
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(pts[a].begin(), pts[a].end(), pts[b].begin(), pts[b].end());
  });
  std::vector<std::size_t> front;
  for (std::size_t idx : order) {
    bool dominated = false;
    for (std::size_t f : front) {
      if (dominates(pts[f], pts[idx])) {
        dominated = true;
        break;
      }
    }
    if (!dominated) front.push_back(idx);
  }
  std::sort(front.begin(), front.end());
  return front;
}

template <typename VectorT>
bool mutually_nondominated(const std::vector<VectorT>& pts) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (i != j && dominates(pts[i], pts[j])) return false;
  return true;
}

}  // namespace rbb

#endif  // RBB_PARETO_HPP
