#ifndef RBB_BOX_HPP
#define RBB_BOX_HPP

#include <Eigen/Dense>

#include <stdexcept>
#include <utility>

namespace rbb {

/// Axis-aligned box [lower, upper] in R^n.
template <typename Scalar>
class Box {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Box() = default;

  Box(Vector lower, Vector upper) : lower_(std::move(lower)), upper_(std::move(upper)) {
    if (lower_.size() == 0 || lower_.size() != upper_.size())
      throw std::invalid_argument("Box: bounds must be nonempty and of equal length");
    for (Eigen::Index k = 0; k < lower_.size(); ++k)
      if (!(lower_[k] <= upper_[k])) throw std::invalid_argument("Box: lower bound exceeds upper bound");
  }

  Eigen::Index dim() const { return lower_.size(); }
  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }
  Vector sides() const { return upper_ - lower_; }

 private:
  Vector lower_;
  Vector upper_;
};

using BoxXd = Box<double>;

template <typename Scalar>
typename Box<Scalar>::Vector midpoint(const Box<Scalar>& b) {
  return (b.lower() + b.upper()) / Scalar(2);
}

/// Euclidean norm of the side-length vector.
template <typename Scalar>
Scalar width(const Box<Scalar>& b) {
  return b.sides().norm();
}

template <typename Scalar>
Scalar volume(const Box<Scalar>& b) {
  return b.sides().prod();
}

/// Index of the longest side; ties go to the lowest index.
template <typename Scalar>
Eigen::Index split_dimension(const Box<Scalar>& b) {
  Eigen::Index best = 0;
  const auto s = b.sides();
  for (Eigen::Index k = 1; k < s.size(); ++k)
    if (s[k] > s[best]) best = k;
  return best;
}

/// Halves the box across its longest side. Throws on a point box.
template <typename Scalar>
std::pair<Box<Scalar>, Box<Scalar>> bisect(const Box<Scalar>& b) {
  const Eigen::Index k = split_dimension(b);
  if (!(b.upper()[k] > b.lower()[k])) throw std::domain_error("bisect: degenerate box");
  const Scalar mid = (b.lower()[k] + b.upper()[k]) / Scalar(2);
  typename Box<Scalar>::Vector left_upper = b.upper();
  typename Box<Scalar>::Vector right_lower = b.lower();
  left_upper[k] = mid;
  right_lower[k] = mid;
  return {Box<Scalar>(b.lower(), std::move(left_upper)), Box<Scalar>(std::move(right_lower), b.upper())};
}

template <typename Scalar, typename Derived>
bool contains(const Box<Scalar>& b, const Eigen::MatrixBase<Derived>& x) {
  if (x.size() != b.dim()) return false;
  return (x.array() >= b.lower().array()).all() && (x.array() <= b.upper().array()).all();
}

/// Inner box contained in outer.
template <typename Scalar>
bool contains(const Box<Scalar>& outer, const Box<Scalar>& inner) {
  return contains(outer, inner.lower()) && contains(outer, inner.upper());
}

template <typename Scalar>
bool operator==(const Box<Scalar>& a, const Box<Scalar>& b) {
  return a.lower() == b.lower() && a.upper() == b.upper();
}

}  // namespace rbb

#endif  // RBB_BOX_HPP
