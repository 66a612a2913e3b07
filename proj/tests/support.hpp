#ifndef RBB_TESTS_SUPPORT_HPP
#define RBB_TESTS_SUPPORT_HPP

#include "rbb/problems.hpp"

#include <fstream>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace rbb::testing {

// F(x) = (x, 1 - x) on [0, 1].
struct LinearModel {
  template <class T>
  std::vector<T> objectives(std::span<const T> x) const {
    return {x[0], 1.0 - x[0]};
  }
  template <class T>
  std::vector<T> constraints(std::span<const T>) const {
    return {};
  }
};

// F(x) = (x, x) on [0, 1].
struct DiagonalModel {
  template <class T>
  std::vector<T> objectives(std::span<const T> x) const {
    return {x[0], x[0]};
  }
  template <class T>
  std::vector<T> constraints(std::span<const T>) const {
    return {};
  }
};

// f(x) = x^2 with the constraint g(x) = x1 - x2 on two variables.
struct SquareModel {
  template <class T>
  std::vector<T> objectives(std::span<const T> x) const {
    return {pown(x[0], 2)};
  }
  template <class T>
  std::vector<T> constraints(std::span<const T> x) const {
    return {x[0] - x[1]};
  }
};

inline Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

inline BoxXd unit_box(Eigen::Index n) { return {Vector::Zero(n), Vector::Ones(n)}; }

inline Problem linear_problem() { return make_problem("linear", unit_box(1), 2, 0, LinearModel{}); }
inline Problem diagonal_problem() { return make_problem("diagonal", unit_box(1), 2, 0, DiagonalModel{}); }
inline Problem square_problem(BoxXd domain) { return make_problem("square", std::move(domain), 1, 1, SquareModel{}); }

inline Vector uniform_in(const BoxXd& b, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Vector x(b.dim());
  for (Eigen::Index k = 0; k < b.dim(); ++k) x[k] = b.lower()[k] + u(rng) * (b.upper()[k] - b.lower()[k]);
  return x;
}

// Random sub-box of b with sides up to `scale` times the parent side.
inline BoxXd random_subbox(const BoxXd& b, std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Vector lo(b.dim()), hi(b.dim());
  for (Eigen::Index k = 0; k < b.dim(); ++k) {
    const double side = b.upper()[k] - b.lower()[k];
    const double len = scale * u(rng) * side;
    lo[k] = b.lower()[k] + u(rng) * (side - len);
    hi[k] = std::min(lo[k] + len, b.upper()[k]);
  }
  return {lo, hi};
}

inline std::string fixture_path(const std::string& name) { return std::string(RBB_FIXTURE_DIR) + "/" + name; }

}  // namespace rbb::testing

#endif  // RBB_TESTS_SUPPORT_HPP
