#ifndef RBB_SCALARIZE_HPP
#define RBB_SCALARIZE_HPP

#include "rbb/problems.hpp"

#include <Eigen/Dense>

#include <stdexcept>
#include <vector>

namespace rbb {

/// Reference point (aspiration levels) with strictly positive weights.
class Preference {
 public:
  Preference(Vector reference, Vector weights);

  /// Uniform weights 1/m.
  static Preference uniform(Vector reference);

  const Vector& reference() const { return reference_; }
  const Vector& weights() const { return weights_; }
  Eigen::Index size() const { return reference_.size(); }

 private:
  Vector reference_;
  Vector weights_;
};

struct ScalarizerConfig {
  double rho = 1e-6;
  bool normalize = false;
  Vector ideal;
  Vector nadir;

  /// Throws std::domain_error on a nonpositive rho or, when normalizing,
  /// on nadir[i] <= ideal[i].
  void validate(Eigen::Index m) const;
};

/// Smallest allowed nadir-ideal spread when building a normalization snapshot.
inline constexpr double kMinScale = 1e-12;

/// Augmented weighted achievement function over an objective vector with the
/// weights dividing each deviation; optionally normalized by nadir - ideal.
template <typename Derived>
double asf_vector(const Eigen::MatrixBase<Derived>& z, const Preference& pref, const ScalarizerConfig& cfg) {
  if (z.size() != pref.size()) throw std::invalid_argument("asf_vector: arity mismatch");
  Vector dev = (z.derived().template cast<double>() - pref.reference()).cwiseQuotient(pref.weights());
  if (cfg.normalize) {
    cfg.validate(pref.size());
    dev = dev.cwiseQuotient(cfg.nadir - cfg.ideal);
  }
  return dev.maxCoeff() + cfg.rho * dev.sum();
}

/// Same function with the weights multiplying each deviation, evaluated on
/// an already computed image F(x).
template <typename Derived>
double weighted_achievement(const Eigen::MatrixBase<Derived>& fx, const Preference& pref, double rho) {
  if (fx.size() != pref.size()) throw std::invalid_argument("weighted_achievement: arity mismatch");
  const Vector dev = (fx.derived().template cast<double>() - pref.reference()).cwiseProduct(pref.weights());
  return dev.maxCoeff() + rho * dev.sum();
}

/// Achievement of a decision vector: weights multiply, no normalization.
double asf_point(const Vector& x, const Problem& prob, const Preference& pref, const ScalarizerConfig& cfg);

/// Minimum of asf_vector over a set of objective vectors (+inf if empty).
double min_asf(const std::vector<Vector>& zs, const Preference& pref, const ScalarizerConfig& cfg);

}  // namespace rbb

#endif  // RBB_SCALARIZE_HPP
