#include "rbb/scalarize.hpp"

#include <limits>

namespace rbb {

Preference::Preference(Vector reference, Vector weights) : reference_(std::move(reference)), weights_(std::move(weights)) {
  if (reference_.size() == 0 || reference_.size() != weights_.size())
    throw std::invalid_argument("Preference: reference and weights must have equal nonzero length");
  if (!(weights_.array() > 0.0).all()) throw std::invalid_argument("Preference: weights must be strictly positive");
}

Preference Preference::uniform(Vector reference) {
  const Eigen::Index m = reference.size();
  if (m == 0) throw std::invalid_argument("Preference: empty reference point");
  return {std::move(reference), Vector::Constant(m, 1.0 / double(m))};
}

void ScalarizerConfig::validate(Eigen::Index m) const {
  if (!(rho > 0.0)) throw std::domain_error("ScalarizerConfig: rho must be positive");
  if (!normalize) return;
  if (ideal.size() != m || nadir.size() != m) throw std::domain_error("ScalarizerConfig: ideal/nadir not populated");
  for (Eigen::Index i = 0; i < m; ++i)
    if (!(nadir[i] > ideal[i])) throw std::domain_error("ScalarizerConfig: degenerate scale (nadir <= ideal)");
}

double asf_point(const Vector& x, const Problem& prob, const Preference& pref, const ScalarizerConfig& cfg) {
  return weighted_achievement(evaluate(prob, x), pref, cfg.rho);
}

double min_asf(const std::vector<Vector>& zs, const Preference& pref, const ScalarizerConfig& cfg) {
  double best = std::numeric_limits<double>::infinity();
  for (const Vector& z : zs) best = std::min(best, asf_vector(z, pref, cfg));
  return best;
}

}  // namespace rbb
