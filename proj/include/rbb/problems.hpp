#ifndef RBB_PROBLEMS_HPP
#define RBB_PROBLEMS_HPP

#include "rbb/box.hpp"
#include "rbb/interval.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace rbb {

using Vector = Eigen::VectorXd;
using DualInterval = Dual<Interval>;

/// A box-constrained multiobjective problem: minimize F(x) subject to g_j(x) >= 0.
///
/// The point evaluators are always present. The enclosure evaluators are
/// present when the problem was built from a generic model (see make_problem)
/// and are absent for black-box problems, in which case the global Lipschitz
/// constants come from sampling and are flagged as unverified.
struct Problem {
  std::string name;
  Eigen::Index n = 0;
  Eigen::Index m = 0;
  Eigen::Index p = 0;
  BoxXd domain;
  Vector lipschitz;
  bool lipschitz_verified = false;

  std::function<Vector(const Vector&)> objectives;
  std::function<Vector(const Vector&)> constraints;

  std::function<std::vector<Interval>(std::span<const Interval>)> objectives_enclosure;
  std::function<std::vector<Interval>(std::span<const Interval>)> constraints_enclosure;
  std::function<std::vector<DualInterval>(std::span<const DualInterval>)> objectives_gradient_enclosure;

  bool has_enclosures() const { return static_cast<bool>(objectives_enclosure); }
};

/// Selects one objective or one constraint of a problem.
struct FunctionRef {
  enum class Kind { objective, constraint };
  Kind kind = Kind::objective;
  Eigen::Index index = 0;

  static FunctionRef objective(Eigen::Index i) { return {Kind::objective, i}; }
  static FunctionRef constraint(Eigen::Index j) { return {Kind::constraint, j}; }
};

/// Builds a problem from a model exposing
///   template <class T> std::vector<T> objectives(std::span<const T>) const;
///   template <class T> std::vector<T> constraints(std::span<const T>) const;
/// The templates are instantiated for double, Interval and Dual<Interval>, so
/// a model using an operation outside the supported set fails to compile.
template <typename Model>
Problem make_problem(std::string name, BoxXd domain, Eigen::Index m, Eigen::Index p, Model model);

/// Builds a black-box problem; Lipschitz constants are estimated by sampling.
Problem make_blackbox_problem(std::string name, BoxXd domain, Eigen::Index m, Eigen::Index p,
                              std::function<Vector(const Vector&)> objectives,
                              std::function<Vector(const Vector&)> constraints = {});

/// F(x). Throws std::out_of_range when x is outside the domain.
Vector evaluate(const Problem& prob, const Vector& x);

/// (g_1(x), ..., g_p(x)); feasible iff every entry is >= 0.
Vector evaluate_constraints(const Problem& prob, const Vector& x);

bool is_feasible(const Vector& g);

/// Sum of max(0, -g_j).
double constraint_violation(const Vector& g);

/// Natural interval extension of one function over a box.
Interval interval_extension(const Problem& prob, FunctionRef which, const BoxXd& b);

/// All objective enclosures over b.
std::vector<Interval> objective_enclosures(const Problem& prob, const BoxXd& b);
std::vector<Interval> constraint_enclosures(const Problem& prob, const BoxXd& b);

/// Per-objective Lipschitz constants valid on b: the Euclidean norm of the
/// magnitude of the interval gradient enclosure. Falls back to the global
/// constants for black-box problems. Entries may be +inf.
Vector box_lipschitz(const Problem& prob, const BoxXd& b);

/// max |f_i(x)-f_i(y)| / |x-y| over random pairs, inflated by `inflation`.
Vector sampled_lipschitz(const Problem& prob, int pairs = 100000, double inflation = 1.2,
                         std::uint64_t seed = 0x5eed);

/// Built-in test problems: zdt1, zdt2, zdt3, dtlz2, vnt, welded_beam.
Problem builtin(const std::string& name, Eigen::Index n, Eigen::Index m);

/// Default (n, m) for a built-in family.
std::pair<Eigen::Index, Eigen::Index> builtin_default_shape(const std::string& name);

std::vector<std::string> builtin_names();

// ---------------------------------------------------------------------------

namespace detail {
void finalize_lipschitz(Problem& prob);
}

template <typename Model>
Problem make_problem(std::string name, BoxXd domain, Eigen::Index m, Eigen::Index p, Model model) {
  Problem prob;
  prob.name = std::move(name);
  prob.n = domain.dim();
  prob.m = m;
  prob.p = p;
  prob.domain = std::move(domain);

  prob.objectives = [model, m](const Vector& x) {
    const std::vector<double> f = model.template objectives<double>(std::span<const double>(x.data(), x.size()));
    if (static_cast<Eigen::Index>(f.size()) != m) throw std::logic_error("model returned wrong objective count");
    return Vector(Eigen::Map<const Vector>(f.data(), m));
  };
  prob.constraints = [model, p](const Vector& x) {
    const std::vector<double> g = model.template constraints<double>(std::span<const double>(x.data(), x.size()));
    if (static_cast<Eigen::Index>(g.size()) != p) throw std::logic_error("model returned wrong constraint count");
    return Vector(Eigen::Map<const Vector>(g.data(), p));
  };
  prob.objectives_enclosure = [model](std::span<const Interval> x) { return model.template objectives<Interval>(x); };
  prob.constraints_enclosure = [model](std::span<const Interval> x) {
    return model.template constraints<Interval>(x);
  };
  prob.objectives_gradient_enclosure = [model](std::span<const DualInterval> x) {
    return model.template objectives<DualInterval>(x);
  };
  detail::finalize_lipschitz(prob);
  return prob;
}

}  // namespace rbb

#endif  // RBB_PROBLEMS_HPP
