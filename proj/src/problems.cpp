#include "rbb/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace rbb {

namespace {

using std::sqrt;

constexpr double half_pi = std::numbers::pi / 2;

// ZDT family; `shape` selects the h(f1, g) term.
enum class ZdtShape { convex, concave, disconnected };

struct ZdtModel {
  ZdtShape shape;

  template <class T>
  std::vector<T> objectives(std::span<const T> x) const {
    using std::sin;
    using std::sqrt;
    const std::size_t n = x.size();
    T sum(0.0);
    for (std::size_t i = 1; i < n; ++i) sum = sum + x[i];
    const T g = 1.0 + 9.0 * sum / double(n - 1);
    const T f1 = x[0];
    T f2(0.0);
    switch (shape) {
      case ZdtShape::convex:
        f2 = g * (1.0 - sqrt(f1 / g));
        break;
      case ZdtShape::concave:
        f2 = g * (1.0 - pown(f1 / g, 2));
        break;
      case ZdtShape::disconnected:
        f2 = g * (1.0 - sqrt(f1 / g) - f1 / g * sin(10.0 * std::numbers::pi * f1));
        break;
    }
    return {f1, f2};
  }

  template <class T>
  std::vector<T> constraints(std::span<const T>) const {
    return {};
  }
};

struct Dtlz2Model {
  std::size_t m;

  template <class T>
  std::vector<T> objectives(std::span<const T> x) const {
    using std::cos;
    using std::sin;
    const std::size_t n = x.size();
    T g(0.0);
    for (std::size_t i = m - 1; i < n; ++i) g = g + pown(x[i] - 0.5, 2);
    const T radius = 1.0 + g;
    std::vector<T> f(m);
    for (std::size_t i = 0; i < m; ++i) {
      T v = radius;
      for (std::size_t j = 0; j + 1 < m - i; ++j) v = v * cos(x[j] * half_pi);
      if (i > 0) v = v * sin(x[m - 1 - i] * half_pi);
      f[i] = v;
    }
    return f;
  }

  template <class T>
  std::vector<T> constraints(std::span<const T>) const {
    return {};
  }
};

struct VntModel {
  template <class T>
  std::vector<T> objectives(std::span<const T> x) const {
    using std::exp;
    using std::sin;
    const T r2 = pown(x[0], 2) + pown(x[1], 2);
    const T f1 = 0.5 * r2 + sin(r2);
    const T f2 = pown(3.0 * x[0] - 2.0 * x[1] + 4.0, 2) / 8.0 + pown(x[0] - x[1] + 1.0, 2) / 27.0 + 15.0;
    const T f3 = 1.0 / (r2 + 1.0) - 1.1 * exp(-r2);
    return {f1, f2, f3};
  }

  template <class T>
  std::vector<T> constraints(std::span<const T>) const {
    return {};
  }
};

struct WeldedBeamModel {
  template <class T>
  std::vector<T> objectives(std::span<const T> x) const {
    const T f1 = 1.10471 * pown(x[0], 2) * x[2] + 0.04811 * x[1] * x[3] * (14.0 + x[2]);
    const T f2 = 2.1592 / (x[1] * pown(x[3], 3));
    return {f1, f2};
  }

  template <class T>
  std::vector<T> constraints(std::span<const T> x) const {
    using std::sqrt;
    const T& x1 = x[0];
    const T& x2 = x[1];
    const T& x3 = x[2];
    const T& x4 = x[3];
    const T lever = sqrt(0.25 * (pown(x3, 2) + pown(x1 + x4, 2)));
    const T tau_p = 6000.0 / (std::numbers::sqrt2 * x1 * x3);
    const T tau_pp =
        6000.0 * (14.0 + 0.5 * x3) * lever / (1.414 * x1 * x3 * (pown(x3, 2) / 12.0 + 0.25 * pown(x1 + x4, 2)));
    const T tau = sqrt(pown(tau_p, 2) + pown(tau_pp, 2) + x3 * tau_p * tau_pp / lever);
    const T sigma = 504000.0 / (x2 * pown(x4, 2));
    const T buckling = 64746.022 * (1.0 - 0.0282346 * x4) * x4 * pown(x2, 3);
    return {13600.0 - tau, 30000.0 - sigma, x2 - x1, buckling - 6000.0};
  }
};

void check_in_domain(const Problem& prob, const Vector& x) {
  if (x.size() != prob.n) throw std::out_of_range("evaluate: dimension mismatch");
  if (!contains(prob.domain, x)) throw std::out_of_range("evaluate: point outside the domain of " + prob.name);
}

std::vector<Interval> to_intervals(const BoxXd& b) {
  std::vector<Interval> out;
  out.reserve(b.dim());
  for (Eigen::Index k = 0; k < b.dim(); ++k) out.emplace_back(b.lower()[k], b.upper()[k]);
  return out;
}

}  // namespace

namespace detail {

void finalize_lipschitz(Problem& prob) {
  prob.lipschitz = box_lipschitz(prob, prob.domain);
  prob.lipschitz_verified = prob.lipschitz.allFinite();
  if (!prob.lipschitz_verified) {
    const Vector sampled = sampled_lipschitz(prob);
    for (Eigen::Index i = 0; i < prob.m; ++i)
      if (!std::isfinite(prob.lipschitz[i])) prob.lipschitz[i] = sampled[i];
  }
}

}  // namespace detail

Problem make_blackbox_problem(std::string name, BoxXd domain, Eigen::Index m, Eigen::Index p,
                              std::function<Vector(const Vector&)> objectives,
                              std::function<Vector(const Vector&)> constraints) {
  Problem prob;
  prob.name = std::move(name);
  prob.n = domain.dim();
  prob.m = m;
  prob.p = p;
  prob.domain = std::move(domain);
  prob.objectives = std::move(objectives);
  if (constraints)
    prob.constraints = std::move(constraints);
  else
    prob.constraints = [](const Vector&) { return Vector(0); };
  prob.lipschitz = sampled_lipschitz(prob);
  prob.lipschitz_verified = false;
  return prob;
}

Vector evaluate(const Problem& prob, const Vector& x) {
  check_in_domain(prob, x);
  return prob.objectives(x);
}

Vector evaluate_constraints(const Problem& prob, const Vector& x) {
  if (prob.p == 0) return Vector(0);
  check_in_domain(prob, x);
  return prob.constraints(x);
}

bool is_feasible(const Vector& g) { return (g.array() >= 0.0).all(); }

double constraint_violation(const Vector& g) { return (-g.array()).max(0.0).sum(); }

Interval interval_extension(const Problem& prob, FunctionRef which, const BoxXd& b) {
  if (which.kind == FunctionRef::Kind::objective) {
    if (which.index < 0 || which.index >= prob.m) throw std::out_of_range("interval_extension: bad objective index");
    return objective_enclosures(prob, b)[which.index];
  }
  if (which.index < 0 || which.index >= prob.p) throw std::out_of_range("interval_extension: bad constraint index");
  return constraint_enclosures(prob, b)[which.index];
}

std::vector<Interval> objective_enclosures(const Problem& prob, const BoxXd& b) {
  if (!prob.objectives_enclosure) throw std::logic_error("problem " + prob.name + " has no interval extension");
  const std::vector<Interval> x = to_intervals(b);
  return prob.objectives_enclosure(x);
}

std::vector<Interval> constraint_enclosures(const Problem& prob, const BoxXd& b) {
  if (prob.p == 0) return {};
  if (!prob.constraints_enclosure) throw std::logic_error("problem " + prob.name + " has no interval extension");
  const std::vector<Interval> x = to_intervals(b);
  return prob.constraints_enclosure(x);
}

Vector box_lipschitz(const Problem& prob, const BoxXd& b) {
  if (!prob.objectives_gradient_enclosure) return prob.lipschitz;
  const std::size_t n = static_cast<std::size_t>(b.dim());
  std::vector<DualInterval> x;
  x.reserve(n);
  for (std::size_t k = 0; k < n; ++k)
    x.push_back(DualInterval::variable(Interval(b.lower()[k], b.upper()[k]), k, n));
  const std::vector<DualInterval> f = prob.objectives_gradient_enclosure(x);
  Vector L(prob.m);
  for (Eigen::Index i = 0; i < prob.m; ++i) {
    const auto& grad = f[i].grad;
    double sq = 0.0;
    for (const Interval& gk : grad) sq += gk.mag() * gk.mag();
    // Round the norm up so the constant stays an upper bound.
    L[i] = std::isfinite(sq) ? std::nextafter(std::sqrt(sq), HUGE_VAL) : HUGE_VAL;
  }
  return L;
}

Vector sampled_lipschitz(const Problem& prob, int pairs, double inflation, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Vector lo = prob.domain.lower();
  const Vector side = prob.domain.sides();
  auto draw = [&] {
    Vector x(prob.n);
    for (Eigen::Index k = 0; k < prob.n; ++k) x[k] = lo[k] + unit(rng) * side[k];
    return x;
  };
  Vector best = Vector::Zero(prob.m);
  for (int t = 0; t < pairs; ++t) {
    const Vector x = draw(), y = draw();
    const double dist = (x - y).norm();
    if (dist <= 0.0) continue;
    const Vector diff = (prob.objectives(x) - prob.objectives(y)).cwiseAbs() / dist;
    best = best.cwiseMax(diff);
  }
  return inflation * best.cwiseMax(Vector::Constant(prob.m, 1e-12));
}

std::vector<std::string> builtin_names() { return {"zdt1", "zdt2", "zdt3", "dtlz2", "vnt", "welded_beam"}; }

std::pair<Eigen::Index, Eigen::Index> builtin_default_shape(const std::string& name) {
  if (name == "zdt1" || name == "zdt2") return {10, 2};
  if (name == "zdt3") return {5, 2};
  if (name == "dtlz2") return {7, 3};
  if (name == "vnt") return {2, 3};
  if (name == "welded_beam") return {4, 2};
  throw std::invalid_argument("unknown problem '" + name + "'");
}

Problem builtin(const std::string& name, Eigen::Index n, Eigen::Index m) {
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("builtin(" + name + ", n=" + std::to_string(n) + ", m=" + std::to_string(m) +
                                "): " + why);
  };
  if (name == "zdt1" || name == "zdt2" || name == "zdt3") {
    if (m != 2) fail("ZDT problems have two objectives");
    if (n < 2) fail("ZDT problems need at least two variables");
    Vector lo = Vector::Zero(n), hi = Vector::Ones(n);
    ZdtShape shape = ZdtShape::convex;
    if (name == "zdt1")
      lo[0] = 0.2;  // f1 restricted to [0.2, 1]
    else if (name == "zdt2")
      shape = ZdtShape::concave;
    else
      shape = ZdtShape::disconnected;
    return make_problem(name, BoxXd(lo, hi), 2, 0, ZdtModel{shape});
  }
  if (name == "dtlz2") {
    if (m < 2) fail("DTLZ2 needs at least two objectives");
    if (n < m) fail("DTLZ2 needs n >= m");
    return make_problem(name, BoxXd(Vector::Zero(n), Vector::Ones(n)), m, 0, Dtlz2Model{static_cast<std::size_t>(m)});
  }
  if (name == "vnt") {
    if (n != 2 || m != 3) fail("VNT is defined for n=2, m=3");
    return make_problem(name, BoxXd(Vector::Constant(2, -3.0), Vector::Constant(2, 3.0)), 3, 0, VntModel{});
  }
  if (name == "welded_beam") {
    if (n != 4 || m != 2) fail("welded beam is defined for n=4, m=2");
    Vector lo(4), hi(4);
    lo << 0.125, 0.125, 0.1, 0.1;
    hi << 5.0, 5.0, 10.0, 10.0;
    return make_problem(name, BoxXd(lo, hi), 2, 4, WeldedBeamModel{});
  }
  throw std::invalid_argument("unknown problem '" + name + "'");
}

}  // namespace rbb
