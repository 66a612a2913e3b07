#include "rbb/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace rbb::oracle {

namespace {

// Local dominance predicate so the oracle shares no code with the solver.
bool grid_dominates(const Vector& a, const Vector& b) {
  bool strict = false;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
    if (a[i] < b[i]) strict = true;
  }
  return strict;
}

std::vector<GridPoint> feasible_images(const Problem& prob, const GridSpec& g) {
  std::vector<GridPoint> pts;
  const long total = g.total_points();
  pts.reserve(static_cast<std::size_t>(total));
  for (long idx = 0; idx < total; ++idx) {
    Vector x = g.point(idx);
    if (prob.p > 0 && (prob.constraints(x).array() < 0.0).any()) continue;
    Vector f = prob.objectives(x);
    pts.push_back({std::move(x), std::move(f)});
  }
  if (pts.empty()) throw std::runtime_error("grid_front: every grid point is infeasible");
  return pts;
}

std::vector<GridPoint> nondominated(std::vector<GridPoint> pts) {
  std::sort(pts.begin(), pts.end(), [](const GridPoint& a, const GridPoint& b) {
    return std::lexicographical_compare(a.f.begin(), a.f.end(), b.f.begin(), b.f.end());
  });
  std::vector<std::size_t> front;  // indices into pts, most recent dominator first
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < front.size(); ++j) {
      if (grid_dominates(pts[front[j]].f, pts[i].f)) {
        std::rotate(front.begin(), front.begin() + j, front.begin() + j + 1);
        dominated = true;
        break;
      }
    }
    if (!dominated) front.insert(front.begin(), i);
  }
  std::sort(front.begin(), front.end());
  std::vector<GridPoint> out;
  out.reserve(front.size());
  for (std::size_t i : front) out.push_back(std::move(pts[i]));
  return out;
}

}  // namespace

GridSpec::GridSpec(long points, BoxXd box) : points_per_dimension(points), domain(std::move(box)) {
  if (points_per_dimension < 2) throw std::invalid_argument("GridSpec: need at least 2 points per dimension");
  if (std::pow(double(points_per_dimension), double(domain.dim())) > kMaxGridPoints)
    throw std::invalid_argument("GridSpec: grid exceeds the 1e7 point cap");
}

long GridSpec::total_points() const {
  long total = 1;
  for (Eigen::Index k = 0; k < domain.dim(); ++k) total *= points_per_dimension;
  return total;
}

Vector GridSpec::point(long flat_index) const {
  const Eigen::Index n = domain.dim();
  Vector x(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const long i = flat_index % points_per_dimension;
    flat_index /= points_per_dimension;
    const double t = double(i) / double(points_per_dimension - 1);
    x[k] = i == points_per_dimension - 1 ? domain.upper()[k] : domain.lower()[k] + t * (domain.upper()[k] - domain.lower()[k]);
  }
  return x;
}

double GridSpec::cell_diameter() const { return domain.sides().norm() / double(points_per_dimension - 1); }

GridSpec GridSpec::default_for(const Problem& prob) {
  if (prob.n == 1) return {10001, prob.domain};
  if (prob.n == 2) return {1001, prob.domain};
  throw std::invalid_argument("GridSpec: oracle grids are limited to n <= 2");
}

std::vector<GridPoint> grid_front(const Problem& prob, const GridSpec& g) {
  return nondominated(feasible_images(prob, g));
}

GridImages::GridImages(const Problem& prob, const GridSpec& g) : front_(grid_front(prob, g)) {}

bool GridImages::epsilon_efficient(const Vector& fx, double epsilon) const {
  // Any grid point dominating the shifted target is weakly dominated by a
  // front member, which then dominates the target too.
  const Vector target = fx - Vector::Constant(fx.size(), epsilon);
  for (const GridPoint& p : front_)
    if (grid_dominates(p.f, target)) return false;
  return true;
}

bool check_epsilon_efficient(const Problem& prob, const Vector& x, double epsilon, const GridSpec& g) {
  if (std::isinf(epsilon) && epsilon > 0) return true;
  const Vector target = prob.objectives(x) - Vector::Constant(prob.m, epsilon);
  const long total = g.total_points();
  for (long idx = 0; idx < total; ++idx) {
    const Vector y = g.point(idx);
    if (prob.p > 0 && (prob.constraints(y).array() < 0.0).any()) continue;
    if (grid_dominates(prob.objectives(y), target)) return false;
  }
  return true;
}

std::pair<Vector, double> most_preferred(const Problem& prob, const Preference& pref, const ScalarizerConfig& cfg,
                                         const GridSpec& g) {
  Vector best_x;
  double best = std::numeric_limits<double>::infinity();
  const long total = g.total_points();
  for (long idx = 0; idx < total; ++idx) {
    Vector x = g.point(idx);
    if (prob.p > 0 && (prob.constraints(x).array() < 0.0).any()) continue;
    const Vector f = prob.objectives(x);
    const Vector dev = (f - pref.reference()).cwiseProduct(pref.weights());
    const double v = dev.maxCoeff() + cfg.rho * dev.sum();
    const bool tie_better = v == best && std::lexicographical_compare(x.begin(), x.end(), best_x.begin(), best_x.end());
    if (v < best || tie_better) {
      best = v;
      best_x = std::move(x);
    }
  }
  if (best_x.size() == 0) throw std::runtime_error("most_preferred: every grid point is infeasible");
  return {best_x, best};
}

FrontRelation parse_relation(const std::string& name) {
  if (name == "zdt1") return FrontRelation::zdt1;
  if (name == "zdt2") return FrontRelation::zdt2;
  if (name == "dtlz2_sphere" || name == "dtlz2") return FrontRelation::dtlz2_sphere;
  throw std::invalid_argument("unknown front relation '" + name + "'");
}

Residual front_residual(const std::vector<Vector>& objective_vectors, FrontRelation relation) {
  Residual r;
  r.min_sum_sq = std::numeric_limits<double>::infinity();
  r.max_sum_sq = -std::numeric_limits<double>::infinity();
  for (const Vector& f : objective_vectors) {
    double res = 0.0;
    switch (relation) {
      case FrontRelation::zdt1:
        if (f.size() != 2) throw std::invalid_argument("front_residual: zdt1 needs two objectives");
        res = f[1] - (1.0 - std::sqrt(f[0]));
        break;
      case FrontRelation::zdt2:
        if (f.size() != 2) throw std::invalid_argument("front_residual: zdt2 needs two objectives");
        res = f[1] - (1.0 - f[0] * f[0]);
        break;
      case FrontRelation::dtlz2_sphere: {
        const double s = f.squaredNorm();
        r.min_sum_sq = std::min(r.min_sum_sq, s);
        r.max_sum_sq = std::max(r.max_sum_sq, s);
        res = s - 1.0;
        break;
      }
    }
    r.max_abs = std::max(r.max_abs, std::fabs(res));
  }
  if (relation != FrontRelation::dtlz2_sphere || objective_vectors.empty()) r.min_sum_sq = r.max_sum_sq = 0.0;
  return r;
}

void write_fixture(std::ostream& os, const std::vector<std::string>& columns, const std::vector<Vector>& rows) {
  for (std::size_t c = 0; c < columns.size(); ++c) os << (c ? " " : "") << columns[c];
  os << '\n' << std::setprecision(17);
  for (const Vector& row : rows) {
    if (static_cast<std::size_t>(row.size()) != columns.size())
      throw std::invalid_argument("write_fixture: row width does not match the header");
    for (Eigen::Index c = 0; c < row.size(); ++c) os << (c ? " " : "") << row[c];
    os << '\n';
  }
}

std::vector<Vector> read_fixture(std::istream& is, std::vector<std::string>* columns) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("read_fixture: missing header");
  std::vector<std::string> names;
  {
    std::istringstream hs(line);
    for (std::string name; hs >> name;) names.push_back(name);
  }
  std::vector<Vector> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::vector<double> vals;
    for (double v; ls >> v;) vals.push_back(v);
    if (vals.size() != names.size()) throw std::runtime_error("read_fixture: ragged row");
    rows.push_back(Eigen::Map<const Vector>(vals.data(), static_cast<Eigen::Index>(vals.size())));
  }
  if (columns) *columns = std::move(names);
  return rows;
}

}  // namespace rbb::oracle
