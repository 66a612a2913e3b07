#ifndef RBB_ORACLE_HPP
#define RBB_ORACLE_HPP

// Brute-force reference computations on regular grids, independent of the
// branch-and-bound path: grid Pareto fronts, epsilon-efficiency checks, the
// most preferred grid point, and front-relation residuals.

#include "rbb/box.hpp"
#include "rbb/problems.hpp"
#include "rbb/scalarize.hpp"

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace rbb::oracle {

inline constexpr double kMaxGridPoints = 1e7;

struct GridSpec {
  long points_per_dimension = 0;
  BoxXd domain;

  GridSpec(long points, BoxXd box);

  long total_points() const;
  Vector point(long flat_index) const;
  /// Euclidean diameter of one grid cell.
  double cell_diameter() const;

  /// 10001 points for n = 1, 1001 per axis for n = 2.
  static GridSpec default_for(const Problem& prob);
};

struct GridPoint {
  Vector x;
  Vector f;
};

/// Feasible grid images with preimages, filtered to the mutually
/// nondominated subset. Throws if every grid point is infeasible.
std::vector<GridPoint> grid_front(const Problem& prob, const GridSpec& g);

/// True iff no feasible grid point y has F(y) <= F(x) - epsilon e.
bool check_epsilon_efficient(const Problem& prob, const Vector& x, double epsilon, const GridSpec& g);

/// Precomputed feasible grid images for repeated checks.
class GridImages {
 public:
  GridImages(const Problem& prob, const GridSpec& g);
  bool epsilon_efficient(const Vector& fx, double epsilon) const;
  const std::vector<GridPoint>& front() const { return front_; }

 private:
  std::vector<GridPoint> front_;
};

/// Feasible grid point minimizing asf_point; ties go to the lexicographically
/// smallest decision vector.
std::pair<Vector, double> most_preferred(const Problem& prob, const Preference& pref, const ScalarizerConfig& cfg,
                                         const GridSpec& g);

enum class FrontRelation { zdt1, zdt2, dtlz2_sphere };

FrontRelation parse_relation(const std::string& name);

struct Residual {
  double max_abs = 0.0;      // max |relation residual|
  double min_sum_sq = 0.0;   // dtlz2_sphere only
  double max_sum_sq = 0.0;   // dtlz2_sphere only
};

Residual front_residual(const std::vector<Vector>& objective_vectors, FrontRelation relation);

/// Plain-text fixture: a header line of column names then one row per record,
/// values printed with 17 significant digits.
void write_fixture(std::ostream& os, const std::vector<std::string>& columns, const std::vector<Vector>& rows);
std::vector<Vector> read_fixture(std::istream& is, std::vector<std::string>* columns = nullptr);

}  // namespace rbb::oracle

#endif  // RBB_ORACLE_HPP
