#ifndef RBB_ENGINE_HPP
#define RBB_ENGINE_HPP

#include "rbb/bounds.hpp"
#include "rbb/discard.hpp"
#include "rbb/problems.hpp"
#include "rbb/refine.hpp"
#include "rbb/scalarize.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace rbb {

struct RunConfig {
  std::vector<Preference> prefs;  // empty: dominance discarding only
  double sigma = 0.005;
  double epsilon = 1e-3;
  double delta = 1e-3;
  int m_min = 100;
  bool normalize = true;
  double rho = 1e-6;
  int max_iterations = 0;  // 0: derived from the problem, see default_iteration_cap()
  std::uint64_t seed = 1;
  int threads = 1;
  MoeaConfig moea;

  void validate(const Problem& prob) const;
};

/// A live box of the breadth-first collection.
struct Node {
  BoundedBox bounded;
  std::uint64_t path = 1;  // root is 1, children hash (parent, side)
  Feasibility feasibility = Feasibility::undetermined;
  bool exempt_only = false;  // kept only because it carries an objective minimum
};

struct DiscardCounts {
  std::size_t dominated = 0;
  std::size_t asf_all_refs = 0;
  std::size_t exempted = 0;
};

struct IterationRecord {
  int k = 0;
  std::size_t bisected = 0;     // boxes after bisection
  std::size_t infeasible = 0;   // removed by the interval feasibility test
  DiscardCounts first_sweep;
  DiscardCounts second_sweep;
  std::size_t boxes = 0;        // live boxes at the end of the iteration
  std::size_t refined = 0;      // boxes handed to the MOEA
  std::size_t preferred_lower = 0;
  std::size_t preferred_upper = 0;
  double omega = 0.0;
  double d = 0.0;
  Vector ideal;
  Vector nadir;
};

struct RunState {
  int k = 1;
  std::vector<Node> collection;
  std::vector<Vector> preferred_lower;
  std::vector<BoxXd> preferred_boxes;
  UpperArchive preferred;  // U^p with X^p, tagged by source box path
  BoundsTracker tracker;
  ScalarizerConfig scalarizer;
  Vector initial_ideal;
  Vector initial_nadir;
  double omega = 0.0;
  double d = 1e6;
  std::vector<std::string> warnings;
};

struct RunResult {
  std::vector<Vector> solutions;
  std::vector<Vector> objective_vectors;
  std::vector<int> ref_index;  // -1 when the run had no preferences
  std::vector<BoxXd> boxes;
  std::vector<Vector> preferred_lower;
  std::vector<Vector> preferred_upper;
  std::vector<Vector> preferred_solutions;
  int iterations = 0;
  bool converged = false;
  double d = 0.0;
  double omega = 0.0;
  Vector ideal;
  Vector nadir;
  std::vector<IterationRecord> history;
  std::vector<std::string> warnings;
};

using ProgressCallback = std::function<void(const IterationRecord&, const RunState&)>;

/// max over a in A of min over b in B of |a - b|. Throws on an empty set.
double directed_hausdorff(const std::vector<Vector>& a, const std::vector<Vector>& b);

/// Iteration count bound for a unit-box domain:
/// max{ n ceil(log2(sqrt(n)/eps)), n ceil(log2(sqrt(n) |L| / delta) - 1) }, floored at 0.
int min_iterations(int n, double epsilon, double delta, double lipschitz_norm);

/// Safety cap: ten times min_iterations() on unit-box domains with verified
/// constants, 500 otherwise.
int default_iteration_cap(const Problem& prob, const RunConfig& cfg);

/// Root state: the domain as the only box, d = 1e6.
RunState initial_state(const Problem& prob, const RunConfig& cfg);

/// One breadth-first iteration: bisect all, feasibility sweep, bound,
/// nondominated lower bounds, first discarding sweep, refinement, second
/// sweep, and the d_h(U^p, L^p) update. Throws std::runtime_error when the
/// collection becomes empty.
RunState iterate(RunState state, const Problem& prob, const RunConfig& cfg, IterationRecord* record = nullptr);

/// Runs until d <= epsilon and omega <= delta, or the iteration cap.
RunResult run(const Problem& prob, const RunConfig& cfg, const ProgressCallback& progress = {});

/// Builds the result (solution selection and attribution) from a state.
RunResult collect_result(const RunState& state, const Problem& prob, const RunConfig& cfg);

}  // namespace rbb

#endif  // RBB_ENGINE_HPP
