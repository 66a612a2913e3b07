#ifndef RBB_REFINE_HPP
#define RBB_REFINE_HPP

#include "rbb/box.hpp"
#include "rbb/problems.hpp"
#include "rbb/scalarize.hpp"

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace rbb {

/// In-box MOEA/D-DE settings. Defaults: population 10, 20 generations.
struct MoeaConfig {
  int population = 10;
  int generations = 20;
  int neighborhood = 5;
  double de_scale = 0.5;
  double crossover_rate = 0.9;
  double mutation_eta = 20.0;
  std::uint64_t seed = 0;

  void validate() const;
};

struct RefineResult {
  std::vector<Vector> objectives;  // images of `solutions`
  std::vector<Vector> solutions;   // all inside the box
  bool feasible = true;            // false: a single least-violating point
};

/// Small-budget MOEA/D-DE run restricted to the box b. The initial population
/// is the midpoint plus Latin-hypercube samples. Returns the mutually
/// nondominated feasible points of the final population and the midpoint.
/// The preferences are not used by the in-box search.
RefineResult refine_box(const Problem& prob, const BoxXd& b, const std::vector<Preference>& prefs,
                        const MoeaConfig& cfg);

/// Nondominated archive of objective vectors with index-aligned decision
/// vectors and an arbitrary tag per entry.
class UpperArchive {
 public:
  /// Inserts u unless it is dominated by or equal to a member; members
  /// dominated by u are removed. Returns whether u was inserted.
  bool insert(const Vector& u, const Vector& x, std::size_t tag = 0);

  const std::vector<Vector>& objectives() const { return u_; }
  const std::vector<Vector>& solutions() const { return x_; }
  const std::vector<std::size_t>& tags() const { return tags_; }
  std::size_t size() const { return u_.size(); }
  bool empty() const { return u_.empty(); }
  void clear();

 private:
  std::vector<Vector> u_;
  std::vector<Vector> x_;
  std::vector<std::size_t> tags_;
};

/// Merges (new_u, new_x) into the preferred upper set and its preimages.
std::pair<std::vector<Vector>, std::vector<Vector>> merge_upper(const std::vector<Vector>& u_pref,
                                                                const std::vector<Vector>& x_pref,
                                                                const std::vector<Vector>& new_u,
                                                                const std::vector<Vector>& new_x);

/// Deterministic stream seed for a box, from the run seed and the box's path id.
std::uint64_t box_seed(std::uint64_t run_seed, std::uint64_t path_id);

}  // namespace rbb

#endif  // RBB_REFINE_HPP
