#ifndef RBB_DISCARD_HPP
#define RBB_DISCARD_HPP

#include "rbb/bounds.hpp"
#include "rbb/problems.hpp"
#include "rbb/scalarize.hpp"

#include <string_view>
#include <vector>

namespace rbb {

enum class DiscardReason { kept, dominated, asf_all_refs, infeasible };

std::string_view to_string(DiscardReason r);

struct DiscardDecision {
  bool discard = false;
  DiscardReason reason = DiscardReason::kept;
  std::vector<int> per_ref_flags;  // one 0/1 flag per preference
};

/// True iff some u in upper_set dominates l.
bool dominance_discard(const Vector& l, const std::vector<Vector>& upper_set);

/// True iff some u in upper_set has asf(u) <= asf(l) - sigma.
bool asf_discard(const Vector& l, const std::vector<Vector>& upper_set, const Preference& pref, double sigma,
                 const ScalarizerConfig& cfg);

/// Multi-reference discarding test. The box goes when every preference's
/// achievement condition fires or when its lower bound is dominated.
DiscardDecision dt(const BoundedBox& b, const std::vector<Vector>& upper_set, const std::vector<Preference>& prefs,
                   double sigma, const ScalarizerConfig& cfg);

enum class Feasibility { infeasible, feasible, undetermined };

/// Interval feasibility of a box against g_j(x) >= 0.
Feasibility feasibility_test(const Problem& prob, const BoxXd& b);

/// The same test as dt() against a frozen upper set, with the per-preference
/// minimum achievement precomputed so each box costs O(|prefs| + |upper|).
class Discarder {
 public:
  Discarder(const std::vector<Vector>& upper_set, const std::vector<Preference>& prefs, double sigma,
            ScalarizerConfig cfg);

  DiscardDecision operator()(const BoundedBox& b) const;

 private:
  const std::vector<Vector>& upper_;
  const std::vector<Preference>& prefs_;
  double sigma_;
  ScalarizerConfig cfg_;
  std::vector<double> best_;
};

}  // namespace rbb

#endif  // RBB_DISCARD_HPP
