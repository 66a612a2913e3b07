#include "rbb/discard.hpp"

#include "rbb/pareto.hpp"

namespace rbb {

std::string_view to_string(DiscardReason r) {
  switch (r) {
    case DiscardReason::kept:
      return "kept";
    case DiscardReason::dominated:
      return "dominated";
    case DiscardReason::asf_all_refs:
      return "asf_all_refs";
    case DiscardReason::infeasible:
      return "infeasible";
  }
  return "?";
}

bool dominance_discard(const Vector& l, const std::vector<Vector>& upper_set) {
  for (const Vector& u : upper_set)
    if (dominates(u, l)) return true;
  return false;
}

bool asf_discard(const Vector& l, const std::vector<Vector>& upper_set, const Preference& pref, double sigma,
                 const ScalarizerConfig& cfg) {
  const double threshold = asf_vector(l, pref, cfg) - sigma;
  for (const Vector& u : upper_set)
    if (asf_vector(u, pref, cfg) <= threshold) return true;
  return false;
}

namespace {
DiscardDecision decide(std::vector<int> flags, bool dominated) {
  DiscardDecision d;
  const bool all_refs = !flags.empty() && std::all_of(flags.begin(), flags.end(), [](int f) { return f == 1; });
  d.per_ref_flags = std::move(flags);
  if (all_refs) {
    d.discard = true;
    d.reason = DiscardReason::asf_all_refs;
  } else if (dominated) {
    d.discard = true;
    d.reason = DiscardReason::dominated;
  }
  return d;
}
}  // namespace

DiscardDecision dt(const BoundedBox& b, const std::vector<Vector>& upper_set, const std::vector<Preference>& prefs,
                   double sigma, const ScalarizerConfig& cfg) {
  std::vector<int> flags;
  flags.reserve(prefs.size());
  for (const Preference& pref : prefs) flags.push_back(asf_discard(b.lower, upper_set, pref, sigma, cfg) ? 1 : 0);
  return decide(std::move(flags), dominance_discard(b.lower, upper_set));
}

Feasibility feasibility_test(const Problem& prob, const BoxXd& b) {
  if (prob.p == 0) return Feasibility::feasible;
  bool all_feasible = true;
  for (const Interval& g : constraint_enclosures(prob, b)) {
    if (g.hi() < 0.0) return Feasibility::infeasible;
    if (!(g.lo() >= 0.0)) all_feasible = false;
  }
  return all_feasible ? Feasibility::feasible : Feasibility::undetermined;
}

Discarder::Discarder(const std::vector<Vector>& upper_set, const std::vector<Preference>& prefs, double sigma,
                     ScalarizerConfig cfg)
    : upper_(upper_set), prefs_(prefs), sigma_(sigma), cfg_(std::move(cfg)) {
  best_.reserve(prefs.size());
  for (const Preference& pref : prefs) best_.push_back(min_asf(upper_set, pref, cfg_));
}

DiscardDecision Discarder::operator()(const BoundedBox& b) const {
  std::vector<int> flags;
  flags.reserve(prefs_.size());
  for (std::size_t r = 0; r < prefs_.size(); ++r)
    flags.push_back(best_[r] <= asf_vector(b.lower, prefs_[r], cfg_) - sigma_ ? 1 : 0);
  const bool all_refs = !flags.empty() && std::all_of(flags.begin(), flags.end(), [](int f) { return f == 1; });
  return decide(std::move(flags), !all_refs && dominance_discard(b.lower, upper_));
}

}  // namespace rbb
