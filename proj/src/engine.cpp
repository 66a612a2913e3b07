#include "rbb/engine.hpp"

#include "parallel.hpp"
#include "rbb/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_set>

namespace rbb {

void RunConfig::validate(const Problem& prob) const {
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
  if (m_min < 1) throw std::invalid_argument("m_min must be at least 1");
  if (!(rho > 0.0)) throw std::invalid_argument("rho must be positive");
  if (threads < 1) throw std::invalid_argument("threads must be at least 1");
  if (max_iterations < 0) throw std::invalid_argument("max_iterations must be nonnegative");
  for (const Preference& pref : prefs)
    if (pref.size() != prob.m) throw std::invalid_argument("reference point arity does not match the problem");
  moea.validate();
}

double directed_hausdorff(const std::vector<Vector>& a, const std::vector<Vector>& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("directed_hausdorff: empty set");
  double worst = 0.0;
  for (const Vector& x : a) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const Vector& y : b) {
      nearest = std::min(nearest, (x - y).squaredNorm());
      if (nearest <= worst) break;  // cannot raise the maximum
    }
    worst = std::max(worst, nearest);
  }
  return std::sqrt(worst);
}

int min_iterations(int n, double epsilon, double delta, double lipschitz_norm) {
  const double rn = std::sqrt(double(n));
  const double first = n * std::ceil(std::log2(rn / epsilon));
  const double second = n * std::ceil(std::log2(rn * lipschitz_norm / delta) - 1.0);
  return static_cast<int>(std::max({first, second, 0.0}));
}

int default_iteration_cap(const Problem& prob, const RunConfig& cfg) {
  const bool unit_box = (prob.domain.lower().array() == 0.0).all() && (prob.domain.upper().array() == 1.0).all();
  if (unit_box && prob.lipschitz_verified) {
    const int imin = min_iterations(static_cast<int>(prob.n), cfg.epsilon, cfg.delta, prob.lipschitz.norm());
    return std::max(10 * imin, 10);
  }
  return 500;
}

namespace {

std::uint64_t child_path(std::uint64_t parent, int side) {
  return box_seed(parent, side == 0 ? 0x6c65667400000000ULL : 0x7269676800000000ULL);
}

// Scalarizer snapshot from the tracker, with degenerate spreads widened.
ScalarizerConfig snapshot(const BoundsTracker& t, const RunState& s, const RunConfig& cfg,
                          std::vector<std::string>& warnings) {
  ScalarizerConfig sc;
  sc.rho = cfg.rho;
  sc.normalize = cfg.normalize;
  if (!cfg.normalize) return sc;
  const Eigen::Index m = t.ideal.size();
  sc.ideal = t.ideal;
  sc.nadir = t.nadir;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (!std::isfinite(sc.ideal[i])) sc.ideal[i] = s.scalarizer.ideal.size() ? s.scalarizer.ideal[i] : s.initial_ideal[i];
    if (!std::isfinite(sc.nadir[i])) sc.nadir[i] = s.scalarizer.nadir.size() ? s.scalarizer.nadir[i] : s.initial_nadir[i];
    if (!std::isfinite(sc.ideal[i]) || !std::isfinite(sc.nadir[i])) {
      sc.ideal[i] = 0.0;
      sc.nadir[i] = 1.0;
      warnings.push_back("objective " + std::to_string(i + 1) + ": no finite ideal/nadir estimate, scale set to 1");
      continue;
    }
    if (sc.nadir[i] - sc.ideal[i] < kMinScale) {
      sc.nadir[i] = sc.ideal[i] + kMinScale;
      warnings.push_back("objective " + std::to_string(i + 1) + ": degenerate normalization scale clamped");
    }
  }
  return sc;
}

// Applies dt to every node; keepers survive. Returns the surviving nodes.
std::vector<Node> sweep(std::vector<Node> nodes, const Discarder& test, const std::unordered_set<std::uint64_t>& keepers,
                        int threads, DiscardCounts& counts) {
  std::vector<DiscardDecision> decisions(nodes.size());
  detail::parallel_for(nodes.size(), threads, [&](std::size_t i) { decisions[i] = test(nodes[i].bounded); });
  std::vector<Node> live;
  live.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const DiscardDecision& dd = decisions[i];
    if (dd.discard) {
      if (keepers.count(nodes[i].path)) {
        ++counts.exempted;
        nodes[i].exempt_only = true;
        live.push_back(std::move(nodes[i]));
        continue;
      }
      if (dd.reason == DiscardReason::dominated)
        ++counts.dominated;
      else
        ++counts.asf_all_refs;
      continue;
    }
    nodes[i].exempt_only = false;
    live.push_back(std::move(nodes[i]));
  }
  return live;
}

void merge_refinement(UpperArchive& archive, const RefineResult& r, std::uint64_t tag) {
  if (!r.feasible) return;
  for (std::size_t j = 0; j < r.objectives.size(); ++j) archive.insert(r.objectives[j], r.solutions[j], tag);
}

MoeaConfig box_moea(const RunConfig& cfg, std::uint64_t path) {
  MoeaConfig mc = cfg.moea;
  mc.seed = box_seed(cfg.seed, path);
  return mc;
}

}  // namespace

RunState initial_state(const Problem& prob, const RunConfig& cfg) {
  RunState s;
  Node root;
  root.bounded.box = prob.domain;
  root.path = 1;
  s.collection.push_back(std::move(root));
  s.tracker = initial_tracker(prob);
  s.initial_ideal = s.tracker.ideal;
  s.initial_nadir = s.tracker.nadir;
  s.omega = width(prob.domain);
  s.d = 1e6;
  s.k = 1;
  s.scalarizer.rho = cfg.rho;
  s.scalarizer.normalize = cfg.normalize;
  if (!prob.has_enclosures())
    s.warnings.push_back("problem has no interval extension: sampled Lipschitz constants, guarantees are heuristic");
  else if (!prob.lipschitz_verified)
    s.warnings.push_back("global Lipschitz constants are sampled estimates");
  return s;
}

RunState iterate(RunState state, const Problem& prob, const RunConfig& cfg, IterationRecord* record) {
  if (state.collection.empty()) throw std::runtime_error("iterate: empty box collection");
  IterationRecord rec;
  rec.k = state.k;
  const int threads = cfg.threads;

  // (1) bisect every box
  std::vector<Node> nodes;
  nodes.reserve(2 * state.collection.size());
  for (const Node& parent : state.collection) {
    auto [left, right] = bisect(parent.bounded.box);
    Node a, b;
    a.bounded.box = std::move(left);
    a.path = child_path(parent.path, 0);
    b.bounded.box = std::move(right);
    b.path = child_path(parent.path, 1);
    nodes.push_back(std::move(a));
    nodes.push_back(std::move(b));
  }
  rec.bisected = nodes.size();

  // (2) current maximal width, taken before the feasibility sweep
  double omega = 0.0;
  for (const Node& nd : nodes) omega = std::max(omega, width(nd.bounded.box));
  state.omega = omega;

  // (3) interval feasibility sweep
  if (prob.p > 0) {
    detail::parallel_for(nodes.size(), threads,
                         [&](std::size_t i) { nodes[i].feasibility = feasibility_test(prob, nodes[i].bounded.box); });
    const std::size_t before = nodes.size();
    std::erase_if(nodes, [](const Node& nd) { return nd.feasibility == Feasibility::infeasible; });
    rec.infeasible = before - nodes.size();
    if (nodes.empty()) throw std::runtime_error("iterate: every box failed the feasibility test");
  } else {
    for (Node& nd : nodes) nd.feasibility = Feasibility::feasible;
  }

  // (4) bounds
  detail::parallel_for(nodes.size(), threads, [&](std::size_t i) {
    Node& nd = nodes[i];
    BoxXd b = std::move(nd.bounded.box);
    nd.bounded = bound(prob, b);
  });

  BoundsTracker tracker = BoundsTracker::empty(prob.m);
  for (std::size_t i = 0; i < nodes.size(); ++i) tracker = update_ideal(std::move(tracker), nodes[i].bounded.lower, i);

  // (5) nondominated lower bounds and the boxes carrying them
  std::vector<Vector> lowers;
  lowers.reserve(nodes.size());
  for (const Node& nd : nodes) lowers.push_back(nd.bounded.lower);
  const std::vector<std::size_t> carriers = nondominated_indices(lowers);
  state.preferred_lower.clear();
  state.preferred_boxes.clear();
  state.preferred.clear();
  for (std::size_t idx : carriers) {
    const Node& nd = nodes[idx];
    state.preferred_lower.push_back(nd.bounded.lower);
    state.preferred_boxes.push_back(nd.bounded.box);
    if (nd.bounded.has_upper) state.preferred.insert(nd.bounded.upper, nd.bounded.upper_preimage, nd.path);
  }
  if (state.preferred.empty()) {
    for (const Node& nd : nodes)
      if (nd.bounded.has_upper) tracker = update_nadir(std::move(tracker), nd.bounded.upper);
  } else {
    for (const Vector& u : state.preferred.objectives()) tracker = update_nadir(std::move(tracker), u);
  }
  state.scalarizer = snapshot(tracker, state, cfg, state.warnings);
  state.tracker = tracker;

  std::unordered_set<std::uint64_t> keepers;
  for (std::size_t id : tracker.keeper_boxes)
    if (id != BoundsTracker::npos) keepers.insert(nodes[id].path);

  std::vector<BoxXd> carrier_boxes;
  std::vector<std::uint64_t> carrier_paths;
  carrier_boxes.reserve(carriers.size());
  carrier_paths.reserve(carriers.size());
  for (std::size_t idx : carriers) {
    carrier_boxes.push_back(nodes[idx].bounded.box);
    carrier_paths.push_back(nodes[idx].path);
  }

  // (6) first discarding sweep
  {
    const std::vector<Vector> upper = state.preferred.objectives();
    const Discarder test(upper, cfg.prefs, cfg.sigma, state.scalarizer);
    nodes = sweep(std::move(nodes), test, keepers, threads, rec.first_sweep);
  }

  // (7) refine every preferred box, merged in carrier order
  {
    std::vector<RefineResult> results(carrier_boxes.size());
    detail::parallel_for(carrier_boxes.size(), threads, [&](std::size_t c) {
      results[c] = refine_box(prob, carrier_boxes[c], cfg.prefs, box_moea(cfg, carrier_paths[c]));
    });
    for (std::size_t c = 0; c < results.size(); ++c) merge_refinement(state.preferred, results[c], carrier_paths[c]);
    rec.refined = carrier_boxes.size();
  }

  // (8) too few preferred upper bounds: refine the remaining live boxes too
  if (state.preferred.size() < static_cast<std::size_t>(cfg.m_min)) {
    const std::unordered_set<std::uint64_t> done(carrier_paths.begin(), carrier_paths.end());
    std::vector<std::size_t> todo;
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (!done.count(nodes[i].path)) todo.push_back(i);
    std::vector<RefineResult> results(todo.size());
    detail::parallel_for(todo.size(), threads, [&](std::size_t t) {
      const Node& nd = nodes[todo[t]];
      results[t] = refine_box(prob, nd.bounded.box, cfg.prefs, box_moea(cfg, nd.path));
    });
    for (std::size_t t = 0; t < todo.size(); ++t)
      merge_refinement(state.preferred, results[t], nodes[todo[t]].path);
    rec.refined += todo.size();
  }

  // (9) second sweep against the grown upper set, same scalarizer snapshot
  {
    const std::vector<Vector> upper = state.preferred.objectives();
    const Discarder test(upper, cfg.prefs, cfg.sigma, state.scalarizer);
    nodes = sweep(std::move(nodes), test, keepers, threads, rec.second_sweep);
  }
  if (nodes.empty()) throw std::runtime_error("iterate: box collection emptied by discarding");

  // (10) convergence measure
  if (!state.preferred.empty() && !state.preferred_lower.empty())
    state.d = directed_hausdorff(state.preferred.objectives(), state.preferred_lower);
  state.collection = std::move(nodes);

  rec.boxes = state.collection.size();
  rec.preferred_lower = state.preferred_lower.size();
  rec.preferred_upper = state.preferred.size();
  rec.omega = state.omega;
  rec.d = state.d;
  rec.ideal = state.tracker.ideal;
  rec.nadir = state.tracker.nadir;
  if (record) *record = std::move(rec);
  ++state.k;
  return state;
}

RunResult collect_result(const RunState& state, const Problem& prob, const RunConfig& cfg) {
  RunResult res;
  res.iterations = state.k - 1;
  res.d = state.d;
  res.omega = state.omega;
  res.ideal = state.tracker.ideal;
  res.nadir = state.tracker.nadir;
  res.converged = state.d <= cfg.epsilon && state.omega <= cfg.delta;
  res.preferred_lower = state.preferred_lower;
  res.preferred_upper = state.preferred.objectives();
  res.preferred_solutions = state.preferred.solutions();
  res.warnings = state.warnings;
  for (const Node& nd : state.collection) res.boxes.push_back(nd.bounded.box);

  // Solutions: members of U^p whose source box is still live and was not
  // kept solely as an objective-minimum carrier.
  std::unordered_set<std::uint64_t> roi, live;
  for (const Node& nd : state.collection) {
    live.insert(nd.path);
    if (!nd.exempt_only) roi.insert(nd.path);
  }
  std::vector<std::size_t> chosen;
  const auto& tags = state.preferred.tags();
  for (std::size_t i = 0; i < tags.size(); ++i)
    if (roi.count(tags[i])) chosen.push_back(i);
  if (chosen.empty()) {
    for (std::size_t i = 0; i < tags.size(); ++i)
      if (live.count(tags[i])) chosen.push_back(i);
    if (!chosen.empty()) res.warnings.push_back("no upper bound from a non-exempt live box; reporting exempt boxes");
  }

  const std::vector<Vector>& U = state.preferred.objectives();
  std::vector<double> best;
  ScalarizerConfig sc = state.scalarizer;
  for (const Preference& pref : cfg.prefs) best.push_back(min_asf(U, pref, sc));

  for (std::size_t i : chosen) {
    const Vector& x = state.preferred.solutions()[i];
    res.solutions.push_back(x);
    res.objective_vectors.push_back(evaluate(prob, x));
    int attributed = -1;
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < cfg.prefs.size(); ++r) {
      const double g = asf_vector(U[i], cfg.prefs[r], sc) - best[r];
      if (g < gap) {
        gap = g;
        attributed = static_cast<int>(r);
      }
    }
    res.ref_index.push_back(attributed);
  }
  return res;
}

RunResult run(const Problem& prob, const RunConfig& cfg, const ProgressCallback& progress) {
  cfg.validate(prob);
  const int cap = cfg.max_iterations > 0 ? cfg.max_iterations : default_iteration_cap(prob, cfg);
  RunState state = initial_state(prob, cfg);
  std::vector<IterationRecord> history;
  while ((state.d > cfg.epsilon || state.omega > cfg.delta) && state.k <= cap) {
    IterationRecord rec;
    state = iterate(std::move(state), prob, cfg, &rec);
    if (progress) progress(rec, state);
    history.push_back(std::move(rec));
  }
  RunResult res = collect_result(state, prob, cfg);
  res.history = std::move(history);
  // Deduplicate repeated warnings while keeping first-seen order.
  std::vector<std::string> unique;
  for (const std::string& w : res.warnings)
    if (std::find(unique.begin(), unique.end(), w) == unique.end()) unique.push_back(w);
  res.warnings = std::move(unique);
  if (!res.converged) res.warnings.push_back("iteration cap reached before convergence");
  return res;
}

}  // namespace rbb
