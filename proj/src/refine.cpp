#include "rbb/refine.hpp"

#include "rbb/pareto.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

namespace rbb {

void MoeaConfig::validate() const {
  if (population < 1) throw std::invalid_argument("MoeaConfig: population must be positive");
  if (generations < 0) throw std::invalid_argument("MoeaConfig: generations must be nonnegative");
  if (neighborhood < 1 || neighborhood > population)
    throw std::invalid_argument("MoeaConfig: neighborhood must lie in [1, population]");
  if (!(de_scale > 0.0 && de_scale <= 1.0)) throw std::invalid_argument("MoeaConfig: de_scale must lie in (0, 1]");
  if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0))
    throw std::invalid_argument("MoeaConfig: crossover_rate must lie in [0, 1]");
}

std::uint64_t box_seed(std::uint64_t run_seed, std::uint64_t path_id) {
  // splitmix64 finalizer over the combined key
  std::uint64_t z = run_seed * 0x9e3779b97f4a7c15ULL + path_id;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

struct Individual {
  Vector x;
  Vector f;
  double violation = 0.0;
};

std::vector<Vector> decomposition_weights(int count, Eigen::Index m) {
  std::vector<Vector> w;
  w.reserve(count);
  if (m == 2) {
    for (int j = 0; j < count; ++j) {
      const double t = count == 1 ? 0.5 : double(j) / double(count - 1);
      Vector v(2);
      v << t, 1.0 - t;
      w.push_back(v);
    }
  } else {
    // Uniform draws on the simplex from a fixed stream.
    std::mt19937_64 rng(0xdecafULL + static_cast<std::uint64_t>(m));
    std::exponential_distribution<double> expo(1.0);
    for (int j = 0; j < count; ++j) {
      Vector v(m);
      for (Eigen::Index i = 0; i < m; ++i) v[i] = expo(rng);
      w.push_back(v / v.sum());
    }
  }
  for (Vector& v : w) v = v.cwiseMax(1e-6);
  return w;
}

std::vector<std::vector<int>> neighborhoods(const std::vector<Vector>& w, int size) {
  const int n = static_cast<int>(w.size());
  std::vector<std::vector<int>> hood(n);
  for (int j = 0; j < n; ++j) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return (w[a] - w[j]).squaredNorm() < (w[b] - w[j]).squaredNorm(); });
    hood[j].assign(order.begin(), order.begin() + size);
  }
  return hood;
}

double tchebycheff(const Vector& f, const Vector& lambda, const Vector& ideal) {
  return (lambda.array() * (f - ideal).array().abs()).maxCoeff();
}

// Constrained comparison: feasible beats infeasible, lower violation beats
// higher, otherwise the decomposition value decides.
bool better(const Individual& a, const Individual& b, const Vector& lambda, const Vector& ideal) {
  if (a.violation != b.violation) return a.violation < b.violation;
  return tchebycheff(a.f, lambda, ideal) < tchebycheff(b.f, lambda, ideal);
}

class InBoxSearch {
 public:
  InBoxSearch(const Problem& prob, const BoxXd& b, const MoeaConfig& cfg)
      : prob_(prob), box_(b), cfg_(cfg), rng_(cfg.seed), lo_(b.lower()), side_(b.sides()) {}

  Individual make(Vector x) {
    Individual ind;
    for (Eigen::Index k = 0; k < x.size(); ++k) x[k] = std::clamp(x[k], lo_[k], box_.upper()[k]);
    ind.f = evaluate(prob_, x);
    ind.violation = prob_.p == 0 ? 0.0 : constraint_violation(evaluate_constraints(prob_, x));
    ind.x = std::move(x);
    return ind;
  }

  std::vector<Individual> initial_population() {
    const int n_pop = cfg_.population;
    std::vector<Individual> pop;
    pop.reserve(n_pop);
    pop.push_back(make(midpoint(box_)));
    const int samples = n_pop - 1;
    if (samples <= 0) return pop;
    // Latin hypercube: one stratum per sample in every dimension.
    std::vector<Vector> xs(samples, Vector(prob_.n));
    std::vector<int> perm(samples);
    for (Eigen::Index k = 0; k < prob_.n; ++k) {
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng_);
      for (int s = 0; s < samples; ++s) xs[s][k] = lo_[k] + side_[k] * (perm[s] + unit()) / double(samples);
    }
    for (Vector& x : xs) pop.push_back(make(std::move(x)));
    return pop;
  }

  Vector offspring(const Individual& target, const Individual& r1, const Individual& r2) {
    const Eigen::Index n = prob_.n;
    std::uniform_int_distribution<Eigen::Index> pick(0, n - 1);
    const Eigen::Index forced = pick(rng_);
    Vector y = target.x;
    for (Eigen::Index k = 0; k < n; ++k)
      if (k == forced || unit() < cfg_.crossover_rate) y[k] = target.x[k] + cfg_.de_scale * (r1.x[k] - r2.x[k]);
    polynomial_mutation(y);
    return y;
  }

  double unit() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_); }
  std::mt19937_64& rng() { return rng_; }

 private:
  void polynomial_mutation(Vector& y) {
    const Eigen::Index n = prob_.n;
    const double pm = 1.0 / double(n);
    const double eta = cfg_.mutation_eta;
    for (Eigen::Index k = 0; k < n; ++k) {
      if (side_[k] <= 0.0 || unit() >= pm) continue;
      const double lo = lo_[k], hi = box_.upper()[k];
      const double v = std::clamp(y[k], lo, hi);
      const double d1 = (v - lo) / side_[k], d2 = (hi - v) / side_[k];
      const double u = unit();
      const double pw = 1.0 / (eta + 1.0);
      double dq;
      if (u < 0.5) {
        const double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(1.0 - d1, eta + 1.0);
        dq = std::pow(val, pw) - 1.0;
      } else {
        const double val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(1.0 - d2, eta + 1.0);
        dq = 1.0 - std::pow(val, pw);
      }
      y[k] = v + dq * side_[k];
    }
  }

  const Problem& prob_;
  const BoxXd& box_;
  const MoeaConfig& cfg_;
  std::mt19937_64 rng_;
  Vector lo_;
  Vector side_;
};

}  // namespace

RefineResult refine_box(const Problem& prob, const BoxXd& b, const std::vector<Preference>& /*prefs*/,
                        const MoeaConfig& cfg) {
  cfg.validate();
  InBoxSearch search(prob, b, cfg);
  std::vector<Individual> pop = search.initial_population();
  const Individual mid = pop.front();
  const int n_pop = static_cast<int>(pop.size());

  if (cfg.generations > 0 && n_pop >= 3) {
    const std::vector<Vector> lambda = decomposition_weights(n_pop, prob.m);
    const auto hood = neighborhoods(lambda, std::min(cfg.neighborhood, n_pop));
    Vector ideal = pop.front().f;
    for (const Individual& ind : pop) ideal = ideal.cwiseMin(ind.f);

    constexpr double kNeighborProb = 0.9;
    constexpr int kMaxReplace = 2;
    std::vector<int> everyone(n_pop);
    std::iota(everyone.begin(), everyone.end(), 0);

    for (int gen = 0; gen < cfg.generations; ++gen) {
      for (int j = 0; j < n_pop; ++j) {
        const std::vector<int>& pool =
            (search.unit() < kNeighborProb && hood[j].size() >= 3) ? hood[j] : everyone;
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        int r1 = pool[pick(search.rng())];
        int r2 = pool[pick(search.rng())];
        for (int guard = 0; r1 == r2 && guard < 16; ++guard) r2 = pool[pick(search.rng())];
        Individual child = search.make(search.offspring(pop[j], pop[r1], pop[r2]));
        ideal = ideal.cwiseMin(child.f);

        std::vector<int> targets = pool;
        std::shuffle(targets.begin(), targets.end(), search.rng());
        int replaced = 0;
        for (int t : targets) {
          if (replaced >= kMaxReplace) break;
          if (better(child, pop[t], lambda[t], ideal)) {
            pop[t] = child;
            ++replaced;
          }
        }
      }
    }
  }

  RefineResult out;
  std::vector<Individual> feasible;
  if (mid.violation == 0.0) feasible.push_back(mid);
  for (const Individual& ind : pop)
    if (ind.violation == 0.0) feasible.push_back(ind);

  if (feasible.empty()) {
    const Individual* least = &pop.front();
    for (const Individual& ind : pop)
      if (ind.violation < least->violation) least = &ind;
    out.feasible = false;
    out.objectives.push_back(least->f);
    out.solutions.push_back(least->x);
    return out;
  }

  UpperArchive archive;
  for (const Individual& ind : feasible) archive.insert(ind.f, ind.x);
  const std::size_t cap = static_cast<std::size_t>(cfg.population);
  for (std::size_t i = 0; i < archive.size() && out.objectives.size() < cap; ++i) {
    out.objectives.push_back(archive.objectives()[i]);
    out.solutions.push_back(archive.solutions()[i]);
  }
  return out;
}

bool UpperArchive::insert(const Vector& u, const Vector& x, std::size_t tag) {
  const Eigen::Index m = u.size();
  const double* pu = u.data();
  // One pass: reject if a member weakly dominates u, remember the first member u dominates.
  std::size_t first_doomed = u_.size();
  for (std::size_t i = 0; i < u_.size(); ++i) {
    const double* pv = u_[i].data();
    bool v_better = false;
    bool u_better = false;
    for (Eigen::Index k = 0; k < m; ++k) {
      if (pv[k] < pu[k]) {
        v_better = true;
        if (u_better) break;
      } else if (pu[k] < pv[k]) {
        u_better = true;
        if (v_better) break;
      }
    }
    if (!u_better) return false;
    if (!v_better && first_doomed == u_.size()) first_doomed = i;
  }
  if (first_doomed < u_.size()) {
    std::size_t keep = first_doomed;
    for (std::size_t i = first_doomed; i < u_.size(); ++i) {
      if (dominates(u, u_[i])) continue;
      if (keep != i) {
        u_[keep] = std::move(u_[i]);
        x_[keep] = std::move(x_[i]);
        tags_[keep] = tags_[i];
      }
      ++keep;
    }
    u_.resize(keep);
    x_.resize(keep);
    tags_.resize(keep);
  }
  u_.push_back(u);
  x_.push_back(x);
  tags_.push_back(tag);
  return true;
}

void UpperArchive::clear() {
  u_.clear();
  x_.clear();
  tags_.clear();
}

std::pair<std::vector<Vector>, std::vector<Vector>> merge_upper(const std::vector<Vector>& u_pref,
                                                                const std::vector<Vector>& x_pref,
                                                                const std::vector<Vector>& new_u,
                                                                const std::vector<Vector>& new_x) {
  if (u_pref.size() != x_pref.size() || new_u.size() != new_x.size())
    throw std::invalid_argument("merge_upper: objective and decision lists must be index-aligned");
  UpperArchive archive;
  for (std::size_t i = 0; i < u_pref.size(); ++i) archive.insert(u_pref[i], x_pref[i]);
  for (std::size_t i = 0; i < new_u.size(); ++i) archive.insert(new_u[i], new_x[i]);
  return {archive.objectives(), archive.solutions()};
}

}  // namespace rbb
