#include <doctest.h>

#include "rbb/discard.hpp"
#include "support.hpp"

#include <random>

using namespace rbb;
using rbb::testing::vec;

namespace {
BoundedBox with_lower(const Vector& l) {
  BoundedBox b;
  b.lower = l;
  b.upper = l;
  return b;
}
}  // namespace

TEST_CASE("dominance discarding") {
  CHECK(dominance_discard(vec({1, 1}), {vec({0, 0})}));
  CHECK_FALSE(dominance_discard(vec({0, 1}), {vec({1, 0})}));
  CHECK_FALSE(dominance_discard(vec({1, 1}), {vec({1, 1})}));
  CHECK(dominance_discard(vec({1, 1}), {vec({1, 0.5})}));
  CHECK_FALSE(dominance_discard(vec({1, 1}), {}));
}

TEST_CASE("ASF discarding with the sigma margin") {
  const Preference pref(vec({0, 0}), vec({1, 1}));
  ScalarizerConfig cfg;
  cfg.rho = 1e-300;  // keeps the hand values exact
  const Vector l = vec({0.5, 0.2});
  REQUIRE(asf_vector(l, pref, cfg) == doctest::Approx(0.5));
  CHECK(asf_discard(l, {pref.reference()}, pref, 0.1, cfg));
  CHECK_FALSE(asf_discard(l, {pref.reference()}, pref, 0.6, cfg));
  // the comparison is non-strict
  CHECK(asf_discard(l, {vec({0.25, 0.0})}, pref, 0.25, cfg));
}

TEST_CASE("multi-reference decision") {
  ScalarizerConfig cfg;
  const std::vector<Preference> prefs = {Preference(vec({0, 0}), vec({1, 1})), Preference(vec({2, -1}), vec({1, 1}))};
  // u improves on l for the first preference only
  const std::vector<Vector> upper = {vec({0.1, 0.9})};
  DiscardDecision d = dt(with_lower(vec({1.2, 0.2})), upper, prefs, 0.1, cfg);
  CHECK(d.per_ref_flags == std::vector<int>{1, 0});
  CHECK_FALSE(d.discard);
  CHECK(d.reason == DiscardReason::kept);

  d = dt(with_lower(vec({1.5, 1.5})), upper, prefs, 0.1, cfg);
  CHECK(d.per_ref_flags == std::vector<int>{1, 1});
  CHECK(d.discard);
  CHECK(d.reason == DiscardReason::asf_all_refs);

  d = dt(with_lower(vec({0.2, 1.0})), upper, prefs, 5.0, cfg);
  CHECK(d.per_ref_flags == std::vector<int>{0, 0});
  CHECK(d.discard);
  CHECK(d.reason == DiscardReason::dominated);
  CHECK(to_string(d.reason) == "dominated");
}

TEST_CASE("feasibility test") {
  const Problem unconstrained = rbb::testing::linear_problem();
  CHECK(feasibility_test(unconstrained, unconstrained.domain) == Feasibility::feasible);
  const Problem p = rbb::testing::square_problem(rbb::testing::unit_box(2));
  CHECK(feasibility_test(p, BoxXd(vec({0, 0.6}), vec({0.4, 1}))) == Feasibility::infeasible);
  CHECK(feasibility_test(p, p.domain) == Feasibility::undetermined);
  CHECK(feasibility_test(p, BoxXd(vec({0.6, 0}), vec({1, 0.4}))) == Feasibility::feasible);
}

TEST_CASE("infeasible midpoints carry no upper bound") {
  const Problem p = rbb::testing::square_problem(rbb::testing::unit_box(2));
  CHECK_FALSE(bound(p, BoxXd(vec({0, 0.2}), vec({0.4, 1}))).has_upper);
  CHECK(bound(p, BoxXd(vec({0.4, 0}), vec({1, 0.8}))).has_upper);
}

TEST_CASE("property: sigma monotonicity and the large-sigma limit") {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 10000; ++t) {
    std::vector<Vector> upper;
    for (int k = 0; k < 5; ++k) upper.push_back(vec({u(rng), u(rng)}));
    const Vector l = vec({u(rng), u(rng)});
    const std::vector<Preference> prefs = {Preference(vec({u(rng), u(rng)}), vec({0.1 + u(rng), 0.1 + u(rng)}))};
    ScalarizerConfig cfg;
    const double s1 = u(rng), s2 = s1 + u(rng);
    if (asf_discard(l, upper, prefs[0], s2, cfg)) REQUIRE(asf_discard(l, upper, prefs[0], s1, cfg));
    const DiscardDecision big = dt(with_lower(l), upper, prefs, 1e9, cfg);
    REQUIRE(big.discard == dominance_discard(l, upper));
    const Discarder fast(upper, prefs, s1, cfg);
    const DiscardDecision a = fast(with_lower(l));
    const DiscardDecision b = dt(with_lower(l), upper, prefs, s1, cfg);
    REQUIRE(a.discard == b.discard);
    REQUIRE(a.reason == b.reason);
    REQUIRE(a.per_ref_flags == b.per_ref_flags);
  }
}
