#include <doctest.h>

#include "rbb/box.hpp"
#include "support.hpp"

#include <cmath>
#include <random>

using namespace rbb;
using rbb::testing::vec;

TEST_CASE("midpoint") {
  CHECK(midpoint(BoxXd(vec({0, 0}), vec({1, 1}))) == vec({0.5, 0.5}));
  CHECK(midpoint(BoxXd(vec({0.2, 0}), vec({1, 1}))).isApprox(vec({0.6, 0.5})));
  CHECK(midpoint(BoxXd(vec({3}), vec({3}))) == vec({3}));
}

TEST_CASE("width") {
  CHECK(width(BoxXd(vec({0, 0}), vec({1, 1}))) == doctest::Approx(std::sqrt(2.0)));
  CHECK(width(BoxXd(vec({0, 0}), vec({1, 2}))) == doctest::Approx(std::sqrt(5.0)));
  CHECK(width(BoxXd(vec({3}), vec({3}))) == 0.0);
}

TEST_CASE("bisect along the longest side") {
  auto [a, b] = bisect(BoxXd(vec({0, 0}), vec({1, 2})));
  CHECK(a == BoxXd(vec({0, 0}), vec({1, 1})));
  CHECK(b == BoxXd(vec({0, 1}), vec({1, 2})));
}

TEST_CASE("bisect ties go to the lowest index") {
  auto [a, b] = bisect(BoxXd(vec({0, 0}), vec({1, 1})));
  CHECK(a == BoxXd(vec({0, 0}), vec({0.5, 1})));
  CHECK(b == BoxXd(vec({0.5, 0}), vec({1, 1})));
}

TEST_CASE("bisect in one dimension") {
  auto [a, b] = bisect(BoxXd(vec({0}), vec({4})));
  CHECK(a == BoxXd(vec({0}), vec({2})));
  CHECK(b == BoxXd(vec({2}), vec({4})));
}

TEST_CASE("degenerate boxes cannot be bisected") {
  CHECK_THROWS_AS(bisect(BoxXd(vec({3, 1}), vec({3, 1}))), std::domain_error);
}

TEST_CASE("invalid boxes are rejected") {
  CHECK_THROWS_AS(BoxXd(vec({1}), vec({0})), std::invalid_argument);
  CHECK_THROWS_AS(BoxXd(vec({0, 0}), vec({1})), std::invalid_argument);
  CHECK_THROWS_AS(BoxXd(Vector(0), Vector(0)), std::invalid_argument);
}

TEST_CASE("containment") {
  const BoxXd b(vec({0, 0}), vec({1, 2}));
  CHECK(contains(b, vec({1, 2})));
  CHECK_FALSE(contains(b, vec({1.01, 0})));
  CHECK(contains(b, BoxXd(vec({0.5, 0.5}), vec({1, 1}))));
  CHECK_FALSE(contains(BoxXd(vec({0.5, 0.5}), vec({1, 1})), b));
}

TEST_CASE("property: bisection partitions the parent") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  std::uniform_int_distribution<int> dim(1, 6);
  for (int trial = 0; trial < 10000; ++trial) {
    const int n = dim(rng);
    Vector lo(n), hi(n);
    for (int k = 0; k < n; ++k) {
      const double a = u(rng), c = u(rng);
      lo[k] = std::min(a, c);
      hi[k] = std::max(a, c) + 1e-3;
    }
    const BoxXd parent(lo, hi);
    auto [left, right] = bisect(parent);
    REQUIRE(volume(left) + volume(right) == doctest::Approx(volume(parent)).epsilon(1e-12));
    REQUIRE(contains(parent, left));
    REQUIRE(contains(parent, right));
    // the children share exactly the splitting facet
    int shared = 0;
    for (int k = 0; k < n; ++k) {
      if (left.upper()[k] == right.lower()[k] && left.upper()[k] < parent.upper()[k]) ++shared;
      else REQUIRE((left.lower()[k] == right.lower()[k] && left.upper()[k] == right.upper()[k]));
    }
    REQUIRE(shared == 1);
    REQUIRE(contains(parent, midpoint(parent)));
  }
}

TEST_CASE("property: n bisections shrink the width") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + trial % 5;
    const BoxXd b = rbb::testing::random_subbox(rbb::testing::unit_box(n), rng, 1.0);
    if (b.sides().minCoeff() <= 0.0) continue;
    BoxXd child = b;
    for (int s = 0; s < n; ++s) child = bisect(child).second;
    REQUIRE(width(child) < width(b));
  }
}

TEST_CASE("templated on the scalar") {
  using BoxF = Box<float>;
  const BoxF b(Eigen::VectorXf::Zero(2), Eigen::VectorXf::Ones(2));
  CHECK(width(b) == doctest::Approx(std::sqrt(2.0f)));
  CHECK(bisect(b).first.upper()[0] == 0.5f);
}
