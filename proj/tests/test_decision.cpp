#include <doctest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "plskel/decision.hpp"
#include "plskel/errors.hpp"
#include "plskel/extract.hpp"

using namespace plskel;

namespace {

const auto box2 = Hyperrectangle::square(-2, 2);

double class_area(const DecisionMap& dm, int c) {
  double s = 0.0;
  for (const auto& mp : dm.polygons) {
    if (mp.class_index == c) s += mp.polygon.area();
  }
  return s;
}

/// f0 = x, f1 = -x, f2 = 0.5: class 0 right of 0.5, class 1 left of -0.5.
DecisionMap three_bands() {
  std::vector<Skeleton> fs = {initial_skeleton({1, 0}, 0, box2), initial_skeleton({-1, 0}, 0, box2),
                              initial_skeleton({0, 0}, 0.5, box2)};
  return extract_decision_map(fs);
}

}  // namespace

TEST_CASE("split a region by a pair of functions") {
  auto s = split_region_by_pair(box2.polygon(), Affine{{1, 0}, 0}, Affine{{0, 0}, 1});
  REQUIRE(s.pos.size() == 1);
  REQUIRE(s.neg.size() == 1);
  CHECK(s.pos[0].area() == doctest::Approx(4));
  CHECK(s.neg[0].area() == doctest::Approx(12));
  auto all = split_region_by_pair(box2.polygon(), Affine{{0, 0}, 3}, Affine{{0.5, 0.5}, 0});
  CHECK(all.pos.size() == 1);
  CHECK(all.neg.empty());
}

TEST_CASE("three bands") {
  auto dm = three_bands();
  CHECK(dm.num_classes == 3);
  CHECK_FALSE(dm.single_logit);
  CHECK(dm.polygons.size() == 3);
  CHECK(class_area(dm, 0) == doctest::Approx(6));
  CHECK(class_area(dm, 1) == doctest::Approx(6));
  CHECK(class_area(dm, 2) == doctest::Approx(4));

  REQUIRE(dm.boundary.size() == 2);
  for (const auto& b : dm.boundary) {
    CHECK(b.class_a < b.class_b);
    CHECK(b.class_b == 2);
    CHECK(std::abs(b.from.x) == doctest::Approx(0.5));
    CHECK(b.from.x == doctest::Approx(b.to.x));
    CHECK(distance(b.from, b.to) == doctest::Approx(4));
  }

  CHECK(classify(dm, {1.5, 0}) == 0);
  CHECK(classify(dm, {-1.5, 1}) == 1);
  CHECK(classify(dm, {0, -1.9}) == 2);
  // On a boundary the lower class wins.
  CHECK(classify(dm, {0.5, 0}) == 0);
  CHECK(classify(dm, {-0.5, 0}) == 1);
  CHECK(classify(dm, {2, 2}) == 0);
  CHECK_THROWS_AS(classify(dm, {2.5, 0}), OutOfDomain);
}

TEST_CASE("a single logit is thresholded at zero") {
  auto fs = extract_skeletons(fixture::two_neuron(), Hyperrectangle::square(-4, 4));
  auto dm = extract_decision_map(fs);
  CHECK(dm.single_logit);
  CHECK(dm.num_classes == 2);
  CHECK(classify(dm, {-4, 0}) == 1);
  CHECK(classify(dm, {0, 0}) == 0);
  CHECK(classify(dm, {3, -3}) == 0);
  CHECK(classify(dm, {0, -3}) == 1);
  // f vanishes where x1 + x2 >= -1 and x2 - x1 <= 1; inside the box that
  // wedge has area integral_{-1}^{3} 2(1 + x) dx + 8 = 24.
  CHECK(class_area(dm, 0) == doctest::Approx(24).epsilon(1e-12));
  CHECK(class_area(dm, 0) + class_area(dm, 1) == doctest::Approx(64));
  for (const auto& b : dm.boundary) {
    CHECK(b.class_a == 0);
    CHECK(b.class_b == 1);
  }
}

TEST_CASE("an always-winning class covers everything") {
  std::vector<Skeleton> fs = {initial_skeleton({0, 0}, 1, box2), initial_skeleton({0, 0}, 0, box2)};
  auto dm = extract_decision_map(fs);
  REQUIRE(dm.polygons.size() == 1);
  CHECK(dm.polygons[0].class_index == 0);
  CHECK(dm.boundary.empty());
  // Exact ties go to the lowest class.
  std::vector<Skeleton> tie = {initial_skeleton({0, 0}, 1, box2), initial_skeleton({0, 0}, 1, box2)};
  auto t = extract_decision_map(tie);
  REQUIRE(t.polygons.size() == 1);
  CHECK(t.polygons[0].class_index == 0);
}

TEST_CASE("membership skeletons with different tessellations are refined") {
  auto a = apply_relu(initial_skeleton({1, 0}, 0, box2));
  auto b = apply_relu(initial_skeleton({0, 1}, 0, box2));
  std::vector<Skeleton> fs = {a, b};
  auto dm = extract_decision_map(fs);
  CHECK(class_area(dm, 0) + class_area(dm, 1) == doctest::Approx(16));
  CHECK(classify(dm, {1.5, 0.5}) == 0);
  CHECK(classify(dm, {0.5, 1.5}) == 1);
  CHECK(classify(dm, {-1, -1}) == 0);

  std::vector<Skeleton> mixed = {a, initial_skeleton({1, 0}, 0, Hyperrectangle::square(-1, 1))};
  CHECK_THROWS_AS(extract_decision_map(mixed), StructuralError);
  CHECK_THROWS_AS(extract_decision_map(std::span<const Skeleton>{}), InputError);
}

TEST_CASE("1-D decision map") {
  auto fs = extract_skeletons(fixture::tent(), Hyperrectangle({{-3, 3}}));
  auto dm = extract_decision_map(fs);
  CHECK(dm.single_logit);
  CHECK(classify(dm, {0, 0}) == 1);
  CHECK(classify(dm, {-2, 0}) == 0);
  CHECK(classify(dm, {2, 0}) == 0);
  CHECK(class_area(dm, 1) == doctest::Approx(2));
  CHECK(dm.boundary.size() == 2);
}

TEST_CASE("property: decision maps agree with the argmax") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-4, 4);
  for (std::uint64_t seed = 200; seed < 220; ++seed) {
    Network net = corpus_network(seed, 2 + seed % 4);
    auto dm = extract_decision_map(extract_skeletons(net, Hyperrectangle::square(-4, 4)));
    double total = 0.0;
    for (const auto& mp : dm.polygons) {
      total += mp.polygon.area();
      REQUIRE(mp.polygon.is_simple());
    }
    REQUIRE(total == doctest::Approx(64).epsilon(1e-9));
    for (int k = 0; k < 500; ++k) {
      Point x{u(rng), u(rng)};
      auto y = net.forward(x);
      auto top = std::max_element(y.begin(), y.end());
      double second = -INFINITY;
      for (auto it = y.begin(); it != y.end(); ++it) {
        if (it != top) second = std::max(second, *it);
      }
      if (*top - second <= 1e-6) continue;
      REQUIRE(classify(dm, x) == top - y.begin());
    }
  }
}

TEST_CASE("pair split examples") {
  auto sym = split_region_by_pair(Polygon::rectangle(-1, 1, -1, 1), Affine{{1, 0}, 0}, Affine{{-1, 0}, 0});
  REQUIRE(sym.pos.size() == 1);
  REQUIRE(sym.neg.size() == 1);
  CHECK(sym.pos[0].bbox().min_x == doctest::Approx(0));
  CHECK(sym.neg[0].bbox().max_x == doctest::Approx(0));

  auto diag = split_region_by_pair(Polygon::rectangle(0, 1, 0, 1), Affine{{1, 0}, 0}, Affine{{0, 1}, 0});
  REQUIRE(diag.pos.size() == 1);
  REQUIRE(diag.neg.size() == 1);
  CHECK(oracle::loop_area(oracle::loop_of(diag.pos[0])) == doctest::Approx(0.5));
  CHECK(oracle::loop_area(oracle::loop_of(diag.neg[0])) == doctest::Approx(0.5));

  auto above = split_region_by_pair(Polygon::rectangle(0, 1, 0, 1), Affine{{1, 2}, 1}, Affine{{1, 2}, 0});
  CHECK(above.pos.size() == 1);
  CHECK(above.neg.empty());
}

TEST_CASE("1-D two-class map") {
  auto line = Hyperrectangle({{-1, 1}});
  std::vector<Skeleton> fs = {initial_skeleton({1, 0}, 0, line), initial_skeleton({-1, 0}, 0, line)};
  auto dm = extract_decision_map(fs);
  CHECK_FALSE(dm.single_logit);
  REQUIRE(dm.boundary.size() == 1);
  CHECK(dm.boundary[0].from.x == doctest::Approx(0));
  CHECK(classify(dm, {-0.5, 0}) == 1);
  CHECK(classify(dm, {0.5, 0}) == 0);
  CHECK(class_area(dm, 0) == doctest::Approx(1));

  DecisionMap single;
  single.bounds = Hyperrectangle::square(0, 1);
  single.num_classes = 3;
  single.polygons.push_back({Polygon::rectangle(0, 1, 0, 1), 2});
  CHECK(classify(single, {0.3, 0.7}) == 2);
}

TEST_CASE("three classes meeting inside one tile") {
  auto unit = Hyperrectangle::square(0, 1);
  std::vector<Skeleton> fs = {initial_skeleton({1, 0}, 0, unit), initial_skeleton({0, 1}, 0, unit),
                              initial_skeleton({-1, -1}, 1, unit)};
  auto dm = extract_decision_map(fs);
  CHECK(dm.polygons.size() == 3);
  // Every boundary segment ends at the triple point or on the box.
  Point triple{1.0 / 3, 1.0 / 3};
  bool touches = false;
  for (const auto& b : dm.boundary) {
    touches = touches || distance(b.from, triple) < 1e-9 || distance(b.to, triple) < 1e-9;
    Affine fa = fs[static_cast<std::size_t>(b.class_a)][0].affine;
    Affine fb = fs[static_cast<std::size_t>(b.class_b)][0].affine;
    CHECK(std::abs(fa(b.from) - fb(b.from)) < 1e-9);
    CHECK(std::abs(fa(b.to) - fb(b.to)) < 1e-9);
  }
  CHECK(touches);
  const int n = 200;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Point x{(i + 0.5) / n, (j + 0.5) / n};
      double v[3] = {x.x, x.y, 1 - x.x - x.y};
      int best = static_cast<int>(std::max_element(v, v + 3) - v);
      double sorted[3] = {v[0], v[1], v[2]};
      std::sort(sorted, sorted + 3);
      if (sorted[2] - sorted[1] <= 1e-6) continue;
      REQUIRE(classify(dm, x) == best);
    }
  }
}
