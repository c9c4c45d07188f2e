#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "plskel/errors.hpp"
#include "plskel/geometry.hpp"

using namespace plskel;

namespace {

double total_area(const std::vector<Polygon>& ps) {
  double s = 0.0;
  for (const auto& p : ps) s += p.area();
  return s;
}

Polygon unit_square(double x, double y) { return Polygon::rectangle(x, x + 1, y, y + 1); }

}  // namespace

TEST_CASE("polygon normalization and validation") {
  Polygon p({{1, 0}, {1, 1}, {0, 1}, {0, 0}, {0.5, 0}});
  CHECK(p.size() == 4);
  CHECK(p[0] == Point{0, 0});
  CHECK(signed_area(p.vertices()) > 0);
  CHECK(p.area() == doctest::Approx(1.0));
  CHECK(p.perimeter() == doctest::Approx(4.0));

  Polygon cw({{0, 0}, {0, 2}, {2, 2}, {2, 0}});
  CHECK(signed_area(cw.vertices()) == doctest::Approx(4.0));

  CHECK_THROWS_AS(Polygon({{0, 0}, {1, 1}, {1, 0}, {0, 1}}), InvalidGeometry);
  CHECK_THROWS_AS(Polygon({{0, 0}, {1, 1}, {2, 2}}), InvalidGeometry);
  CHECK_THROWS_AS(Polygon({{0, 0}, {1, 0}}), InvalidGeometry);
  CHECK_THROWS_AS(Polygon({{0, 0}, {NAN, 0}, {0, 1}}), InvalidGeometry);
}

TEST_CASE("regular hexagon area") {
  std::vector<Point> v;
  for (int i = 0; i < 6; ++i) v.push_back({std::cos(i * M_PI / 3), std::sin(i * M_PI / 3)});
  Polygon hex(v);
  CHECK(hex.area() == doctest::Approx(3 * std::sqrt(3.0) / 2).epsilon(1e-12));
  CHECK(hex.is_convex());
}

TEST_CASE("intervals embed as strips") {
  Polygon iv = Polygon::interval(-1, 3);
  CHECK(iv.dim() == 1);
  CHECK(iv.area() == doctest::Approx(4.0));
  CHECK(iv.interval().lo == -1);
  CHECK(iv.interval().hi == 3);

  auto parts = split_by_line(iv, {1, 0}, -1);
  REQUIRE(parts.pos.size() == 1);
  REQUIRE(parts.neg.size() == 1);
  CHECK(parts.pos[0].dim() == 1);
  CHECK(parts.pos[0].interval().lo == doctest::Approx(1));
  CHECK(parts.neg[0].interval().hi == doctest::Approx(1));

  Hyperrectangle line({{-2, 2}});
  CHECK(line.measure() == 4);
  CHECK(line.contains({0.5, 0}));
  CHECK_FALSE(line.contains({2.5, 0}));
}

TEST_CASE("hyperrectangle") {
  auto sq = Hyperrectangle::square(-4, 4);
  CHECK(sq.dim() == 2);
  CHECK(sq.measure() == 64);
  CHECK(sq.polygon().size() == 4);
  CHECK(sq == Hyperrectangle({{-4, 4}, {-4, 4}}));
  CHECK_FALSE(sq == Hyperrectangle::square(-4, 5));
  CHECK_THROWS_AS(Hyperrectangle({{1, 1}}), InvalidGeometry);
  CHECK_THROWS_AS(Hyperrectangle({{2, 1}, {0, 1}}), InvalidGeometry);
}

TEST_CASE("split a triangle") {
  Polygon tri({{0, 0}, {2, 0}, {0, 2}});
  auto s = split_by_line(tri, {1, 0}, -1);  // x >= 1
  REQUIRE(s.pos.size() == 1);
  REQUIRE(s.neg.size() == 1);
  CHECK(s.pos[0].area() == doctest::Approx(0.5));
  CHECK(s.neg[0].area() == doctest::Approx(1.5));
  CHECK(s.pos[0].size() == 3);
  CHECK(s.neg[0].size() == 4);
}

TEST_CASE("split lines that miss or touch") {
  Polygon sq = unit_square(0, 0);
  auto miss = split_by_line(sq, {1, 0}, -5);
  CHECK(miss.pos.empty());
  REQUIRE(miss.neg.size() == 1);
  CHECK(miss.neg[0].area() == doctest::Approx(1));

  // Along an edge: everything lands on one side.
  auto edge = split_by_line(sq, {1, 0}, 0);
  CHECK(edge.neg.empty());
  REQUIRE(edge.pos.size() == 1);

  // Through a diagonal: two triangles.
  auto diag = split_by_line(sq, {1, -1}, 0);
  REQUIRE(diag.pos.size() == 1);
  REQUIRE(diag.neg.size() == 1);
  CHECK(diag.pos[0].size() == 3);
  CHECK(diag.neg[0].area() == doctest::Approx(0.5));
}

TEST_CASE("split a non-convex polygon into several pieces") {
  // U shape opening upwards; the line y = 1.5 cuts off two prongs.
  Polygon u({{0, 0}, {3, 0}, {3, 2}, {2, 2}, {2, 1}, {1, 1}, {1, 2}, {0, 2}});
  auto s = split_by_line(u, {0, 1}, -1.5);
  CHECK(s.pos.size() == 2);
  CHECK(s.neg.size() == 1);
  CHECK(total_area(s.pos) == doctest::Approx(1.0));
  CHECK(total_area(s.neg) == doctest::Approx(4.0));
}

TEST_CASE("point location") {
  Polygon sq = unit_square(0, 0);
  CHECK(contains(sq, {0.5, 0.5}) == Location::inside);
  CHECK(contains(sq, {1.0, 0.5}) == Location::boundary);
  CHECK(contains(sq, {1.0 + 1e-12, 0.5}) == Location::boundary);
  CHECK(contains(sq, {0, 0}) == Location::boundary);
  CHECK(contains(sq, {1.5, 0.5}) == Location::outside);
  CHECK(segment_distance({2, 1}, {0, 0}, {1, 0}) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("intersect examples") {
  auto ps = intersect(Polygon::rectangle(0, 2, 0, 2), Polygon::rectangle(1, 3, 1, 3));
  REQUIRE(ps.size() == 1);
  CHECK(ps[0].area() == doctest::Approx(1));
  CHECK(intersect(unit_square(0, 0), unit_square(1, 0)).empty());
  CHECK(intersect(unit_square(0, 0), unit_square(5, 5)).empty());

  // A bar across a U hits both prongs.
  Polygon u({{0, 0}, {3, 0}, {3, 2}, {2, 2}, {2, 1}, {1, 1}, {1, 2}, {0, 2}});
  auto prongs = intersect(u, Polygon::rectangle(-1, 4, 1.5, 3));
  CHECK(prongs.size() == 2);
  CHECK(total_area(prongs) == doctest::Approx(1.0));
}

TEST_CASE("union of adjacent squares") {
  std::vector<Polygon> two = {unit_square(0, 0), unit_square(1, 0)};
  auto u = union_adjacent(two);
  REQUIRE(u.size() == 1);
  CHECK(u[0].size() == 4);
  CHECK(u[0].area() == doctest::Approx(2));

  std::vector<Polygon> ell = {unit_square(0, 0), unit_square(1, 0), unit_square(0, 1)};
  auto l = union_adjacent(ell);
  REQUIRE(l.size() == 1);
  CHECK(l[0].size() == 6);
  CHECK(l[0].area() == doctest::Approx(3));

  std::vector<Polygon> apart = {unit_square(0, 0), unit_square(3, 0)};
  CHECK(union_adjacent(apart).size() == 2);

  // T-junction: one tall rectangle beside two stacked squares.
  std::vector<Polygon> tee = {Polygon::rectangle(0, 1, 0, 2), unit_square(1, 0), unit_square(1, 1)};
  auto t = union_adjacent(tee);
  REQUIRE(t.size() == 1);
  CHECK(t[0].size() == 4);
  CHECK(t[0].area() == doctest::Approx(4));
}

TEST_CASE("union refuses holes and pinches") {
  std::vector<Polygon> ring;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i != 1 || j != 1) ring.push_back(unit_square(i, j));
    }
  }
  auto r = union_adjacent(ring);
  CHECK(r.size() >= 2);
  CHECK(total_area(r) == doctest::Approx(8));
  for (const auto& p : r) CHECK(p.is_simple());

  std::vector<Polygon> diagonal = {unit_square(0, 0), unit_square(1, 1)};
  CHECK(union_adjacent(diagonal).size() == 2);
}

TEST_CASE("shared edges resolve T-junctions") {
  std::vector<Polygon> ps = {Polygon::rectangle(0, 1, 0, 2), unit_square(1, 0), unit_square(1, 1)};
  auto es = shared_edges(ps);
  // Two halves of the tall side plus the seam between the small squares.
  CHECK(es.size() == 3);
  double len = 0.0;
  for (const auto& e : es) {
    len += distance(e.a, e.b);
    CHECK(e.left != e.right);
  }
  CHECK(len == doctest::Approx(3));
}

TEST_CASE("merge collinear segments") {
  auto m = merge_collinear({{{0, 0}, {1, 1}}, {{2, 2}, {1, 1}}, {{3, 3}, {4, 4}}, {{0, 1}, {0, 2}}});
  CHECK(m.size() == 3);
  double len = 0.0;
  for (const auto& s : m) len += distance(s.a, s.b);
  CHECK(len == doctest::Approx(2 * std::sqrt(8.0) / 2 + std::sqrt(2.0) + 1));
}

TEST_CASE("convex parts cover the polygon") {
  Polygon u({{0, 0}, {3, 0}, {3, 2}, {2, 2}, {2, 1}, {1, 1}, {1, 2}, {0, 2}});
  CHECK_FALSE(u.is_convex());
  auto parts = convex_parts(u);
  CHECK(parts.size() >= 2);
  double s = 0.0;
  for (const auto& part : parts) s += oracle::loop_area(part);
  CHECK(s == doctest::Approx(5));
}

TEST_CASE("property: area oracle and split conservation on random polygons") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 500; ++trial) {
    auto loop = oracle::star(rng, {u(rng), u(rng)}, 0.3, 2.0);
    Polygon p(loop);
    REQUIRE(p.area() == doctest::Approx(oracle::loop_area(loop)).epsilon(1e-12));
    Vec2 a{u(rng), u(rng)};
    double c = u(rng);
    auto s = split_by_line(p, a, c);
    double got = total_area(s.pos) + total_area(s.neg);
    REQUIRE(std::abs(got - p.area()) <= 1e-9 * p.area());
    for (const auto& q : s.pos) {
      for (Point v : q.vertices()) REQUIRE(dot(a, v) + c >= -1e-9 * (1 + norm(a)));
    }
    for (const auto& q : s.neg) {
      for (Point v : q.vertices()) REQUIRE(dot(a, v) + c <= 1e-9 * (1 + norm(a)));
    }
  }
}

TEST_CASE("property: intersection agrees with a winding-number oracle") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-1, 1);
  std::uniform_real_distribution<double> probe(-3.5, 3.5);
  for (int trial = 0; trial < 1000; ++trial) {
    auto la = oracle::star(rng, {u(rng), u(rng)}, 0.4, 2.0);
    auto lb = oracle::star(rng, {u(rng), u(rng)}, 0.4, 2.0);
    Polygon a(la), b(lb);
    auto ab = intersect(a, b);
    auto ba = intersect(b, a);
    REQUIRE(total_area(ab) == doctest::Approx(total_area(ba)).epsilon(1e-9));
    REQUIRE(total_area(ab) <= std::min(a.area(), b.area()) * (1 + 1e-9));
    for (int k = 0; k < 20; ++k) {
      Point x{probe(rng), probe(rng)};
      if (oracle::boundary_distance(la, x) < 1e-6 || oracle::boundary_distance(lb, x) < 1e-6) continue;
      bool want = oracle::winding(la, x) != 0 && oracle::winding(lb, x) != 0;
      bool got = std::any_of(ab.begin(), ab.end(),
                             [&](const Polygon& q) { return contains(q, x) != Location::outside; });
      REQUIRE(got == want);
    }
  }
}

TEST_CASE("property: pieces of a polygon merge back into it") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 200; ++trial) {
    Polygon p(oracle::star(rng, {0, 0}, 0.5, 2.0));
    std::vector<Polygon> pieces = {p};
    for (int cut = 0; cut < 3; ++cut) {
      Vec2 a{u(rng), u(rng)};
      double c = 0.5 * u(rng);
      std::vector<Polygon> next;
      for (const auto& q : pieces) {
        auto s = split_by_line(q, a, c);
        next.insert(next.end(), s.pos.begin(), s.pos.end());
        next.insert(next.end(), s.neg.begin(), s.neg.end());
      }
      pieces = std::move(next);
    }
    auto merged = union_adjacent(pieces);
    REQUIRE(merged.size() == 1);
    REQUIRE(merged[0].area() == doctest::Approx(p.area()).epsilon(1e-9));
    REQUIRE(merged[0].is_simple());
  }
}

TEST_CASE("split examples on the unit square and a triangle") {
  Polygon sq = unit_square(0, 0);
  auto half = split_by_line(sq, {1, 0}, -0.5);
  REQUIRE(half.pos.size() == 1);
  REQUIRE(half.neg.size() == 1);
  CHECK(half.pos[0].area() == doctest::Approx(0.5));
  CHECK(half.neg[0].area() == doctest::Approx(0.5));
  CHECK(half.pos[0].bbox().min_x == doctest::Approx(0.5));

  auto all = split_by_line(sq, {1, 0}, 5);
  REQUIRE(all.pos.size() == 1);
  CHECK(all.neg.empty());

  // The line x + y = 2 is the hypotenuse: the positive side degenerates and
  // the pieces still add up to the whole triangle.
  std::vector<Point> tri = {{0, 0}, {2, 0}, {0, 2}};
  auto s = split_by_line(Polygon(tri), {1, 1}, -2);
  double sum = 0.0;
  for (const auto& p : s.pos) sum += oracle::loop_area(oracle::loop_of(p));
  for (const auto& p : s.neg) sum += oracle::loop_area(oracle::loop_of(p));
  CHECK(sum == doctest::Approx(2));
  CHECK(s.pos.empty());
}

TEST_CASE("intersection and union identities") {
  Polygon sq = unit_square(0, 0);
  auto same = intersect(sq, sq);
  REQUIRE(same.size() == 1);
  CHECK(same[0].area() == doctest::Approx(1));
  CHECK(same[0].size() == 4);

  std::vector<Polygon> halves = {Polygon::rectangle(0, 0.5, 0, 1), Polygon::rectangle(0.5, 1, 0, 1)};
  auto u = union_adjacent(halves);
  REQUIRE(u.size() == 1);
  CHECK(u[0].size() == 4);
  CHECK(u[0].area() == doctest::Approx(1));
}
