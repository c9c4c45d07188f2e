#include "plskel/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "plskel/errors.hpp"
#include "spatial.hpp"

namespace plskel {

namespace {

// Relative tolerance on normalized turn angles (convexity, ear tests).
constexpr double kTurnEps = 1e-12;

bool lex_less(Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

// b is redundant between its neighbours: a duplicate, a spike, or within eps
// of the chord a-c.
bool redundant(Point a, Point b, Point c, double eps) {
  if (distance(a, b) <= eps) return true;
  Vec2 ac = c - a;
  double len = norm(ac);
  if (len <= eps) return true;
  return std::abs(cross(ac, b - a)) / len <= eps;
}

void normalize_loop(std::vector<Point>& v, double eps) {
  std::size_t i = 0;
  std::size_t stable = 0;
  while (v.size() >= 3 && stable < v.size()) {
    std::size_t n = v.size();
    i %= n;
    if (redundant(v[(i + n - 1) % n], v[i], v[(i + 1) % n], eps)) {
      v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
      stable = 0;
      i = (i + v.size() - 1) % std::max<std::size_t>(v.size(), 1);
    } else {
      ++stable;
      ++i;
    }
  }
  if (v.size() < 3) v.clear();
}

bool finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

bool segments_touch(Point a, Point b, Point c, Point d, double eps) {
  double d1 = cross(b - a, c - a);
  double d2 = cross(b - a, d - a);
  double d3 = cross(d - c, a - c);
  double d4 = cross(d - c, b - c);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
      ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    return true;
  }
  return segment_distance(a, c, d) <= eps || segment_distance(b, c, d) <= eps ||
         segment_distance(c, a, b) <= eps || segment_distance(d, a, b) <= eps;
}

bool loop_is_convex(std::span<const Point> v) {
  std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    Vec2 e1 = v[i] - v[(i + n - 1) % n];
    Vec2 e2 = v[(i + 1) % n] - v[i];
    if (cross(e1, e2) < -kTurnEps * norm(e1) * norm(e2)) return false;
  }
  return true;
}

Point crossing(Point p, Point q, double sp, double sq) {
  // Canonical endpoint order keeps the crossing bit-identical when two
  // neighbouring regions split their shared edge.
  if (lex_less(q, p)) {
    std::swap(p, q);
    std::swap(sp, sq);
  }
  double t = sp / (sp - sq);
  return p + t * (q - p);
}

// Sutherland-Hodgman against the closed half-plane a.x + c >= 0.
std::vector<Point> clip_halfplane(std::span<const Point> loop, Vec2 a, double c,
                                  double tol) {
  std::size_t n = loop.size();
  std::vector<double> s(n);
  std::vector<int> sign(n);
  bool any_out = false;
  bool any_in = false;
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = dot(a, loop[i]) + c;
    sign[i] = s[i] > tol ? 1 : (s[i] < -tol ? -1 : 0);
    any_out |= sign[i] < 0;
    any_in |= sign[i] > 0;
  }
  if (!any_out) return {loop.begin(), loop.end()};
  if (!any_in) return {};
  std::vector<Point> out;
  out.reserve(n + 2);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = (i + 1) % n;
    if (sign[i] >= 0) out.push_back(loop[i]);
    if (sign[i] * sign[j] < 0) out.push_back(crossing(loop[i], loop[j], s[i], s[j]));
  }
  return out;
}

std::vector<Point> clip_convex(std::span<const Point> subject,
                               std::span<const Point> clipper) {
  std::vector<Point> cur(subject.begin(), subject.end());
  std::size_t n = clipper.size();
  for (std::size_t i = 0; i < n && cur.size() >= 3; ++i) {
    Point q0 = clipper[i];
    Vec2 d = clipper[(i + 1) % n] - q0;
    double len = norm(d);
    if (len <= 0) continue;
    Vec2 inward{-d.y / len, d.x / len};
    cur = clip_halfplane(cur, inward, -dot(inward, q0), kEpsGeom);
  }
  if (cur.size() < 3) cur.clear();
  return cur;
}

// Pieces thinner than kEpsGeom (2 * area / perimeter) are numerical slivers.
std::optional<Polygon> finish_piece(std::vector<Point> loop, int dim) {
  if (loop.size() < 3) return std::nullopt;
  Polygon p = Polygon::from_trusted(std::move(loop), dim);
  if (p.empty()) return std::nullopt;
  if (2.0 * p.area() <= kEpsGeom * p.perimeter()) return std::nullopt;
  return p;
}

bool in_triangle_closed(Point q, Point a, Point b, Point c) {
  auto side = [](Point u, Point v, Point w) {
    Vec2 e = v - u;
    Vec2 f = w - u;
    return cross(e, f) >= -kTurnEps * norm(e) * norm(f);
  };
  return side(a, b, q) && side(b, c, q) && side(c, a, q);
}

std::vector<std::array<int, 3>> triangulate(std::span<const Point> v) {
  std::vector<int> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<std::array<int, 3>> tris;
  std::size_t k = 0;
  while (idx.size() > 3) {
    std::size_t m = idx.size();
    bool clipped = false;
    std::size_t best = 0;
    double best_turn = -1e300;
    for (std::size_t step = 0; step < m && !clipped; ++step) {
      std::size_t kk = (k + step) % m;
      int ip = idx[(kk + m - 1) % m];
      int ic = idx[kk];
      int in = idx[(kk + 1) % m];
      Point a = v[ip], b = v[ic], c = v[in];
      Vec2 e1 = b - a;
      Vec2 e2 = c - b;
      double scale = norm(e1) * norm(e2);
      double turn = cross(e1, e2);
      if (std::abs(turn) <= kTurnEps * scale) {
        idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(kk));
        k = kk;
        clipped = true;
        break;
      }
      if (turn < 0) continue;
      if (turn / scale > best_turn) {
        best_turn = turn / scale;
        best = kk;
      }
      bool blocked = false;
      for (int other : idx) {
        if (other == ip || other == ic || other == in) continue;
        Point q = v[other];
        if (distance(q, a) <= kEpsGeom || distance(q, b) <= kEpsGeom ||
            distance(q, c) <= kEpsGeom) {
          continue;
        }
        if (in_triangle_closed(q, a, b, c)) {
          blocked = true;
          break;
        }
      }
      if (!blocked) {
        tris.push_back({ip, ic, in});
        idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(kk));
        k = kk;
        clipped = true;
      }
    }
    if (!clipped) {
      // Numerically stuck: cut the most convex corner.
      std::size_t kk = best;
      tris.push_back({idx[(kk + m - 1) % m], idx[kk], idx[(kk + 1) % m]});
      idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(kk));
      k = kk;
    }
  }
  if (idx.size() == 3 &&
      cross(v[idx[1]] - v[idx[0]], v[idx[2]] - v[idx[1]]) > 0) {
    tris.push_back({idx[0], idx[1], idx[2]});
  }
  return tris;
}

bool index_loop_convex(const std::vector<int>& loop, std::span<const Point> v) {
  std::size_t n = loop.size();
  for (std::size_t i = 0; i < n; ++i) {
    Vec2 e1 = v[loop[i]] - v[loop[(i + n - 1) % n]];
    Vec2 e2 = v[loop[(i + 1) % n]] - v[loop[i]];
    if (cross(e1, e2) < -kTurnEps * norm(e1) * norm(e2)) return false;
  }
  return true;
}

// Hertel-Mehlhorn: drop triangulation diagonals while pieces stay convex.
std::vector<std::vector<int>> merge_convex(std::vector<std::vector<int>> pieces,
                                           std::span<const Point> v) {
  bool merged = true;
  while (merged) {
    merged = false;
    for (std::size_t a = 0; a < pieces.size() && !merged; ++a) {
      for (std::size_t b = a + 1; b < pieces.size() && !merged; ++b) {
        const auto& pa = pieces[a];
        const auto& pb = pieces[b];
        for (std::size_t i = 0; i < pa.size() && !merged; ++i) {
          int u = pa[i];
          int w = pa[(i + 1) % pa.size()];
          for (std::size_t j = 0; j < pb.size(); ++j) {
            if (pb[j] != w || pb[(j + 1) % pb.size()] != u) continue;
            std::vector<int> loop;
            for (std::size_t t = 0; t < pa.size(); ++t) {
              loop.push_back(pa[(i + 1 + t) % pa.size()]);  // w ... u
            }
            for (std::size_t t = 2; t < pb.size(); ++t) {
              loop.push_back(pb[(j + t) % pb.size()]);  // interior of b
            }
            if (index_loop_convex(loop, v)) {
              pieces[a] = std::move(loop);
              pieces.erase(pieces.begin() + static_cast<std::ptrdiff_t>(b));
              merged = true;
            }
            break;
          }
        }
      }
    }
  }
  return pieces;
}

// Boundary of a polygon group as a set of directed pool edges.
class EdgeSet {
 public:
  // Adds a loop, cancelling opposite edges. Returns false (and leaves the
  // set untouched) if some edge is already present with the same direction.
  bool add(const std::vector<int>& loop) {
    std::size_t n = loop.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (edges_.contains(detail::edge_key(loop[i], loop[(i + 1) % n]))) {
        return false;
      }
    }
    for (std::size_t i = 0; i < n; ++i) toggle(loop[i], loop[(i + 1) % n]);
    return true;
  }
  void remove(const std::vector<int>& loop) {
    std::size_t n = loop.size();
    for (std::size_t i = 0; i < n; ++i) toggle(loop[(i + 1) % n], loop[i]);
  }
  // Single simple cycle through all edges, or nullopt.
  std::optional<std::vector<int>> cycle() const {
    std::unordered_map<int, int> next;
    std::unordered_set<int> has_in;
    for (auto key : edges_) {
      int u = static_cast<int>(key >> 32);
      int v = static_cast<int>(key & 0xffffffffu);
      if (!next.emplace(u, v).second) return std::nullopt;
      if (!has_in.insert(v).second) return std::nullopt;
    }
    if (next.empty()) return std::nullopt;
    int start = next.begin()->first;
    for (const auto& [u, v] : next) start = std::min(start, u);
    std::vector<int> out;
    int cur = start;
    do {
      out.push_back(cur);
      auto it = next.find(cur);
      if (it == next.end()) return std::nullopt;
      cur = it->second;
    } while (cur != start && out.size() <= next.size());
    if (cur != start || out.size() != next.size()) return std::nullopt;
    return out;
  }

 private:
  void toggle(int u, int v) {
    auto rev = detail::edge_key(v, u);
    if (edges_.erase(rev) == 0) edges_.insert(detail::edge_key(u, v));
  }
  std::unordered_set<std::uint64_t> edges_;
};

}  // namespace

double segment_distance(Point p, Point a, Point b) {
  Vec2 ab = b - a;
  double len2 = dot(ab, ab);
  if (len2 <= 0) return distance(p, a);
  double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return distance(p, a + t * ab);
}

BBox BBox::of(std::span<const Point> pts) {
  BBox b{1e300, 1e300, -1e300, -1e300};
  for (Point p : pts) {
    b.min_x = std::min(b.min_x, p.x);
    b.min_y = std::min(b.min_y, p.y);
    b.max_x = std::max(b.max_x, p.x);
    b.max_y = std::max(b.max_y, p.y);
  }
  return b;
}

void BBox::extend(const BBox& o) {
  min_x = std::min(min_x, o.min_x);
  min_y = std::min(min_y, o.min_y);
  max_x = std::max(max_x, o.max_x);
  max_y = std::max(max_y, o.max_y);
}

bool operator==(const Interval& a, const Interval& b) {
  return a.lo == b.lo && a.hi == b.hi;
}

Hyperrectangle::Hyperrectangle(std::vector<Interval> ranges)
    : ranges_(std::move(ranges)) {
  if (ranges_.empty()) throw InvalidGeometry("hyperrectangle needs at least one dimension");
  for (const auto& r : ranges_) {
    if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || !(r.lo < r.hi)) {
      throw InvalidGeometry("hyperrectangle bounds must satisfy min < max");
    }
  }
}

double Hyperrectangle::measure() const {
  double m = 1.0;
  for (const auto& r : ranges_) m *= r.hi - r.lo;
  return m;
}

bool Hyperrectangle::contains(Point p, double eps) const {
  if (ranges_.empty()) return false;
  if (p.x < ranges_[0].lo - eps || p.x > ranges_[0].hi + eps) return false;
  if (dim() == 1) return std::abs(p.y) <= kStripHalfHeight + eps;
  return p.y >= ranges_[1].lo - eps && p.y <= ranges_[1].hi + eps;
}

Polygon Hyperrectangle::polygon() const {
  if (dim() == 1) return Polygon::interval(ranges_[0].lo, ranges_[0].hi);
  if (dim() == 2) {
    return Polygon::rectangle(ranges_[0].lo, ranges_[0].hi, ranges_[1].lo,
                              ranges_[1].hi);
  }
  throw InvalidGeometry("only 1-D and 2-D domains have a polygon form");
}

bool operator==(const Hyperrectangle& a, const Hyperrectangle& b) {
  return a.ranges_.size() == b.ranges_.size() &&
         std::equal(a.ranges_.begin(), a.ranges_.end(), b.ranges_.begin());
}

Polygon::Polygon(std::vector<Point> loop, int dim) : vertices_(std::move(loop)), dim_(dim) {
  if (dim_ != 1 && dim_ != 2) throw InvalidGeometry("polygon dimension must be 1 or 2");
  for (Point p : vertices_) {
    if (!finite(p)) throw InvalidGeometry("polygon has non-finite coordinates");
  }
  normalize_loop(vertices_, kEpsGeom);
  if (vertices_.size() < 3) throw InvalidGeometry("polygon degenerates to fewer than 3 vertices");
  finish();
  if (!(area_ > 0)) throw InvalidGeometry("polygon has no area");
  if (!is_simple()) throw InvalidGeometry("polygon is self-intersecting");
}

Polygon Polygon::interval(double lo, double hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw InvalidGeometry("interval needs lo < hi");
  }
  return Polygon({{lo, -kStripHalfHeight},
                  {hi, -kStripHalfHeight},
                  {hi, kStripHalfHeight},
                  {lo, kStripHalfHeight}},
                 1);
}

Polygon Polygon::rectangle(double min_x, double max_x, double min_y, double max_y) {
  return Polygon({{min_x, min_y}, {max_x, min_y}, {max_x, max_y}, {min_x, max_y}}, 2);
}

Polygon Polygon::from_trusted(std::vector<Point> loop, int dim) {
  Polygon p;
  p.dim_ = dim;
  p.vertices_ = std::move(loop);
  normalize_loop(p.vertices_, kEpsGeom);
  if (p.vertices_.empty()) return Polygon{};
  p.finish();
  if (!(p.area_ > 0)) return Polygon{};
  return p;
}

void Polygon::finish() {
  double a = signed_area(vertices_);
  if (a < 0) {
    std::reverse(vertices_.begin(), vertices_.end());
    a = -a;
  }
  // Start each loop at its lexicographically smallest vertex so that equal
  // polygons compare and serialize identically.
  auto first = std::min_element(vertices_.begin(), vertices_.end(), lex_less);
  std::rotate(vertices_.begin(), first, vertices_.end());
  area_ = a;
  bbox_ = BBox::of(vertices_);
}

double Polygon::perimeter() const {
  double p = 0.0;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    p += distance(vertices_[i], vertices_[(i + 1) % vertices_.size()]);
  }
  return p;
}

bool Polygon::is_convex() const { return loop_is_convex(vertices_); }

bool Polygon::is_simple() const {
  std::size_t n = vertices_.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    Point a = vertices_[i], b = vertices_[(i + 1) % n];
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // adjacent through the wrap
      Point c = vertices_[j], d = vertices_[(j + 1) % n];
      if (segments_touch(a, b, c, d, kEpsGeom)) return false;
    }
  }
  return true;
}

double signed_area(std::span<const Point> loop) {
  double s = 0.0;
  std::size_t n = loop.size();
  for (std::size_t i = 0; i < n; ++i) s += cross(loop[i], loop[(i + 1) % n]);
  return 0.5 * s;
}

std::vector<std::vector<Point>> convex_parts(const Polygon& p) {
  auto v = p.vertices();
  if (p.is_convex()) return {std::vector<Point>(v.begin(), v.end())};
  std::vector<std::vector<int>> pieces;
  for (const auto& t : triangulate(v)) pieces.push_back({t[0], t[1], t[2]});
  pieces = merge_convex(std::move(pieces), v);
  std::vector<std::vector<Point>> out;
  out.reserve(pieces.size());
  for (const auto& piece : pieces) {
    std::vector<Point> loop;
    for (int i : piece) loop.push_back(v[i]);
    out.push_back(std::move(loop));
  }
  return out;
}

ConvexCover::ConvexCover(const Polygon& p) : polygon(&p), parts(convex_parts(p)) {
  boxes.reserve(parts.size());
  for (const auto& part : parts) boxes.push_back(BBox::of(part));
}

SplitResult split_by_line(const Polygon& p, Vec2 a, double c) {
  if (p.empty()) throw InvalidGeometry("split_by_line on an empty polygon");
  SplitResult r;
  double tol = kEpsGeom * (1.0 + norm(a));
  bool any_pos = false;
  bool any_neg = false;
  for (Point v : p.vertices()) {
    double s = dot(a, v) + c;
    any_pos |= s > tol;
    any_neg |= s < -tol;
  }
  if (!any_neg) {
    r.pos.push_back(p);
    return r;
  }
  if (!any_pos) {
    r.neg.push_back(p);
    return r;
  }
  auto parts = convex_parts(p);
  Vec2 na{-a.x, -a.y};
  for (const auto& part : parts) {
    if (auto piece = finish_piece(clip_halfplane(part, a, c, tol), p.dim())) {
      r.pos.push_back(std::move(*piece));
    }
    if (auto piece = finish_piece(clip_halfplane(part, na, -c, tol), p.dim())) {
      r.neg.push_back(std::move(*piece));
    }
  }
  if (parts.size() > 1) {
    if (r.pos.size() > 1) r.pos = union_adjacent(r.pos);
    if (r.neg.size() > 1) r.neg = union_adjacent(r.neg);
  }
  return r;
}

std::vector<Polygon> intersect(const ConvexCover& p, const ConvexCover& q) {
  if (!p.polygon->bbox().overlaps(q.polygon->bbox())) return {};
  std::vector<Polygon> pieces;
  int dim = p.polygon->dim();
  for (std::size_t i = 0; i < p.parts.size(); ++i) {
    for (std::size_t j = 0; j < q.parts.size(); ++j) {
      if (!p.boxes[i].overlaps(q.boxes[j])) continue;
      if (auto piece = finish_piece(clip_convex(p.parts[i], q.parts[j]), dim)) {
        pieces.push_back(std::move(*piece));
      }
    }
  }
  if (pieces.size() <= 1) return pieces;
  return union_adjacent(pieces);
}

std::vector<Polygon> intersect(const Polygon& p, const Polygon& q) {
  if (p.empty() || q.empty()) return {};
  if (!p.bbox().overlaps(q.bbox())) return {};
  return intersect(ConvexCover(p), ConvexCover(q));
}

Location contains(const Polygon& p, Point x) {
  if (p.empty() || !p.bbox().contains(x)) return Location::outside;
  auto v = p.vertices();
  std::size_t n = v.size();
  int winding = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Point a = v[i], b = v[(i + 1) % n];
    if (segment_distance(x, a, b) <= kEpsGeom) return Location::boundary;
    if (a.y <= x.y) {
      if (b.y > x.y && cross(b - a, x - a) > 0) ++winding;
    } else if (b.y <= x.y && cross(b - a, x - a) < 0) {
      --winding;
    }
  }
  return winding != 0 ? Location::inside : Location::outside;
}

namespace detail {

PlanarIndex build_planar_index(std::span<const Polygon> ps, double eps) {
  PlanarIndex out;
  if (ps.empty()) return out;
  BBox box = ps.front().bbox();
  std::size_t total = 0;
  for (const auto& p : ps) {
    box.extend(p.bbox());
    total += p.size();
  }
  VertexPool pool(box, total, eps);
  std::vector<std::vector<int>> raw;
  raw.reserve(ps.size());
  for (const auto& p : ps) {
    std::vector<int> ids;
    for (Point v : p.vertices()) {
      int id = pool.intern(v);
      if (ids.empty() || ids.back() != id) ids.push_back(id);
    }
    while (ids.size() > 1 && ids.front() == ids.back()) ids.pop_back();
    raw.push_back(std::move(ids));
  }
  const auto& pts = pool.points();
  out.loops.reserve(raw.size());
  std::vector<std::pair<double, int>> on_edge;
  for (const auto& ids : raw) {
    std::vector<int> loop;
    std::size_t n = ids.size();
    for (std::size_t i = 0; i < n; ++i) {
      int u = ids[i];
      int v = ids[(i + 1) % n];
      loop.push_back(u);
      Point a = pts[u], b = pts[v];
      Vec2 ab = b - a;
      double len2 = dot(ab, ab);
      if (len2 <= 0) continue;
      BBox eb{std::min(a.x, b.x) - eps, std::min(a.y, b.y) - eps,
              std::max(a.x, b.x) + eps, std::max(a.y, b.y) + eps};
      on_edge.clear();
      pool.grid().query(eb, [&](int w) {
        if (w == u || w == v) return;
        double t = dot(pts[w] - a, ab) / len2;
        if (t <= 0 || t >= 1) return;
        if (segment_distance(pts[w], a, b) <= eps) on_edge.emplace_back(t, w);
      });
      std::sort(on_edge.begin(), on_edge.end());
      for (const auto& [t, w] : on_edge) loop.push_back(w);
    }
    out.loops.push_back(std::move(loop));
  }
  out.pool = pts;
  return out;
}

}  // namespace detail

std::vector<SharedEdge> shared_edges(std::span<const Polygon> ps) {
  auto index = detail::build_planar_index(ps);
  std::unordered_map<std::uint64_t, std::size_t> owner;
  for (std::size_t i = 0; i < index.loops.size(); ++i) {
    const auto& loop = index.loops[i];
    for (std::size_t k = 0; k < loop.size(); ++k) {
      owner.emplace(detail::edge_key(loop[k], loop[(k + 1) % loop.size()]), i);
    }
  }
  std::vector<SharedEdge> out;
  for (std::size_t i = 0; i < index.loops.size(); ++i) {
    const auto& loop = index.loops[i];
    for (std::size_t k = 0; k < loop.size(); ++k) {
      int u = loop[k];
      int v = loop[(k + 1) % loop.size()];
      auto it = owner.find(detail::edge_key(v, u));
      if (it == owner.end() || it->second <= i) continue;
      out.push_back({index.pool[u], index.pool[v], i, it->second});
    }
  }
  return out;
}

std::vector<Polygon> union_adjacent(std::span<const Polygon> ps) {
  std::size_t n = ps.size();
  if (n <= 1) return {ps.begin(), ps.end()};
  int dim = ps.front().dim();
  auto index = detail::build_planar_index(ps);

  std::unordered_map<std::uint64_t, std::size_t> owner;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& loop = index.loops[i];
    for (std::size_t k = 0; k < loop.size(); ++k) {
      owner.emplace(detail::edge_key(loop[k], loop[(k + 1) % loop.size()]), i);
    }
  }
  std::vector<std::vector<std::size_t>> adj(n);
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i) {
    const auto& loop = index.loops[i];
    for (std::size_t k = 0; k < loop.size(); ++k) {
      auto it = owner.find(detail::edge_key(loop[(k + 1) % loop.size()], loop[k]));
      if (it == owner.end() || it->second == i) continue;
      adj[i].push_back(it->second);
      parent[find(i)] = find(it->second);
    }
  }
  for (auto& a : adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }

  std::vector<std::vector<std::size_t>> groups;
  std::unordered_map<std::size_t, std::size_t> group_of_root;
  for (std::size_t i = 0; i < n; ++i) {
    auto [it, fresh] = group_of_root.emplace(find(i), groups.size());
    if (fresh) groups.emplace_back();
    groups[it->second].push_back(i);
  }

  auto to_polygon = [&](const std::vector<int>& cycle) {
    std::vector<Point> loop;
    loop.reserve(cycle.size());
    for (int id : cycle) loop.push_back(index.pool[id]);
    return Polygon::from_trusted(std::move(loop), dim);
  };

  std::vector<Polygon> out;
  for (const auto& group : groups) {
    if (group.size() == 1) {
      out.push_back(ps[group.front()]);
      continue;
    }
    EdgeSet all;
    bool clean = true;
    for (std::size_t i : group) clean = clean && all.add(index.loops[i]);
    if (clean) {
      if (auto cycle = all.cycle()) {
        Polygon merged = to_polygon(*cycle);
        if (!merged.empty()) {
          out.push_back(std::move(merged));
          continue;
        }
      }
    }
    // Hole or pinch somewhere: grow simple components greedily.
    std::unordered_set<std::size_t> assigned;
    for (std::size_t seed : group) {
      if (assigned.contains(seed)) continue;
      EdgeSet boundary;
      boundary.add(index.loops[seed]);
      assigned.insert(seed);
      std::vector<std::size_t> members{seed};
      std::vector<std::size_t> frontier(adj[seed].begin(), adj[seed].end());
      bool progress = true;
      while (progress) {
        progress = false;
        std::vector<std::size_t> retry;
        for (std::size_t cand : frontier) {
          if (assigned.contains(cand)) continue;
          if (boundary.add(index.loops[cand])) {
            if (boundary.cycle()) {
              assigned.insert(cand);
              members.push_back(cand);
              progress = true;
              for (std::size_t nb : adj[cand]) retry.push_back(nb);
              continue;
            }
            boundary.remove(index.loops[cand]);
          }
          retry.push_back(cand);
        }
        std::sort(retry.begin(), retry.end());
        retry.erase(std::unique(retry.begin(), retry.end()), retry.end());
        frontier = std::move(retry);
      }
      if (members.size() == 1) {
        out.push_back(ps[seed]);
      } else {
        Polygon merged = to_polygon(*boundary.cycle());
        if (merged.empty()) {
          for (std::size_t m : members) out.push_back(ps[m]);
        } else {
          out.push_back(std::move(merged));
        }
      }
    }
  }
  return out;
}


std::vector<Segment> merge_collinear(std::vector<Segment> segments) {
  struct Line {
    Vec2 dir;
    double offset;
    std::vector<std::pair<double, double>> spans;
  };
  std::vector<Line> lines;
  for (const auto& s : segments) {
    Vec2 d = s.b - s.a;
    double len = norm(d);
    if (len <= kEpsGeom) continue;
    d = (1.0 / len) * d;
    if (d.x < 0 || (d.x == 0 && d.y < 0)) d = -1.0 * d;
    Vec2 n{-d.y, d.x};
    double off = dot(n, s.a);
    auto it = std::find_if(lines.begin(), lines.end(), [&](const Line& l) {
      return std::abs(cross(l.dir, d)) <= 1e-9 && std::abs(l.offset - off) <= kEpsGeom;
    });
    if (it == lines.end()) {
      lines.push_back({d, off, {}});
      it = std::prev(lines.end());
    }
    double t0 = dot(it->dir, s.a);
    double t1 = dot(it->dir, s.b);
    it->spans.emplace_back(std::min(t0, t1), std::max(t0, t1));
  }
  std::vector<Segment> out;
  for (auto& l : lines) {
    std::sort(l.spans.begin(), l.spans.end());
    Vec2 n{-l.dir.y, l.dir.x};
    auto at = [&](double t) { return t * l.dir + l.offset * n; };
    double lo = l.spans.front().first;
    double hi = l.spans.front().second;
    for (std::size_t i = 1; i <= l.spans.size(); ++i) {
      if (i < l.spans.size() && l.spans[i].first <= hi + kEpsGeom) {
        hi = std::max(hi, l.spans[i].second);
        continue;
      }
      out.push_back({at(lo), at(hi)});
      if (i < l.spans.size()) {
        lo = l.spans[i].first;
        hi = l.spans[i].second;
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Segment& u, const Segment& v) {
    if (u.a.x != v.a.x) return u.a.x < v.a.x;
    if (u.a.y != v.a.y) return u.a.y < v.a.y;
    if (u.b.x != v.b.x) return u.b.x < v.b.x;
    return u.b.y < v.b.y;
  });
  return out;
}

}  // namespace plskel
