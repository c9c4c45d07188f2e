#include "plskel/decision.hpp"

#include <algorithm>
#include <limits>

#include "plskel/errors.hpp"

namespace plskel {

namespace {

struct Tile {
  Polygon polygon;
  std::vector<Affine> logits;
};

std::vector<Tile> common_tiles(std::span<const Skeleton> fs) {
  std::vector<Tile> tiles;
  bool shared = std::all_of(fs.begin() + 1, fs.end(),
                            [&](const Skeleton& s) { return same_tessellation(fs.front(), s); });
  if (shared) {
    for (std::size_t i = 0; i < fs.front().size(); ++i) {
      Tile t{fs.front()[i].polygon, {}};
      for (const auto& s : fs) t.logits.push_back(s[i].affine);
      tiles.push_back(std::move(t));
    }
    return tiles;
  }
  for (const auto& r : fs.front().regions()) tiles.push_back({r.polygon, {r.affine}});
  for (const auto& s : fs.subspan(1)) {
    std::vector<ConvexCover> covers;
    for (const auto& r : s.regions()) covers.emplace_back(r.polygon);
    std::vector<Tile> next;
    for (const auto& t : tiles) {
      ConvexCover tc(t.polygon);
      for (std::size_t k = 0; k < s.size(); ++k) {
        for (auto& piece : intersect(tc, covers[k])) {
          Tile nt{std::move(piece), t.logits};
          nt.logits.push_back(s[k].affine);
          next.push_back(std::move(nt));
        }
      }
    }
    tiles = std::move(next);
  }
  double total = 0.0;
  for (const auto& t : tiles) total += t.polygon.area();
  double measure = fs.front().bounds().measure();
  if (std::abs(total - measure) > 1e-6 * measure) {
    throw StructuralError("membership skeletons do not tessellate a common domain");
  }
  return tiles;
}

std::size_t argmax_at(const std::vector<Affine>& fs, Point v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < fs.size(); ++i) {
    if (fs[i](v) > fs[best](v)) best = i;
  }
  return best;
}

// The base class wins at every vertex, hence on the whole tile.
bool dominates(const Polygon& poly, const std::vector<Affine>& fs, std::size_t base) {
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (i == base) continue;
    Affine diff = fs[base] - fs[i];
    double tol = kEpsGeom * (1.0 + norm(diff.gradient));
    for (Point v : poly.vertices()) {
      if (diff(v) < -tol) return false;
    }
  }
  return true;
}

std::vector<BoundarySegment> boundary_of(const std::vector<MembershipPolygon>& mps) {
  std::vector<Polygon> polys;
  polys.reserve(mps.size());
  for (const auto& m : mps) polys.push_back(m.polygon);
  std::vector<BoundarySegment> out;
  for (const auto& e : shared_edges(polys)) {
    int a = mps[e.left].class_index;
    int b = mps[e.right].class_index;
    if (a == b) continue;
    out.push_back({e.a, e.b, std::min(a, b), std::max(a, b)});
  }
  return out;
}

}  // namespace

PairSplit split_region_by_pair(const Polygon& region, const Affine& fi, const Affine& fj) {
  Affine diff = fi - fj;
  auto s = split_by_line(region, diff.gradient, diff.offset);
  return {std::move(s.pos), std::move(s.neg)};
}

DecisionMap extract_decision_map(std::span<const Skeleton> fs) {
  if (fs.empty()) throw InputError("decision map needs at least one membership skeleton");
  for (const auto& f : fs) {
    if (!(f.bounds() == fs.front().bounds())) {
      throw StructuralError("membership skeletons have different bounds");
    }
    if (f.size() == 0) throw StructuralError("empty membership skeleton");
  }
  DecisionMap dm;
  dm.bounds = fs.front().bounds();
  dm.single_logit = fs.size() == 1;
  dm.num_classes = dm.single_logit ? 2 : static_cast<int>(fs.size());

  auto tiles = common_tiles(fs);
  if (dm.single_logit) {
    for (auto& t : tiles) t.logits.insert(t.logits.begin(), Affine{});
  }

  auto k = static_cast<std::size_t>(dm.num_classes);
  std::vector<std::vector<Polygon>> per_class(k);
  for (auto& tile : tiles) {
    const auto& f = tile.logits;
    std::size_t base = argmax_at(f, tile.polygon[0]);
    if (dominates(tile.polygon, f, base)) {
      per_class[base].push_back(std::move(tile.polygon));
      continue;
    }
    // Candidate membership polygons of this tile, refined one class at a time.
    std::vector<std::vector<Polygon>> cmp(k);
    std::vector<std::size_t> keys{base};
    cmp[base].push_back(std::move(tile.polygon));
    for (std::size_t i = 0; i < k; ++i) {
      if (i == base) continue;
      std::vector<Polygon> taken;
      for (std::size_t key : keys) {
        std::vector<Polygon> kept;
        for (const auto& reg : cmp[key]) {
          auto split = split_region_by_pair(reg, f[key], f[i]);
          for (auto& p : split.pos) kept.push_back(std::move(p));
          for (auto& p : split.neg) taken.push_back(std::move(p));
        }
        cmp[key] = std::move(kept);
      }
      cmp[i] = std::move(taken);
      keys.push_back(i);
    }
    for (std::size_t key : keys) {
      for (auto& p : cmp[key]) per_class[key].push_back(std::move(p));
    }
  }

  for (std::size_t c = 0; c < k; ++c) {
    auto merged = per_class[c].size() > 1 ? union_adjacent(per_class[c]) : per_class[c];
    for (auto& p : merged) dm.polygons.push_back({std::move(p), static_cast<int>(c)});
  }
  dm.boundary = boundary_of(dm.polygons);
  return dm;
}

int classify(const DecisionMap& dm, Point x) {
  if (!dm.bounds.contains(x)) throw OutOfDomain("point outside the decision map bounds");
  int best = std::numeric_limits<int>::max();
  for (const auto& mp : dm.polygons) {
    if (mp.class_index >= best || !mp.polygon.bbox().contains(x)) continue;
    if (contains(mp.polygon, x) != Location::outside) best = mp.class_index;
  }
  if (best != std::numeric_limits<int>::max()) return best;
  // Inside a dropped sliver: nearest polygon.
  double best_d = std::numeric_limits<double>::infinity();
  int cls = 0;
  for (const auto& mp : dm.polygons) {
    auto v = mp.polygon.vertices();
    for (std::size_t i = 0; i < v.size(); ++i) {
      double d = segment_distance(x, v[i], v[(i + 1) % v.size()]);
      if (d < best_d) {
        best_d = d;
        cls = mp.class_index;
      }
    }
  }
  return cls;
}

}  // namespace plskel
