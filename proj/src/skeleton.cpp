#include "plskel/skeleton.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "plskel/errors.hpp"
#include "tagging.hpp"

namespace plskel {

namespace {

bool close_rel(double a, double b, double eps) {
  return std::abs(a - b) <= eps * (1.0 + std::max(std::abs(a), std::abs(b)));
}

}  // namespace

std::string Stage::name() const {
  return (activated ? "f" : "g") + std::to_string(layer);
}

Stage Stage::parse(std::string_view text) {
  if (text.size() < 2 || (text[0] != 'f' && text[0] != 'g')) {
    throw InputError("bad stage tag '" + std::string(text) + "'");
  }
  int layer = 0;
  auto [ptr, ec] = std::from_chars(text.data() + 1, text.data() + text.size(), layer);
  if (ec != std::errc{} || ptr != text.data() + text.size() || layer < 1) {
    throw InputError("bad stage tag '" + std::string(text) + "'");
  }
  return {layer, text[0] == 'f'};
}

bool same_affine(const Affine& a, const Affine& b) {
  constexpr double eps = 1e-12;
  return close_rel(a.gradient.x, b.gradient.x, eps) &&
         close_rel(a.gradient.y, b.gradient.y, eps) &&
         close_rel(a.offset, b.offset, eps);
}

LinearRegion make_region(Polygon polygon, const Affine& f, Stage created) {
  LinearRegion r{std::move(polygon), {}, f};
  r.vertices.reserve(r.polygon.size());
  for (Point p : r.polygon.vertices()) r.vertices.push_back({p, f(p), created});
  return r;
}

namespace detail {

TagIndex::TagIndex(const Hyperrectangle& bounds, std::span<const Skeleton> sources)
    : pool_(bounds.polygon().bbox(),
            [&] {
              std::size_t n = 0;
              for (const auto& s : sources) {
                for (const auto& r : s.regions()) n += r.vertices.size();
              }
              return n;
            }(),
            kEpsGeom) {
  for (const auto& s : sources) {
    for (const auto& r : s.regions()) {
      for (const auto& v : r.vertices) {
        auto id = static_cast<std::size_t>(pool_.intern(v.point));
        if (id == tags_.size()) {
          tags_.push_back(v.created);
        } else if (v.created.ordinal() < tags_[id].ordinal()) {
          tags_[id] = v.created;
        }
      }
    }
  }
}

std::optional<Stage> TagIndex::find(Point p) const {
  int id = pool_.find(p);
  if (id < 0) return std::nullopt;
  return tags_[static_cast<std::size_t>(id)];
}

LinearRegion TagIndex::region(Polygon polygon, const Affine& f, Stage fresh) const {
  LinearRegion r = make_region(std::move(polygon), f, fresh);
  for (auto& v : r.vertices) {
    if (auto tag = find(v.point)) v.created = *tag;
  }
  return r;
}

}  // namespace detail

Skeleton::Skeleton(Hyperrectangle bounds, std::vector<LinearRegion> regions, Stage stage)
    : bounds_(std::move(bounds)), regions_(std::move(regions)), stage_(stage) {}

std::optional<std::size_t> Skeleton::locate(Point x) const {
  for (std::size_t i = 0; i < regions_.size(); ++i) {
    const auto& poly = regions_[i].polygon;
    if (!poly.bbox().contains(x)) continue;
    if (contains(poly, x) != Location::outside) return i;
  }
  return std::nullopt;
}

double Skeleton::evaluate(Point x) const {
  if (!bounds_.contains(x)) throw OutOfDomain("point outside the skeleton bounds");
  if (regions_.empty()) throw StructuralError("skeleton has no regions");
  if (auto i = locate(x)) return regions_[*i].affine(x);
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < regions_.size(); ++i) {
    auto v = regions_[i].polygon.vertices();
    for (std::size_t k = 0; k < v.size(); ++k) {
      double d = segment_distance(x, v[k], v[(k + 1) % v.size()]);
      if (d < best_d) {
        best_d = d;
        best = i;
      }
    }
  }
  return regions_[best].affine(x);
}

Skeleton initial_skeleton(Vec2 a, double c, const Hyperrectangle& bounds) {
  if (bounds.dim() != 1 && bounds.dim() != 2) {
    throw UnsupportedDimension("only 1-D and 2-D input domains are supported");
  }
  if (bounds.dim() == 1) a.y = 0.0;
  Stage g1{1, false};
  std::vector<LinearRegion> regions;
  regions.push_back(make_region(bounds.polygon(), Affine{a, c}, g1));
  return Skeleton(bounds, std::move(regions), g1);
}

bool same_tessellation(const Skeleton& a, const Skeleton& b) {
  if (!(a.bounds() == b.bounds()) || a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto va = a[i].polygon.vertices();
    auto vb = b[i].polygon.vertices();
    if (va.size() != vb.size()) return false;
    for (std::size_t k = 0; k < va.size(); ++k) {
      if (distance(va[k], vb[k]) > kEpsGeom) return false;
    }
  }
  return true;
}

Skeleton linear_combination(std::span<const Skeleton> ss, std::span<const double> weights,
                            double bias, std::optional<Stage> stage) {
  if (ss.empty()) throw StructuralError("linear_combination needs at least one skeleton");
  if (weights.size() != ss.size()) {
    throw StructuralError("linear_combination: one weight per skeleton required");
  }
  for (const auto& s : ss.subspan(1)) {
    if (!same_tessellation(ss.front(), s)) {
      throw StructuralError("linear_combination: skeletons do not share a tessellation");
    }
  }
  Stage out_stage = stage.value_or(ss.front().stage().next_pre());
  std::vector<LinearRegion> regions;
  regions.reserve(ss.front().size());
  for (std::size_t i = 0; i < ss.front().size(); ++i) {
    LinearRegion r = ss.front()[i];
    r.affine = Affine{{0.0, 0.0}, bias};
    for (auto& v : r.vertices) v.value = bias;
    for (std::size_t j = 0; j < ss.size(); ++j) {
      const auto& src = ss[j][i];
      r.affine = r.affine + weights[j] * src.affine;
      for (std::size_t k = 0; k < r.vertices.size(); ++k) {
        r.vertices[k].value += weights[j] * src.vertices[k].value;
      }
    }
    regions.push_back(std::move(r));
  }
  return Skeleton(ss.front().bounds(), std::move(regions), out_stage);
}

bool ValidationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

const CheckResult& ValidationReport::check(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return c;
  }
  throw std::out_of_range("no validation check named " + std::string(name));
}

ValidationReport validate(const Skeleton& s) {
  ValidationReport report;
  const auto regions = s.regions();
  const auto& bounds = s.bounds();

  CheckResult geom{"geometry", true, {}, 0.0};
  for (std::size_t i = 0; i < regions.size(); ++i) {
    const auto& poly = regions[i].polygon;
    bool ok = !poly.empty() && poly.area() > 0 && poly.is_simple();
    for (Point p : poly.vertices()) ok = ok && bounds.contains(p);
    if (!ok) {
      geom.passed = false;
      geom.offending.push_back(i);
    }
  }

  CheckResult affine{"affine", true, {}, 0.0};
  for (std::size_t i = 0; i < regions.size(); ++i) {
    const auto& r = regions[i];
    bool ok = r.vertices.size() == r.polygon.size();
    for (std::size_t k = 0; ok && k < r.vertices.size(); ++k) {
      const auto& v = r.vertices[k];
      ok = distance(v.point, r.polygon[k]) <= kEpsGeom && std::isfinite(v.value);
      double err = std::abs(v.value - r.affine(v.point));
      affine.worst = std::max(affine.worst, err / (1.0 + std::abs(v.value)));
      ok = ok && err <= kEpsVal * (1.0 + std::abs(v.value));
    }
    if (!ok) {
      affine.passed = false;
      affine.offending.push_back(i);
    }
  }

  CheckResult tess{"tessellation", true, {}, 0.0};
  double total = 0.0;
  for (const auto& r : regions) total += r.polygon.area();
  double measure = bounds.dim() <= 2 ? bounds.measure() : 0.0;
  tess.worst = std::abs(total - measure) / measure;
  if (regions.empty() || tess.worst > kEpsArea) tess.passed = false;
  {
    std::vector<ConvexCover> covers;
    covers.reserve(regions.size());
    for (const auto& r : regions) covers.emplace_back(r.polygon);
    for (std::size_t i = 0; i < regions.size(); ++i) {
      for (std::size_t j = i + 1; j < regions.size(); ++j) {
        if (!regions[i].polygon.bbox().overlaps(regions[j].polygon.bbox(), 0.0)) continue;
        double overlap = 0.0;
        for (const auto& piece : intersect(covers[i], covers[j])) overlap += piece.area();
        if (overlap > kEpsArea * measure) {
          tess.passed = false;
          tess.offending.push_back(i);
          tess.offending.push_back(j);
          tess.worst = std::max(tess.worst, overlap / measure);
        }
      }
    }
  }

  CheckResult cont{"continuity", true, {}, 0.0};
  for (std::size_t i = 0; i < regions.size(); ++i) {
    for (const auto& v : regions[i].vertices) {
      for (std::size_t j = 0; j < regions.size(); ++j) {
        if (j == i || !regions[j].polygon.bbox().contains(v.point)) continue;
        if (contains(regions[j].polygon, v.point) != Location::boundary) continue;
        double a = regions[i].affine(v.point);
        double b = regions[j].affine(v.point);
        double err = std::abs(a - b) / (1.0 + std::abs(a));
        cont.worst = std::max(cont.worst, err);
        if (err > kEpsVal) {
          cont.passed = false;
          cont.offending.push_back(i);
        }
      }
    }
  }
  for (auto* c : {&tess, &cont}) {
    std::sort(c->offending.begin(), c->offending.end());
    c->offending.erase(std::unique(c->offending.begin(), c->offending.end()),
                       c->offending.end());
  }

  report.checks = {std::move(geom), std::move(affine), std::move(tess), std::move(cont)};
  return report;
}


std::vector<Segment> critical_edges(const Skeleton& s) {
  std::vector<Polygon> polys;
  polys.reserve(s.size());
  for (const auto& r : s.regions()) polys.push_back(r.polygon);
  std::vector<Segment> segs;
  for (const auto& e : shared_edges(polys)) {
    const Affine& a = s[e.left].affine;
    const Affine& b = s[e.right].affine;
    Vec2 dg = a.gradient - b.gradient;
    if (norm(dg) <= 1e-12 * (1.0 + norm(a.gradient))) continue;
    segs.push_back({e.a, e.b});
  }
  return merge_collinear(std::move(segs));
}

}  // namespace plskel
