#include "plskel/extract.hpp"

#include <optional>
#include <string>

#include "plskel/errors.hpp"
#include "tagging.hpp"

namespace plskel {

namespace {

struct Cell {
  Polygon polygon;
  Affine f;
};

// Groups cells by affine function (first-occurrence order) and unions the
// edge-adjacent members of every group.
std::vector<Cell> merge_same_affine(std::vector<Cell> cells) {
  std::vector<Affine> keys;
  std::vector<std::vector<Polygon>> groups;
  for (auto& c : cells) {
    std::size_t g = 0;
    while (g < keys.size() && !same_affine(keys[g], c.f)) ++g;
    if (g == keys.size()) {
      keys.push_back(c.f);
      groups.emplace_back();
    }
    groups[g].push_back(std::move(c.polygon));
  }
  std::vector<Cell> out;
  for (std::size_t g = 0; g < keys.size(); ++g) {
    auto merged = groups[g].size() > 1 ? union_adjacent(groups[g]) : std::move(groups[g]);
    for (auto& p : merged) out.push_back({std::move(p), keys[g]});
  }
  return out;
}

Skeleton assemble(const Hyperrectangle& bounds, std::vector<Cell> cells, Stage stage,
                  std::span<const Skeleton> sources) {
  detail::TagIndex tags(bounds, sources);
  std::vector<LinearRegion> regions;
  regions.reserve(cells.size());
  for (auto& c : cells) regions.push_back(tags.region(std::move(c.polygon), c.f, stage));
  return Skeleton(bounds, std::move(regions), stage);
}

}  // namespace

Skeleton apply_relu(const Skeleton& g, const ExtractOptions& options) {
  if (g.size() == 0) throw StructuralError("apply_relu on an empty skeleton");
  std::vector<Cell> cells;
  cells.reserve(g.size() + 4);
  for (const auto& r : g.regions()) {
    auto split = split_by_line(r.polygon, r.affine.gradient, r.affine.offset);
    for (auto& p : split.pos) cells.push_back({std::move(p), r.affine});
    for (auto& p : split.neg) cells.push_back({std::move(p), Affine{}});
  }
  if (options.merge_same_affine) cells = merge_same_affine(std::move(cells));
  return assemble(g.bounds(), std::move(cells), g.stage().relu(), std::span(&g, 1));
}

Skeleton merge_activations(std::span<const Skeleton> fs, std::span<const double> weights,
                           double bias) {
  if (fs.empty()) throw StructuralError("merge_activations needs at least one skeleton");
  if (weights.size() != fs.size()) {
    throw StructuralError("merge_activations: one weight per activation required");
  }
  const auto& bounds = fs.front().bounds();
  for (const auto& f : fs) {
    if (!(f.bounds() == bounds)) throw StructuralError("merge_activations: mismatched bounds");
    if (f.size() == 0) throw StructuralError("merge_activations: empty skeleton");
  }

  std::vector<Cell> current;
  bool started = false;
  for (std::size_t j = 0; j < fs.size(); ++j) {
    double w = weights[j];
    if (w == 0.0) continue;
    const auto regions = fs[j].regions();
    if (!started) {
      for (const auto& r : regions) current.push_back({r.polygon, w * r.affine});
      started = true;
      continue;
    }
    std::vector<ConvexCover> incoming;
    incoming.reserve(regions.size());
    for (const auto& r : regions) incoming.emplace_back(r.polygon);
    std::vector<Cell> next;
    next.reserve(current.size() + regions.size());
    for (const auto& c : current) {
      std::optional<ConvexCover> cover;
      for (std::size_t k = 0; k < regions.size(); ++k) {
        if (!c.polygon.bbox().overlaps(regions[k].polygon.bbox())) continue;
        if (!cover) cover.emplace(c.polygon);
        for (auto& piece : intersect(*cover, incoming[k])) {
          next.push_back({std::move(piece), c.f + w * regions[k].affine});
        }
      }
    }
    current = std::move(next);
  }
  if (!started) current.push_back({bounds.polygon(), Affine{}});
  for (auto& c : current) c.f.offset += bias;
  return assemble(bounds, std::move(current), fs.front().stage().next_pre(), fs);
}

std::vector<Skeleton> extract_skeletons(const Network& net, const Hyperrectangle& bounds,
                                        const ExtractOptions& options, ExtractionTrace* trace) {
  if (bounds.dim() != 1 && bounds.dim() != 2) {
    throw UnsupportedDimension("only 1-D and 2-D input domains are supported, got " +
                               std::to_string(bounds.dim()) + "-D");
  }
  if (net.input_dim() != bounds.dim()) {
    throw InputError("network input dimension does not match the bounds");
  }
  auto record = [&](const std::vector<Skeleton>& ss) {
    if (!trace) return;
    for (std::size_t j = 0; j < ss.size(); ++j) trace->entries.push_back({ss[j].stage(), j, ss[j]});
  };

  const auto layers = net.layers();
  std::vector<Skeleton> pre;
  const Layer& first = layers.front();
  for (std::size_t j = 0; j < first.outputs; ++j) {
    Vec2 a{first.weight(j, 0), first.inputs > 1 ? first.weight(j, 1) : 0.0};
    pre.push_back(initial_skeleton(a, first.biases[j], bounds));
  }
  record(pre);
  for (std::size_t li = 1; li < layers.size(); ++li) {
    std::vector<Skeleton> post;
    post.reserve(pre.size());
    for (const auto& g : pre) post.push_back(apply_relu(g, options));
    record(post);
    const Layer& l = layers[li];
    std::vector<Skeleton> next;
    next.reserve(l.outputs);
    for (std::size_t j = 0; j < l.outputs; ++j) {
      next.push_back(merge_activations(post, l.row(j), l.biases[j]));
    }
    record(next);
    pre = std::move(next);
  }
  return pre;
}

}  // namespace plskel
