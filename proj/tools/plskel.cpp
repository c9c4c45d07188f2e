// Command-line front end: extract, boundary, classify, analyze, check.

#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "plskel/analysis.hpp"
#include "plskel/decision.hpp"
#include "plskel/errors.hpp"
#include "plskel/extract.hpp"
#include "plskel/io.hpp"
#include "plskel/svg.hpp"

namespace fs = std::filesystem;
using namespace plskel;
using io::Json;

namespace {

constexpr int kExitInput = 1;
constexpr int kExitInvariant = 2;

/// "out/skel.json" + 3 -> "out/skel_c3.json"
std::string suffixed(const std::string& path, std::size_t cls) {
  fs::path p(path);
  fs::path name = p.stem().string() + "_c" + std::to_string(cls) + p.extension().string();
  return (p.parent_path() / name).string();
}

Network load_network(const std::string& path) {
  return io::network_from_json(io::read_json_file(path));
}

void require_valid(const Skeleton& s, const std::string& what) {
  auto report = validate(s);
  if (report.ok()) return;
  std::string failed;
  for (const auto& c : report.checks) {
    if (!c.passed) failed += (failed.empty() ? "" : ", ") + c.name;
  }
  throw StructuralError(what + " failed validation: " + failed);
}

Json stats_json(const RegionStats& s) {
  Json stages = Json::array();
  for (const auto& st : s.stages) {
    stages.push_back({{"stage", st.stage},
                      {"neuron", st.neuron},
                      {"regions", st.regions},
                      {"vertices", st.vertices},
                      {"edges", st.edges}});
  }
  Json out = {{"merged", s.merged},
              {"tiles", s.tiles},
              {"linear_regions", s.linear_regions},
              {"stages", stages}};
  if (s.activation_regions) out["activation_regions"] = *s.activation_regions;
  if (!s.class_polygons.empty()) {
    out["class_polygons"] = s.class_polygons;
    out["boundary_edges"] = s.boundary_edges;
  }
  return out;
}

std::vector<ScatterPoint> scatter_of(const std::vector<io::LabeledPoint>& pts) {
  std::vector<ScatterPoint> out;
  for (const auto& p : pts) out.push_back({p.point, p.label.value_or(-1)});
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact piecewise-linear skeletons and decision boundaries of ReLU networks"};
  app.require_subcommand(1);

  std::string network_path, bounds_text, out_path, svg_path, data_path, dmap_path, points_path;
  bool no_merge = false;
  std::size_t grid = 512;
  std::size_t samples = 10000;
  std::uint64_t seed = 0;

  auto* extract = app.add_subcommand("extract", "Write one skeleton per network output");
  extract->add_option("--network", network_path, "Network JSON")->required();
  extract->add_option("--bounds", bounds_text, "lo,hi[,lo,hi] input box")->required();
  extract->add_option("--out", out_path, "Skeleton JSON path (suffixed _c<class>)")->required();
  extract->add_option("--svg", svg_path, "SVG path (suffixed _c<class>)");
  extract->add_flag("--no-merge", no_merge, "Keep activation regions apart");

  auto* boundary = app.add_subcommand("boundary", "Write the decision map of a classifier");
  boundary->add_option("--network", network_path, "Network JSON")->required();
  boundary->add_option("--bounds", bounds_text, "lo,hi[,lo,hi] input box")->required();
  boundary->add_option("--out", out_path, "Decision map JSON")->required();
  boundary->add_option("--svg", svg_path, "SVG rendering");
  boundary->add_option("--data", data_path, "Points CSV drawn over the SVG");

  auto* classify_cmd = app.add_subcommand("classify", "Label points with a decision map");
  classify_cmd->add_option("--dmap", dmap_path, "Decision map JSON")->required();
  classify_cmd->add_option("--points", points_path, "Points CSV")->required();
  classify_cmd->add_option("--out", out_path, "Labels CSV")->required();

  auto* analyze = app.add_subcommand("analyze", "Count linear and activation regions");
  analyze->add_option("--network", network_path, "Network JSON")->required();
  analyze->add_option("--bounds", bounds_text, "lo,hi[,lo,hi] input box")->required();
  analyze->add_option("--grid", grid, "Grid points per axis for the numeric count");
  analyze->add_option("--out", out_path, "Stats JSON")->required();

  auto* check = app.add_subcommand("check", "Compare skeletons with the forward pass");
  check->add_option("--network", network_path, "Network JSON")->required();
  check->add_option("--bounds", bounds_text, "lo,hi[,lo,hi] input box")->required();
  check->add_option("--samples", samples, "Uniform random sample count");
  check->add_option("--seed", seed, "Sampling seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kExitInput;
  }

  try {
    if (*extract) {
      Network net = load_network(network_path);
      Hyperrectangle bounds = io::parse_bounds(bounds_text);
      ExtractOptions opts;
      opts.merge_same_affine = !no_merge;
      auto skeletons = extract_skeletons(net, bounds, opts);
      for (std::size_t c = 0; c < skeletons.size(); ++c) {
        require_valid(skeletons[c], "skeleton " + std::to_string(c));
        io::write_text_file(suffixed(out_path, c), io::dump(io::to_json(skeletons[c])));
        if (!svg_path.empty()) io::write_text_file(suffixed(svg_path, c), render_svg(skeletons[c]));
      }
      std::cout << "wrote " << skeletons.size() << " skeleton(s)\n";
    } else if (*boundary) {
      Network net = load_network(network_path);
      Hyperrectangle bounds = io::parse_bounds(bounds_text);
      auto skeletons = extract_skeletons(net, bounds);
      for (std::size_t c = 0; c < skeletons.size(); ++c) {
        require_valid(skeletons[c], "skeleton " + std::to_string(c));
      }
      DecisionMap dm = extract_decision_map(skeletons);
      io::write_text_file(out_path, io::dump(io::to_json(dm)));
      if (!svg_path.empty()) {
        SvgOptions so;
        if (!data_path.empty()) so.points = scatter_of(io::read_points_csv_file(data_path, bounds.dim()));
        io::write_text_file(svg_path, render_svg(dm, so));
      }
      std::cout << "wrote decision map with " << dm.polygons.size() << " polygon(s) and "
                << dm.boundary.size() << " boundary segment(s)\n";
    } else if (*classify_cmd) {
      DecisionMap dm = io::decision_map_from_json(io::read_json_file(dmap_path));
      auto pts = io::read_points_csv_file(points_path, dm.bounds.dim());
      for (auto& p : pts) p.label = classify(dm, p.point);
      io::write_text_file(out_path, io::write_labels_csv(pts, dm.bounds.dim()));
      std::cout << "classified " << pts.size() << " point(s)\n";
    } else if (*analyze) {
      Network net = load_network(network_path);
      Hyperrectangle bounds = io::parse_bounds(bounds_text);
      ExtractionTrace merged_trace;
      ExtractionTrace raw_trace;
      auto merged = extract_skeletons(net, bounds, {true}, &merged_trace);
      auto raw = extract_skeletons(net, bounds, {false}, &raw_trace);
      RegionStats ms = count_analytic(merged, true, &merged_trace);
      RegionStats rs = count_analytic(raw, false, &raw_trace);
      add_decision_stats(ms, extract_decision_map(merged));
      std::size_t numeric = count_activation_regions(net, bounds, grid);
      Json out = {{"bounds", bounds_text},
                  {"merged", stats_json(ms)},
                  {"unmerged", stats_json(rs)},
                  {"grid", {{"n", grid}, {"activation_patterns", numeric}}}};
      io::write_text_file(out_path, io::dump(out));
      std::cout << "activation regions " << rs.activation_regions.value_or(0)
                << ", grid patterns " << numeric << "\n";
    } else if (*check) {
      Network net = load_network(network_path);
      Hyperrectangle bounds = io::parse_bounds(bounds_text);
      auto skeletons = extract_skeletons(net, bounds);
      std::mt19937_64 rng(seed);
      std::uniform_real_distribution<double> ux(bounds[0].lo, bounds[0].hi);
      std::uniform_real_distribution<double> uy(bounds.dim() == 2 ? bounds[1].lo : 0.0,
                                                bounds.dim() == 2 ? bounds[1].hi : 0.0);
      double max_abs = 0.0;
      double max_rel = 0.0;
      for (std::size_t i = 0; i < samples; ++i) {
        Point x{ux(rng), bounds.dim() == 2 ? uy(rng) : 0.0};
        auto ref = net.forward(x);
        for (std::size_t c = 0; c < skeletons.size(); ++c) {
          double err = std::abs(skeletons[c].evaluate(x) - ref[c]);
          max_abs = std::max(max_abs, err);
          max_rel = std::max(max_rel, err / (1.0 + std::abs(ref[c])));
        }
      }
      std::printf("max abs error %.3e\nmax rel error %.3e\n", max_abs, max_rel);
      if (!(max_rel <= kEpsVal)) {
        std::fprintf(stderr, "error: skeleton deviates from the forward pass\n");
        return kExitInvariant;
      }
    }
  } catch (const InputError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInput;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return kExitInvariant;
  }
  return 0;
}
