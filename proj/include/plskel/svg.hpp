#pragma once

/// @file svg.hpp
/// @brief Deterministic SVG rendering of skeletons and decision maps.

#include <string>
#include <vector>

#include "plskel/decision.hpp"
#include "plskel/skeleton.hpp"

namespace plskel {

struct ScatterPoint {
  Point point;
  int label = -1;
};

struct SvgOptions {
  double width = 600.0;
  double margin = 20.0;
  /// Height of the number-line strip used for 1-D inputs.
  double strip_height = 80.0;
  bool show_vertices = true;
  bool show_critical = true;
  /// Overlay of labeled data points.
  std::vector<ScatterPoint> points;
};

/// Regions as closed paths shaded by value, critical edges as red lines and
/// vertices coloured by the stage that created them. Throws InputError for
/// an empty skeleton and UnsupportedDimension beyond 2-D.
std::string render_svg(const Skeleton& s, const SvgOptions& options = {});

/// Membership polygons filled by class, boundary segments and the optional
/// data overlay.
std::string render_svg(const DecisionMap& dm, const SvgOptions& options = {});

/// Vertex colour for a stage: g1 blue, f1 magenta, g2 cyan, f2 red, g3
/// green, then repeating.
const char* stage_color(Stage stage);

}  // namespace plskel
