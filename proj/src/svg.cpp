#include "plskel/svg.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <map>
#include <string_view>
#include <utility>

#include "plskel/errors.hpp"

namespace plskel {

namespace {

constexpr std::array<const char*, 5> kStagePalette = {"#1f3cff", "#d020d0", "#00b4c8",
                                                      "#e01010", "#10a030"};
constexpr std::array<const char*, 8> kClassPalette = {"#8fb8e8", "#f2b279", "#9fd69a",
                                                      "#e89a9a", "#c4aee0", "#d8c39a",
                                                      "#f0b8d8", "#c8c8c8"};

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s = buf;
  if (s == "-0.000000") s = "0.000000";
  return s;
}

/// Maps domain coordinates to the canvas (y pointing down).
class Canvas {
 public:
  Canvas(const Hyperrectangle& bounds, const SvgOptions& o) : dim_(bounds.dim()), o_(o) {
    if (dim_ != 1 && dim_ != 2) throw UnsupportedDimension("only 1-D and 2-D inputs render");
    xlo_ = bounds[0].lo;
    xhi_ = bounds[0].hi;
    if (dim_ == 2) {
      ylo_ = bounds[1].lo;
      yhi_ = bounds[1].hi;
    } else {
      ylo_ = -kStripHalfHeight;
      yhi_ = kStripHalfHeight;
    }
    sx_ = (o.width - 2 * o.margin) / (xhi_ - xlo_);
    sy_ = dim_ == 2 ? sx_ : (o.strip_height - 2 * o.margin) / (yhi_ - ylo_);
    height_ = 2 * o.margin + sy_ * (yhi_ - ylo_);
  }

  double x(double v) const { return o_.margin + (v - xlo_) * sx_; }
  double y(double v) const { return o_.margin + (yhi_ - v) * sy_; }
  std::string xy(Point p) const { return fmt(x(p.x)) + "," + fmt(y(p.y)); }

  std::string header() const {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(o_.width) +
           "\" height=\"" + fmt(height_) + "\" viewBox=\"0 0 " + fmt(o_.width) + " " +
           fmt(height_) + "\">\n<rect class=\"background\" x=\"0\" y=\"0\" width=\"" +
           fmt(o_.width) + "\" height=\"" + fmt(height_) + "\" fill=\"#ffffff\"/>\n";
  }

  std::string path(const Polygon& p, std::string_view cls, std::string_view extra) const {
    std::string d;
    for (std::size_t i = 0; i < p.size(); ++i) d += (i == 0 ? "M" : " L") + xy(p[i]);
    return "<path class=\"" + std::string(cls) + "\" " + std::string(extra) + " d=\"" + d +
           " Z\"/>\n";
  }

  std::string line(Point a, Point b, std::string_view cls, std::string_view style) const {
    return "<line class=\"" + std::string(cls) + "\" x1=\"" + fmt(x(a.x)) + "\" y1=\"" +
           fmt(y(a.y)) + "\" x2=\"" + fmt(x(b.x)) + "\" y2=\"" + fmt(y(b.y)) + "\" " +
           std::string(style) + "/>\n";
  }

  std::string circle(Point p, double r, std::string_view cls, std::string_view fill) const {
    return "<circle class=\"" + std::string(cls) + "\" cx=\"" + fmt(x(p.x)) + "\" cy=\"" +
           fmt(y(p.y)) + "\" r=\"" + fmt(r) + "\" fill=\"" + std::string(fill) + "\"/>\n";
  }

  std::size_t dim() const { return dim_; }

 private:
  std::size_t dim_;
  const SvgOptions& o_;
  double xlo_ = 0, xhi_ = 1, ylo_ = 0, yhi_ = 1;
  double sx_ = 1, sy_ = 1, height_ = 0;
};

std::string scatter(const Canvas& c, const SvgOptions& o) {
  std::string out;
  for (const auto& sp : o.points) {
    Point p = c.dim() == 1 ? Point{sp.point.x, 0.0} : sp.point;
    const char* fill =
        sp.label < 0 ? "#000000" : kClassPalette[static_cast<std::size_t>(sp.label) % kClassPalette.size()];
    out += "<circle class=\"data\" cx=\"" + fmt(c.x(p.x)) + "\" cy=\"" + fmt(c.y(p.y)) +
           "\" r=\"3.000000\" fill=\"" + std::string(fill) + "\" stroke=\"#000000\" stroke-width=\"0.5\"/>\n";
  }
  return out;
}

std::string grey(double t) {
  int g = 235 - static_cast<int>(std::clamp(t, 0.0, 1.0) * 135.0);
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", g, g, g);
  return buf;
}

}  // namespace

const char* stage_color(Stage stage) {
  return kStagePalette[static_cast<std::size_t>(stage.ordinal()) % kStagePalette.size()];
}

std::string render_svg(const Skeleton& s, const SvgOptions& options) {
  if (s.size() == 0) throw InputError("cannot render a skeleton without regions");
  Canvas c(s.bounds(), options);
  std::string out = c.header();

  std::vector<double> means;
  for (const auto& r : s.regions()) {
    double sum = 0.0;
    for (const auto& v : r.vertices) sum += v.value;
    means.push_back(sum / static_cast<double>(r.vertices.size()));
  }
  auto [mn, mx] = std::minmax_element(means.begin(), means.end());
  double span = *mx - *mn;
  for (std::size_t i = 0; i < s.size(); ++i) {
    double t = span > 0 ? (means[i] - *mn) / span : 0.5;
    out += c.path(s[i].polygon, "region",
                  "fill=\"" + grey(t) + "\" stroke=\"#606060\" stroke-width=\"0.5\"");
  }

  if (options.show_critical) {
    for (const auto& e : critical_edges(s)) {
      out += c.line(e.a, e.b, "critical", "stroke=\"#d00000\" stroke-width=\"2\"");
    }
  }

  if (options.show_vertices) {
    // One marker per location, coloured by its earliest creation stage.
    std::map<std::pair<double, double>, Stage> marks;
    for (const auto& r : s.regions()) {
      for (const auto& v : r.vertices) {
        Point p = c.dim() == 1 ? Point{v.point.x, 0.0} : v.point;
        auto [it, fresh] = marks.emplace(std::make_pair(p.x, p.y), v.created);
        if (!fresh && v.created.ordinal() < it->second.ordinal()) it->second = v.created;
      }
    }
    for (const auto& [xy, stage] : marks) {
      out += c.circle({xy.first, xy.second}, 3.0, "vertex " + stage.name(), stage_color(stage));
    }
  }

  out += scatter(c, options);
  out += "</svg>\n";
  return out;
}

std::string render_svg(const DecisionMap& dm, const SvgOptions& options) {
  if (dm.polygons.empty()) throw InputError("cannot render a decision map without polygons");
  Canvas c(dm.bounds, options);
  std::string out = c.header();
  for (const auto& mp : dm.polygons) {
    const char* fill = kClassPalette[static_cast<std::size_t>(mp.class_index) % kClassPalette.size()];
    out += c.path(mp.polygon, "membership",
                  "data-class=\"" + std::to_string(mp.class_index) + "\" fill=\"" + fill +
                      "\" stroke=\"none\"");
  }
  for (const auto& b : dm.boundary) {
    out += c.line(b.from, b.to, "boundary", "stroke=\"#000000\" stroke-width=\"2.5\"");
  }
  out += scatter(c, options);
  out += "</svg>\n";
  return out;
}

}  // namespace plskel
