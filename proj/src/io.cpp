#include "plskel/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "plskel/errors.hpp"

namespace plskel::io {

namespace {

template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(std::string(what) + ": " + e.what());
  }
}

Json bounds_json(const Hyperrectangle& b) {
  Json out = Json::array();
  for (const auto& r : b.ranges()) out.push_back({r.lo, r.hi});
  return out;
}

Hyperrectangle bounds_from(const Json& j) {
  std::vector<Interval> ranges;
  for (const auto& r : j.at("bounds")) {
    if (r.size() != 2) throw InputError("bounds entries must be [min, max]");
    ranges.push_back({r.at(0).get<double>(), r.at(1).get<double>()});
  }
  return Hyperrectangle(std::move(ranges));
}

Json point_json(Point p, std::size_t dim) {
  return dim == 1 ? Json::array({p.x}) : Json::array({p.x, p.y});
}

Point point_from(const Json& j, std::size_t dim) {
  if (j.size() != dim) throw InputError("point has the wrong dimension");
  return dim == 1 ? Point{j.at(0).get<double>(), 0.0}
                  : Point{j.at(0).get<double>(), j.at(1).get<double>()};
}

void check_format(const Json& j, std::string_view expected) {
  if (j.contains("format") && j.at("format").get<std::string>() != expected) {
    throw InputError("expected a '" + std::string(expected) + "' document");
  }
}

Polygon polygon_from(const std::vector<Point>& pts, std::size_t dim) {
  if (dim == 1) {
    if (pts.size() != 2) throw InputError("1-D polygons are [lo, hi] pairs");
    return Polygon::interval(pts[0].x, pts[1].x);
  }
  return Polygon(pts, 2);
}

double parse_double(std::string_view field, const char* what) {
  while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
  while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r')) {
    field.remove_suffix(1);
  }
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size() || !std::isfinite(v)) {
    throw InputError(std::string("cannot parse ") + what + " '" + std::string(field) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

}  // namespace

Json to_json(const Network& net) {
  Json layers = Json::array();
  for (const auto& l : net.layers()) {
    Json w = Json::array();
    for (std::size_t o = 0; o < l.outputs; ++o) {
      auto row = l.row(o);
      w.push_back(std::vector<double>(row.begin(), row.end()));
    }
    layers.push_back({{"activation", l.activation == Activation::relu ? "relu" : "linear"},
                      {"weights", std::move(w)},
                      {"biases", l.biases}});
  }
  Json out = {{"format", "plskel-network"}, {"input_dim", net.input_dim()}, {"layers", layers}};
  if (!net.name().empty()) out["name"] = net.name();
  return out;
}

Network network_from_json(const Json& j) {
  return guarded("network", [&] {
    check_format(j, "plskel-network");
    auto input_dim = j.at("input_dim").get<std::size_t>();
    std::vector<Layer> layers;
    std::size_t width = input_dim;
    for (const auto& lj : j.at("layers")) {
      Layer l;
      auto act = lj.value("activation", std::string("relu"));
      if (act == "relu") {
        l.activation = Activation::relu;
      } else if (act == "linear") {
        l.activation = Activation::linear;
      } else {
        throw InputError("unknown activation '" + act + "'");
      }
      const auto& w = lj.at("weights");
      l.inputs = width;
      l.outputs = w.size();
      for (const auto& row : w) {
        if (row.size() != width) throw InputError("weight row has the wrong length");
        for (const auto& x : row) l.weights.push_back(x.get<double>());
      }
      l.biases = lj.at("biases").get<std::vector<double>>();
      width = l.outputs;
      layers.push_back(std::move(l));
    }
    return Network(input_dim, std::move(layers), j.value("name", std::string()));
  });
}

Json to_json(const Skeleton& s) {
  std::size_t dim = s.bounds().dim();
  Json regions = Json::array();
  for (const auto& r : s.regions()) {
    Json verts = Json::array();
    auto vertex = [&](const Vertex& v) {
      return Json{{"point", point_json(v.point, dim)}, {"value", v.value}, {"step", v.created.name()}};
    };
    if (dim == 1) {
      auto [lo, hi] = r.polygon.interval();
      const Vertex* vlo = &r.vertices.front();
      const Vertex* vhi = &r.vertices.front();
      for (const auto& v : r.vertices) {
        if (v.point.x == lo && vlo->point.x != lo) vlo = &v;
        if (v.point.x == hi && vhi->point.x != hi) vhi = &v;
      }
      verts.push_back(vertex(*vlo));
      verts.push_back(vertex(*vhi));
    } else {
      for (const auto& v : r.vertices) verts.push_back(vertex(v));
    }
    regions.push_back({{"gradient", point_json(r.affine.gradient, dim)},
                       {"offset", r.affine.offset},
                       {"vertices", std::move(verts)}});
  }
  return {{"format", "plskel-skeleton"},
          {"dim", dim},
          {"stage", s.stage().name()},
          {"bounds", bounds_json(s.bounds())},
          {"regions", std::move(regions)}};
}

Skeleton skeleton_from_json(const Json& j) {
  return guarded("skeleton", [&] {
    check_format(j, "plskel-skeleton");
    Hyperrectangle bounds = bounds_from(j);
    std::size_t dim = bounds.dim();
    if (dim != 1 && dim != 2) throw UnsupportedDimension("skeletons are 1-D or 2-D");
    std::vector<LinearRegion> regions;
    for (const auto& rj : j.at("regions")) {
      Affine f{point_from(rj.at("gradient"), dim), rj.at("offset").get<double>()};
      std::vector<Point> pts;
      std::vector<Vertex> stored;
      for (const auto& vj : rj.at("vertices")) {
        Vertex v{point_from(vj.at("point"), dim), vj.at("value").get<double>(),
                 Stage::parse(vj.at("step").get<std::string>())};
        pts.push_back(v.point);
        stored.push_back(v);
      }
      LinearRegion r = make_region(polygon_from(pts, dim), f, Stage{});
      for (auto& v : r.vertices) {
        // Restore cached values and tags from the stored vertex at the same
        // location (1-D strip corners match on x).
        for (const auto& sv : stored) {
          bool match = dim == 1 ? sv.point.x == v.point.x : sv.point == v.point;
          if (match) {
            v.value = sv.value;
            v.created = sv.created;
            break;
          }
        }
      }
      regions.push_back(std::move(r));
    }
    return Skeleton(bounds, std::move(regions), Stage::parse(j.value("stage", std::string("g1"))));
  });
}

Json to_json(const DecisionMap& dm) {
  std::size_t dim = dm.bounds.dim();
  Json polys = Json::array();
  for (const auto& mp : dm.polygons) {
    Json verts = Json::array();
    if (dim == 1) {
      auto [lo, hi] = mp.polygon.interval();
      verts.push_back({lo});
      verts.push_back({hi});
    } else {
      for (Point p : mp.polygon.vertices()) verts.push_back(point_json(p, dim));
    }
    polys.push_back({{"class", mp.class_index}, {"vertices", std::move(verts)}});
  }
  Json boundary = Json::array();
  for (const auto& b : dm.boundary) {
    boundary.push_back({{"from", point_json(b.from, dim)},
                        {"to", point_json(b.to, dim)},
                        {"classes", {b.class_a, b.class_b}}});
  }
  return {{"format", "plskel-decision-map"},
          {"dim", dim},
          {"bounds", bounds_json(dm.bounds)},
          {"num_classes", dm.num_classes},
          {"single_logit", dm.single_logit},
          {"polygons", std::move(polys)},
          {"boundary", std::move(boundary)}};
}

DecisionMap decision_map_from_json(const Json& j) {
  return guarded("decision map", [&] {
    check_format(j, "plskel-decision-map");
    DecisionMap dm;
    dm.bounds = bounds_from(j);
    std::size_t dim = dm.bounds.dim();
    if (dim != 1 && dim != 2) throw UnsupportedDimension("decision maps are 1-D or 2-D");
    dm.num_classes = j.at("num_classes").get<int>();
    dm.single_logit = j.value("single_logit", false);
    for (const auto& pj : j.at("polygons")) {
      std::vector<Point> pts;
      for (const auto& vj : pj.at("vertices")) pts.push_back(point_from(vj, dim));
      int cls = pj.at("class").get<int>();
      if (cls < 0 || cls >= dm.num_classes) throw InputError("polygon class out of range");
      dm.polygons.push_back({polygon_from(pts, dim), cls});
    }
    for (const auto& bj : j.at("boundary")) {
      const auto& cls = bj.at("classes");
      dm.boundary.push_back({point_from(bj.at("from"), dim), point_from(bj.at("to"), dim),
                             cls.at(0).get<int>(), cls.at(1).get<int>()});
    }
    return dm;
  });
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const std::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

Hyperrectangle parse_bounds(std::string_view text) {
  auto fields = split(text, ',');
  if (fields.size() != 2 && fields.size() != 4) {
    throw InputError("bounds need 2 (1-D) or 4 (2-D) comma-separated numbers");
  }
  std::vector<Interval> ranges;
  for (std::size_t i = 0; i < fields.size(); i += 2) {
    ranges.push_back({parse_double(fields[i], "bound"), parse_double(fields[i + 1], "bound")});
  }
  try {
    return Hyperrectangle(std::move(ranges));
  } catch (const InvalidGeometry& e) {
    throw InputError(e.what());
  }
}

std::vector<LabeledPoint> read_points_csv(std::istream& in, std::optional<std::size_t> expected_dim) {
  std::string line;
  if (!std::getline(in, line)) throw InputError("points CSV is empty");
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  auto header = split(line, ',');
  std::size_t dim = 0;
  bool labeled = false;
  for (std::size_t i = 0; i < header.size(); ++i) {
    std::string name = trim(header[i]);
    if (name == "x" + std::to_string(i + 1) && !labeled) {
      ++dim;
    } else if (name == "label" && i == header.size() - 1 && dim > 0) {
      labeled = true;
    } else {
      throw InputError("points CSV header must be x1[,x2][,label]");
    }
  }
  if (dim < 1 || dim > 2) throw InputError("points CSV must have 1 or 2 coordinates");
  if (expected_dim && *expected_dim != dim) {
    throw InputError("points CSV dimension does not match the model");
  }
  std::vector<LabeledPoint> out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    auto fields = split(line, ',');
    if (fields.size() != header.size()) {
      throw InputError("points CSV line " + std::to_string(lineno) + ": wrong field count");
    }
    LabeledPoint lp;
    lp.point.x = parse_double(fields[0], "coordinate");
    if (dim == 2) lp.point.y = parse_double(fields[1], "coordinate");
    if (labeled) {
      double v = parse_double(fields[dim], "label");
      if (v != std::floor(v) || v < 0) throw InputError("labels must be non-negative integers");
      lp.label = static_cast<int>(v);
    }
    out.push_back(lp);
  }
  return out;
}

std::vector<LabeledPoint> read_points_csv_file(const std::string& path,
                                               std::optional<std::size_t> expected_dim) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return read_points_csv(in, expected_dim);
}

std::string write_labels_csv(std::span<const LabeledPoint> points, std::size_t dim) {
  std::string out = dim == 1 ? "x1,label\n" : "x1,x2,label\n";
  char buf[64];
  for (const auto& p : points) {
    std::snprintf(buf, sizeof buf, "%.17g,", p.point.x);
    out += buf;
    if (dim == 2) {
      std::snprintf(buf, sizeof buf, "%.17g,", p.point.y);
      out += buf;
    }
    out += std::to_string(p.label.value_or(-1));
    out += '\n';
  }
  return out;
}

}  // namespace plskel::io
