#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "plskel/analysis.hpp"
#include "plskel/decision.hpp"
#include "plskel/errors.hpp"
#include "plskel/extract.hpp"
#include "plskel/io.hpp"
#include "plskel/svg.hpp"

namespace py = pybind11;
using namespace plskel;

namespace {

Point to_point(const std::vector<double>& x) {
  if (x.size() == 1) return {x[0], 0.0};
  if (x.size() == 2) return {x[0], x[1]};
  throw InputError("points have 1 or 2 coordinates");
}

py::tuple from_point(Point p, std::size_t dim) {
  if (dim == 1) return py::make_tuple(p.x);
  return py::make_tuple(p.x, p.y);
}

Hyperrectangle make_bounds(const std::vector<std::pair<double, double>>& ranges) {
  std::vector<Interval> iv;
  for (auto [lo, hi] : ranges) iv.push_back({lo, hi});
  try {
    return Hyperrectangle(std::move(iv));
  } catch (const InvalidGeometry& e) {
    throw InputError(e.what());
  }
}

py::list polygon_list(const Polygon& p, std::size_t dim) {
  py::list out;
  if (dim == 1) {
    auto [lo, hi] = p.interval();
    out.append(py::make_tuple(lo));
    out.append(py::make_tuple(hi));
    return out;
  }
  for (Point v : p.vertices()) out.append(py::make_tuple(v.x, v.y));
  return out;
}

template <class F>
py::array_t<double> map_points(py::array_t<double, py::array::c_style | py::array::forcecast> xs,
                               std::size_t dim, F&& f) {
  if (xs.ndim() == 1 && dim == 1) xs = xs.reshape({xs.shape(0), py::ssize_t{1}});
  if (xs.ndim() != 2 || static_cast<std::size_t>(xs.shape(1)) != dim) {
    throw InputError("expected an array of shape (n, " + std::to_string(dim) + ")");
  }
  auto in = xs.unchecked<2>();
  py::array_t<double> out(xs.shape(0));
  auto o = out.mutable_unchecked<1>();
  for (py::ssize_t i = 0; i < xs.shape(0); ++i) {
    Point p{in(i, 0), dim == 2 ? in(i, 1) : 0.0};
    o(i) = f(p);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_plskel, m) {
  m.doc() = "Exact piecewise-linear skeletons and decision boundaries of ReLU networks";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  auto input = py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<UnsupportedDimension>(m, "UnsupportedDimension", input.ptr());
  py::register_exception<OutOfDomain>(m, "OutOfDomain", input.ptr());
  py::register_exception<InvalidGeometry>(m, "InvalidGeometry", base.ptr());
  py::register_exception<StructuralError>(m, "StructuralError", base.ptr());

  py::class_<Hyperrectangle>(m, "Hyperrectangle")
      .def(py::init(&make_bounds), py::arg("ranges"))
      .def_static("parse", &io::parse_bounds, py::arg("text"))
      .def_static("square", &Hyperrectangle::square, py::arg("lo"), py::arg("hi"))
      .def_property_readonly("dim", &Hyperrectangle::dim)
      .def_property_readonly("measure", &Hyperrectangle::measure)
      .def_property_readonly("ranges",
                             [](const Hyperrectangle& b) {
                               std::vector<std::pair<double, double>> out;
                               for (const auto& r : b.ranges()) out.emplace_back(r.lo, r.hi);
                               return out;
                             })
      .def("__eq__", [](const Hyperrectangle& a, const Hyperrectangle& b) { return a == b; })
      .def("__repr__", [](const Hyperrectangle& b) {
        std::string s = "Hyperrectangle([";
        for (std::size_t i = 0; i < b.dim(); ++i) {
          s += (i ? ", (" : "(") + std::to_string(b[i].lo) + ", " + std::to_string(b[i].hi) + ")";
        }
        return s + "])";
      });

  py::class_<Network>(m, "Network")
      .def_static("from_json", [](const std::string& text) {
        try {
          return io::network_from_json(io::Json::parse(text));
        } catch (const io::Json::exception& e) {
          throw InputError(e.what());
        }
      })
      .def_static("load", [](const std::string& path) {
        return io::network_from_json(io::read_json_file(path));
      })
      .def("to_json", [](const Network& n) { return io::dump(io::to_json(n)); })
      .def_property_readonly("input_dim", &Network::input_dim)
      .def_property_readonly("output_dim", &Network::output_dim)
      .def_property_readonly("hidden_layers", &Network::hidden_layers)
      .def_property_readonly("name", &Network::name)
      .def("forward", [](const Network& n, const std::vector<double>& x) { return n.forward(x); })
      .def("activation_pattern",
           [](const Network& n, const std::vector<double>& x) { return n.activation_pattern(to_point(x)); });

  m.def("corpus_network", &corpus_network, py::arg("seed"), py::arg("outputs") = 2);

  py::class_<Skeleton>(m, "Skeleton")
      .def_static("from_json", [](const std::string& text) {
        try {
          return io::skeleton_from_json(io::Json::parse(text));
        } catch (const io::Json::exception& e) {
          throw InputError(e.what());
        }
      })
      .def("to_json", [](const Skeleton& s) { return io::dump(io::to_json(s)); })
      .def_property_readonly("bounds", &Skeleton::bounds)
      .def_property_readonly("stage", [](const Skeleton& s) { return s.stage().name(); })
      .def_property_readonly("dim", &Skeleton::dim)
      .def("__len__", &Skeleton::size)
      .def("evaluate", [](const Skeleton& s, const std::vector<double>& x) { return s.evaluate(to_point(x)); })
      .def("evaluate_many",
           [](const Skeleton& s, py::array_t<double, py::array::c_style | py::array::forcecast> xs) {
             return map_points(xs, s.bounds().dim(), [&](Point p) { return s.evaluate(p); });
           })
      .def("regions",
           [](const Skeleton& s) {
             std::size_t dim = s.bounds().dim();
             py::list out;
             for (const auto& r : s.regions()) {
               py::dict d;
               d["vertices"] = polygon_list(r.polygon, dim);
               d["gradient"] = from_point(r.affine.gradient, dim);
               d["offset"] = r.affine.offset;
               out.append(d);
             }
             return out;
           })
      .def("critical_edges",
           [](const Skeleton& s) {
             std::size_t dim = s.bounds().dim();
             py::list out;
             for (const auto& e : critical_edges(s)) out.append(py::make_tuple(from_point(e.a, dim), from_point(e.b, dim)));
             return out;
           })
      .def("validate", [](const Skeleton& s) {
        py::dict out;
        for (const auto& c : validate(s).checks) out[py::str(c.name)] = c.passed;
        return out;
      });

  m.def("initial_skeleton",
        [](const std::vector<double>& a, double c, const Hyperrectangle& b) {
          return initial_skeleton(to_point(a), c, b);
        },
        py::arg("gradient"), py::arg("offset"), py::arg("bounds"));
  m.def("apply_relu",
        [](const Skeleton& g, bool merge) { return apply_relu(g, ExtractOptions{merge}); },
        py::arg("skeleton"), py::arg("merge") = true);
  m.def("merge_activations",
        [](const std::vector<Skeleton>& fs, const std::vector<double>& w, double bias) {
          return merge_activations(fs, w, bias);
        },
        py::arg("activations"), py::arg("weights"), py::arg("bias") = 0.0);
  m.def("extract_skeletons",
        [](const Network& n, const Hyperrectangle& b, bool merge) {
          return extract_skeletons(n, b, ExtractOptions{merge});
        },
        py::arg("network"), py::arg("bounds"), py::arg("merge") = true);
  m.def("count_linear_regions", &count_linear_regions, py::arg("skeleton"));
  m.def("count_activation_regions", &count_activation_regions, py::arg("network"), py::arg("bounds"),
        py::arg("grid") = 512);

  py::class_<DecisionMap>(m, "DecisionMap")
      .def_static("from_json", [](const std::string& text) {
        try {
          return io::decision_map_from_json(io::Json::parse(text));
        } catch (const io::Json::exception& e) {
          throw InputError(e.what());
        }
      })
      .def("to_json", [](const DecisionMap& d) { return io::dump(io::to_json(d)); })
      .def_readonly("bounds", &DecisionMap::bounds)
      .def_readonly("num_classes", &DecisionMap::num_classes)
      .def_readonly("single_logit", &DecisionMap::single_logit)
      .def("polygons",
           [](const DecisionMap& d) {
             py::list out;
             for (const auto& mp : d.polygons) {
               out.append(py::make_tuple(mp.class_index, polygon_list(mp.polygon, d.bounds.dim())));
             }
             return out;
           })
      .def("boundary",
           [](const DecisionMap& d) {
             std::size_t dim = d.bounds.dim();
             py::list out;
             for (const auto& b : d.boundary) {
               out.append(py::make_tuple(from_point(b.from, dim), from_point(b.to, dim),
                                         py::make_tuple(b.class_a, b.class_b)));
             }
             return out;
           })
      .def("classify", [](const DecisionMap& d, const std::vector<double>& x) { return classify(d, to_point(x)); })
      .def("classify_many",
           [](const DecisionMap& d, py::array_t<double, py::array::c_style | py::array::forcecast> xs) {
             auto v = map_points(xs, d.bounds.dim(), [&](Point p) { return static_cast<double>(classify(d, p)); });
             return v.attr("astype")("int64");
           });

  m.def("extract_decision_map",
        [](const std::vector<Skeleton>& fs) { return extract_decision_map(fs); }, py::arg("skeletons"));

  auto svg_options = [](bool vertices, bool critical,
                        const std::vector<std::pair<std::vector<double>, int>>& points) {
    SvgOptions o;
    o.show_vertices = vertices;
    o.show_critical = critical;
    for (const auto& [x, label] : points) o.points.push_back({to_point(x), label});
    return o;
  };
  m.def("render_svg",
        [svg_options](const Skeleton& s, bool vertices, bool critical,
                      const std::vector<std::pair<std::vector<double>, int>>& points) {
          return render_svg(s, svg_options(vertices, critical, points));
        },
        py::arg("skeleton"), py::arg("vertices") = true, py::arg("critical") = true,
        py::arg("points") = std::vector<std::pair<std::vector<double>, int>>{});
  m.def("render_svg",
        [svg_options](const DecisionMap& d, const std::vector<std::pair<std::vector<double>, int>>& points) {
          return render_svg(d, svg_options(true, true, points));
        },
        py::arg("decision_map"), py::arg("points") = std::vector<std::pair<std::vector<double>, int>>{});
}
