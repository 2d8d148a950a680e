#include "gradecalc/calculus.hpp"
#include "gradecalc/geometry.hpp"
#include "gradecalc/group_io.hpp"
#include "gradecalc/heatflow.hpp"
#include "gradecalc/potentials.hpp"
#include "gradecalc/sobolev.hpp"
#include "gradecalc/suite.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>

namespace py = pybind11;
using namespace gradecalc;

namespace {

struct Group {
  std::string name;
  std::shared_ptr<const GradedLieAlgebra> alg;
  std::shared_ptr<const GroupLaw> law;
};

Group open_group(const std::string& name_or_path) {
  const auto path = resolve_group_path(name_or_path);
  auto alg = std::make_shared<const GradedLieAlgebra>(load_group(path));
  const auto report = validate_algebra(*alg);
  if (!report.ok()) throw ConfigError("invalid algebra: " + report.violations.front().detail);
  return {path.stem().string(), alg, std::make_shared<const GroupLaw>(bch_group_law(alg))};
}

std::vector<double> point(const Group& g, const std::vector<double>& x) {
  if (x.size() != g.alg->dim())
    throw py::value_error("expected a point with " + std::to_string(g.alg->dim()) + " coordinates");
  return x;
}

py::array_t<double> to_array(const GridFunction& f) {
  std::vector<py::ssize_t> shape(f.grid().counts().begin(), f.grid().counts().end());
  py::array_t<double> out(shape);
  std::copy(f.values().begin(), f.values().end(), out.mutable_data());
  return out;
}

GridFunction from_array(const Grid& g, const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (static_cast<std::size_t>(a.size()) != g.size())
    throw py::value_error("array has " + std::to_string(a.size()) + " values, grid has " + std::to_string(g.size()));
  return GridFunction(g, std::vector<double>(a.data(), a.data() + a.size()));
}

RunConfig make_config(const std::string& group, const std::string& op, std::optional<double> scale,
                      const std::vector<int>& points, std::uint64_t seed, double tol_scale) {
  RunConfig c;
  c.group = group;
  c.op = op;
  c.scale = scale;
  c.points = points;
  c.seed = seed;
  c.tol_scale = tol_scale;
  return c;
}

py::dict report_dict(const VerificationReport& rep) {
  py::list checks;
  for (const auto& c : rep.checks) {
    py::dict d;
    d["id"] = c.id;
    d["anchor"] = c.anchor;
    d["measured"] = c.measured;
    d["relation"] = to_string(c.relation);
    d["threshold"] = c.threshold;
    d["pass"] = c.pass;
    d["note"] = c.note;
    checks.append(d);
  }
  py::list probes;
  for (const auto& p : rep.probes) {
    py::dict d;
    d["id"] = p.id;
    d["params"] = p.params;
    d["min_ratio"] = p.min;
    d["max_ratio"] = p.max;
    d["baseline"] = p.baseline ? py::cast(*p.baseline) : py::none();
    d["pass"] = p.pass;
    probes.append(d);
  }
  py::dict out;
  out["all_pass"] = rep.all_pass();
  out["partial"] = rep.partial;
  out["partial_reason"] = rep.partial_reason;
  out["checks"] = checks;
  out["probes"] = probes;
  out["text"] = rep.to_text(false);
  out["json"] = rep.to_json();
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Heat kernels, potentials and Sobolev norms on graded nilpotent Lie groups";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "GroupParseError", PyExc_ValueError);
  py::register_exception<ExprParseError>(m, "OperatorParseError", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_ValueError);

  m.def("version", &version_string);
  m.def("builtin_groups", &builtin_groups);

  py::class_<Group>(m, "Group")
      .def(py::init(&open_group), py::arg("name_or_path"))
      .def_readonly("name", &Group::name)
      .def_property_readonly("dim", [](const Group& g) { return g.alg->dim(); })
      .def_property_readonly("weights", [](const Group& g) { return g.alg->weights(); })
      .def_property_readonly("labels", [](const Group& g) { return g.alg->labels(); })
      .def_property_readonly("homogeneous_dimension", [](const Group& g) { return g.alg->homogeneous_dimension(); })
      .def_property_readonly("step", [](const Group& g) { return g.alg->step(); })
      .def_property_readonly("is_stratified", [](const Group& g) { return g.alg->is_stratified(); })
      .def("multiply",
           [](const Group& g, const std::vector<double>& x, const std::vector<double>& y) {
             return g.law->multiply(point(g, x), point(g, y));
           })
      .def("invert", [](const Group& g, const std::vector<double>& x) { return g.law->invert(point(g, x)); })
      .def("dilate",
           [](const Group& g, double r, const std::vector<double>& x) {
             return dilate(g.alg->weights(), r, point(g, x));
           })
      .def("pseudo_norm",
           [](const Group& g, const std::vector<double>& x) {
             return PseudoNorm::minimal(g.alg->weights())(point(g, x));
           })
      .def("__repr__", [](const Group& g) {
        return "<gradecalc.Group " + g.name + " dim=" + std::to_string(g.alg->dim()) +
               " Q=" + std::to_string(g.alg->homogeneous_dimension()) + ">";
      });

  py::class_<Workspace>(m, "Workspace")
      .def(py::init([](const std::string& group, const std::string& op, std::optional<double> scale,
                       const std::vector<int>& points) {
             return prepare_workspace(make_config(group, op, scale, points, 0xC0FFEE, 1.0));
           }),
           py::arg("group") = "heisenberg", py::arg("op") = "", py::arg("scale") = py::none(),
           py::arg("points") = std::vector<int>{})
      .def_readonly("group", &Workspace::group)
      .def_property_readonly("shape", [](const Workspace& w) { return w.grid.counts(); })
      .def_property_readonly("half_widths", [](const Workspace& w) { return w.grid.half_widths(); })
      .def_property_readonly("operator", [](const Workspace& w) { return w.profile.op; })
      .def("axis",
           [](const Workspace& w, std::size_t k) {
             if (k >= w.grid.dim()) throw py::index_error("axis out of range");
             std::vector<double> v(w.grid.count(k));
             for (int i = 0; i < w.grid.count(k); ++i) v[i] = w.grid.coordinate(k, i);
             return v;
           })
      .def("heat_kernel",
           [](Workspace& w, double t) {
             if (!(t > 0)) throw py::value_error("t must be positive");
             return to_array(heat_kernel(w.plan(), t));
           },
           py::arg("t"))
      .def("riesz_kernel", [](Workspace& w, double a) { return to_array(riesz_kernel(w.plan(), a).values); },
           py::arg("a"))
      .def("bessel_kernel", [](Workspace& w, double a) { return to_array(bessel_kernel(w.plan(), a).values); },
           py::arg("a"))
      .def("fractional_apply",
           [](Workspace& w, const py::array_t<double, py::array::c_style | py::array::forcecast>& f, double s) {
             return to_array(fractional_apply(w.plan(), s, from_array(w.grid, f)));
           },
           py::arg("f"), py::arg("s"))
      .def("sobolev_norm",
           [](Workspace& w, const py::array_t<double, py::array::c_style | py::array::forcecast>& f, double s,
              double p, const std::string& flavor) {
             SobolevNormSpec spec;
             spec.plan = w.plan_ptr();
             spec.s = s;
             spec.p = p;
             spec.flavor = parse_flavor(flavor);
             spec.fields = w.fields;
             spec.fd_order = w.profile.order;
             spec.margin = 2;
             return sobolev_norm(spec, from_array(w.grid, f));
           },
           py::arg("f"), py::arg("s"), py::arg("p") = 2.0, py::arg("flavor") = "spectral")
      .def("integrate",
           [](const Workspace& w, const py::array_t<double, py::array::c_style | py::array::forcecast>& f) {
             return haar_integrate(from_array(w.grid, f));
           });

  m.def("group_check",
        [](const std::string& group) { return report_dict(run_group_check(make_config(group, "", {}, {}, 0xC0FFEE, 1))); },
        py::arg("group") = "heisenberg");
  m.def("verify",
        [](std::optional<std::string> group, std::uint64_t seed, double tol_scale) {
          const RunConfig c = make_config(group.value_or("heisenberg"), "", {}, {}, seed, tol_scale);
          VerificationReport rep;
          {
            py::gil_scoped_release release;
            rep = group ? run_verify(c) : run_default_suite(c);
          }
          return report_dict(rep);
        },
        py::arg("group") = py::none(), py::arg("seed") = 0xC0FFEE, py::arg("tol_scale") = 1.0);
}
