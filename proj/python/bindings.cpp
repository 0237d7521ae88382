#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rdsir/error.hpp"
#include "rdsir/helmholtz.hpp"
#include "rdsir/io.hpp"
#include "rdsir/run.hpp"
#include "rdsir/scenario.hpp"
#include "rdsir/spectral.hpp"

namespace py = pybind11;
using namespace rdsir;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

// (ny, nx) array, row j at y_j, matching the snapshot CSV layout.
Array to_array(const ScalarField& f) {
  const GridSpec& g = f.grid();
  Array a({g.ny, g.nx});
  std::copy(f.values().begin(), f.values().end(), a.mutable_data());
  return a;
}

ScalarField from_array(const GridSpec& g, const Array& a) {
  if (a.ndim() != 2 || a.shape(0) != g.ny || a.shape(1) != g.nx) {
    throw InvalidArgument("array shape must be (ny, nx) = (" + std::to_string(g.ny) + ", " +
                          std::to_string(g.nx) + ")");
  }
  return ScalarField(g, std::vector<double>(a.data(), a.data() + a.size()));
}

py::dict state_dict(const EpidemicState& u) {
  py::dict d;
  for (Compartment c : kAllCompartments) d[py::str(std::string(compartment_name(c)))] = to_array(u[c]);
  d["time"] = u.time;
  return d;
}

py::dict series_dict(const std::vector<SeriesRecord>& s) {
  auto column = [&s](double SeriesRecord::*m) {
    Array a(static_cast<py::ssize_t>(s.size()));
    for (std::size_t k = 0; k < s.size(); ++k) a.mutable_data()[k] = s[k].*m;
    return a;
  };
  py::dict d;
  d["t"] = column(&SeriesRecord::time);
  d["total_mass"] = column(&SeriesRecord::total_mass);
  d["infected_fraction"] = column(&SeriesRecord::infected_fraction);
  d["noncompliant_fraction"] = column(&SeriesRecord::noncompliant_fraction);
  d["min_value"] = column(&SeriesRecord::min_value);
  d["bound_gap"] = column(&SeriesRecord::bound_gap);
  return d;
}

DfeCase case_from(const std::string& name) {
  if (name == "compliant") return DfeCase::compliant;
  if (name == "noncompliant") return DfeCase::noncompliant;
  throw InvalidArgument("case must be 'compliant' or 'noncompliant'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Reaction-diffusion SIR model with noncompliance";

  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);
  py::register_exception<InvariantViolation>(m, "InvariantViolation", PyExc_RuntimeError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  py::class_<GridSpec>(m, "Grid")
      .def(py::init([](int nx, int ny, double xmin, double xmax, double ymin, double ymax) {
             GridSpec g{xmin, xmax, ymin, ymax, nx, ny};
             g.validate();
             return g;
           }),
           py::arg("nx") = 128, py::arg("ny") = 128, py::arg("xmin") = -5.0, py::arg("xmax") = 5.0,
           py::arg("ymin") = -5.0, py::arg("ymax") = 5.0)
      .def_readonly("nx", &GridSpec::nx)
      .def_readonly("ny", &GridSpec::ny)
      .def_readonly("xmin", &GridSpec::xmin)
      .def_readonly("xmax", &GridSpec::xmax)
      .def_readonly("ymin", &GridSpec::ymin)
      .def_readonly("ymax", &GridSpec::ymax)
      .def_property_readonly("hx", &GridSpec::hx)
      .def_property_readonly("hy", &GridSpec::hy)
      .def("x", [](const GridSpec& g) {
        Array a(g.nx);
        for (int i = 0; i < g.nx; ++i) a.mutable_data()[i] = g.x(i);
        return a;
      })
      .def("y", [](const GridSpec& g) {
        Array a(g.ny);
        for (int j = 0; j < g.ny; ++j) a.mutable_data()[j] = g.y(j);
        return a;
      });

  py::class_<ScenarioConfig>(m, "Scenario")
      .def_readonly("label", &ScenarioConfig::label)
      .def_readonly("grid", &ScenarioConfig::grid)
      .def("set", [](ScenarioConfig& c, const std::string& key, const std::string& value) {
        apply_setting(c, key, value);
      })
      .def("serialize", &serialize_scenario)
      .def("hash", &config_hash)
      .def("initial_state", [](const ScenarioConfig& c) { return state_dict(build_initial_state(c)); })
      .def("__eq__", [](const ScenarioConfig& a, const ScenarioConfig& b) { return a == b; });

  m.attr("PRESETS") = py::cast(std::vector<std::string>(kPresetNames.begin(), kPresetNames.end()));
  m.def("preset", [](const std::string& name) { return preset(name); }, py::arg("name"));
  m.def("parse_scenario", [](const std::string& text) { return parse_scenario(text); }, py::arg("text"));

  m.def(
      "run",
      [](const ScenarioConfig& cfg) {
        Trajectory t;
        {
          py::gil_scoped_release release;
          t = run_scenario(cfg);
        }
        py::dict out;
        out["series"] = series_dict(t.series);
        py::list snaps;
        for (const auto& s : t.snapshots) snaps.append(state_dict(s.state));
        out["snapshots"] = snaps;
        out["final"] = state_dict(t.final_state);
        out["warnings"] = t.warnings;
        out["violations"] = t.violations;
        out["max_residual"] = t.max_residual;
        return out;
      },
      py::arg("scenario"), "Run a scenario; returns series columns, snapshots and the final state.");

  m.def(
      "helmholtz_solve",
      [](const GridSpec& g, const Array& rhs, double a, double d) {
        return to_array(helmholtz_solve(from_array(g, rhs), a, d));
      },
      py::arg("grid"), py::arg("rhs"), py::arg("absorption"), py::arg("diffusion"),
      "Solve (a - d Lap) u = rhs under zero-flux boundaries.");
  m.def(
      "laplacian",
      [](const GridSpec& g, const Array& f, double d) { return to_array(apply_laplacian(from_array(g, f), d)); },
      py::arg("grid"), py::arg("field"), py::arg("diffusion") = 1.0);
  m.def(
      "integrate", [](const GridSpec& g, const Array& f) { return integrate(from_array(g, f)); },
      py::arg("grid"), py::arg("field"));
  m.def(
      "steady_state",
      [](const GridSpec& g, const Array& b, double rate, double d) {
        return to_array(steady_state(from_array(g, b), rate, d));
      },
      py::arg("grid"), py::arg("birth"), py::arg("rate"), py::arg("diffusion"));
  m.def(
      "principal_eigenpair",
      [](const GridSpec& g, double d, const Array& c) {
        EigenResult r = principal_eigenpair(d, from_array(g, c));
        return py::make_tuple(r.lambda, to_array(r.phi));
      },
      py::arg("grid"), py::arg("diffusion"), py::arg("potential"));
  m.def(
      "reproduction_number",
      [](const GridSpec& g, double d, const Array& k, double absorption) {
        R0Result r = reproduction_number(d, from_array(g, k), absorption);
        return py::make_tuple(r.value, to_array(r.phi));
      },
      py::arg("grid"), py::arg("diffusion"), py::arg("infectivity"), py::arg("absorption"));
  m.def(
      "sign_consistency",
      [](const ScenarioConfig& cfg, const std::string& which) {
        SignReport r = sign_consistency(cfg.model_params(), case_from(which));
        py::dict d;
        d["r0"] = r.r0;
        d["lambda"] = r.lambda;
        d["consistent"] = r.agree || !r.required;
        return d;
      },
      py::arg("scenario"), py::arg("case") = "noncompliant");
  m.def(
      "linearization_check",
      [](const ScenarioConfig& cfg, const std::string& which) {
        const DfeCase c = case_from(which);
        DfeProblem prob = dfe_problem(cfg.model_params(), c);
        LinearizationReport r = dfe_linearization_check(prob.steady, cfg.rates, c);
        py::dict d;
        d["v_cooperative"] = r.v_cooperative;
        d["m_cooperative"] = r.m_cooperative;
        d["v_max_real"] = r.v_max_real;
        d["m_max_real"] = r.m_max_real;
        d["passed"] = r.passed();
        return d;
      },
      py::arg("scenario"), py::arg("case") = "noncompliant");
  m.def(
      "read_snapshot",
      [](const std::string& path) {
        Snapshot s = read_snapshot_csv(path);
        return py::make_tuple(s.field.grid(), to_array(s.field), s.time, s.name);
      },
      py::arg("path"));
}
