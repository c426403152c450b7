// Python bindings. Rationals cross the boundary as "n/d" strings and are
// turned into fractions.Fraction by the package wrapper.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "asmas/belief.hpp"
#include "asmas/error.hpp"
#include "asmas/io.hpp"
#include "asmas/pipeline.hpp"
#include "asmas/simulate.hpp"

namespace py = pybind11;
using namespace asmas;

namespace {

struct PyModel {
  std::shared_ptr<Model> m;
};

std::optional<FinitePath> optional_path(const Model& m, const std::optional<std::string>& text) {
  if (!text) return std::nullopt;
  return parse_path(m, *text);
}

py::dict py_check(const PyModel& pm, const std::string& formula, const std::optional<std::string>& at,
               const std::string& engine, const std::string& mode) {
  PipelineOptions opt;
  opt.engine = parse_engine(engine);
  opt.at = optional_path(*pm.m, at);
  if (mode == "belief-state")
    opt.mode = BeliefMode::BeliefState;
  else if (mode != "path")
    throw Error("usage-error", "unknown mode '" + mode + "'");
  PipelineResult r = run_pipeline(*pm.m, *parse_formula(formula), opt);
  py::dict d;
  d["engine"] = engine_name(r.engine);
  d["fragment"] = fragment_name(r.fragment);
  d["numeric"] = r.verdict.numeric;
  d["truth"] = r.verdict.truth;
  d["value"] = to_string(r.verdict.value);
  d["warnings"] = r.warnings;
  d["strategies"] = r.strategies.size();
  if (r.qualitative && r.qualitative->witness) d["witness"] = pm.m->states[*r.qualitative->witness].id;
  return d;
}

std::map<std::string, std::string> py_belief(const PyModel& pm, const std::string& agent, const std::string& path) {
  const Model& m = *pm.m;
  ModelPreferences prefs(m);
  BeliefAssignment be = belief_assignment(m, prefs, trace_of(m, m.agent_index(agent), parse_path(m, path)));
  std::map<std::string, std::string> out;
  for (auto& [p, v] : be.entries) out[path_id(m, p)] = to_string(v);
  return out;
}

std::string py_probability(const PyModel& pm, const std::string& agent, const std::string& path, bool cross_type) {
  const Model& m = *pm.m;
  ModelPreferences prefs(m);
  SynthesizedStrategies zeta(m);
  return to_string(path_probability(m, prefs, m.agent_index(agent), parse_path(m, path), cross_type, &zeta));
}

std::vector<std::string> py_simulate(const PyModel& pm, std::uint64_t seed, std::size_t steps) {
  const Model& m = *pm.m;
  SynthesizedStrategies zeta(m);
  std::mt19937_64 rng(seed);
  FinitePath p = simulate_path(m, zeta, rng, steps);
  std::vector<std::string> out;
  for (StateIdx s : p.states) out.push_back(m.states[s].id);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Exact model checking of probabilistic rational temporal logic with trust";

  static py::handle error_type = py::exception<Error>(mod, "Error", PyExc_RuntimeError).release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(error_type.ptr(), (e.kind() + ": " + e.what()).c_str());
    }
  });

  py::class_<PyModel>(mod, "Model")
      .def_property_readonly("name", [](const PyModel& pm) { return pm.m->name; })
      .def_property_readonly("size", [](const PyModel& pm) { return pm.m->size(); })
      .def_property_readonly("agents",
                             [](const PyModel& pm) {
                               std::vector<std::string> names;
                               for (auto& a : pm.m->agents) names.push_back(a.name);
                               return names;
                             })
      .def_property_readonly("states",
                             [](const PyModel& pm) {
                               std::vector<std::string> ids;
                               for (auto& s : pm.m->states) ids.push_back(s.id);
                               return ids;
                             })
      .def("violations",
           [](const PyModel& pm) {
             std::vector<std::pair<std::string, std::string>> out;
             for (auto& v : pm.m->report().violations) out.emplace_back(v.code, v.message);
             return out;
           })
      .def("dump", [](const PyModel& pm) { return dump_model(*pm.m); });

  mod.def("load_model", [](const std::string& path) { return PyModel{std::make_shared<Model>(load_model_file(path))}; },
          py::arg("path"));
  mod.def("load_model_text",
          [](const std::string& text) { return PyModel{std::make_shared<Model>(load_model_text(text))}; },
          py::arg("text"));
  mod.def("check", &py_check, py::arg("model"), py::arg("formula"), py::arg("at") = std::nullopt,
          py::arg("engine") = "auto", py::arg("mode") = "path");
  mod.def("belief", &py_belief, py::arg("model"), py::arg("agent"), py::arg("path"));
  mod.def("path_probability", &py_probability, py::arg("model"), py::arg("agent"), py::arg("path"),
          py::arg("cross_type") = false);
  mod.def("simulate", &py_simulate, py::arg("model"), py::arg("seed") = 0, py::arg("steps") = 6);
  mod.def("normalize_formula", [](const std::string& f) { return to_string(*parse_formula(f)); });
  mod.def("fragment", [](const std::string& f) { return std::string(fragment_name(classify_fragment(*parse_formula(f)))); });
}
