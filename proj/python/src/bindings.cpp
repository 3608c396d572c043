#include "opaq/cli.hpp"
#include "opaq/opacity.hpp"
#include "opaq/oracle.hpp"
#include "opaq/polyparam.hpp"
#include "opaq/tickgraph.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace opaq;

namespace {

// JSON crosses the boundary as text; the Python side decodes it.
using Bindings = std::map<std::string, std::string>;

Model bind(const Model& m, const Bindings& params) {
    if (params.empty()) return m;
    ParamValuation v;
    for (const auto& [k, s] : params) v[k] = parse_rational(s);
    return apply_valuation(m, v);
}

std::optional<DeltaBound> delta_of(const std::optional<std::string>& d) {
    if (!d) return std::nullopt;
    return DeltaBound::parse(*d);
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "Execution-time opacity analysis for (parametric) timed automata";

    py::register_exception<ModelError>(mod, "ModelError", PyExc_ValueError);
    py::register_exception<BudgetExceeded>(mod, "BudgetExceeded", PyExc_RuntimeError);

    py::class_<Model>(mod, "Model")
        .def_static("parse", [](const std::string& text) { return parse_model(text); })
        .def_static("load", &load_model)
        .def_readonly("clocks", &Model::clocks)
        .def_readonly("params", &Model::params)
        .def_readonly("locations", &Model::locations)
        .def("serialize", [](const Model& m) { return serialize(m); })
        .def("bind", &bind, py::arg("params"))
        .def("__repr__", [](const Model& m) { return serialize(m); });

    mod.def(
        "durations_json",
        [](const Model& m, const Bindings& params, const std::optional<std::string>& delta) {
            return to_json(duration_report(bind(m, params), delta_of(delta))).dump();
        },
        py::arg("model"), py::arg("params") = Bindings{}, py::arg("delta") = py::none());

    mod.def(
        "check_json",
        [](const Model& m, const std::string& problem, const Bindings& params,
           const std::optional<std::string>& delta) {
            auto d = delta_of(delta);
            return to_json(decide(duration_report(bind(m, params), d), parse_problem(problem, d.has_value()))).dump();
        },
        py::arg("model"), py::arg("problem"), py::arg("params") = Bindings{}, py::arg("delta") = py::none());

    mod.def(
        "opaque_times_json",
        [](const Model& m, const Bindings& params) { return to_json(compute_opaque_times(bind(m, params))).dump(); },
        py::arg("model"), py::arg("params") = Bindings{});

    mod.def(
        "contains",
        [](const std::string& set_json, const std::string& duration) {
            return duration_set_from_json(nlohmann::json::parse(set_json)).contains(parse_rational(duration));
        },
        py::arg("set_json"), py::arg("duration"));

    mod.def(
        "synth_exists_json",
        [](const Model& m, std::optional<std::size_t> depth) {
            SynthOptions o;
            o.depth_limit = depth;
            SynthResult r = synth_exists_opaque(m, o);
            nlohmann::ordered_json j;
            j["constraint"] = to_json(r.constraint);
            j["complete"] = r.complete;
            j["states"] = r.states;
            return j.dump();
        },
        py::arg("model"), py::arg("depth") = 200);

    mod.def("lu_roles", [](const Model& m) -> std::optional<std::map<std::string, std::string>> {
        LuVerdict v = classify_lu(m);
        if (!v.is_lu) return std::nullopt;
        std::map<std::string, std::string> out;
        for (std::size_t i = 0; i < m.params.size(); ++i)
            out[m.params[i]] = v.roles[i] == BoundRole::Lower ? "lower" : "upper";
        return out;
    });
    mod.def("lu_exists", &lu_exists_nonempty);

    mod.def(
        "oracle_json",
        [](const Model& m, std::int64_t q, const std::string& horizon, const Bindings& params,
           const std::optional<std::string>& delta) {
            return to_json(digitized_durations(bind(m, params), q, parse_rational(horizon), std::nullopt,
                                               delta_of(delta)))
                .dump();
        },
        py::arg("model"), py::arg("granularity"), py::arg("horizon"), py::arg("params") = Bindings{},
        py::arg("delta") = py::none());

    mod.def(
        "random_runs_json",
        [](const Model& m, std::size_t n, std::uint64_t seed) {
            nlohmann::ordered_json a = nlohmann::ordered_json::array();
            for (const auto& s : random_runs(m, n, seed)) a.push_back(to_json(s));
            return a.dump();
        },
        py::arg("model"), py::arg("n"), py::arg("seed") = 1);

    mod.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            int code = run_cli(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));
}
