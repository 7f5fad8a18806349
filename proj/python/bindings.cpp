#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "injeqt/analytics.hpp"
#include "injeqt/cli.hpp"
#include "injeqt/errors.hpp"
#include "injeqt/harness.hpp"

#include <sstream>

namespace py = pybind11;
using namespace injeqt;

namespace
{

Architecture
make_arch(const std::string& factory, const std::string& tech, std::optional<std::string> config_json,
          std::optional<std::uint64_t> c)
{
    Architecture a = config_json ? architecture_from_json(*config_json)
                                 : Architecture::defaults(parse_factory_kind(factory), parse_injection_tech(tech));
    if (c)
        a.synthesis.c_override = *c;
    a.validate();
    return a;
}

RunConfig
make_config(const std::string& factory, const std::string& tech, const std::string& policy, std::uint32_t R,
            std::optional<std::string> config_json, std::optional<std::uint64_t> c,
            std::optional<std::uint32_t> chain_length, bool overlap)
{
    RunConfig cfg;
    cfg.arch = make_arch(factory, tech, config_json, c);
    cfg.policy = parse_policy(policy);
    cfg.prefetch = {R, overlap};
    cfg.forced_chain_length = chain_length;
    return cfg;
}

py::dict
to_dict(const TrialMetrics& m)
{
    py::dict d;
    d["benchmark"] = m.benchmark;
    d["policy"] = std::string(to_string(m.policy));
    d["factory"] = std::string(to_string(m.factory));
    d["tech"] = std::string(to_string(m.tech));
    d["R"] = m.R;
    d["seed"] = m.seed;
    d["total_error"] = m.total_error;
    d["wall_clock"] = m.wall_clock;
    d["phys_qubits"] = m.phys_qubits;
    d["spacetime"] = m.spacetime;
    return d;
}

}  // namespace

PYBIND11_MODULE(_injeqt, m)
{
    m.doc() = "Rz-state injection planner and simulator (native core).";

    static py::exception<Error> base(m, "InjeqtError", PyExc_ValueError);
    py::register_exception<SyntaxError>(m, "QasmSyntaxError", base.ptr());
    py::register_exception<UnsupportedGate>(m, "UnsupportedGate", base.ptr());
    py::register_exception<MeasurementOrderError>(m, "MeasurementOrderError", base.ptr());
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());

    py::class_<Circuit>(m, "Circuit")
        .def_readonly("num_qubits", &Circuit::num_qubits)
        .def_readonly("name", &Circuit::name)
        .def("__len__", [](const Circuit& c) { return c.gates.size(); })
        .def("gate_kinds", [](const Circuit& c) {
            std::vector<std::string> out;
            for (const auto& g : c.gates)
                out.emplace_back(to_string(g.kind));
            return out;
        });

    m.def("parse_qasm", &parse_qasm, py::arg("text"), py::arg("name") = "");
    m.def("parse_qasm_file", [](const std::string& path) { return parse_qasm_file(path); });

    m.def(
        "compile_pbc",
        [](const Circuit& c, bool merge) {
            const PBCProgram p = compile_to_pbc(c, {merge});
            std::vector<std::pair<std::string, double>> rots;
            for (const auto& r : p.rotations)
                rots.emplace_back(r.pauli.str(), r.angle);
            std::vector<std::string> meas;
            for (const auto& x : p.measurements)
                meas.push_back(x.pauli.str());
            return py::make_tuple(rots, meas);
        },
        py::arg("circuit"), py::arg("merge_adjacent") = false, "Returns ([(pauli, angle)], [pauli]).");

    m.def(
        "analyze_json",
        [](const std::string& factory, const std::string& tech, std::optional<std::uint64_t> c,
           std::optional<std::string> config_json) { return to_json(analytic(make_arch(factory, tech, config_json, c))); },
        py::arg("factory") = "distillation", py::arg("tech") = "surgery", py::arg("c") = py::none(),
        py::arg("config_json") = py::none());

    m.def(
        "rz_viability",
        [](double frz, double ft, double ec, std::uint64_t c) {
            const auto v = injeqt::rz_viability(frz, ft, ec, c);
            return py::make_tuple(v.holds, v.sufficient);
        },
        py::arg("eps_frz"), py::arg("eps_ft"), py::arg("eps_c"), py::arg("c"));

    m.def(
        "run_trials",
        [](const Circuit& circ, const std::string& factory, const std::string& tech, const std::string& policy,
           std::uint32_t R, std::size_t trials, std::uint64_t seed, std::optional<std::string> config_json,
           std::optional<std::uint64_t> c, std::optional<std::uint32_t> chain_length, bool overlap) {
            RunConfig cfg = make_config(factory, tech, policy, R, config_json, c, chain_length, overlap);
            cfg.benchmark = circ.name;
            std::vector<TrialMetrics> rows;
            {
                py::gil_scoped_release release;
                rows = run_trials(circ, cfg, trials, seed);
            }
            py::list out;
            for (const auto& r : rows)
                out.append(to_dict(r));
            return out;
        },
        py::arg("circuit"), py::arg("factory") = "distillation", py::arg("tech") = "surgery",
        py::arg("policy") = "injeqt", py::arg("R") = 1, py::arg("trials") = 20, py::arg("seed") = 0,
        py::arg("config_json") = py::none(), py::arg("c") = py::none(), py::arg("chain_length") = py::none(),
        py::arg("overlap_setup") = true);

    m.def(
        "sweep_json",
        [](const Circuit& circ, const std::string& factory, const std::string& tech, const std::string& policy,
           std::uint32_t r_lo, std::uint32_t r_hi, std::size_t trials, std::uint64_t seed) {
            RunConfig cfg = make_config(factory, tech, policy, 1, std::nullopt, std::nullopt, std::nullopt, true);
            cfg.benchmark = circ.name;
            py::gil_scoped_release release;
            return summary_json(circ.name, {sweep_r(circ, cfg, {r_lo, r_hi}, trials, seed)});
        },
        py::arg("circuit"), py::arg("factory") = "distillation", py::arg("tech") = "surgery",
        py::arg("policy") = "injeqt", py::arg("r_lo") = 1, py::arg("r_hi") = 20, py::arg("trials") = 20,
        py::arg("seed") = 0);

    m.def(
        "compare_json",
        [](const Circuit& circ, const std::string& injeqt_factory, const std::string& tech, std::uint32_t r_lo,
           std::uint32_t r_hi, std::size_t trials, std::uint64_t seed) {
            RunConfig cand = make_config(injeqt_factory, tech, "injeqt", 1, std::nullopt, std::nullopt, std::nullopt, true);
            cand.benchmark = circ.name;
            CompareOptions o{{r_lo, r_hi}, trials, seed, 0};
            py::gil_scoped_release release;
            return comparison_json(compare(circ, tdg_baselines_for(cand), cand, o));
        },
        py::arg("circuit"), py::arg("injeqt_factory") = "distillation", py::arg("tech") = "surgery",
        py::arg("r_lo") = 1, py::arg("r_hi") = 20, py::arg("trials") = 20, py::arg("seed") = 0);

    m.def(
        "cli",
        [](std::vector<std::string> args) {
            args.insert(args.begin(), "injeqt");
            std::vector<const char*> argv;
            for (const auto& a : args)
                argv.push_back(a.c_str());
            std::ostringstream out, err;
            const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs the command line; returns (exit_code, stdout, stderr).");
}
