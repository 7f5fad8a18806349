#include "injeqt/cli.hpp"
#include "injeqt/analytics.hpp"
#include "injeqt/errors.hpp"
#include "injeqt/harness.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

namespace injeqt
{

namespace
{

namespace fs = std::filesystem;

struct Args
{
    std::string circuit;
    std::string config;
    std::string factory;
    std::string injeqt_factory;
    std::string tech;
    std::string policy;
    std::string r;
    std::size_t trials{20};
    std::uint64_t seed{0};
    std::optional<double> eps_synth;
    std::optional<std::uint64_t> c;
    std::optional<std::uint32_t> chain_length;
    std::string out;
    std::string timeline_dump;
    bool json{false};
    bool no_overlap{false};
    bool merge_adjacent{false};
    bool automorphisms{false};
    bool count_trivial{false};
    unsigned threads{0};
};

/// Thrown for bad flag values that CLI11 cannot check on its own.
struct UsageError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

RRange
parse_r(const std::string& text, RRange fallback)
{
    if (text.empty())
        return fallback;
    auto num = [&](const std::string& s) {
        std::size_t pos = 0;
        unsigned long v = 0;
        try
        {
            v = std::stoul(s, &pos);
        }
        catch (const std::exception&)
        {
            pos = 0;
        }
        if (pos == 0 || pos != s.size() || v == 0 || v > 100000)
            throw UsageError("--r expects N or a..b with 1 <= a <= b, got '" + text + "'");
        return static_cast<std::uint32_t>(v);
    };
    const auto dots = text.find("..");
    if (dots == std::string::npos)
    {
        const auto v = num(text);
        return {v, v};
    }
    const RRange r{num(text.substr(0, dots)), num(text.substr(dots + 2))};
    if (r.hi < r.lo)
        throw UsageError("--r range '" + text + "' is empty");
    return r;
}

Architecture
build_arch(const Args& a, const std::string& factory_flag)
{
    Architecture arch;
    if (!a.config.empty())
        arch = load_architecture(a.config);
    else
        arch = Architecture::defaults(factory_flag.empty() ? FactoryKind::Distillation : parse_factory_kind(factory_flag),
                                      a.tech.empty() ? InjectionTech::LatticeSurgery : parse_injection_tech(a.tech));
    if (!a.config.empty() && !factory_flag.empty())
    {
        const FactoryKind kind = parse_factory_kind(factory_flag);
        arch.factory = FactorySpec::defaults(kind);
        const AuxInjectionModel d = AuxInjectionModel::defaults(kind, arch.aux.tech);
        arch.aux.d_aux = d.d_aux;
        arch.aux.patch_qubits = d.patch_qubits;
    }
    if (!a.config.empty() && !a.tech.empty())
        arch.aux.tech = parse_injection_tech(a.tech);
    if (a.eps_synth)
    {
        arch.synthesis.eps_synth = *a.eps_synth;
        arch.synthesis.c_override.reset();
    }
    if (a.c)
        arch.synthesis.c_override = *a.c;
    arch.validate();
    return arch;
}

RunConfig
build_run_config(const Args& a, const Circuit& circuit, const std::string& factory_flag, Policy policy)
{
    RunConfig cfg;
    cfg.arch = build_arch(a, factory_flag);
    cfg.policy = policy;
    cfg.prefetch.overlap_setup = !a.no_overlap;
    cfg.lowering.emit_automorphisms = a.automorphisms;
    cfg.compile.merge_adjacent = a.merge_adjacent;
    cfg.forced_chain_length = a.chain_length;
    cfg.count_trivial = a.count_trivial;
    cfg.benchmark = circuit.name;
    return cfg;
}

void
write_file(const fs::path& path, const std::string& contents)
{
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw Error("cannot write '" + path.string() + "'");
    f << contents;
}

std::string
csv_of(const std::vector<TrialMetrics>& rows)
{
    std::ostringstream os;
    write_results_csv(os, rows);
    return os.str();
}

void
add_machine_flags(CLI::App* app, Args& a)
{
    static const std::vector<std::string> kFactories{"distillation", "cultivation", "star"};
    app->add_option("--config", a.config, "Architecture JSON; flags override its values");
    app->add_option("--factory", a.factory, "Base factory")->check(CLI::IsMember(kFactories));
    app->add_option("--tech", a.tech, "Auxiliary injection technology")
        ->check(CLI::IsMember({"surgery", "transversal"}));
    app->add_option("--eps-synth", a.eps_synth, "Synthesis accuracy; sets c = ceil(-10 log10 eps)")
        ->check(CLI::Range(0.0, 1.0));
    app->add_option("--c", a.c, "T-count per rotation (overrides --eps-synth)")->check(CLI::PositiveNumber);
    app->add_flag("--json", a.json, "Print JSON instead of text");
}

void
add_run_flags(CLI::App* app, Args& a)
{
    app->add_option("--circuit", a.circuit, "OpenQASM 2.0 input")->required();
    app->add_option("--r", a.r, "Factory count N or range a..b");
    app->add_option("--trials", a.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
    app->add_option("--seed", a.seed, "Base seed");
    app->add_option("--out", a.out, "Output directory for results.csv and summary.json");
    app->add_option("--threads", a.threads, "Worker threads (0 = all cores)");
    app->add_option("--chain-length", a.chain_length, "Fix every correction chain to this length")
        ->check(CLI::PositiveNumber);
    app->add_flag("--no-overlap", a.no_overlap, "Start preparation only after setup completes");
    app->add_flag("--merge-adjacent", a.merge_adjacent, "Merge adjacent rotations about the same Pauli");
    app->add_flag("--automorphisms", a.automorphisms, "Emit shift automorphisms before in-module measurements");
    app->add_flag("--count-trivial", a.count_trivial, "Include I/U errors in total_error");
}

int
cmd_analyze(const Args& a, std::ostream& out)
{
    const Architecture arch = build_arch(a, a.factory);
    const AnalyticReport r = analytic(arch);
    out << (a.json ? to_json(r) + "\n" : to_text(r));
    return 0;
}

int
cmd_run(const Args& a, std::ostream& out)
{
    const Circuit circuit = parse_qasm_file(a.circuit);
    const Policy policy = a.policy.empty() ? Policy::Injeqt : parse_policy(a.policy);
    RunConfig cfg = build_run_config(a, circuit, a.factory, policy);
    const RRange r = parse_r(a.r, {1, 1});
    if (r.lo != r.hi)
        throw UsageError("run takes a single --r value; use sweep for ranges");
    cfg.prefetch.R = r.lo;

    const ExecutionPlan plan = prepare(circuit, cfg);
    const auto rows = run_trials(plan, cfg, a.trials, a.seed, a.threads);

    SweepResult sw;
    sw.policy = policy;
    SweepPoint pt;
    pt.R = r.lo;
    pt.trials = rows;
    for (Metric m : kMetrics)
    {
        std::vector<double> v;
        for (const auto& t : rows)
            v.push_back(t.value(m));
        pt.stats[static_cast<std::size_t>(m)] = summarize(std::move(v));
    }
    sw.points.push_back(std::move(pt));
    sw.r_star.fill(r.lo);
    const std::string summary = summary_json(circuit.name, {sw});

    if (!a.out.empty())
    {
        write_file(fs::path(a.out) / "results.csv", csv_of(rows));
        write_file(fs::path(a.out) / "summary.json", summary + "\n");
    }
    if (!a.timeline_dump.empty())
    {
        SimOptions sim;
        sim.seed = trial_seed(a.seed, 0);
        sim.forced_chain_length = cfg.forced_chain_length;
        sim.count_trivial = cfg.count_trivial;
        sim.record_events = true;
        const Timeline tl = simulate(plan, cfg.arch, cfg.policy, cfg.prefetch, sim);
        std::ostringstream os;
        write_timeline_csv(os, tl);
        write_file(a.timeline_dump, os.str());
    }

    if (a.json)
    {
        out << summary << '\n';
        return 0;
    }
    const SweepPoint& p = sw.points.front();
    char buf[160];
    out << circuit.name << ": " << label_of(cfg) << " R=" << r.lo << " trials=" << a.trials << " rotations="
        << plan.rotations.size() << '\n';
    for (Metric m : kMetrics)
    {
        std::snprintf(buf, sizeof buf, "  %-12s mean %.6g  min %.6g  max %.6g\n",
                      std::string(to_string(m)).c_str(), p[m].mean, p[m].min, p[m].max);
        out << buf;
    }
    return 0;
}

int
cmd_sweep(const Args& a, std::ostream& out)
{
    const Circuit circuit = parse_qasm_file(a.circuit);
    const RRange range = parse_r(a.r, {1, 20});
    const RunConfig base = build_run_config(a, circuit, a.factory, Policy::Injeqt);

    std::vector<Policy> policies;
    if (!a.policy.empty())
        policies.push_back(parse_policy(a.policy));
    else
    {
        policies.push_back(Policy::Injeqt);
        if (base.arch.factory.output_kind == OutputKind::TState)
            policies.push_back(Policy::Tdg);
    }

    std::vector<SweepResult> sweeps;
    std::vector<TrialMetrics> rows;
    for (Policy p : policies)
    {
        RunConfig cfg = base;
        cfg.policy = p;
        if (p == Policy::Tdg && cfg.arch.factory.output_kind != OutputKind::TState)
            throw ConfigError("TDG with an Rz-state factory is undefined");
        sweeps.push_back(sweep_r(circuit, cfg, range, a.trials, a.seed, a.threads));
        for (const auto& pt : sweeps.back().points)
            rows.insert(rows.end(), pt.trials.begin(), pt.trials.end());
    }
    const std::string summary = summary_json(circuit.name, sweeps);
    const fs::path dir = a.out.empty() ? fs::path(".") : fs::path(a.out);
    write_file(dir / "results.csv", csv_of(rows));
    write_file(dir / "summary.json", summary + "\n");

    if (a.json)
    {
        out << summary << '\n';
        return 0;
    }
    for (const auto& sw : sweeps)
    {
        out << to_string(sw.policy) << ": r_star";
        for (Metric m : kMetrics)
            out << ' ' << to_string(m) << '=' << sw.best_r(m);
        out << '\n';
    }
    out << "wrote " << rows.size() << " rows to " << (dir / "results.csv").string() << '\n';
    return 0;
}

int
cmd_compare(const Args& a, std::ostream& out)
{
    const Circuit circuit = parse_qasm_file(a.circuit);
    const std::string cand_factory = a.injeqt_factory.empty() ? a.factory : a.injeqt_factory;
    const RunConfig candidate = build_run_config(a, circuit, cand_factory, Policy::Injeqt);

    std::vector<RunConfig> baselines;
    if (!a.factory.empty() && !a.injeqt_factory.empty())
    {
        RunConfig b = build_run_config(a, circuit, a.factory, Policy::Tdg);
        b.prefetch.R = 1;
        baselines.push_back(std::move(b));
    }
    else
        baselines = tdg_baselines_for(candidate);

    CompareOptions opts;
    opts.range = parse_r(a.r, {1, 20});
    opts.n_trials = a.trials;
    opts.base_seed = a.seed;
    opts.threads = a.threads;
    const Comparison cmp = compare(circuit, baselines, candidate, opts);

    if (!a.out.empty())
        write_file(fs::path(a.out) / "summary.json", summary_json(circuit.name, {}, &cmp) + "\n");
    out << (a.json ? comparison_json(cmp) + "\n" : to_text(cmp));
    return 0;
}

}  // namespace

int
run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Rz-state injection planner and simulator", "injeqt"};
    app.require_subcommand(1);
    Args a;

    auto* analyze = app.add_subcommand("analyze", "Closed-form error/time report");
    add_machine_flags(analyze, a);

    auto* run = app.add_subcommand("run", "Monte Carlo trials of one configuration");
    add_machine_flags(run, a);
    add_run_flags(run, a);
    run->add_option("--policy", a.policy, "tdg or injeqt")->check(CLI::IsMember({"tdg", "injeqt"}));
    run->add_option("--timeline-dump", a.timeline_dump, "Write trial 0's event timeline as CSV");

    auto* sweep = app.add_subcommand("sweep", "Sweep the factory count R");
    add_machine_flags(sweep, a);
    add_run_flags(sweep, a);
    sweep->add_option("--policy", a.policy, "Only this policy (default: both where defined)")
        ->check(CLI::IsMember({"tdg", "injeqt"}));

    auto* cmp = app.add_subcommand("compare", "TDG vs best-R INJEQT improvement per metric");
    add_machine_flags(cmp, a);
    add_run_flags(cmp, a);
    cmp->add_option("--injeqt-factory", a.injeqt_factory, "Factory for the INJEQT side (default --factory)")
        ->check(CLI::IsMember({"distillation", "cultivation", "star"}));

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp&)
    {
        out << app.help();
        return 0;
    }
    catch (const CLI::CallForAllHelp&)
    {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    }
    catch (const CLI::ParseError& e)
    {
        err << "injeqt: usage error: " << e.what() << '\n';
        return 2;
    }

    try
    {
        if (*analyze)
            return cmd_analyze(a, out);
        if (*run)
            return cmd_run(a, out);
        if (*sweep)
            return cmd_sweep(a, out);
        return cmd_compare(a, out);
    }
    catch (const UsageError& e)
    {
        err << "injeqt: usage error: " << e.what() << '\n';
        return 2;
    }
    catch (const std::exception& e)
    {
        std::string msg = e.what();
        for (char& ch : msg)
            if (ch == '\n')
                ch = ' ';
        err << "injeqt: error: " << msg << '\n';
        return 1;
    }
}

}  // namespace injeqt
