#include "injeqt/harness.hpp"
#include "injeqt/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

namespace injeqt
{

std::string_view
to_string(Metric m)
{
    switch (m)
    {
    case Metric::TotalError: return "total_error";
    case Metric::WallClock:  return "wall_clock";
    case Metric::PhysQubits: return "phys_qubits";
    case Metric::Spacetime:  return "spacetime";
    }
    return "?";
}

double
TrialMetrics::value(Metric m) const
{
    switch (m)
    {
    case Metric::TotalError: return total_error;
    case Metric::WallClock:  return wall_clock;
    case Metric::PhysQubits: return static_cast<double>(phys_qubits);
    case Metric::Spacetime:  return spacetime;
    }
    return 0.0;
}

std::uint64_t
trial_seed(std::uint64_t base_seed, std::uint64_t i)
{
    return derive_seed(base_seed, i);
}

namespace
{

/// Runs fn(i) for i in [0, n) on a small pool; rethrows the first failure.
template <class Fn>
void
parallel_for(std::size_t n, unsigned threads, Fn&& fn)
{
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    if (threads <= 1)
    {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;)
        {
            const std::size_t i = next.fetch_add(1);
            if (i >= n)
                return;
            try
            {
                fn(i);
            }
            catch (...)
            {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next = n;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back(worker);
    for (auto& th : pool)
        th.join();
    if (failure)
        std::rethrow_exception(failure);
}

}  // namespace

ExecutionPlan
prepare(const Circuit& circuit, const RunConfig& cfg)
{
    cfg.arch.validate();
    return lower(compile_to_pbc(circuit, cfg.compile), cfg.arch.layout, cfg.lowering);
}

TrialMetrics
run_trial(const ExecutionPlan& plan, const RunConfig& cfg, std::uint64_t seed)
{
    SimOptions sim;
    sim.seed = seed;
    sim.forced_chain_length = cfg.forced_chain_length;
    sim.count_trivial = cfg.count_trivial;
    const Timeline tl = simulate(plan, cfg.arch, cfg.policy, cfg.prefetch, sim);

    TrialMetrics m;
    m.benchmark = cfg.benchmark;
    m.policy = cfg.policy;
    m.factory = cfg.arch.factory.name;
    m.tech = cfg.arch.aux.tech;
    m.R = cfg.prefetch.R;
    m.seed = seed;
    m.total_error = tl.total_error;
    m.wall_clock = tl.wall_clock;
    m.phys_qubits =
        physical_qubits(cfg.arch.layout, plan.num_modules, cfg.arch.factory, cfg.arch.aux, cfg.prefetch.R, cfg.policy);
    m.spacetime = static_cast<double>(m.phys_qubits) * m.wall_clock;
    return m;
}

std::vector<TrialMetrics>
run_trials(const ExecutionPlan& plan, const RunConfig& cfg, std::size_t n_trials, std::uint64_t base_seed,
           unsigned threads)
{
    if (n_trials == 0)
        throw ConfigError("n_trials must be >= 1");
    std::vector<TrialMetrics> out(n_trials);
    parallel_for(n_trials, threads, [&](std::size_t i) { out[i] = run_trial(plan, cfg, trial_seed(base_seed, i)); });
    return out;
}

std::vector<TrialMetrics>
run_trials(const Circuit& circuit, const RunConfig& cfg, std::size_t n_trials, std::uint64_t base_seed,
           unsigned threads)
{
    return run_trials(prepare(circuit, cfg), cfg, n_trials, base_seed, threads);
}

MetricStats
summarize(std::vector<double> values)
{
    MetricStats s;
    s.values = values;
    if (values.empty())
        return s;
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values)
        sum += v;
    s.mean = sum / n;
    s.min = values.front();
    s.max = values.back();
    if (values.size() > 1)
    {
        double ss = 0.0;
        for (double v : values)
            ss += (v - s.mean) * (v - s.mean);
        s.sem = std::sqrt(ss / (n - 1) / n);
    }
    return s;
}

const SweepPoint&
SweepResult::at(std::uint32_t R) const
{
    for (const auto& p : points)
        if (p.R == R)
            return p;
    throw IndexError("R=" + std::to_string(R) + " not in sweep");
}

SweepResult
sweep_r(const Circuit& circuit, const RunConfig& cfg, RRange range, std::size_t n_trials, std::uint64_t base_seed,
        unsigned threads)
{
    if (range.lo < 1 || range.hi < range.lo)
        throw ConfigError("R range must be non-empty with R >= 1");
    if (n_trials == 0)
        throw ConfigError("n_trials must be >= 1");

    const ExecutionPlan plan = prepare(circuit, cfg);
    const std::size_t nr = range.hi - range.lo + 1;

    std::vector<TrialMetrics> rows(nr * n_trials);
    parallel_for(rows.size(), threads, [&](std::size_t idx) {
        RunConfig c = cfg;
        c.prefetch.R = range.lo + static_cast<std::uint32_t>(idx / n_trials);
        rows[idx] = run_trial(plan, c, trial_seed(base_seed, idx % n_trials));
    });

    SweepResult res;
    res.policy = cfg.policy;
    for (std::size_t r = 0; r < nr; ++r)
    {
        SweepPoint pt;
        pt.R = range.lo + static_cast<std::uint32_t>(r);
        pt.trials.assign(rows.begin() + static_cast<std::ptrdiff_t>(r * n_trials),
                         rows.begin() + static_cast<std::ptrdiff_t>((r + 1) * n_trials));
        for (Metric m : kMetrics)
        {
            std::vector<double> v;
            v.reserve(n_trials);
            for (const auto& t : pt.trials)
                v.push_back(t.value(m));
            pt.stats[static_cast<std::size_t>(m)] = summarize(std::move(v));
        }
        res.points.push_back(std::move(pt));
    }
    for (Metric m : kMetrics)
    {
        const SweepPoint* best = &res.points.front();
        for (const auto& p : res.points)
            if (p[m].mean < (*best)[m].mean)
                best = &p;
        res.r_star[static_cast<std::size_t>(m)] = best->R;
    }
    return res;
}

std::string
label_of(const RunConfig& cfg)
{
    return std::string(to_string(cfg.policy)) + "/" + std::string(to_string(cfg.arch.factory.name)) + "/"
           + std::string(to_string(cfg.arch.aux.tech));
}

namespace
{

struct SideResult
{
    std::string label;
    std::array<double, 4> mean{};
    std::array<std::uint32_t, 4> R{};
};

SideResult
evaluate_side(const Circuit& circuit, const RunConfig& cfg, const CompareOptions& opts)
{
    if (cfg.policy == Policy::Tdg && cfg.arch.factory.output_kind != OutputKind::TState)
        throw ConfigError("TDG with an Rz-state factory ('" + std::string(to_string(cfg.arch.factory.name))
                          + "') is undefined");
    SideResult side;
    side.label = label_of(cfg);
    RRange range = opts.range;
    if (cfg.policy == Policy::Tdg)
        range = {cfg.prefetch.R, cfg.prefetch.R};
    const SweepResult sw = sweep_r(circuit, cfg, range, opts.n_trials, opts.base_seed, opts.threads);
    for (Metric m : kMetrics)
    {
        const auto i = static_cast<std::size_t>(m);
        side.R[i] = sw.r_star[i];
        side.mean[i] = sw.at(sw.r_star[i])[m].mean;
    }
    return side;
}

}  // namespace

Comparison
compare(const Circuit& circuit, const std::vector<RunConfig>& baselines, const RunConfig& candidate,
        const CompareOptions& opts)
{
    if (baselines.empty())
        throw ConfigError("compare needs at least one baseline");

    std::vector<SideResult> base;
    for (const auto& b : baselines)
        base.push_back(evaluate_side(circuit, b, opts));
    const SideResult cand = evaluate_side(circuit, candidate, opts);

    Comparison out;
    out.benchmark = candidate.benchmark;
    out.candidate_label = cand.label;
    for (Metric m : kMetrics)
    {
        const auto i = static_cast<std::size_t>(m);
        const SideResult* best = &base.front();
        for (const auto& b : base)
            if (b.mean[i] < best->mean[i])
                best = &b;
        MetricComparison& mc = out.metrics[i];
        mc.metric = m;
        mc.baseline_mean = best->mean[i];
        mc.candidate_mean = cand.mean[i];
        mc.improvement = mc.baseline_mean / mc.candidate_mean;
        mc.raw_ratio = mc.candidate_mean / mc.baseline_mean;
        mc.baseline_label = best->label;
        mc.baseline_R = best->R[i];
        mc.candidate_R = cand.R[i];
    }
    return out;
}

Comparison
compare(const Circuit& circuit, const RunConfig& baseline, const RunConfig& candidate, const CompareOptions& opts)
{
    return compare(circuit, std::vector<RunConfig>{baseline}, candidate, opts);
}

std::vector<RunConfig>
tdg_baselines_for(const RunConfig& candidate)
{
    auto make = [&](FactoryKind kind) {
        RunConfig b = candidate;
        b.policy = Policy::Tdg;
        b.prefetch.R = 1;
        b.arch.factory = FactorySpec::defaults(kind);
        const AuxInjectionModel d = AuxInjectionModel::defaults(kind, candidate.arch.aux.tech);
        b.arch.aux.d_aux = d.d_aux;
        b.arch.aux.patch_qubits = d.patch_qubits;
        return b;
    };
    if (candidate.arch.factory.output_kind == OutputKind::TState)
    {
        RunConfig b = candidate;
        b.policy = Policy::Tdg;
        b.prefetch.R = 1;
        return {b};
    }
    return {make(FactoryKind::Distillation), make(FactoryKind::Cultivation)};
}

void
write_results_csv(std::ostream& os, const std::vector<TrialMetrics>& rows, bool header)
{
    if (header)
        os << kResultsHeader << '\n';
    char buf[256];
    for (const auto& r : rows)
    {
        os << r.benchmark << ',' << to_string(r.policy) << ',' << to_string(r.factory) << ',' << to_string(r.tech)
           << ',' << r.R << ',' << r.seed << ',';
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%llu,%.17g\n", r.total_error, r.wall_clock,
                      static_cast<unsigned long long>(r.phys_qubits), r.spacetime);
        os << buf;
    }
}

namespace
{

nlohmann::json
comparison_object(const Comparison& c)
{
    nlohmann::json j;
    j["benchmark"] = c.benchmark;
    j["candidate"] = c.candidate_label;
    for (const auto& mc : c.metrics)
    {
        j["improvement"][std::string(to_string(mc.metric))] = {
            {"tdg_over_injeqt", mc.improvement},   {"injeqt_over_tdg", mc.raw_ratio},
            {"baseline_mean", mc.baseline_mean},   {"candidate_mean", mc.candidate_mean},
            {"baseline", mc.baseline_label},       {"baseline_R", mc.baseline_R},
            {"candidate_R", mc.candidate_R},
        };
    }
    return j;
}

}  // namespace

std::string
comparison_json(const Comparison& c)
{
    return comparison_object(c).dump(2);
}

std::string
summary_json(const std::string& benchmark, const std::vector<SweepResult>& sweeps, const Comparison* comparison)
{
    nlohmann::json j;
    j["benchmark"] = benchmark;
    j["sweeps"] = nlohmann::json::array();
    for (const auto& sw : sweeps)
    {
        nlohmann::json s;
        const TrialMetrics& first = sw.points.front().trials.front();
        s["policy"] = to_string(sw.policy);
        s["factory"] = to_string(first.factory);
        s["tech"] = to_string(first.tech);
        s["trials"] = sw.points.front().trials.size();
        for (Metric m : kMetrics)
            s["r_star"][std::string(to_string(m))] = sw.best_r(m);
        s["points"] = nlohmann::json::array();
        for (const auto& p : sw.points)
        {
            nlohmann::json pj;
            pj["R"] = p.R;
            for (Metric m : kMetrics)
                pj[std::string(to_string(m))] = {{"mean", p[m].mean}, {"min", p[m].min}, {"max", p[m].max},
                                                 {"sem", p[m].sem}};
            s["points"].push_back(std::move(pj));
        }
        j["sweeps"].push_back(std::move(s));
    }
    if (comparison)
        j["comparison"] = comparison_object(*comparison);
    return j.dump(2);
}

std::string
to_text(const Comparison& c)
{
    std::ostringstream os;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-12s %12s %14s %14s  %-28s %s\n", "metric", "improvement", "baseline",
                  "candidate", "baseline config", "R*");
    os << "candidate: " << c.candidate_label << '\n' << buf;
    for (const auto& mc : c.metrics)
    {
        std::snprintf(buf, sizeof buf, "%-12s %11.4fx %14.6g %14.6g  %-28s %u\n", std::string(to_string(mc.metric)).c_str(),
                      mc.improvement, mc.baseline_mean, mc.candidate_mean, mc.baseline_label.c_str(), mc.candidate_R);
        os << buf;
    }
    return os.str();
}

}  // namespace injeqt
