#include "injeqt/engine.hpp"
#include "injeqt/errors.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <numeric>
#include <ostream>

namespace injeqt
{

////////////////////////////////////////////////////////////
////////////////////////////////////////////////////////////

namespace
{

std::vector<std::uint32_t>
modules_of(const PauliString& p, std::uint64_t capacity)
{
    std::vector<std::uint32_t> mods;
    const auto& xs = p.x_words();
    const auto& zs = p.z_words();
    for (std::size_t w = 0; w < xs.size(); ++w)
    {
        std::uint64_t bits = xs[w] | zs[w];
        while (bits)
        {
            const std::size_t q = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
            bits &= bits - 1;
            const auto m = static_cast<std::uint32_t>(q / capacity);
            if (mods.empty() || mods.back() != m)
                mods.push_back(m);
        }
    }
    return mods;
}

std::uint32_t
ceil_log2(std::size_t k)
{
    return k <= 1 ? 0 : static_cast<std::uint32_t>(std::bit_width(k - 1));
}

}  // namespace

std::vector<SetupOp>
setup_ops_for(const std::vector<std::uint32_t>& modules, bool emit_automorphisms)
{
    std::vector<SetupOp> ops;
    ops.reserve(2 * modules.size() + 8);
    for (std::uint32_t m : modules)
    {
        if (emit_automorphisms)
            ops.push_back({IsaKind::Automorphism, m});
        ops.push_back({IsaKind::InModule, m});
    }
    for (std::uint32_t r = 0; r < ceil_log2(modules.size()); ++r)
        ops.push_back({IsaKind::InterModule, kBus});
    return ops;
}

ExecutionPlan
lower(const PBCProgram& pbc, const LayoutConfig& layout, const LoweringOptions& opts)
{
    ExecutionPlan plan;
    plan.num_qubits = pbc.num_qubits;
    plan.num_modules = layout.modules_for(pbc.num_qubits);
    plan.rotations.reserve(pbc.rotations.size());

    std::size_t slot = 0;
    for (const auto& r : pbc.rotations)
    {
        RotationRecord rec;
        rec.pauli = r.pauli;
        rec.angle = r.angle;
        rec.modules_touched = modules_of(r.pauli, layout.module_capacity);
        rec.setup_ops = setup_ops_for(rec.modules_touched, opts.emit_automorphisms);
        rec.injection_slot = slot++;
        plan.rotations.push_back(std::move(rec));
    }
    for (const auto& m : pbc.measurements)
    {
        MeasurementRecord rec;
        rec.pauli = m.pauli;
        rec.clbit = m.clbit;
        rec.modules_touched = modules_of(m.pauli, layout.module_capacity);
        rec.setup_ops = setup_ops_for(rec.modules_touched, opts.emit_automorphisms);
        plan.measurements.push_back(std::move(rec));
    }
    return plan;
}

////////////////////////////////////////////////////////////
////////////////////////////////////////////////////////////

std::string_view
to_string(EventKind k)
{
    switch (k)
    {
    case EventKind::Idle:            return "I";
    case EventKind::Automorphism:    return "U";
    case EventKind::InModule:        return "B";
    case EventKind::InterModule:     return "C";
    case EventKind::FactoryPrep:     return "FactoryPrep";
    case EventKind::AuxInjection:    return "AuxInjection";
    case EventKind::ModuleInjection: return "ModuleInjection";
    }
    return "?";
}

std::string
to_string(const Resource& r)
{
    switch (r.kind)
    {
    case Resource::Kind::Module:   return "module:" + std::to_string(r.index);
    case Resource::Kind::Bus:      return "bus";
    case Resource::Kind::Pipeline: return "pipeline:" + std::to_string(r.index);
    }
    return "?";
}

std::uint64_t
sample_correction_chain(SplitMix64& rng)
{
    return sample_fair_geometric(rng);
}

namespace
{

// Sub-stream tags under a trial seed.
constexpr std::uint64_t kChainStream = 0;
constexpr std::uint64_t kTdgPrepStream = 1;
constexpr std::uint64_t kInjeqtPrepStream = 2;

}  // namespace

std::uint32_t
chain_length_for(std::uint64_t seed, std::uint64_t rotation)
{
    SplitMix64 rng(derive_seed(seed, kChainStream, rotation));
    const std::uint64_t k = sample_correction_chain(rng);
    return static_cast<std::uint32_t>(std::min<std::uint64_t>(k, 0xffffffffu));
}

namespace
{

EventKind
event_kind(IsaKind k)
{
    switch (k)
    {
    case IsaKind::Idle:         return EventKind::Idle;
    case IsaKind::Automorphism: return EventKind::Automorphism;
    case IsaKind::InModule:     return EventKind::InModule;
    case IsaKind::InterModule:  return EventKind::InterModule;
    }
    return EventKind::InModule;
}

/// Shared bookkeeping for both policies: the sequential program stream and event log.
class Recorder
{
public:
    Recorder(const Architecture& arch, const SimOptions& opts, Timeline& tl) : arch_(arch), opts_(opts), tl_(tl) {}

    void
    event(double start, double duration, EventKind kind, Resource res, std::uint64_t rot, double err)
    {
        if (opts_.record_events)
            tl_.events.push_back({start, duration, kind, res, rot, err});
    }

    /// Runs setup ops back to back from `t`; returns the end time.
    double
    setup(const std::vector<SetupOp>& ops, double t, std::uint64_t rot)
    {
        for (const SetupOp& op : ops)
        {
            const InstructionSpec& spec = arch_.isa[op.kind];
            const bool trivial = op.kind == IsaKind::Idle || op.kind == IsaKind::Automorphism;
            if (trivial)
                tl_.trivial_error += spec.error;
            else
                tl_.setup_error += spec.error;
            const Resource res = op.module == kBus ? Resource{Resource::Kind::Bus, 0}
                                                   : Resource{Resource::Kind::Module, op.module};
            event(t, spec.steps, event_kind(op.kind), res, rot, spec.error);
            t += spec.steps;
        }
        return t;
    }

    double
    measurements(const ExecutionPlan& plan, double t)
    {
        std::uint64_t id = plan.rotations.size();
        for (const auto& m : plan.measurements)
            t = setup(m.setup_ops, t, id++);
        return t;
    }

    void
    finish(double stream_end)
    {
        tl_.wall_clock = stream_end;
        tl_.total_error = tl_.setup_error + tl_.injection_error;
        if (opts_.count_trivial)
            tl_.total_error += tl_.trivial_error;
    }

private:
    const Architecture& arch_;
    const SimOptions& opts_;
    Timeline& tl_;
};

}  // namespace

Timeline
simulate_tdg(const ExecutionPlan& plan, const Architecture& arch, const SimOptions& opts)
{
    if (arch.factory.output_kind != OutputKind::TState)
        throw ConfigError("TDG policy needs a T-state factory; '" + std::string(to_string(arch.factory.name))
                          + "' emits Rz states");

    Timeline tl;
    tl.policy = Policy::Tdg;
    tl.rotations.reserve(plan.rotations.size());
    Recorder rec(arch, opts, tl);

    const std::uint64_t c = arch.synthesis.c();
    const double t_att = arch.factory.attempt_steps();
    const double q = arch.factory.discard_prob;
    const double tau_c = arch.isa[IsaKind::InterModule].steps;
    const double eps_c = arch.isa[IsaKind::InterModule].error;
    const double eps_f = arch.factory.error;
    const double per_rotation_error = static_cast<double>(c) * (eps_f + eps_c);
    const Resource factory{Resource::Kind::Pipeline, 0};
    const Resource bus{Resource::Kind::Bus, 0};

    double stream = 0.0;
    double factory_free = 0.0;
    for (std::size_t j = 0; j < plan.rotations.size(); ++j)
    {
        RotationStats rs;
        rs.setup_start = stream;
        rs.setup_end = rec.setup(plan.rotations[j].setup_ops, stream, j);

        SplitMix64 prep_rng(derive_seed(opts.seed, kTdgPrepStream, j));
        double t = rs.setup_end;
        for (std::uint64_t m = 0; m < c; ++m)
        {
            // The factory holds one T state and restarts once it is consumed, so the
            // first preparation of each rotation runs during that rotation's setup.
            const double prep = static_cast<double>(sample_attempts(prep_rng, q)) * t_att;
            const double ready = factory_free + prep;
            const double inj_start = std::max(ready, t);
            rs.stall += inj_start - t;
            rec.event(factory_free, prep, EventKind::FactoryPrep, factory, j, eps_f);
            rec.event(inj_start, tau_c, EventKind::ModuleInjection, bus, j, eps_c);
            t = inj_start + tau_c;
            factory_free = t;
        }
        rs.injection_end = t;
        tl.injection_error += per_rotation_error;
        tl.total_injections += c;
        tl.total_stall += rs.stall;
        tl.rotations.push_back(rs);
        stream = t;
    }
    rec.finish(rec.measurements(plan, stream));
    return tl;
}

////////////////////////////////////////////////////////////
////////////////////////////////////////////////////////////

namespace
{

/*
 * Preparation of one Rz(2^(a-1) theta) state on a pipeline. For T-state base
 * factories: c rounds of (T preparation, auxiliary injection). For Rz-state
 * factories: a single preparation. Times are drawn from a stream keyed by
 * (rotation, angle), so they do not depend on R or on which pipeline runs the job.
 * */
class JobSampler
{
public:
    JobSampler(const Architecture& arch, std::uint64_t seed)
        : seed_(seed),
          two_level_(arch.factory.output_kind == OutputKind::TState),
          c_(arch.synthesis.c()),
          t_att_(arch.factory.attempt_steps()),
          q_(arch.factory.discard_prob),
          tau_tech_(arch.aux.tau_tech())
    {}

    double
    total(std::uint64_t rot, std::uint32_t angle) const
    {
        SplitMix64 rng(derive_seed(seed_, kInjeqtPrepStream, rot, angle));
        if (!two_level_)
            return static_cast<double>(sample_attempts(rng, q_)) * t_att_;
        double sum = 0.0;
        for (std::uint64_t n = 0; n < c_; ++n)
            sum += static_cast<double>(sample_attempts(rng, q_)) * t_att_ + tau_tech_;
        return sum;
    }

    /// Per-round T preparation times (one entry for Rz-state factories).
    std::vector<double>
    rounds(std::uint64_t rot, std::uint32_t angle) const
    {
        SplitMix64 rng(derive_seed(seed_, kInjeqtPrepStream, rot, angle));
        std::vector<double> out(two_level_ ? c_ : 1);
        for (double& p : out)
            p = static_cast<double>(sample_attempts(rng, q_)) * t_att_;
        return out;
    }

    bool two_level() const { return two_level_; }
    double tau_tech() const { return tau_tech_; }

private:
    std::uint64_t seed_;
    bool two_level_;
    std::uint64_t c_;
    double t_att_;
    double q_;
    double tau_tech_;
};

struct Job
{
    std::uint32_t angle;
    std::uint32_t pipeline;
    double start;
    bool consumed{false};
};

}  // namespace

Timeline
simulate_injeqt(const ExecutionPlan& plan, const Architecture& arch, const PrefetchConfig& prefetch,
                const SimOptions& opts)
{
    if (prefetch.R < 1)
        throw ConfigError("INJEQT needs at least one factory (R >= 1)");

    Timeline tl;
    tl.policy = Policy::Injeqt;
    tl.rotations.reserve(plan.rotations.size());
    Recorder rec(arch, opts, tl);

    const JobSampler sampler(arch, opts.seed);
    const std::uint64_t c = arch.synthesis.c();
    const double tau_c = arch.isa[IsaKind::InterModule].steps;
    const double eps_c = arch.isa[IsaKind::InterModule].error;
    const double eps_f = arch.factory.error;
    const double eps_tech = arch.aux.eps_tech;
    const double per_injection_error = sampler.two_level()
                                           ? static_cast<double>(c) * (eps_f + eps_tech) + eps_c
                                           : eps_f + eps_c;
    const Resource bus{Resource::Kind::Bus, 0};
    const std::uint32_t R = prefetch.R;

    // Emits the sub-events of a job; unconsumed jobs are cut at `abort` and carry no error.
    auto record_job = [&](const Job& jb, std::uint64_t rot, double abort) {
        const Resource pipe{Resource::Kind::Pipeline, jb.pipeline};
        double t = jb.start;
        auto emit = [&](double dur, EventKind kind, double err) {
            if (t >= abort)
                return;
            const double d = jb.consumed ? dur : std::min(dur, abort - t);
            rec.event(t, d, kind, pipe, rot, jb.consumed ? err : 0.0);
            t += dur;
        };
        for (double p : sampler.rounds(rot, jb.angle))
        {
            emit(p, EventKind::FactoryPrep, eps_f);
            if (sampler.two_level())
                emit(sampler.tau_tech(), EventKind::AuxInjection, eps_tech);
        }
    };

    std::vector<double> free_at(R, 0.0);
    std::vector<std::uint32_t> order(R);
    std::vector<Job> jobs;
    double stream = 0.0;
    double prev_final_issue = 0.0;

    for (std::size_t j = 0; j < plan.rotations.size(); ++j)
    {
        RotationStats rs;
        rs.setup_start = stream;
        rs.setup_end = rec.setup(plan.rotations[j].setup_ops, stream, j);

        double origin = rs.setup_end;
        if (prefetch.overlap_setup)
            origin = j == 0 ? rs.setup_start : prev_final_issue;

        const std::uint32_t k = opts.forced_chain_length ? *opts.forced_chain_length : chain_length_for(opts.seed, j);
        rs.chain_length = k;

        // Angles 1..R go to pipelines in order of availability (ties by index).
        std::iota(order.begin(), order.end(), 0u);
        std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
            return std::max(free_at[a], origin) < std::max(free_at[b], origin);
        });
        jobs.clear();
        for (std::uint32_t a = 0; a < R; ++a)
            jobs.push_back({a + 1, order[a], std::max(free_at[order[a]], origin)});

        double t = rs.setup_end;
        double final_issue = t;
        for (std::uint32_t m = 1; m <= k; ++m)
        {
            // jobs[m-1] prepares angle m; it exists because each consumption queues the next angle.
            Job& jb = jobs[m - 1];
            const double ready = jb.start + sampler.total(j, jb.angle);
            const double inj_start = std::max(ready, t);
            rs.stall += inj_start - t;
            const double inj_end = inj_start + tau_c;
            jb.consumed = true;
            rec.event(inj_start, tau_c, EventKind::ModuleInjection, bus, j, eps_c);
            if (opts.record_events)
                record_job(jb, j, inj_end);

            const std::uint32_t pipe = jb.pipeline;
            free_at[pipe] = inj_end;
            if (m == k)
                final_issue = inj_start;
            else
                jobs.push_back({static_cast<std::uint32_t>(jobs.size() + 1), pipe, inj_end});
            t = inj_end;
        }

        // Preparations the chain never used are dropped once its last injection issues.
        for (const Job& jb : jobs)
        {
            if (jb.consumed)
                continue;
            if (opts.record_events)
                record_job(jb, j, final_issue);
            free_at[jb.pipeline] = std::max(jb.start, final_issue);
        }

        rs.injection_end = t;
        tl.injection_error += static_cast<double>(k) * per_injection_error;
        tl.total_injections += k;
        tl.total_stall += rs.stall;
        tl.rotations.push_back(rs);
        prev_final_issue = final_issue;
        stream = t;
    }
    rec.finish(rec.measurements(plan, stream));
    return tl;
}

Timeline
simulate(const ExecutionPlan& plan, const Architecture& arch, Policy policy, const PrefetchConfig& prefetch,
         const SimOptions& opts)
{
    return policy == Policy::Tdg ? simulate_tdg(plan, arch, opts) : simulate_injeqt(plan, arch, prefetch, opts);
}

void
write_timeline_csv(std::ostream& os, const Timeline& timeline)
{
    std::vector<const TimelineEvent*> sorted;
    sorted.reserve(timeline.events.size());
    for (const auto& e : timeline.events)
        sorted.push_back(&e);
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const TimelineEvent* a, const TimelineEvent* b) { return a->start < b->start; });

    os << "start,duration,kind,resource,rotation,error_contrib\n";
    char buf[160];
    for (const TimelineEvent* e : sorted)
    {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,", e->start, e->duration);
        os << buf << to_string(e->kind) << ',' << to_string(e->resource) << ',' << e->rotation << ',';
        std::snprintf(buf, sizeof buf, "%.17g\n", e->error_contrib);
        os << buf;
    }
}

}  // namespace injeqt
