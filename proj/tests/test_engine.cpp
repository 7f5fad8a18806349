#include "injeqt/analytics.hpp"
#include "injeqt/engine.hpp"
#include "injeqt/errors.hpp"
#include "random_circuits.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

using namespace injeqt;

namespace
{

/// `count` rotations, each with Z on qubit 0 of every listed module.
PBCProgram
program_on_modules(std::size_t num_modules, const std::vector<std::uint32_t>& modules, std::size_t count)
{
    PBCProgram p;
    p.num_qubits = 12 * num_modules;
    PauliString s(p.num_qubits);
    for (auto m : modules)
        s.set(12 * m, false, true);
    for (std::size_t i = 0; i < count; ++i)
        p.rotations.push_back({s, 0.1});
    return p;
}

PBCProgram
random_program(std::mt19937_64& rng, std::size_t n, std::size_t gates)
{
    return compile_to_pbc(testing_support::random_clifford_rz(rng, n, gates, true));
}

void
check_no_overlap(const Timeline& tl)
{
    std::map<Resource, std::vector<const TimelineEvent*>> by_res;
    for (const auto& e : tl.events)
        by_res[e.resource].push_back(&e);
    for (auto& [res, evs] : by_res)
    {
        std::sort(evs.begin(), evs.end(), [](auto* a, auto* b) { return a->start < b->start; });
        for (std::size_t i = 1; i < evs.size(); ++i)
        {
            CAPTURE(to_string(res));
            CHECK(evs[i]->start >= evs[i - 1]->end() - 1e-9);
        }
    }
}

}  // namespace

TEST_CASE("setup ops: B per module then a GHZ merge tree on the bus")
{
    CHECK(setup_ops_for({3}, false) == std::vector<SetupOp>{{IsaKind::InModule, 3}});
    const auto ops = setup_ops_for({0, 1, 2}, true);
    REQUIRE(ops.size() == 8);
    CHECK(ops[0] == SetupOp{IsaKind::Automorphism, 0});
    CHECK(ops[1] == SetupOp{IsaKind::InModule, 0});
    CHECK(ops[6] == SetupOp{IsaKind::InterModule, kBus});
    CHECK(ops[7] == SetupOp{IsaKind::InterModule, kBus});
    CHECK(setup_ops_for({0, 1, 2, 3}, false).size() == 6);
    CHECK(setup_ops_for({0, 1, 2, 3, 4}, false).size() == 8);
}

TEST_CASE("lowering maps qubits to modules")
{
    PBCProgram p;
    p.num_qubits = 30;
    p.rotations.push_back({PauliString::single(30, 13, 'X'), 0.2});
    PauliString wide(30);
    wide.set(0, true, false);
    wide.set(29, false, true);
    p.rotations.push_back({wide, 0.3});
    p.measurements.push_back({PauliString::single(30, 25, 'Z'), 0});
    const ExecutionPlan plan = lower(p, LayoutConfig{});
    CHECK(plan.num_modules == 3);
    CHECK(plan.rotations[0].modules_touched == std::vector<std::uint32_t>{1});
    CHECK(plan.rotations[1].modules_touched == std::vector<std::uint32_t>{0, 2});
    CHECK(plan.rotations[1].setup_ops.size() == 3);
    CHECK(plan.rotations[1].injection_slot == 1);
    CHECK(plan.measurements[0].modules_touched == std::vector<std::uint32_t>{2});
}

TEST_CASE("correction chains are fair geometric and coupled across calls")
{
    SplitMix64 rng(42);
    double sum = 0;
    std::size_t ones = 0;
    const std::size_t n = 200000;
    for (std::size_t i = 0; i < n; ++i)
    {
        const auto k = sample_correction_chain(rng);
        sum += static_cast<double>(k);
        ones += k == 1;
    }
    CHECK(sum / n == doctest::Approx(2.0).epsilon(0.01));
    CHECK(static_cast<double>(ones) / n == doctest::Approx(0.5).epsilon(0.01));
    CHECK(chain_length_for(7, 3) == chain_length_for(7, 3));
}

TEST_CASE("deterministic spans match the closed forms")
{
    for (auto kind : {FactoryKind::Distillation, FactoryKind::Cultivation})
    {
        for (auto tech : {InjectionTech::LatticeSurgery, InjectionTech::Transversal})
        {
            Architecture arch = Architecture::defaults(kind, tech);
            arch.factory.discard_prob = 0.0;
            const AnalyticReport r = analytic(arch);
            const ExecutionPlan plan = lower(program_on_modules(2, {0, 1}, 3), arch.layout);
            SimOptions o;
            o.forced_chain_length = 2;

            const Timeline tdg = simulate_tdg(plan, arch, o);
            for (const auto& rs : tdg.rotations)
                CHECK(rs.injection_span() == doctest::Approx(*r.tau_tdg).epsilon(1e-12));

            const Timeline r1 = simulate_injeqt(plan, arch, {1, false}, o);
            for (const auto& rs : r1.rotations)
                CHECK(rs.injection_span() == doctest::Approx(r.tau_injeqt).epsilon(1e-12));

            const Timeline r2 = simulate_injeqt(plan, arch, {2, false}, o);
            for (const auto& rs : r2.rotations)
                CHECK(rs.injection_span() == doctest::Approx(r.tau_injeqt_inf).epsilon(1e-12));
        }
    }
}

TEST_CASE("TDG rejects Rz-state factories")
{
    const Architecture arch = Architecture::defaults(FactoryKind::Star);
    const ExecutionPlan plan = lower(program_on_modules(1, {0}, 1), arch.layout);
    CHECK_THROWS_AS(simulate_tdg(plan, arch, {}), ConfigError);
    CHECK_NOTHROW(simulate_injeqt(plan, arch, {}, {}));
}

TEST_CASE("timelines are causal and resources exclusive")
{
    std::mt19937_64 rng(8);
    for (auto kind : {FactoryKind::Distillation, FactoryKind::Cultivation, FactoryKind::Star})
    {
        const Architecture arch = Architecture::defaults(kind);
        const ExecutionPlan plan = lower(random_program(rng, 30, 80), arch.layout);
        SimOptions o;
        o.seed = 5;
        o.record_events = true;
        std::vector<Timeline> tls;
        for (std::uint32_t R : {1u, 3u, 8u})
            tls.push_back(simulate_injeqt(plan, arch, {R, true}, o));
        if (kind != FactoryKind::Star)
            tls.push_back(simulate_tdg(plan, arch, o));
        for (const Timeline& tl : tls)
        {
            check_no_overlap(tl);
            double sum = 0;
            for (const auto& e : tl.events)
            {
                CHECK(e.duration >= 0);
                CHECK(e.end() <= tl.wall_clock + 1e-6);
                if (e.kind != EventKind::Idle && e.kind != EventKind::Automorphism)
                    sum += e.error_contrib;
            }
            CHECK(sum == doctest::Approx(tl.total_error).epsilon(1e-9));
            double prev_end = 0;
            for (const auto& rs : tl.rotations)
            {
                CHECK(rs.setup_start >= prev_end);
                CHECK(rs.setup_end >= rs.setup_start);
                CHECK(rs.injection_end >= rs.setup_end);
                prev_end = rs.injection_end;
            }
        }
    }
}

TEST_CASE("injections never precede the preparation that feeds them")
{
    Architecture arch = Architecture::defaults(FactoryKind::Star);
    const ExecutionPlan plan = lower(program_on_modules(1, {0}, 50), arch.layout);
    SimOptions o;
    o.seed = 3;
    o.record_events = true;
    const Timeline tl = simulate_injeqt(plan, arch, {2, true}, o);
    std::map<std::uint64_t, std::vector<double>> prep_ends;
    for (const auto& e : tl.events)
        if (e.kind == EventKind::FactoryPrep && e.error_contrib > 0)
            prep_ends[e.rotation].push_back(e.end());
    for (const auto& e : tl.events)
        if (e.kind == EventKind::ModuleInjection)
        {
            auto& ends = prep_ends[e.rotation];
            REQUIRE_FALSE(ends.empty());
            std::sort(ends.begin(), ends.end());
            CHECK(ends.front() <= e.start + 1e-9);
            ends.erase(ends.begin());
        }
}

TEST_CASE("seeded runs are reproducible and error is constant in R")
{
    std::mt19937_64 rng(12);
    const Architecture arch = Architecture::defaults(FactoryKind::Cultivation);
    const ExecutionPlan plan = lower(random_program(rng, 40, 200), arch.layout);
    SimOptions o;
    o.seed = 99;
    const Timeline a = simulate_injeqt(plan, arch, {4, true}, o);
    const Timeline b = simulate_injeqt(plan, arch, {4, true}, o);
    CHECK(a.wall_clock == b.wall_clock);
    CHECK(a.total_error == b.total_error);
    for (std::uint32_t R = 1; R <= 20; ++R)
    {
        const Timeline t = simulate_injeqt(plan, arch, {R, true}, o);
        CHECK(t.total_error == a.total_error);
        CHECK(t.total_injections == a.total_injections);
    }
}

TEST_CASE("more pipelines never slow a deterministic chain down")
{
    std::mt19937_64 rng(13);
    Architecture arch = Architecture::defaults(FactoryKind::Distillation);
    const ExecutionPlan plan = lower(random_program(rng, 30, 150), arch.layout);
    double prev = 1e300;
    for (std::uint32_t R = 1; R <= 12; ++R)
    {
        SimOptions o;
        o.seed = 4;
        const double w = simulate_injeqt(plan, arch, {R, true}, o).wall_clock;
        CHECK(w <= prev + 1e-6);
        prev = w;
    }
}

TEST_CASE("trivial-op errors are reported but excluded by default")
{
    Architecture arch = Architecture::defaults(FactoryKind::Distillation);
    const ExecutionPlan plan = lower(program_on_modules(2, {0, 1}, 5), arch.layout, {true});
    SimOptions o;
    const Timeline off = simulate_tdg(plan, arch, o);
    o.count_trivial = true;
    const Timeline on = simulate_tdg(plan, arch, o);
    CHECK(off.trivial_error == doctest::Approx(10 * std::pow(10.0, -12.2)));
    CHECK(on.total_error == doctest::Approx(off.total_error + off.trivial_error));
}

TEST_CASE("no rotations: both policies take the same time")
{
    PBCProgram p;
    p.num_qubits = 3;
    p.measurements.push_back({PauliString::single(3, 0, 'Z'), 0});
    const Architecture arch;
    const ExecutionPlan plan = lower(p, arch.layout);
    const Timeline t = simulate_tdg(plan, arch, {});
    const Timeline i = simulate_injeqt(plan, arch, {5, true}, {});
    CHECK(t.wall_clock == i.wall_clock);
    CHECK(t.total_error == i.total_error);
    CHECK(t.wall_clock == 120);
}

TEST_CASE("timeline CSV")
{
    const Architecture arch = Architecture::defaults(FactoryKind::Star);
    const ExecutionPlan plan = lower(program_on_modules(1, {0}, 1), arch.layout);
    SimOptions o;
    o.record_events = true;
    o.forced_chain_length = 1;
    std::ostringstream os;
    write_timeline_csv(os, simulate_injeqt(plan, arch, {1, true}, o));
    const std::string csv = os.str();
    CHECK(csv.rfind("start,duration,kind,resource,rotation,error_contrib\n", 0) == 0);
    CHECK(csv.find("ModuleInjection,bus,0,") != std::string::npos);
    CHECK(csv.find("B,module:0,0,") != std::string::npos);
}
