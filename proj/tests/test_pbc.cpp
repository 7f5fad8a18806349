#include "injeqt/pbc.hpp"
#include "random_circuits.hpp"
#include "statevector.hpp"

#include <doctest.h>

#include <random>

using namespace injeqt;
using testing_support::random_clifford_rz;

namespace
{

bool
is_rotation(const Gate& g)
{
    return g.kind == GateKind::T || g.kind == GateKind::Tdg
           || (g.kind == GateKind::Rz && !clifford_quarter_turns(g.angle));
}

/// Rotations on |0>, then the circuit's Clifford part: equals the circuit's state.
oracle::State
pbc_then_clifford(const PBCProgram& prog, const Circuit& c)
{
    oracle::State s(prog.num_qubits);
    for (const auto& r : prog.rotations)
        oracle::apply_rotation(s, r.pauli, r.angle);
    for (const auto& g : c.gates)
        if (!is_rotation(g))
            oracle::apply_gate(s, g);
    return s;
}

std::vector<std::size_t>
measured_qubits(const Circuit& c)
{
    std::vector<std::size_t> qs;
    for (const auto& g : c.gates)
        if (g.kind == GateKind::Measure)
            qs.push_back(g.targets[0]);
    return qs;
}

}  // namespace

TEST_CASE("normalize_angle lands in (-pi, pi]")
{
    CHECK(normalize_angle(oracle::kPi) == doctest::Approx(oracle::kPi));
    CHECK(normalize_angle(-oracle::kPi) == doctest::Approx(oracle::kPi));
    CHECK(normalize_angle(3 * oracle::kPi / 2) == doctest::Approx(-oracle::kPi / 2));
    CHECK(normalize_angle(0.25) == 0.25);
}

TEST_CASE("single T on |+>")
{
    Circuit c;
    c.num_qubits = 1;
    c.gates = {Gate::single(GateKind::H, 0), Gate::rz(0, oracle::kPi / 4)};
    const PBCProgram p = compile_to_pbc(c);
    REQUIRE(p.rotations.size() == 1);
    CHECK(p.rotations[0].pauli.str() == "+X");
    CHECK(p.rotations[0].angle == doctest::Approx(oracle::kPi / 8));
}

TEST_CASE("Clifford-angle Rz is absorbed into the frame")
{
    Circuit c;
    c.num_qubits = 2;
    c.gates = {Gate::rz(0, oracle::kPi / 2), Gate::rz(1, -oracle::kPi), Gate::single(GateKind::H, 0),
               Gate::rz(0, 0.7)};
    const PBCProgram p = compile_to_pbc(c);
    REQUIRE(p.rotations.size() == 1);
    CHECK(p.rotations[0].pauli.letters() == "YI");
}

TEST_CASE("compiled rotations reproduce the circuit statevector")
{
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 200; ++trial)
    {
        const std::size_t n = 1 + rng() % 5;
        const Circuit c = random_clifford_rz(rng, n, 1 + rng() % 25);
        const PBCProgram p = compile_to_pbc(c);
        std::size_t rot = 0;
        for (const auto& g : c.gates)
            rot += is_rotation(g);
        CHECK(p.rotations.size() == rot);
        CHECK(oracle::distance_up_to_phase(pbc_then_clifford(p, c).amp, oracle::run(c).amp) < 1e-9);
    }
}

TEST_CASE("measurement distributions match, with and without merging")
{
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 100; ++trial)
    {
        const std::size_t n = 1 + rng() % 4;
        const Circuit c = random_clifford_rz(rng, n, 1 + rng() % 25, true);
        const auto expect = oracle::z_distribution(oracle::run(c), measured_qubits(c));
        for (bool merge : {false, true})
        {
            const PBCProgram p = compile_to_pbc(c, {merge});
            CHECK(p.measurements.size() == n);
            CHECK(oracle::max_abs_diff(oracle::pbc_distribution(p), expect) < 1e-9);
        }
    }
}

TEST_CASE("merging fuses same-axis neighbours and drops Clifford results")
{
    Circuit c;
    c.num_qubits = 1;
    c.gates = {Gate::rz(0, 0.3), Gate::rz(0, 0.4), Gate::single(GateKind::H, 0), Gate::rz(0, oracle::kPi / 4),
               Gate::rz(0, oracle::kPi / 4)};
    const PBCProgram merged = compile_to_pbc(c, {true});
    REQUIRE(merged.rotations.size() == 1);
    CHECK(merged.rotations[0].angle == doctest::Approx(0.35));
    CHECK(compile_to_pbc(c).rotations.size() == 4);
}

TEST_CASE("sampled outcomes stay within 0.02 total variation")
{
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 5; ++trial)
    {
        const Circuit c = random_clifford_rz(rng, 4, 25, true);
        const auto expect = oracle::z_distribution(oracle::run(c), measured_qubits(c));
        const auto dist = oracle::pbc_distribution(compile_to_pbc(c));
        std::vector<std::uint64_t> keys;
        std::vector<double> weights;
        for (const auto& [k, v] : dist)
        {
            keys.push_back(k);
            weights.push_back(v);
        }
        std::discrete_distribution<std::size_t> draw(weights.begin(), weights.end());
        std::map<std::uint64_t, double> hist;
        const int shots = 100000;
        for (int s = 0; s < shots; ++s)
            hist[keys[draw(rng)]] += 1.0 / shots;
        double tvd = 0.0;
        for (const auto& [k, v] : expect)
            tvd += std::abs(v - (hist.count(k) ? hist[k] : 0.0));
        for (const auto& [k, v] : hist)
            if (!expect.count(k))
                tvd += v;
        CHECK(tvd / 2 <= 0.02);
    }
}

TEST_CASE("text format")
{
    Circuit c;
    c.num_qubits = 2;
    c.gates = {Gate::two(GateKind::CX, 0, 1), Gate::rz(1, 0.5), Gate::measure(0, 0)};
    const std::string text = to_text(compile_to_pbc(c));
    CHECK(text == "ROT +ZZ 0.25\nMEAS +ZI\n");
}
