#pragma once

#include "injeqt/circuit.hpp"

#include <numbers>
#include <random>

namespace testing_support
{

/// Random Clifford+Rz circuit on the closed gate set, with optional terminal measurements.
inline injeqt::Circuit
random_clifford_rz(std::mt19937_64& rng, std::size_t n, std::size_t gates, bool measure_all = false)
{
    using injeqt::Gate;
    using injeqt::GateKind;
    injeqt::Circuit c;
    c.num_qubits = n;
    std::uniform_int_distribution<int> kind(0, 11);
    std::uniform_int_distribution<std::size_t> qd(0, n - 1);
    std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
    while (c.gates.size() < gates)
    {
        const int k = kind(rng);
        const auto a = static_cast<injeqt::Qubit>(qd(rng));
        auto b = static_cast<injeqt::Qubit>(qd(rng));
        switch (k)
        {
        case 0: c.gates.push_back(Gate::single(GateKind::H, a)); break;
        case 1: c.gates.push_back(Gate::single(GateKind::S, a)); break;
        case 2: c.gates.push_back(Gate::single(GateKind::Sdg, a)); break;
        case 3: c.gates.push_back(Gate::single(GateKind::X, a)); break;
        case 4: c.gates.push_back(Gate::single(GateKind::Y, a)); break;
        case 5: c.gates.push_back(Gate::single(GateKind::Z, a)); break;
        case 6:
        case 7:
        case 8:
        {
            if (n < 2)
                continue;
            while (b == a)
                b = static_cast<injeqt::Qubit>(qd(rng));
            static constexpr GateKind kTwo[3] = {GateKind::CX, GateKind::CZ, GateKind::SWAP};
            c.gates.push_back(Gate::two(kTwo[k - 6], a, b));
            break;
        }
        case 9: c.gates.push_back(Gate::rz(a, std::numbers::pi / 4)); break;
        case 10: c.gates.push_back(Gate::rz(a, (rng() % 4) * std::numbers::pi / 2)); break;
        default: c.gates.push_back(Gate::rz(a, ang(rng))); break;
        }
    }
    if (measure_all)
        for (std::size_t q = 0; q < n; ++q)
            c.gates.push_back(Gate::measure(static_cast<injeqt::Qubit>(q), static_cast<std::int32_t>(q)));
    return c;
}

}  // namespace testing_support
