#pragma once

#include "injeqt/circuit.hpp"
#include "injeqt/pauli.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace injeqt
{

/// exp(-i * angle * pauli). angle in (-pi, pi], never a multiple of pi/4 after compilation.
struct PauliRotation
{
    PauliString pauli;
    double angle{0.0};

    friend bool operator==(const PauliRotation&, const PauliRotation&) = default;
};

struct PauliMeasurement
{
    PauliString pauli;
    std::int32_t clbit{-1};

    friend bool operator==(const PauliMeasurement&, const PauliMeasurement&) = default;
};

/*
 * Rotations are applied in order to |0...0>, then the (mutually commuting)
 * measurements are taken. Every Clifford of the source circuit has been
 * absorbed into the Pauli frames.
 * */
struct PBCProgram
{
    std::size_t num_qubits{0};
    std::vector<PauliRotation> rotations;
    std::vector<PauliMeasurement> measurements;

    friend bool operator==(const PBCProgram&, const PBCProgram&) = default;
};

struct CompileOptions
{
    /// Merge consecutive rotations on identical Pauli letters.
    bool merge_adjacent{false};
};

/// Normalizes into (-pi, pi].
double normalize_angle(double phi);

PBCProgram compile_to_pbc(const Circuit& circuit, const CompileOptions& opts = {});

/// Line-oriented dump: `ROT <sign><letters> <angle>` and `MEAS <sign><letters>`.
std::string to_text(const PBCProgram& program);

}  // namespace injeqt
