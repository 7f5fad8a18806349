#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace injeqt
{

using Qubit = std::uint32_t;

enum class GateKind : std::uint8_t
{
    H, S, Sdg, X, Y, Z, CX, CZ, SWAP, Rz, T, Tdg, Measure
};

std::string_view to_string(GateKind k);
std::size_t arity(GateKind k);
bool is_clifford_kind(GateKind k);

/*
 * Rz(theta) is Clifford iff theta is a multiple of pi/2 (up to 1e-10 rad).
 * Returns the number of quarter turns mod 4 (0 = identity, 1 = S, 2 = Z,
 * 3 = Sdg), or nullopt for a non-Clifford angle.
 * */
std::optional<int> clifford_quarter_turns(double theta);

/*
 * One gate of the closed primitive set. `angle` is meaningful for Rz only;
 * `clbit` for Measure only. T/Tdg never leave the parser: they are rewritten
 * to Rz(+-pi/4).
 * */
struct Gate
{
    GateKind kind{GateKind::H};
    std::array<Qubit, 2> targets{0, 0};
    double angle{0.0};
    std::int32_t clbit{-1};

    static Gate single(GateKind k, Qubit q) { return Gate{k, {q, 0}, 0.0, -1}; }
    static Gate two(GateKind k, Qubit a, Qubit b) { return Gate{k, {a, b}, 0.0, -1}; }
    static Gate rz(Qubit q, double theta) { return Gate{GateKind::Rz, {q, 0}, theta, -1}; }
    static Gate measure(Qubit q, std::int32_t c) { return Gate{GateKind::Measure, {q, 0}, 0.0, c}; }

    friend bool operator==(const Gate&, const Gate&) = default;
};

struct Circuit
{
    std::size_t num_qubits{0};
    std::vector<Gate> gates;
    std::string name;

    std::size_t count(GateKind k) const;
    /// Throws IndexError / MeasurementOrderError when an invariant is broken.
    void validate() const;

    friend bool operator==(const Circuit&, const Circuit&) = default;
};

/// OpenQASM 2.0 subset. Throws SyntaxError, UnsupportedGate, IndexError, MeasurementOrderError.
Circuit parse_qasm(std::string_view text, std::string name = {});
Circuit parse_qasm_file(const std::filesystem::path& path);

}  // namespace injeqt
