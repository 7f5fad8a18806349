#include "injeqt/pbc.hpp"
#include "injeqt/errors.hpp"

#include <cassert>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <sstream>
#include <utility>

namespace injeqt
{

double
normalize_angle(double phi)
{
    constexpr double kTwoPi = 2 * std::numbers::pi;
    phi = std::fmod(phi, kTwoPi);
    if (phi <= -std::numbers::pi)
        phi += kTwoPi;
    else if (phi > std::numbers::pi)
        phi -= kTwoPi;
    return phi;
}

namespace
{

/*
 * Inverse Clifford frame. For the Clifford prefix C seen so far, row_x[q] and
 * row_z[q] hold C^dagger X_q C and C^dagger Z_q C. A rotation Rz on qubit q
 * issued after the prefix is therefore the Pauli rotation about row_z[q]
 * applied before any Clifford.
 * */
class InverseFrame
{
public:
    explicit InverseFrame(std::size_t n)
    {
        row_x_.reserve(n);
        row_z_.reserve(n);
        for (std::size_t q = 0; q < n; ++q)
        {
            row_x_.push_back(PauliString::single(n, q, 'X'));
            row_z_.push_back(PauliString::single(n, q, 'Z'));
        }
    }

    const PauliString& z_image(std::size_t q) const { return row_z_[q]; }

    /// Frame update for appending Clifford gate g to the prefix.
    void
    append(const Gate& g)
    {
        const std::size_t a = g.targets[0];
        const std::size_t b = g.targets[1];
        switch (g.kind)
        {
        case GateKind::H:
            std::swap(row_x_[a], row_z_[a]);
            break;
        case GateKind::S:
            // S^dag X S = -Y = -i X Z
            multiply_with_phase(row_x_[a], row_z_[a], 3);
            break;
        case GateKind::Sdg:
            // S X S^dag = Y = i X Z
            multiply_with_phase(row_x_[a], row_z_[a], 1);
            break;
        case GateKind::X:
            negate(row_z_[a]);
            break;
        case GateKind::Y:
            negate(row_x_[a]);
            negate(row_z_[a]);
            break;
        case GateKind::Z:
            negate(row_x_[a]);
            break;
        case GateKind::CX:
            multiply_with_phase(row_x_[a], row_x_[b], 0);
            multiply_with_phase(row_z_[b], row_z_[a], 0);
            break;
        case GateKind::CZ:
        {
            PauliString za = row_z_[a];
            multiply_with_phase(row_x_[a], row_z_[b], 0);
            multiply_with_phase(row_x_[b], za, 0);
            break;
        }
        case GateKind::SWAP:
            std::swap(row_x_[a], row_x_[b]);
            std::swap(row_z_[a], row_z_[b]);
            break;
        case GateKind::Rz:
        {
            const auto turns = clifford_quarter_turns(g.angle);
            if (!turns)
                throw NotClifford("Rz(" + std::to_string(g.angle) + ") is not a Clifford gate");
            static constexpr GateKind kAs[4] = {GateKind::Rz, GateKind::S, GateKind::Z, GateKind::Sdg};
            if (*turns != 0)
                append(Gate::single(kAs[*turns], g.targets[0]));
            break;
        }
        default:
            throw NotClifford("gate " + std::string(to_string(g.kind)) + " is not a Clifford gate");
        }
    }

    /*
     * Absorb the Clifford rotation exp(-i (m pi/4) P), m in {1,2,3}, applied
     * before every remaining operation: each row Q becomes K^dag Q K.
     * */
    void
    absorb_rotation(const PauliString& p, int m)
    {
        auto update = [&](PauliString& row) {
            if (row.commutes_with(p))
                return;
            if (m == 2)
                negate(row);
            else
                multiply_with_phase(row, p, m == 1 ? 3 : 1);
        };
        for (auto& r : row_x_)
            update(r);
        for (auto& r : row_z_)
            update(r);
    }

private:
    std::vector<PauliString> row_x_;
    std::vector<PauliString> row_z_;

    static void negate(PauliString& p) { p.set_negative(!p.negative()); }

    /// row := i^extra * row * other; the result must be Hermitian.
    static void
    multiply_with_phase(PauliString& row, const PauliString& other, int extra)
    {
        const int k = row.multiply_by(other);
        if (k % 2 == 0)
        {
            assert(extra % 4 == 0 && "product of commuting Paulis picked up an imaginary phase");
            return;
        }
        const int total = (k + extra) % 4;
        assert(total % 2 == 0 && "non-Hermitian Pauli image");
        if (total == 2)
            negate(row);
    }
};

/// Multiples of pi/4 mod 4 (0 identity, 1 K, 2 Pauli, 3 K^dag), or nullopt.
std::optional<int>
clifford_eighth_turns(double phi)
{
    const double turns = phi / (std::numbers::pi / 4);
    const double nearest = std::round(turns);
    if (std::abs(turns - nearest) * (std::numbers::pi / 4) > 1e-10)
        return std::nullopt;
    const long long k = static_cast<long long>(nearest);
    return static_cast<int>(((k % 4) + 4) % 4);
}

}  // namespace

PBCProgram
compile_to_pbc(const Circuit& circuit, const CompileOptions& opts)
{
    circuit.validate();

    PBCProgram out;
    out.num_qubits = circuit.num_qubits;
    InverseFrame frame(circuit.num_qubits);

    for (const Gate& g : circuit.gates)
    {
        if (g.kind == GateKind::Measure)
        {
            out.measurements.push_back(PauliMeasurement{frame.z_image(g.targets[0]), g.clbit});
            continue;
        }
        if (g.kind == GateKind::T || g.kind == GateKind::Tdg)
        {
            const double theta = (g.kind == GateKind::T ? 1.0 : -1.0) * std::numbers::pi / 4;
            out.rotations.push_back({frame.z_image(g.targets[0]), normalize_angle(theta / 2)});
            continue;
        }
        if (g.kind == GateKind::Rz && !clifford_quarter_turns(g.angle))
        {
            PauliRotation rot{frame.z_image(g.targets[0]), normalize_angle(g.angle / 2)};
            if (opts.merge_adjacent && !out.rotations.empty()
                && out.rotations.back().pauli.same_letters(rot.pauli))
            {
                PauliRotation& last = out.rotations.back();
                const double delta = last.pauli.negative() == rot.pauli.negative() ? rot.angle : -rot.angle;
                last.angle = normalize_angle(last.angle + delta);
                if (auto m = clifford_eighth_turns(last.angle))
                {
                    PauliString p = std::move(last.pauli);
                    out.rotations.pop_back();
                    if (*m != 0)
                        frame.absorb_rotation(p, *m);
                }
                continue;
            }
            out.rotations.push_back(std::move(rot));
            continue;
        }
        frame.append(g);
    }
    return out;
}

std::string
to_text(const PBCProgram& program)
{
    std::ostringstream os;
    char buf[64];
    for (const auto& r : program.rotations)
    {
        std::snprintf(buf, sizeof buf, "%.17g", r.angle);
        os << "ROT " << r.pauli.str() << ' ' << buf << '\n';
    }
    for (const auto& m : program.measurements)
        os << "MEAS " << m.pauli.str() << '\n';
    return os.str();
}

}  // namespace injeqt
