#include "injeqt/pauli.hpp"
#include "injeqt/errors.hpp"

#include <bit>
#include <cctype>

namespace injeqt
{

PauliString::PauliString(std::size_t num_qubits)
    : n_(num_qubits), xs_((num_qubits + 63) / 64, 0), zs_((num_qubits + 63) / 64, 0)
{}

PauliString
PauliString::from_string(std::string_view text)
{
    bool neg = false;
    if (!text.empty() && (text.front() == '+' || text.front() == '-'))
    {
        neg = text.front() == '-';
        text.remove_prefix(1);
    }
    PauliString p(text.size());
    p.negative_ = neg;
    for (std::size_t q = 0; q < text.size(); ++q)
    {
        switch (std::toupper(static_cast<unsigned char>(text[q])))
        {
        case 'I': case '_': break;
        case 'X': p.set(q, true, false); break;
        case 'Y': p.set(q, true, true); break;
        case 'Z': p.set(q, false, true); break;
        default:
            throw DomainError("invalid Pauli letter '" + std::string(1, text[q]) + "'");
        }
    }
    return p;
}

PauliString
PauliString::single(std::size_t num_qubits, std::size_t q, char letter)
{
    PauliString p(num_qubits);
    switch (letter)
    {
    case 'X': p.set(q, true, false); break;
    case 'Y': p.set(q, true, true); break;
    case 'Z': p.set(q, false, true); break;
    default: break;
    }
    return p;
}

void
PauliString::set(std::size_t q, bool x, bool z) noexcept
{
    const std::uint64_t bit = std::uint64_t{1} << (q & 63);
    if (x)
        xs_[q >> 6] |= bit;
    else
        xs_[q >> 6] &= ~bit;
    if (z)
        zs_[q >> 6] |= bit;
    else
        zs_[q >> 6] &= ~bit;
}

char
PauliString::letter(std::size_t q) const noexcept
{
    static constexpr char kLetters[4] = {'I', 'X', 'Z', 'Y'};
    return kLetters[(x(q) ? 1 : 0) | (z(q) ? 2 : 0)];
}

std::size_t
PauliString::weight() const noexcept
{
    std::size_t w = 0;
    for (std::size_t i = 0; i < xs_.size(); ++i)
        w += static_cast<std::size_t>(std::popcount(xs_[i] | zs_[i]));
    return w;
}

std::string
PauliString::letters() const
{
    std::string s(n_, 'I');
    for (std::size_t q = 0; q < n_; ++q)
        s[q] = letter(q);
    return s;
}

std::string
PauliString::str() const
{
    return (negative_ ? "-" : "+") + letters();
}

bool
PauliString::commutes_with(const PauliString& other) const
{
    unsigned parity = 0;
    for (std::size_t i = 0; i < xs_.size(); ++i)
        parity ^= static_cast<unsigned>(std::popcount((xs_[i] & other.zs_[i]) ^ (zs_[i] & other.xs_[i]))) & 1u;
    return parity == 0;
}

bool
PauliString::same_letters(const PauliString& other) const noexcept
{
    return n_ == other.n_ && xs_ == other.xs_ && zs_ == other.zs_;
}

int
PauliString::multiply_by(const PauliString& other)
{
    int k = 0;
    for (std::size_t i = 0; i < xs_.size(); ++i)
    {
        const std::uint64_t x1 = xs_[i], z1 = zs_[i], x2 = other.xs_[i], z2 = other.zs_[i];
        const std::uint64_t a_x = x1 & ~z1, a_z = ~x1 & z1, a_y = x1 & z1;
        const std::uint64_t b_x = x2 & ~z2, b_z = ~x2 & z2, b_y = x2 & z2;
        // XY = iZ, YZ = iX, ZX = iY and the reverse orders give -i.
        const std::uint64_t plus = (a_x & b_y) | (a_y & b_z) | (a_z & b_x);
        const std::uint64_t minus = (a_y & b_x) | (a_z & b_y) | (a_x & b_z);
        k += std::popcount(plus) - std::popcount(minus);
        xs_[i] = x1 ^ x2;
        zs_[i] = z1 ^ z2;
    }
    k = ((k % 4) + 4) % 4;
    negative_ ^= other.negative_;
    if (k == 2)
        negative_ = !negative_;
    return k;
}

////////////////////////////////////////////////////////////
////////////////////////////////////////////////////////////

void
conjugate_in_place(const Gate& g, PauliString& p)
{
    const std::size_t a = g.targets[0];
    const std::size_t b = g.targets[1];
    const bool xa = p.x(a), za = p.z(a);

    switch (g.kind)
    {
    case GateKind::H:
        p.negative_ ^= xa && za;
        p.set(a, za, xa);
        break;
    case GateKind::S:
        // X -> Y, Y -> -X
        p.negative_ ^= xa && za;
        p.set(a, xa, za ^ xa);
        break;
    case GateKind::Sdg:
        // X -> -Y, Y -> X
        p.negative_ ^= xa && !za;
        p.set(a, xa, za ^ xa);
        break;
    case GateKind::X:
        p.negative_ ^= za;
        break;
    case GateKind::Y:
        p.negative_ ^= xa ^ za;
        break;
    case GateKind::Z:
        p.negative_ ^= xa;
        break;
    case GateKind::CX:
    {
        const bool xb = p.x(b), zb = p.z(b);
        p.negative_ ^= xa && zb && !(xb ^ za);
        p.set(a, xa, za ^ zb);
        p.set(b, xb ^ xa, zb);
        break;
    }
    case GateKind::CZ:
    {
        const bool xb = p.x(b), zb = p.z(b);
        p.negative_ ^= xa && xb && (za ^ zb);
        p.set(a, xa, za ^ xb);
        p.set(b, xb, zb ^ xa);
        break;
    }
    case GateKind::SWAP:
    {
        const bool xb = p.x(b), zb = p.z(b);
        p.set(a, xb, zb);
        p.set(b, xa, za);
        break;
    }
    case GateKind::Rz:
    {
        const auto turns = clifford_quarter_turns(g.angle);
        if (!turns)
            throw NotClifford("Rz(" + std::to_string(g.angle) + ") is not a Clifford gate");
        static constexpr GateKind kAs[4] = {GateKind::Rz, GateKind::S, GateKind::Z, GateKind::Sdg};
        if (*turns != 0)
            conjugate_in_place(Gate::single(kAs[*turns], g.targets[0]), p);
        break;
    }
    default:
        throw NotClifford("gate " + std::string(to_string(g.kind)) + " is not a Clifford gate");
    }
}

PauliString
conjugate(const Gate& clifford, const PauliString& p)
{
    PauliString out = p;
    conjugate_in_place(clifford, out);
    return out;
}

}  // namespace injeqt
