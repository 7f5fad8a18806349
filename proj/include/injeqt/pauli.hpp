#pragma once

#include "injeqt/circuit.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace injeqt
{

/*
 * Hermitian Pauli product with an explicit +-1 sign, stored as packed X/Z
 * bit-planes. Letter encoding per qubit: (x,z) = (0,0) I, (1,0) X, (1,1) Y, (0,1) Z.
 * */
class PauliString
{
public:
    PauliString() = default;
    explicit PauliString(std::size_t num_qubits);

    /// Parses "+XIZ", "-Y", "ZZ" (sign optional).
    static PauliString from_string(std::string_view text);
    static PauliString single(std::size_t num_qubits, std::size_t q, char letter);

    std::size_t num_qubits() const noexcept { return n_; }
    bool negative() const noexcept { return negative_; }
    void set_negative(bool neg) noexcept { negative_ = neg; }
    int sign() const noexcept { return negative_ ? -1 : 1; }

    bool x(std::size_t q) const noexcept { return (xs_[q >> 6] >> (q & 63)) & 1u; }
    bool z(std::size_t q) const noexcept { return (zs_[q >> 6] >> (q & 63)) & 1u; }
    void set(std::size_t q, bool x, bool z) noexcept;

    char letter(std::size_t q) const noexcept;
    std::size_t weight() const noexcept;
    bool is_identity() const noexcept { return weight() == 0; }

    /// Letters only, no sign: "XIZ".
    std::string letters() const;
    /// Sign then letters: "+XIZ".
    std::string str() const;

    bool commutes_with(const PauliString& other) const;
    /// Same letters, sign ignored.
    bool same_letters(const PauliString& other) const noexcept;

    /*
     * In-place right multiplication this := this * other. Returns the extra
     * phase exponent k of i^k picked up beyond the two signs; the result is
     * Hermitian only when k is even, in which case it is folded into the sign.
     * */
    int multiply_by(const PauliString& other);

    const std::vector<std::uint64_t>& x_words() const noexcept { return xs_; }
    const std::vector<std::uint64_t>& z_words() const noexcept { return zs_; }

    friend bool operator==(const PauliString&, const PauliString&) = default;

private:
    std::size_t n_{0};
    bool negative_{false};
    std::vector<std::uint64_t> xs_;
    std::vector<std::uint64_t> zs_;

    friend PauliString conjugate(const Gate&, const PauliString&);
    friend void conjugate_in_place(const Gate&, PauliString&);
};

/// C P C^dagger for a Clifford gate C. Throws NotClifford otherwise.
PauliString conjugate(const Gate& clifford, const PauliString& p);
void conjugate_in_place(const Gate& clifford, PauliString& p);

}  // namespace injeqt
