#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ffcone {

/// A concrete finite field F_q, q = p^e with p an odd prime.
///
/// Elements are dense integer indices in [0, q): index  sum_i c_i p^i
/// stands for the residue polynomial  sum_i c_i x^i  modulo the field
/// modulus. Index 0 is the additive identity and index 1 the
/// multiplicative identity. The modulus is the lexicographically
/// smallest monic irreducible polynomial of degree e over F_p,
/// coefficients compared low-degree-first, so construction is fully
/// deterministic. All per-element tables are built eagerly; the type is
/// immutable afterwards and safe to share across threads.
class FieldSpec {
public:
    /// Largest supported field size. The dense q x q multiplication
    /// table is the limiting factor.
    static constexpr int kMaxQ = 4096;

    /// Builds F_{p^e}. Throws std::invalid_argument on a non-prime p
    /// ("NonPrime"), p = 2 ("EvenCharacteristic"), e < 1 ("DegreeZero"),
    /// or q > kMaxQ ("FieldTooLarge").
    static FieldSpec make(int p, int e);

    int p() const { return p_; }
    int e() const { return e_; }
    int q() const { return q_; }

    /// Monic modulus coefficients, low degree first, length e+1.
    const std::vector<int>& modulus() const { return modulus_; }

    int add(int a, int b) const;
    int sub(int a, int b) const;
    int neg(int a) const;
    int mul(int a, int b) const { return mul_table_[static_cast<std::size_t>(a) * q_ + b]; }
    /// Throws std::domain_error ("DivisionByZero") on a = 0.
    int inv(int a) const;
    int pow(int a, long long n) const;

    /// Absolute trace Tr(a) = a + a^p + ... + a^{p^{e-1}}, returned as an
    /// integer in [0, p).
    int trace(int a) const { return trace_table_[a]; }

    /// Quadratic character extended by eta(0) = 0.
    int eta(int a) const { return eta_table_[a]; }

    /// Embeds an integer via the prime subfield: n mod p as a constant
    /// polynomial.
    int from_int(long long n) const;

    /// Coefficient vector of the element, length e, low degree first.
    std::vector<int> digits(int a) const;

    /// Index permutation m -> T m induced by the trace form
    /// T[a][b] = Tr(x^a x^b) on coefficient vectors. It identifies the
    /// trace pairing Tr(m x) with the plain digit dot product and is the
    /// identity on prime fields.
    const std::vector<std::uint16_t>& dual_permutation() const { return dual_perm_; }

    bool operator==(const FieldSpec& other) const {
        return p_ == other.p_ && e_ == other.e_;
    }

private:
    FieldSpec() = default;

    int p_ = 0;
    int e_ = 0;
    int q_ = 0;
    std::vector<int> modulus_;
    std::vector<std::uint16_t> mul_table_;   // q*q, row-major
    std::vector<std::uint16_t> inv_table_;   // inv_table_[0] unused
    std::vector<std::uint8_t> trace_table_;  // values in [0,p)
    std::vector<std::int8_t> eta_table_;     // {-1,0,+1}
    std::vector<std::uint16_t> dual_perm_;
};

/// Number of points of F_q^d. Throws std::overflow_error ("Overflow")
/// when q^d exceeds the addressable limit below.
constexpr std::uint64_t kMaxPoints = std::uint64_t{1} << 24;
std::uint64_t point_count(const FieldSpec& field, int d);

/// Base-q positional encoding of points, little-endian in the
/// coordinate order: index = sum_i coords[i] q^i.
std::uint64_t encode_point(const FieldSpec& field, std::span<const int> coords);
std::vector<int> decode_point(const FieldSpec& field, int d, std::uint64_t index);

/// The form x_1^2 + ... + x_{d-2}^2 - x_{d-1} x_d whose zero set is the
/// cone. Throws std::invalid_argument ("DimensionTooSmall") for d < 3.
int cone_form(const FieldSpec& field, std::span<const int> x);
bool cone_contains(const FieldSpec& field, std::span<const int> x);

/// The dual form Gamma(xi) = xi_1^2 + ... + xi_{d-2}^2 - 4 xi_{d-1} xi_d.
int gamma_form(const FieldSpec& field, std::span<const int> xi);

/// Splits q into (p, e) with p the smallest prime factor. Throws
/// std::invalid_argument when q is not an odd prime power.
std::pair<int, int> factor_prime_power(int q);

}  // namespace ffcone
