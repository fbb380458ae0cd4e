#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <limits>
#include <string>

namespace ffcone {

using Rational = boost::rational<long long>;

std::string to_string(const Rational& r);
Rational parse_rational(const std::string& text);  // "a/b" or "a"

/// A rational point (1/p, 1/r) of the exponent square. inv_p = 0 means
/// p = infinity. Arithmetic on the entries stays exact.
struct ExponentPair {
    Rational inv_p{0};
    Rational inv_r{0};

    ExponentPair() = default;
    ExponentPair(Rational ip, Rational ir);

    double p_value() const;  // +infinity when inv_p = 0
    double r_value() const;

    /// Conjugate exponents: (1 - 1/p, 1 - 1/r).
    ExponentPair conjugate() const;

    bool operator==(const ExponentPair& other) const = default;

    std::string str() const;                          // "1/p:1/r"
    static ExponentPair parse(const std::string& s);  // "a/b:c/d"
};

inline double exponent_from_inverse(const Rational& inv) {
    if (inv == Rational(0)) return std::numeric_limits<double>::infinity();
    return static_cast<double>(inv.denominator()) / static_cast<double>(inv.numerator());
}

}  // namespace ffcone
