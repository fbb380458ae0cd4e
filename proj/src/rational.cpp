#include "ffcone/rational.hpp"

#include <stdexcept>

namespace ffcone {

std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(std::stoll(text));
        const long long num = std::stoll(text.substr(0, slash));
        const long long den = std::stoll(text.substr(slash + 1));
        return Rational(num, den);
    } catch (const boost::bad_rational&) {
        throw std::invalid_argument("BadRational: " + text);
    } catch (const std::logic_error&) {
        throw std::invalid_argument("BadRational: " + text);
    }
}

ExponentPair::ExponentPair(Rational ip, Rational ir) : inv_p(ip), inv_r(ir) {
    if (inv_p < Rational(0) || inv_p > Rational(1) || inv_r < Rational(0) || inv_r > Rational(1))
        throw std::invalid_argument("BadExponent: (1/p, 1/r) must lie in the unit square");
}

double ExponentPair::p_value() const { return exponent_from_inverse(inv_p); }
double ExponentPair::r_value() const { return exponent_from_inverse(inv_r); }

ExponentPair ExponentPair::conjugate() const {
    return ExponentPair(Rational(1) - inv_p, Rational(1) - inv_r);
}

std::string ExponentPair::str() const { return to_string(inv_p) + ":" + to_string(inv_r); }

ExponentPair ExponentPair::parse(const std::string& s) {
    const auto colon = s.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("BadExponent: expected \"a/b:c/d\", got " + s);
    return ExponentPair(parse_rational(s.substr(0, colon)), parse_rational(s.substr(colon + 1)));
}

}  // namespace ffcone
