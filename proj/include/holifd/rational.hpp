#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace holifd {

/// Exact rational scalar used by the derivation engine and the exact
/// polynomial backend.
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(double x) { return x; }

/// Renders as "p/q", or "p" when the denominator is one.
inline std::string rational_to_string(const Rational& r)
{
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

/// Parses "p", "-p/q" etc.  Throws std::invalid_argument on malformed input.
inline Rational rational_from_string(std::string_view s)
{
    auto bar = s.find('/');
    try {
        if (bar == std::string_view::npos)
            return Rational(boost::multiprecision::cpp_int(std::string(s)));
        boost::multiprecision::cpp_int num{std::string(s.substr(0, bar))};
        boost::multiprecision::cpp_int den{std::string(s.substr(bar + 1))};
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::runtime_error& e) {
        throw std::invalid_argument("bad rational literal '" + std::string(s) + "': " + e.what());
    }
}

}  // namespace holifd
