#ifndef SDTOP_RATIONAL_HPP
#define SDTOP_RATIONAL_HPP

#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace sdtop {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline BigInt rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline BigInt rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

/// Parses "a/b" or "a" into an exact rational.
inline Rat parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(BigInt(s));
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rat(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed rational: " + s);
    }
}

inline std::string rational_to_string(const Rat& r) {
    if (rat_den(r) == 1) return rat_num(r).str();
    return rat_num(r).str() + "/" + rat_den(r).str();
}

inline double rational_to_double(const Rat& r) { return r.convert_to<double>(); }

inline BigInt big_pow(const BigInt& base, unsigned exp) {
    BigInt out = 1, b = base;
    while (exp) {
        if (exp & 1) out *= b;
        b *= b;
        exp >>= 1;
    }
    return out;
}

inline Rat rat_pow(const Rat& base, unsigned exp) {
    return Rat(big_pow(rat_num(base), exp), big_pow(rat_den(base), exp));
}

}  // namespace sdtop

#endif  // SDTOP_RATIONAL_HPP
