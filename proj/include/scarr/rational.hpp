#ifndef SCARR_RATIONAL_HPP
#define SCARR_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace scarr {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& q) {
    return q.str();
}

inline BigInt rational_num(const Rational& q) { return numerator(q); }
inline BigInt rational_den(const Rational& q) { return denominator(q); }

} // namespace scarr

#endif
