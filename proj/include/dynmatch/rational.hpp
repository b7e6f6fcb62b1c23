#ifndef DYNMATCH_RATIONAL_HPP
#define DYNMATCH_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace dynmatch {

// Exact rational with 64-bit parts, enough for permutation-enumeration
// expectations (numerators stay far below 2^63 at m <= 9).
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
        if (den == 0) throw std::invalid_argument("zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
};

}  // namespace dynmatch

#endif
