#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace crnmem {

// Exact rational endpoint. Memory-map interval bounds are rational by
// definition and are stored exactly; ordering against double-valued
// concentrations is decided in integer arithmetic, never by rounding both
// sides to double.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;  // always > 0 after construction

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d);

    // "p/q" or a plain integer "p"; throws std::invalid_argument on junk.
    static Rational parse(std::string_view text);

    double to_double() const;     // nearest double
    double lower_double() const;  // greatest double <= exact value
    double upper_double() const;  // least double >= exact value

    std::string str() const;

    // Exact sign of (x - num/den): -1, 0, or +1. x must be finite.
    int compare_double(double x) const;

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    bool operator<(const Rational& o) const;
};

}  // namespace crnmem
