#include "crnmem/rational.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace crnmem {

namespace {

using u128 = unsigned __int128;

// Magnitude cap keeping (double)num and (double)den exact and all products
// below 128 bits. Desk-scale maps never get close.
constexpr std::int64_t kMaxTerm = 1'000'000'000'000LL;  // 1e12 < 2^53

// sign of (a*2^shift - b), both nonnegative, shift >= 0
int shifted_compare(u128 a, int shift, u128 b) {
    if (a == 0) return b == 0 ? 0 : -1;
    // a >= 1, so a*2^shift >= 2^shift
    if (shift >= 127) return 1;
    if (a > (std::numeric_limits<u128>::max() >> shift)) return 1;
    u128 lhs = a << shift;
    if (lhs < b) return -1;
    if (lhs > b) return 1;
    return 0;
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    if (num > kMaxTerm || num < -kMaxTerm || den > kMaxTerm)
        throw std::invalid_argument("rational term out of supported range");
}

Rational Rational::parse(std::string_view text) {
    auto parse_int = [](std::string_view s) -> std::int64_t {
        if (s.empty()) throw std::invalid_argument("empty rational component");
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) throw std::invalid_argument("bad rational: " + std::string(s));
        std::int64_t v = 0;
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9')
                throw std::invalid_argument("bad rational: " + std::string(s));
            v = v * 10 + (s[i] - '0');
            if (v > kMaxTerm) throw std::invalid_argument("rational component too large");
        }
        return s[0] == '-' ? -v : v;
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text), 1);
    return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

double Rational::to_double() const {
    // both terms < 2^53, so the division is the correctly rounded quotient
    return static_cast<double>(num) / static_cast<double>(den);
}

int Rational::compare_double(double x) const {
    if (std::isnan(x)) throw std::invalid_argument("NaN in rational comparison");
    if (std::isinf(x)) return x > 0 ? 1 : -1;
    if (x == 0.0) return num == 0 ? 0 : (num > 0 ? -1 : 1);
    bool xneg = x < 0.0;
    bool rneg = num < 0;
    if (num == 0) return xneg ? -1 : 1;
    if (xneg != rneg) return xneg ? -1 : 1;

    // same nonzero sign; compare |x|*den against |num| exactly.
    int exp;
    double mant = std::frexp(std::fabs(x), &exp);
    auto m = static_cast<u128>(std::ldexp(mant, 53));  // exact integer mantissa
    int e = exp - 53;                                  // |x| = m * 2^e
    u128 lhs = m * static_cast<u128>(den);             // <= 2^53 * 2^40
    u128 rhs = static_cast<u128>(num < 0 ? -num : num);
    int cmp = e >= 0 ? shifted_compare(lhs, e, rhs) : -shifted_compare(rhs, -e, lhs);
    return xneg ? -cmp : cmp;
}

double Rational::lower_double() const {
    double d = to_double();
    int c = compare_double(d);  // sign of d - value
    if (c > 0) return std::nextafter(d, -std::numeric_limits<double>::infinity());
    return d;
}

double Rational::upper_double() const {
    double d = to_double();
    int c = compare_double(d);
    if (c < 0) return std::nextafter(d, std::numeric_limits<double>::infinity());
    return d;
}

std::string Rational::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

bool Rational::operator<(const Rational& o) const {
    // num/den < o.num/o.den  <=>  num*o.den < o.num*den  (dens positive)
    auto l = static_cast<__int128>(num) * o.den;
    auto r = static_cast<__int128>(o.num) * den;
    return l < r;
}

}  // namespace crnmem
