#include "boxlab/rational.hpp"

#include <cctype>

namespace boxlab {

namespace {

bool valid_integer_token(std::string_view s) {
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
    if (!valid_integer_token(num) || (slash != std::string_view::npos && !valid_integer_token(den)))
        throw ParseError("not a rational: '" + std::string(text) + "'");
    Integer n{std::string(num)};
    Integer d = slash == std::string_view::npos ? Integer(1) : Integer(std::string(den));
    if (d <= 0) throw ParseError("denominator must be positive in '" + std::string(text) + "'");
    return Rational(n, d);
}

std::string to_fraction_string(const Rational& q) {
    return numerator(q).str() + "/" + denominator(q).str();
}

std::string to_decimal_string(const Rational& q, int significant_digits) {
    if (significant_digits < 1) significant_digits = 1;
    if (q == 0) return "0";

    Integer n = numerator(q);
    std::string sign;
    if (n < 0) {
        sign = "-";
        n = -n;
    }
    Integer d = denominator(q);

    // Decimal exponent e such that 10^e <= n/d < 10^(e+1).
    long e = 0;
    Integer lo = n, hi = d;  // compare n/d against powers of ten via cross-multiplication
    while (lo < hi) {
        lo *= 10;
        --e;
    }
    while (lo >= hi * 10) {
        hi *= 10;
        ++e;
    }

    // First `significant_digits` digits of n/d * 10^-e, rounded half up.
    Integer scaled_num = n;
    Integer scaled_den = d;
    long shift = significant_digits - 1 - e;
    for (long i = 0; i < shift; ++i) scaled_num *= 10;
    for (long i = 0; i < -shift; ++i) scaled_den *= 10;
    Integer digits = (2 * scaled_num + scaled_den) / (2 * scaled_den);  // round(scaled_num/scaled_den)

    std::string ds = digits.str();
    if (static_cast<int>(ds.size()) > significant_digits) {
        // rounding bumped 999... to 1000...; drop the extra trailing zero
        ds.pop_back();
        ++e;
    }

    std::string out;
    if (e >= 0 && e < significant_digits) {
        out = ds.substr(0, e + 1);
        std::string frac = ds.substr(e + 1);
        while (!frac.empty() && frac.back() == '0') frac.pop_back();
        if (!frac.empty()) out += "." + frac;
    } else if (e < 0 && e >= -4) {
        std::string frac(-e - 1, '0');
        frac += ds;
        while (!frac.empty() && frac.back() == '0') frac.pop_back();
        out = "0." + frac;
    } else {
        out = ds.substr(0, 1);
        std::string frac = ds.substr(1);
        while (!frac.empty() && frac.back() == '0') frac.pop_back();
        if (!frac.empty()) out += "." + frac;
        out += "e" + std::to_string(e);
    }
    return sign + out;
}

}  // namespace boxlab
