#include "mobius/rational.hpp"

#include "mobius/errors.hpp"

namespace mobius {

Rational parse_rational(const std::string& text) {
    std::string s = text;
    if (s.empty()) raise(ErrorCode::InvalidArgument, "empty rational literal");
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        if (s.find('/') != std::string::npos)
            raise(ErrorCode::InvalidArgument, "mixed decimal and fraction: " + text);
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        size_t frac_len = s.size() - dot - 1;
        bool neg = false;
        if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) {
            neg = digits[0] == '-';
            digits.erase(0, 1);
        }
        if (digits.empty()) raise(ErrorCode::InvalidArgument, "bad decimal: " + text);
        Integer num(digits, 10);
        Integer den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
        Rational r(neg ? -num : num, den);
        r.canonicalize();
        return r;
    }
    Rational r;
    if (r.set_str(s, 10) != 0) raise(ErrorCode::InvalidArgument, "bad rational: " + text);
    r.canonicalize();
    if (r.get_den() == 0) raise(ErrorCode::InvalidArgument, "zero denominator: " + text);
    return r;
}

std::string rational_to_string(const Rational& value) {
    return value.get_str();
}

Rational pow2_rational(long exponent) {
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(exponent >= 0 ? exponent : -exponent));
    if (exponent >= 0) return Rational(p);
    return Rational(1, p);
}

} // namespace mobius
