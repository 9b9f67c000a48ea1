#include "heisenberg/gaussian_rational.hpp"

#include <sstream>

#include "heisenberg/errors.hpp"

namespace heisenberg {

Rational parse_rational(std::string_view text)
{
    std::string s(text);
    if (s.empty()) throw DomainError("empty rational literal");
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        std::string denom = "1" + std::string(s.size() - dot - 1, '0');
        Rational q(mpz_class(digits.empty() ? "0" : digits), mpz_class(denom));
        q.canonicalize();
        return q;
    }
    Rational q;
    if (q.set_str(s, 10) != 0) throw DomainError("malformed rational literal '" + s + "'");
    if (q.get_den() == 0) throw DomainError("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

GaussianRational& GaussianRational::operator/=(const GaussianRational& o)
{
    Rational d = o.norm2();
    if (sgn(d) == 0) throw DomainError("division by zero");
    *this *= o.conj();
    re_ /= d;
    im_ /= d;
    return *this;
}

GaussianRational pow(const GaussianRational& base, unsigned exponent)
{
    GaussianRational result(1);
    GaussianRational b = base;
    while (exponent != 0) {
        if (exponent & 1U) result *= b;
        exponent >>= 1U;
        if (exponent != 0) b *= b;
    }
    return result;
}

std::string to_string(const GaussianRational& c)
{
    const auto& re = c.real();
    const auto& im = c.imag();
    if (sgn(im) == 0) return to_string(re);
    std::string imag = to_string(abs(im)) + "i";
    if (sgn(re) == 0) return (sgn(im) < 0 ? "-" : "") + imag;
    return to_string(re) + (sgn(im) < 0 ? " - " : " + ") + imag;
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& c) { return os << to_string(c); }

}  // namespace heisenberg
