#include "bifree/scalar.hpp"

#include <ostream>

#include "bifree/errors.hpp"

namespace bifree {

Scalar& Scalar::operator+=(const Scalar& o)
{
    re += o.re;
    if (!o.im.is_zero()) im += o.im;
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o)
{
    re -= o.re;
    if (!o.im.is_zero()) im -= o.im;
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o)
{
    if (im.is_zero() && o.im.is_zero()) {
        re *= o.re;
        return *this;
    }
    Rational r = re * o.re - im * o.im;
    Rational i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o)
{
    if (o.is_zero()) throw DomainError("division by zero");
    if (o.im.is_zero()) {
        re /= o.re;
        im /= o.re;
        return *this;
    }
    Rational norm = o.re * o.re + o.im * o.im;
    *this *= o.conj();
    re /= norm;
    im /= norm;
    return *this;
}

Scalar Scalar::parse(std::string_view text)
{
    std::string s;
    for (char c : text) {
        if (c != ' ') s.push_back(c);
    }
    if (s.empty()) throw ParseError("empty scalar");
    if (s.back() != 'i') return Scalar(Rational::parse(s));

    s.pop_back();
    // Split at the last sign that is not leading.
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if (s[k] == '+' || s[k] == '-') {
            split = k;
            break;
        }
    }
    auto coeff = [](std::string part) {
        if (part.empty() || part == "+") return Rational(1);
        if (part == "-") return Rational(-1);
        return Rational::parse(part);
    };
    if (split == std::string::npos) return Scalar(Rational(0), coeff(s));
    return Scalar(Rational::parse(s.substr(0, split)), coeff(s.substr(split)));
}

std::string Scalar::str() const
{
    if (im.is_zero()) return re.str();
    std::string imag = im.str() + "i";
    if (re.is_zero()) return imag;
    if (im.sign() > 0) return re.str() + "+" + imag;
    return re.str() + imag;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s)
{
    return os << s.str();
}

} // namespace bifree
