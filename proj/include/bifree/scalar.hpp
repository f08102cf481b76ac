#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "bifree/rational.hpp"

namespace bifree {

// Exact complex rational re + im*i.
struct Scalar {
    Rational re;
    Rational im;

    Scalar() = default;
    Scalar(Rational r) : re(std::move(r)) {} // NOLINT(google-explicit-constructor)
    Scalar(std::int64_t r) : re(r) {}        // NOLINT(google-explicit-constructor)
    Scalar(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static Scalar parse(std::string_view text);

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    bool is_real() const { return im.is_zero(); }
    Scalar conj() const { return {re, -im}; }

    Scalar operator-() const { return {-re, -im}; }
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend bool operator==(const Scalar& a, const Scalar& b) { return a.re == b.re && a.im == b.im; }

    // "p/q", "p/q+r/si", "p/q-r/si" or "r/si".
    std::string str() const;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

} // namespace bifree
