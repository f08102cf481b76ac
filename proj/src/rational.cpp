#include "bifree/rational.hpp"

#include <limits>
#include <ostream>

#include "bifree/errors.hpp"

namespace bifree {

namespace {

using wide = __int128;

constexpr wide kMax = std::numeric_limits<std::int64_t>::max();

wide wide_abs(wide x) { return x < 0 ? -x : x; }

wide wide_gcd(wide a, wide b)
{
    a = wide_abs(a);
    b = wide_abs(b);
    while (b != 0) {
        wide t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool fits(wide x) { return x <= kMax && x >= -kMax; }

std::string wide_str(wide x)
{
    if (x == 0) return "0";
    bool neg = x < 0;
    x = wide_abs(x);
    std::string out;
    while (x > 0) {
        out.insert(out.begin(), static_cast<char>('0' + static_cast<int>(x % 10)));
        x /= 10;
    }
    return neg ? "-" + out : out;
}

} // namespace

Rational::Rational(std::int64_t num, std::int64_t den)
{
    if (den == 0) throw DomainError("rational with zero denominator");
    *this = from_wide(num, den);
}

Rational Rational::from_wide(wide num, wide den)
{
    if (den < 0) {
        num = -num;
        den = -den;
    }
    wide g = wide_gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    if (num == 0) den = 1;
    Rational r;
    if (fits(num) && fits(den)) {
        r.num_ = static_cast<std::int64_t>(num);
        r.den_ = static_cast<std::int64_t>(den);
        return r;
    }
    mpq_class q(wide_str(num) + "/" + wide_str(den), 10);
    q.canonicalize();
    r.big_ = std::make_shared<const mpq_class>(std::move(q));
    return r;
}

Rational Rational::from_mpq(mpq_class value)
{
    value.canonicalize();
    Rational r;
    const mpz_class& n = value.get_num();
    const mpz_class& d = value.get_den();
    if (n.fits_slong_p() && d.fits_slong_p()) {
        r.num_ = n.get_si();
        r.den_ = d.get_si();
        return r;
    }
    r.big_ = std::make_shared<const mpq_class>(std::move(value));
    return r;
}

mpq_class Rational::to_mpq() const
{
    if (big_) return *big_;
    mpq_class q;
    mpz_set_si(q.get_num_mpz_t(), num_);
    mpz_set_si(q.get_den_mpz_t(), den_);
    return q;
}

Rational Rational::parse(std::string_view text)
{
    std::string s(text);
    if (s.empty()) throw ParseError("empty rational");
    auto valid_int = [](std::string_view part) {
        std::size_t i = 0;
        if (!part.empty() && (part[0] == '-' || part[0] == '+')) i = 1;
        if (i == part.size()) return false;
        for (; i < part.size(); ++i) {
            if (part[i] < '0' || part[i] > '9') return false;
        }
        return true;
    };
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den.find_first_of("+-") != std::string::npos) {
        throw ParseError("malformed rational '" + s + "'");
    }
    if (num[0] == '+') num.erase(0, 1);
    mpq_class q;
    q.get_num() = mpz_class(num, 10);
    q.get_den() = mpz_class(den, 10);
    if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
    return from_mpq(std::move(q));
}

bool Rational::is_integer() const
{
    return big_ ? big_->get_den() == 1 : den_ == 1;
}

int Rational::sign() const
{
    if (big_) return sgn(*big_);
    return (num_ > 0) - (num_ < 0);
}

Rational Rational::operator-() const
{
    if (big_) return from_mpq(-*big_);
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

Rational& Rational::operator+=(const Rational& rhs)
{
    if (!big_ && !rhs.big_) {
        if (rhs.num_ == 0) return *this;
        if (num_ == 0) return *this = rhs;
        if (den_ == rhs.den_) {
            *this = from_wide(static_cast<wide>(num_) + rhs.num_, den_);
        } else {
            *this = from_wide(static_cast<wide>(num_) * rhs.den_ + static_cast<wide>(rhs.num_) * den_,
                              static_cast<wide>(den_) * rhs.den_);
        }
        return *this;
    }
    *this = from_mpq(to_mpq() + rhs.to_mpq());
    return *this;
}

Rational& Rational::operator-=(const Rational& rhs)
{
    return *this += -rhs;
}

Rational& Rational::operator*=(const Rational& rhs)
{
    if (!big_ && !rhs.big_) {
        if (num_ == 0 || rhs.num_ == 0) return *this = Rational();
        // Cross-reduce first so the 128-bit products stay small.
        wide g1 = wide_gcd(num_, rhs.den_);
        wide g2 = wide_gcd(rhs.num_, den_);
        wide n = (static_cast<wide>(num_) / g1) * (static_cast<wide>(rhs.num_) / g2);
        wide d = (static_cast<wide>(den_) / g2) * (static_cast<wide>(rhs.den_) / g1);
        if (fits(n) && fits(d)) {
            num_ = static_cast<std::int64_t>(n);
            den_ = static_cast<std::int64_t>(d);
            return *this;
        }
        *this = from_wide(n, d);
        return *this;
    }
    *this = from_mpq(to_mpq() * rhs.to_mpq());
    return *this;
}

Rational& Rational::operator/=(const Rational& rhs)
{
    if (rhs.is_zero()) throw DomainError("division by zero");
    if (!big_ && !rhs.big_) {
        *this = from_wide(static_cast<wide>(num_) * rhs.den_, static_cast<wide>(den_) * rhs.num_);
        return *this;
    }
    *this = from_mpq(to_mpq() / rhs.to_mpq());
    return *this;
}

bool operator==(const Rational& a, const Rational& b)
{
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    // Canonical forms never mix representations for the same value.
    return false;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b)
{
    if (!a.big_ && !b.big_) {
        wide lhs = static_cast<wide>(a.num_) * b.den_;
        wide rhs = static_cast<wide>(b.num_) * a.den_;
        return lhs <=> rhs;
    }
    int c = cmp(a.to_mpq(), b.to_mpq());
    return c <=> 0;
}

std::string Rational::str() const
{
    if (big_) {
        if (big_->get_den() == 1) return big_->get_num().get_str();
        return big_->get_str();
    }
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::string Rational::numerator_str() const
{
    return big_ ? big_->get_num().get_str() : std::to_string(num_);
}

std::string Rational::denominator_str() const
{
    return big_ ? big_->get_den().get_str() : std::to_string(den_);
}

std::size_t Rational::hash() const
{
    if (big_) return std::hash<std::string>{}(big_->get_str());
    std::size_t h = std::hash<std::int64_t>{}(num_);
    return h ^ (std::hash<std::int64_t>{}(den_) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::ostream& operator<<(std::ostream& os, const Rational& value)
{
    return os << value.str();
}

} // namespace bifree
