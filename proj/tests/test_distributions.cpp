#include <doctest.h>

#include <random>

#include "bifree/distributions.hpp"
#include "bifree/errors.hpp"

using namespace bifree;

namespace {

const Letter ul(0, Base::First, false), uls(0, Base::First, true), ur(0, Base::Second, false),
    urs(0, Base::Second, true);

std::shared_ptr<MatrixStateModel> quarter_zw()
{
    return std::make_shared<MatrixStateModel>(Matrix(2, {1, 0, 0, 0}), Matrix(2, {0, 0, 1, 0}));
}

// Plain 2x2 rational arithmetic for cross-checking the matrix model.
struct M2 {
    Rational a, b, c, d;
    M2 operator*(const M2& o) const
    {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    M2 t() const { return {a, c, b, d}; }
    Rational tr() const { return (a + d) / Rational(2); }
};

} // namespace

TEST_CASE("letters and words")
{
    CHECK(Letter::parse("X*").token() == "X*");
    CHECK(Letter::parse("ur*") == urs);
    CHECK(Letter::parse("Z") == ul);
    CHECK(Letter::parse("W*@3") == Letter(3, Base::Second, true));
    CHECK_THROWS_AS(Letter::parse("Q"), ParseError);
    CHECK_THROWS_AS(Letter::parse("X@x"), ParseError);
    Word w = Word::parse("X X* Y Y*@1");
    CHECK(w.size() == 4);
    CHECK(w.str() == "X X* Y Y*@1");
    CHECK(w.chi().str() == "llrr");
    CHECK(w.star().str() == "Y@1 Y* X X*");
    CHECK(w.star().star() == w);
    CHECK(Word::parse("").empty());
    CHECK(uls.star() == ul);
    CHECK(words_of_length(pair_alphabet(0), 3).size() == 64);
    CHECK(words_of_length(pair_alphabet(0), 0).size() == 1);
}

TEST_CASE("bi-Haar shift model moments")
{
    ShiftBiHaarModel m;
    CHECK(m.moment(Word{ul, ur}) == Scalar(0));
    CHECK(m.moment(Word{ul, urs}) == Scalar(1));
    CHECK(m.moment(Word()) == Scalar(1));
    CHECK(moment_restricted(m, Word{ul, uls, ur}, {0, 1}) == Scalar(1));
    CHECK(moment_restricted(m, Word{ul, uls, ur}, {2}) == Scalar(0));
    CHECK(phi_pi(m, Word{ul, uls, ur, urs}, SetPartition::parse("{1,2|3,4}")) == Scalar(1));
    CHECK(phi_pi(m, Word{ul, uls, ur, urs}, SetPartition::one(4)) == m.moment(Word{ul, uls, ur, urs}));
    CHECK_THROWS_AS(m.moment(Word{Letter(1, Base::First, false)}), DomainError);
    ShiftBiHaarModel small(0, 3);
    CHECK_THROWS_AS(small.moment(Word{ul, ul, ul, ul}), LimitError);
    CHECK_THROWS_AS(moment_restricted(m, Word{ul}, {}), DomainError);
}

TEST_CASE("bi-Haar reduction is invariant under side-commuting swaps")
{
    ShiftBiHaarModel m;
    std::mt19937 rng(11);
    auto alpha = pair_alphabet(0);
    for (int trial = 0; trial < 300; ++trial) {
        std::size_t n = 1 + rng() % 10;
        Word w;
        for (std::size_t k = 0; k < n; ++k) w.push_back(alpha[rng() % 4]);
        long a = 0, b = 0;
        for (std::size_t k = 0; k < n; ++k) (w[k].side() == Side::Left ? a : b) += w[k].starred() ? -1 : 1;
        CHECK(m.moment(w) == Scalar(a + b == 0 ? 1 : 0));
        for (std::size_t k = 0; k + 1 < n; ++k) {
            if (w[k].side() == w[k + 1].side()) continue;
            std::vector<Letter> swapped;
            for (std::size_t q = 0; q < n; ++q) swapped.push_back(w[q]);
            std::swap(swapped[k], swapped[k + 1]);
            CHECK(m.moment(Word(swapped)) == m.moment(w));
        }
    }
}

TEST_CASE("quarter matrix pair")
{
    auto m = quarter_zw();
    CHECK(m->moment(Word::parse("Z* Z")) == Scalar(Rational(1, 2)));
    CHECK(m->moment(Word::parse("Z Z")) == Scalar(Rational(1, 2)));
    CHECK(m->moment(Word::parse("Z* Z W W*")) == Scalar(0));
    CHECK(m->moment(Word::parse("Z* Z W* W")) == Scalar(Rational(1, 2)));
    // Independent 2x2 arithmetic over every word up to length 6.
    M2 Z{1, 0, 0, 0}, W{0, 0, 1, 0};
    auto mat = [&](Letter l) {
        M2 base = l.base() == Base::First ? Z : W;
        return l.starred() ? base.t() : base;
    };
    for (std::size_t n = 1; n <= 6; ++n) {
        for (const auto& w : words_of_length(pair_alphabet(0), n)) {
            M2 acc{1, 0, 0, 1};
            for (std::size_t k = 0; k < n; ++k) acc = acc * mat(w[k]);
            CHECK(m->moment(w) == Scalar(acc.tr()));
            Scalar pos = m->moment(w + w.star());
            CHECK(pos.is_real());
            CHECK(pos.re >= Rational(0));
        }
    }
}

TEST_CASE("off-diagonal block pair is *-bi-even")
{
    Matrix X(4, {0, 0, 1, 2, 0, 0, -1, Rational(1, 2), 3, 0, 0, 0, 1, 1, 0, 0});
    Matrix Y(4, {0, 0, Scalar(0, 1), 0, 0, 0, 2, 1, 1, -2, 0, 0, 0, 1, 0, 0});
    MatrixStateModel m(X, Y);
    for (std::size_t n = 1; n <= 5; n += 2)
        for (const auto& w : words_of_length(pair_alphabet(0), n)) CHECK(m.moment(w).is_zero());
}

TEST_CASE("table model")
{
    TableModel empty({0}, {}, 4, true);
    CHECK(empty.moment(Word::parse("X")) == Scalar(0));
    TableModel unit({0}, {{Word(), Scalar(1)}}, 4, false);
    CHECK(unit.moment(Word()) == Scalar(1));
    CHECK_THROWS_AS(unit.moment(Word::parse("X")), DomainError);
    CHECK_THROWS_AS(TableModel({0}, {{Word(), Scalar(2)}}, 4, true), DomainError);
    CHECK_THROWS_AS(unit.moment(Word::parse("X X X X X")), LimitError);

    ShiftBiHaarModel shift;
    std::map<Word, Scalar> entries;
    for (std::size_t n = 0; n <= 6; ++n)
        for (const auto& w : words_of_length(pair_alphabet(0), n)) entries[w] = shift.moment(w);
    TableModel copy({0}, entries, 6, false);
    for (std::size_t n = 0; n <= 6; ++n)
        for (const auto& w : words_of_length(pair_alphabet(0), n)) CHECK(copy.moment(w) == shift.moment(w));
}

TEST_CASE("polynomials and derived pairs")
{
    Polynomial x = Polynomial::letter(ul) + Polynomial(Scalar(2));
    Polynomial y = Polynomial::letter(ur) * Polynomial(Scalar(0, 1));
    CHECK(x.degree() == 1);
    CHECK(y.star().str() == "(-1i)*Y*");
    CHECK((x - x).is_zero());
    auto base = std::make_shared<ShiftBiHaarModel>();
    auto d = derived_pair(base, x, y, 4);
    // (u_l + 2)(u_l + 2)* has moment 1 + 4 = 5.
    CHECK(d->moment(Word::parse("X X*")) == Scalar(5));
    // (i u_r)(u_l + 2)* = i u_r u_l* + 2i u_r: moment i.
    CHECK(d->moment(Word::parse("Y X*")) == Scalar(0, 1));

    // M_2(A) with tr (x) phi: Z = [[0, u_l], [u_l*, 0]] has Z Z = diag(u_l u_l*, u_l* u_l).
    PolyMatrix z(2), w(2);
    z.at(0, 1) = Polynomial::letter(ul);
    z.at(1, 0) = Polynomial::letter(uls);
    w.at(0, 1) = Polynomial::letter(ur);
    w.at(1, 0) = Polynomial::letter(ur) * Polynomial::letter(ur);
    PolynomialModel tensor(base, {{0, z, w}}, 6);
    CHECK(tensor.moment(Word::parse("X X")) == Scalar(1));
    CHECK(tensor.moment(Word::parse("X")) == Scalar(0));
    CHECK(tensor.moment(Word::parse("X Y X")) == Scalar(0));
    // W W = diag(u_r^3, u_r^3), trace 0; W* W = diag(u_r*^2 u_r^2, u_r* u_r): 1.
    CHECK(tensor.moment(Word::parse("Y Y")) == Scalar(0));
    CHECK(tensor.moment(Word::parse("Y* Y")) == Scalar(1));
}
