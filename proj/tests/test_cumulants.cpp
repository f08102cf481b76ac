#include <doctest.h>

#include "bifree/bifree_product.hpp"
#include "bifree/cumulants.hpp"
#include "bifree/errors.hpp"

using namespace bifree;

namespace {

OraclePtr shift(unsigned pair = 0) { return std::make_shared<ShiftBiHaarModel>(pair); }

OraclePtr quarter_zw(unsigned pair = 0)
{
    return std::make_shared<MatrixStateModel>(Matrix(2, {1, 0, 0, 0}), Matrix(2, {0, 0, 1, 0}), pair);
}

OraclePtr generic_matrix_pair(unsigned pair = 0)
{
    // No symmetry at all: nonzero odd moments, complex entries.
    Matrix X(2, {1, Scalar(0, 1), Rational(-1, 2), 2});
    Matrix Y(2, {0, 1, Scalar(1, -1), Rational(1, 3)});
    return std::make_shared<MatrixStateModel>(X, Y, pair);
}

// Alternation of stars in chi-order, written out independently.
bool alternating_in_chi_order(const Word& w)
{
    std::vector<std::size_t> order;
    for (std::size_t k = 0; k < w.size(); ++k)
        if (w[k].side() == Side::Left) order.push_back(k);
    for (std::size_t k = w.size(); k-- > 0;)
        if (w[k].side() == Side::Right) order.push_back(k);
    for (std::size_t r = 0; r + 1 < order.size(); ++r)
        if (w[order[r]].starred() == w[order[r + 1]].starred()) return false;
    return w.size() % 2 == 0;
}

} // namespace

TEST_CASE("kappa examples")
{
    CumulantTable ct(shift());
    CHECK(ct.full(Word::parse("ul")) == Scalar(0));
    CHECK(ct.full(Word::parse("ul ur*")) == Scalar(1));
    CHECK(ct.full(Word::parse("ul ul* ul ul*")) == Scalar(-1));
    CHECK(ct.kappa(Word::parse("ul ur*"), SetPartition::one(2)) == Scalar(1));
    CHECK_THROWS_AS(ct.kappa(Word::parse("ul ul ul ul"), SetPartition::parse("{1,3|2,4}")), DomainError);
    CHECK_THROWS_AS(ct.full(Word()), DomainError);
    CumulantTable zw(quarter_zw());
    CHECK(zw.full(Word::parse("Z")) == Scalar(Rational(1, 2)));
    CHECK(zw.full(Word::parse("Z Z")) == Scalar(Rational(1, 2)) - Scalar(Rational(1, 4)));
}

TEST_CASE("fast cumulants agree with Moebius inversion at every partition")
{
    for (auto model : {shift(), quarter_zw(), generic_matrix_pair()}) {
        CumulantTable ct(model);
        for (std::size_t n = 1; n <= 5; ++n) {
            for (const auto& w : words_of_length(pair_alphabet(0), n)) {
                auto ctx = bnc_context(w.chi());
                for (const auto& tau : ctx->elements()) {
                    Scalar direct = ct.kappa_direct(w, tau);
                    CHECK(ct.kappa(w, tau) == direct);
                    Scalar product(1);
                    for (Mask b : tau.blocks()) product *= ct.kappa_direct(w.subword(b), SetPartition::one(static_cast<std::size_t>(std::popcount(b))));
                    CHECK(product == direct);
                }
            }
        }
    }
}

TEST_CASE("moment-cumulant round trip")
{
    for (auto model : {shift(), quarter_zw(), generic_matrix_pair()}) {
        CumulantTable ct(model);
        for (std::size_t n = 1; n <= 6; ++n) {
            for (const auto& w : words_of_length(pair_alphabet(0), n)) {
                CHECK(ct.moments_from_cumulants(w) == model->moment(w));
            }
        }
    }
    CumulantTable ct(shift());
    CHECK(ct.moments_from_cumulants(Word::parse("ul ul*")) == Scalar(1));
    CumulantTable zw(quarter_zw());
    CHECK(zw.moments_from_cumulants(Word::parse("Z* Z W W*")) == Scalar(0));
    CHECK(zw.moments_from_cumulants(Word::parse("Z* Z W* W")) == Scalar(Rational(1, 2)));
}

TEST_CASE("paranoid mode cross-checks every value")
{
    CumulantTable ct(generic_matrix_pair(), true);
    for (std::size_t n = 1; n <= 5; ++n)
        for (const auto& w : words_of_length(pair_alphabet(0), n)) CHECK_NOTHROW(ct.full(w));
}

TEST_CASE("bi-Haar cumulant spectrum up to order 8")
{
    CumulantTable ct(shift());
    for (std::size_t n = 1; n <= 8; ++n) {
        for (const auto& w : words_of_length(pair_alphabet(0), n)) {
            Scalar expected(0);
            if (alternating_in_chi_order(w)) {
                std::size_t half = n / 2;
                std::int64_t c = catalan(half - 1);
                expected = Scalar(half % 2 == 1 ? c : -c);
            }
            CHECK(ct.full(w) == expected);
        }
    }
}

TEST_CASE("bi-Haar cumulants reduce to free Haar cumulants")
{
    CumulantTable bi(shift());
    CumulantTable free_side(shift());
    const Letter v(0, Base::First, false);
    for (std::size_t n = 1; n <= 8; ++n) {
        for (const auto& w : words_of_length(pair_alphabet(0), n)) {
            Perm s = build_s_chi(w.chi());
            Word b;
            for (std::size_t k = 0; k < n; ++k) b.push_back(w[s(k)].starred() ? v.star() : v);
            CHECK(bi.full(w) == free_side.full(b));
        }
    }
}

TEST_CASE("products formula examples")
{
    auto joint = bifree_product({shift(0), quarter_zw(1)});
    CumulantTable ct(joint);
    std::vector<Word> quarter{Word::parse("Z*@1 ul*"), Word::parse("ul Z@1"), Word::parse("W*@1 ur*"), Word::parse("ur W@1")};
    CHECK(ct.kappa_of_products(quarter) == Scalar(Rational(1, 4)));
    CHECK(kappa_of_products_direct(*joint, quarter) == Scalar(Rational(1, 4)));

    auto uv = bifree_product({shift(0), shift(1)});
    CumulantTable ct2(uv);
    std::vector<Word> segs{Word::parse("ul ul@1"), Word::parse("ur*@1 ur*")};
    CHECK(ct2.kappa_of_products(segs) == Scalar(0));
    CHECK(ct2.full(Word::parse("ul@1 ur*@1")) == Scalar(1));

    CHECK_THROWS_AS(ct.kappa_of_products({Word::parse("ul ur")}), DomainError);
    CHECK_THROWS_AS(ct.kappa_of_products({Word(), Word::parse("ul")}), DomainError);
}

TEST_CASE("singleton segments give the plain cumulant")
{
    CumulantTable ct(generic_matrix_pair());
    for (std::size_t n = 1; n <= 5; ++n) {
        for (const auto& w : words_of_length(pair_alphabet(0), n)) {
            std::vector<Word> segs;
            for (std::size_t k = 0; k < n; ++k) segs.push_back(Word{w[k]});
            CHECK(ct.kappa_of_products(segs) == ct.full(w));
        }
    }
}

TEST_CASE("products formula against direct inversion, generic pair")
{
    auto model = generic_matrix_pair();
    CumulantTable ct(model);
    auto alpha = pair_alphabet(0);
    // Segments of lengths (2,1,2) and (1,3,1,2) over single-side letters.
    std::vector<Letter> left{alpha[0], alpha[1]}, right{alpha[2], alpha[3]};
    for (int mask = 0; mask < 32; ++mask) {
        std::vector<Word> segs;
        std::vector<std::size_t> lens{2, 1, 2};
        int bit = 0;
        for (std::size_t k = 0; k < lens.size(); ++k) {
            const auto& pool = ((mask >> k) & 1) ? right : left;
            Word seg;
            for (std::size_t q = 0; q < lens[k]; ++q) seg.push_back(pool[(mask >> (bit++ % 5)) & 1]);
            segs.push_back(seg);
        }
        CHECK(ct.kappa_of_products(segs) == kappa_of_products_direct(*model, segs));
    }
}
