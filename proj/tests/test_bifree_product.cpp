#include <doctest.h>

#include "bifree/bifree_product.hpp"
#include "bifree/errors.hpp"

using namespace bifree;

namespace {

OraclePtr shift(unsigned pair) { return std::make_shared<ShiftBiHaarModel>(pair); }

OraclePtr quarter_zw(unsigned pair)
{
    return std::make_shared<MatrixStateModel>(Matrix(2, {1, 0, 0, 0}), Matrix(2, {0, 0, 1, 0}), pair);
}

OraclePtr generic_matrix_pair(unsigned pair)
{
    Matrix X(2, {1, Scalar(0, 1), Rational(-1, 2), 2});
    Matrix Y(2, {0, 1, Scalar(1, -1), Rational(1, 3)});
    return std::make_shared<MatrixStateModel>(X, Y, pair);
}

std::vector<Letter> union_alphabet(const std::vector<unsigned>& ids)
{
    std::vector<Letter> out;
    for (unsigned id : ids)
        for (Letter l : pair_alphabet(id)) out.push_back(l);
    return out;
}

// phi(w) = sum over BNC(chi) of products of within-pair cumulants, each from
// Moebius inversion of that pair's own moments.
Scalar brute_joint_moment(const std::map<unsigned, OraclePtr>& pairs, const Word& w)
{
    std::map<unsigned, std::unique_ptr<CumulantTable>> tables;
    for (const auto& [id, p] : pairs) tables.emplace(id, std::make_unique<CumulantTable>(p));
    Scalar total;
    for (const auto& tau : enumerate_bnc(w.chi())) {
        Scalar term(1);
        for (Mask b : tau.blocks()) {
            Word sub = w.subword(b);
            bool one_pair = true;
            for (std::size_t k = 1; k < sub.size(); ++k) one_pair = one_pair && sub[k].pair() == sub[0].pair();
            if (!one_pair) {
                term = Scalar(0);
                break;
            }
            term *= tables.at(sub[0].pair())->kappa_direct(sub, SetPartition::one(sub.size()));
        }
        total += term;
    }
    return total;
}

} // namespace

TEST_CASE("single pair product is the pair")
{
    auto m = generic_matrix_pair(0);
    auto j = bifree_product({m});
    for (std::size_t n = 1; n <= 4; ++n)
        for (const auto& w : words_of_length(pair_alphabet(0), n)) CHECK(j->moment(w) == m->moment(w));
}

TEST_CASE("two bi-Haar pairs")
{
    auto j = bifree_product({shift(0), shift(1)});
    CHECK(j->moment(Word::parse("ul ul@1")) == Scalar(0));
    CHECK(j->moment(Word::parse("ul ul@1 ul*@1 ul*")) == Scalar(1));
    CHECK(j->moment(Word::parse("ul ul@1 ul* ul*@1")) == Scalar(0));
    CHECK_THROWS_AS(bifree_product({shift(0), shift(0)}), DomainError);
    CHECK_THROWS_AS(j->moment(Word::parse("ul@2")), DomainError);
}

TEST_CASE("joint moments agree with the brute-force moment-cumulant sum")
{
    std::map<unsigned, OraclePtr> pairs{{0, shift(0)}, {1, generic_matrix_pair(1)}};
    auto j = bifree_product({pairs.at(0), pairs.at(1)});
    for (std::size_t n = 1; n <= 5; ++n)
        for (const auto& w : words_of_length(union_alphabet({0, 1}), n)) CHECK(j->moment(w) == brute_joint_moment(pairs, w));
}

TEST_CASE("restriction reproduces each factor")
{
    auto a = generic_matrix_pair(0);
    auto b = quarter_zw(1);
    auto j = bifree_product({a, b});
    for (std::size_t n = 1; n <= 5; ++n) {
        for (const auto& w : words_of_length(pair_alphabet(0), n)) CHECK(j->moment(w) == a->moment(w));
        for (const auto& w : words_of_length(pair_alphabet(1), n)) CHECK(j->moment(w) == b->moment(w));
    }
}

TEST_CASE("quarter pair moments inside the free product")
{
    auto j = bifree_product({shift(0), quarter_zw(1)});
    CHECK(j->moment(Word::parse("Z*@1 ul* ul Z@1 W*@1 ur* ur W@1")) == Scalar(Rational(1, 2)));
    Scalar t1 = j->moment(Word::parse("Z*@1 ul* ul Z@1")) * j->moment(Word::parse("W*@1 ur* ur W@1"));
    CHECK(t1 == Scalar(Rational(1, 4)));
    CHECK(j->moment(Word::parse("Z*@1 ul* W*@1 ur*")) == Scalar(0));
    CHECK(j->moment(Word::parse("ul Z@1 ur W@1")) == Scalar(0));
    CHECK(j->moment(Word::parse("ul Z@1")) == Scalar(0));
}

TEST_CASE("associativity for three bi-Haar pairs")
{
    auto flat = bifree_product({shift(0), shift(1), shift(2)});
    auto nested = bifree_product({shift(0), bifree_product({shift(1), shift(2)})});
    for (std::size_t n = 1; n <= 5; ++n)
        for (const auto& w : words_of_length(union_alphabet({0, 1, 2}), n)) CHECK(flat->moment(w) == nested->moment(w));
}

TEST_CASE("check_bifree")
{
    auto j = bifree_product({generic_matrix_pair(0), quarter_zw(1)});
    CHECK(check_bifree(j, {0, 1}, 4).bifree());

    std::map<Word, Scalar> entries{{Word::parse("ul ul@1"), Scalar(1)}};
    auto table = std::make_shared<TableModel>(std::vector<unsigned>{0, 1}, entries, 2, true);
    auto report = check_bifree(table, {0, 1}, 2);
    CHECK_FALSE(report.bifree());
    REQUIRE(report.findings.size() == 1);
    CHECK(report.findings[0].word == Word::parse("ul ul@1"));
    CHECK(report.findings[0].kappa == Scalar(1));
}
