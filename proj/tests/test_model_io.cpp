#include <doctest.h>

#include "bifree/corpus.hpp"
#include "bifree/cumulants.hpp"
#include "bifree/errors.hpp"
#include "bifree/model_io.hpp"

using namespace bifree;
using nlohmann::json;

TEST_CASE("model files")
{
    auto shift = load_model(std::string(MODELS_DIR) + "/shift.json");
    CHECK(shift->moment(Word::parse("ul ur*")) == Scalar(1));
    auto quarter = load_model(std::string(MODELS_DIR) + "/quarter.json");
    CHECK(quarter->moment(Word::parse("Z* Z")) == Scalar(Rational(1, 2)));
    auto generic = load_model(std::string(MODELS_DIR) + "/generic.json", 3u);
    CHECK(generic->pair_ids() == std::vector<unsigned>{3});
    for (std::size_t n = 1; n <= 4; ++n) {
        for (const auto& w : words_of_length(pair_alphabet(3), n)) {
            Word v;
            for (std::size_t k = 0; k < n; ++k) v.push_back(Letter(0, w[k].base(), w[k].starred()));
            CHECK(generic->moment(w) == generic_pair()->moment(v));
        }
    }
    auto table = load_model(std::string(MODELS_DIR) + "/table_zero_mean.json");
    CHECK(table->moment(Word::parse("X")) == Scalar(0));
    CHECK(table->moment(Word::parse("X X*")) == Scalar(1));
    CHECK(table->moment(Word()) == Scalar(1));
    CHECK_THROWS_AS(table->moment(Word::parse("X X X")), LimitError);
}

TEST_CASE("model json errors")
{
    CHECK_THROWS_AS(model_from_json(json::object()), ParseError);
    CHECK_THROWS_AS(model_from_json({{"type", "hilbert"}}), ParseError);
    CHECK_THROWS_AS(model_from_json({{"type", "matrix_state"}, {"x", {"1", "2", "3"}}, {"y", {"1"}}}), ParseError);
    CHECK_THROWS_AS(model_from_json({{"type", "matrix_state"}, {"x", {"1"}}, {"y", {"1", "0", "0", "1"}}}), ParseError);
    CHECK_THROWS_AS(model_from_json({{"type", "matrix_state"}, {"x", {"1/0"}}, {"y", {"1"}}}), std::exception);
    CHECK_THROWS_AS(model_from_json({{"type", "table"}, {"entries", json::object()}}), ParseError);
    CHECK_THROWS_AS(model_from_json({{"type", "table"}, {"degree", 2}, {"entries", {{"X q", "1"}}}}), ParseError);
    CHECK_THROWS_AS(load_model("/nonexistent/model.json"), ParseError);
}

TEST_CASE("table without default_zero rejects missing words")
{
    auto t = model_from_json({{"type", "table"}, {"degree", 2}, {"entries", {{"X", "0"}, {"X Y", "1/2"}}}});
    CHECK(t->moment(Word::parse("X Y")) == Scalar(Rational(1, 2)));
    CHECK_THROWS_AS(t->moment(Word::parse("Y")), DomainError);
}

TEST_CASE("matrix model json round trip")
{
    Matrix x(2, {1, Scalar(0, 1), Rational(-1, 2), 2});
    Matrix y(2, {0, 1, Scalar(1, -1), Rational(1, 3)});
    auto m = model_from_json(matrix_model_json(x, y));
    CHECK(m->moment(Word::parse("X Y* X")) == MatrixStateModel(x, y).moment(Word::parse("X Y* X")));
}
