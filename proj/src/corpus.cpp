#include "bifree/corpus.hpp"

#include <random>

#include "bifree/bifree_product.hpp"

namespace bifree {

namespace {

Polynomial letter(unsigned id, Base b, bool star = false) { return Polynomial::letter(Letter(id, b, star)); }

} // namespace

OraclePtr shift_pair(unsigned id) { return std::make_shared<const ShiftBiHaarModel>(id); }

OraclePtr quarter_pair(unsigned id)
{
    return std::make_shared<const MatrixStateModel>(Matrix(2, {1, 0, 0, 0}), Matrix(2, {0, 0, 1, 0}), id);
}

OraclePtr offdiag_pair(unsigned id)
{
    return std::make_shared<const MatrixStateModel>(Matrix(2, {0, 1, Rational(1, 2), 0}), Matrix(2, {0, 1, 1, 0}), id);
}

OraclePtr generic_pair(unsigned id)
{
    Matrix x(2, {1, Scalar(0, 1), Rational(-1, 2), 2});
    Matrix y(2, {0, 1, Scalar(1, -1), Rational(1, 3)});
    return std::make_shared<const MatrixStateModel>(x, y, id);
}

OraclePtr random_bi_even_pair(std::uint64_t seed, unsigned id)
{
    std::mt19937_64 rng(seed);
    auto entry = [&rng]() {
        auto num = static_cast<std::int64_t>(rng() % 5) - 2;
        auto den = static_cast<std::int64_t>(rng() % 2) + 1;
        return Scalar(Rational(num, den));
    };
    auto off_diagonal = [&entry]() {
        Matrix m(4, std::vector<Scalar>(16));
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) m.at(i, 2 + j) = entry();
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) m.at(2 + i, j) = entry();
        return m;
    };
    Matrix z = off_diagonal();
    Matrix w = off_diagonal();
    return std::make_shared<const MatrixStateModel>(z, w, id);
}

OraclePtr haar_rotated(const OraclePtr& xy, unsigned id, OraclePtr haar)
{
    if (!haar) haar = shift_pair(0);
    auto joint = bifree_product({relabel(haar, 0), relabel(xy, 1)});
    DerivedPair p{id, letter(0, Base::First) * letter(1, Base::First), letter(1, Base::Second) * letter(0, Base::Second)};
    return std::make_shared<const PolynomialModel>(joint, std::vector<DerivedPair>{p});
}

OraclePtr composite_haar_pair(unsigned id) { return haar_rotated(shift_pair(0), id); }

} // namespace bifree
