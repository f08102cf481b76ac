#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "bifree/chi_order.hpp"
#include "bifree/partitions.hpp"
#include "bifree/scalar.hpp"

namespace bifree {

// X is the first element of a pair and acts on the left, Y the second and
// acts on the right.
enum class Base : std::uint8_t { First = 0, Second = 1 };

inline constexpr unsigned kMaxPairId = 63;

// Packed as pair << 2 | base << 1 | star, so within one pair the codes sort
// as X < X* < Y < Y*.
class Letter {
public:
    Letter() = default;
    Letter(unsigned pair, Base base, bool starred);
    static Letter from_code(std::uint8_t code)
    {
        Letter l;
        l.code_ = code;
        return l;
    }

    std::uint8_t code() const { return code_; }
    unsigned pair() const { return code_ >> 2; }
    Base base() const { return static_cast<Base>((code_ >> 1) & 1); }
    bool starred() const { return code_ & 1; }
    Side side() const { return base() == Base::First ? Side::Left : Side::Right; }
    Letter star() const { return from_code(static_cast<std::uint8_t>(code_ ^ 1)); }

    // "X", "Y*", "X@2".
    std::string token() const;
    // Accepts X|Z|ul for the first element, Y|W|ur for the second, then an
    // optional '*', then an optional "@k" pair index.
    static Letter parse(std::string_view token);

    friend bool operator==(Letter a, Letter b) { return a.code_ == b.code_; }
    friend bool operator<(Letter a, Letter b) { return a.code_ < b.code_; }

private:
    std::uint8_t code_ = 0;
};

class Word {
public:
    Word() = default;
    Word(std::initializer_list<Letter> letters);
    explicit Word(const std::vector<Letter>& letters);

    static Word parse(std::string_view text);
    static Word from_key(std::string key);

    std::size_t size() const { return codes_.size(); }
    bool empty() const { return codes_.empty(); }
    Letter operator[](std::size_t k) const { return Letter::from_code(static_cast<std::uint8_t>(codes_[k])); }
    void push_back(Letter l) { codes_.push_back(static_cast<char>(l.code())); }
    Word& operator+=(const Word& other)
    {
        codes_ += other.codes_;
        return *this;
    }
    friend Word operator+(Word a, const Word& b) { return a += b; }

    // chi(word): the letter sides. Throws DomainError on the empty word.
    ChiMap chi() const;
    // (a1 ... an)* = an* ... a1*
    Word star() const;
    // Letters at the positions set in `positions`, in increasing order.
    Word subword(Mask positions) const;
    Word subword(const std::vector<std::size_t>& positions) const;

    const std::string& key() const { return codes_; }
    // Space separated tokens; "1" for the empty word.
    std::string str() const;

    friend bool operator==(const Word& a, const Word& b) { return a.codes_ == b.codes_; }
    // Shorter words first, then lexicographic by letter code.
    friend bool operator<(const Word& a, const Word& b)
    {
        if (a.size() != b.size()) return a.size() < b.size();
        return a.codes_ < b.codes_;
    }

private:
    std::string codes_;
};

struct WordHash {
    std::size_t operator()(const Word& w) const { return std::hash<std::string>{}(w.key()); }
};

// The four letters X, X*, Y, Y* of one pair.
std::vector<Letter> pair_alphabet(unsigned pair);

// All words of exactly `length` letters over `alphabet`, in lexicographic
// order of the alphabet as given.
std::vector<Word> words_of_length(const std::vector<Letter>& alphabet, std::size_t length);

// A linear functional on words: the joint *-moments of one or more pairs.
// Values are memoised by word; the cache is safe for concurrent readers.
class MomentOracle {
public:
    MomentOracle(std::vector<unsigned> pair_ids, std::size_t degree_bound);
    virtual ~MomentOracle() = default;
    MomentOracle(const MomentOracle&) = delete;
    MomentOracle& operator=(const MomentOracle&) = delete;

    // Throws LimitError past the degree bound and DomainError for letters of
    // pairs this oracle does not know.
    Scalar moment(const Word& w) const;

    const std::vector<unsigned>& pair_ids() const { return pair_ids_; }
    bool has_pair(unsigned id) const;
    std::size_t degree_bound() const { return degree_bound_; }
    virtual std::string description() const = 0;

protected:
    virtual Scalar compute(const Word& w) const = 0;

private:
    std::vector<unsigned> pair_ids_;
    std::size_t degree_bound_;
    mutable std::shared_mutex mutex_;
    mutable std::unordered_map<std::string, Scalar> memo_;
};

using OraclePtr = std::shared_ptr<const MomentOracle>;

// phi(w restricted to the positions in V); V given as 0-based positions.
Scalar moment_restricted(const MomentOracle& m, const Word& w, const std::vector<std::size_t>& V);
// Product over blocks of p of the restricted moments.
Scalar phi_pi(const MomentOracle& m, const Word& w, const SetPartition& p);

// Bilateral shift pair: u_l and u_r commute, and a word reduces to
// u_l^a u_r^b with phi = [a + b == 0].
class ShiftBiHaarModel final : public MomentOracle {
public:
    explicit ShiftBiHaarModel(unsigned pair = 0, std::size_t degree_bound = 64);
    std::string description() const override { return "shift_bihaar"; }

protected:
    Scalar compute(const Word& w) const override;
};

// Square matrix with Scalar entries, row-major.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t d) : d_(d), a_(d * d) {}
    Matrix(std::size_t d, std::vector<Scalar> entries);
    static Matrix identity(std::size_t d);

    std::size_t dim() const { return d_; }
    Scalar& at(std::size_t i, std::size_t j) { return a_[i * d_ + j]; }
    const Scalar& at(std::size_t i, std::size_t j) const { return a_[i * d_ + j]; }
    Matrix adjoint() const;
    Matrix operator*(const Matrix& o) const;
    Scalar trace() const;

private:
    std::size_t d_ = 0;
    std::vector<Scalar> a_;
};

// A pair of d x d matrices under the normalised trace.
class MatrixStateModel final : public MomentOracle {
public:
    MatrixStateModel(Matrix x, Matrix y, unsigned pair = 0, std::size_t degree_bound = 64);
    std::string description() const override { return "matrix_state"; }
    const Matrix& x() const { return x_; }
    const Matrix& y() const { return y_; }

protected:
    Scalar compute(const Word& w) const override;

private:
    Matrix x_, y_, xs_, ys_;
};

// Explicit finite table of moments.
class TableModel final : public MomentOracle {
public:
    TableModel(std::vector<unsigned> pair_ids, std::map<Word, Scalar> entries, std::size_t degree_bound,
               bool default_zero);
    std::string description() const override { return "table"; }

protected:
    Scalar compute(const Word& w) const override;

private:
    std::map<Word, Scalar> entries_;
    bool default_zero_;
};

// Finite linear combination of words.
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(Scalar constant); // NOLINT(google-explicit-constructor)
    static Polynomial letter(Letter l);
    static Polynomial word(const Word& w, Scalar coeff = Scalar(1));

    const std::map<Word, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t degree() const;

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    Polynomial star() const;

    Scalar evaluate(const MomentOracle& m) const;
    std::string str() const;

private:
    void add(const Word& w, const Scalar& c);
    std::map<Word, Scalar> terms_;
};

// Square matrix of polynomials; the state is the normalised trace composed
// with the base functional.
class PolyMatrix {
public:
    PolyMatrix() = default;
    explicit PolyMatrix(std::size_t d) : d_(d), a_(d * d) {}
    PolyMatrix(Polynomial p); // NOLINT(google-explicit-constructor)

    std::size_t dim() const { return d_; }
    Polynomial& at(std::size_t i, std::size_t j) { return a_[i * d_ + j]; }
    const Polynomial& at(std::size_t i, std::size_t j) const { return a_[i * d_ + j]; }
    PolyMatrix adjoint() const;
    PolyMatrix operator*(const PolyMatrix& o) const;
    std::size_t degree() const;

private:
    std::size_t d_ = 0;
    std::vector<Polynomial> a_;
};

struct DerivedPair {
    unsigned id = 0;
    PolyMatrix x;
    PolyMatrix y;
};

// Pairs whose elements are (matrices of) polynomials in the letters of a base
// oracle, e.g. (u_l Z, W u_r) inside a bi-free product, or [[0,X1],[X2,0]]
// over M_d(A) with the state tr (x) phi.
class PolynomialModel final : public MomentOracle {
public:
    PolynomialModel(OraclePtr base, std::vector<DerivedPair> pairs, std::size_t degree_bound = 0);
    std::string description() const override { return "polynomial"; }
    const OraclePtr& base() const { return base_; }

protected:
    Scalar compute(const Word& w) const override;

private:
    OraclePtr base_;
    std::map<std::uint8_t, PolyMatrix> images_;
    std::size_t dim_ = 1;
};

// Convenience: a single derived pair with id 0 built from polynomials.
std::shared_ptr<const PolynomialModel> derived_pair(OraclePtr base, const Polynomial& x, const Polynomial& y,
                                                    std::size_t degree_bound = 0);

// The same single-pair distribution with its letters renamed to pair `id`.
class RelabeledModel final : public MomentOracle {
public:
    RelabeledModel(OraclePtr inner, unsigned id);
    std::string description() const override { return inner_->description(); }
    const OraclePtr& inner() const { return inner_; }

protected:
    Scalar compute(const Word& w) const override;

private:
    OraclePtr inner_;
    unsigned from_;
};

// Returns `p` itself when it already carries pair `id`.
OraclePtr relabel(OraclePtr p, unsigned id);

} // namespace bifree
