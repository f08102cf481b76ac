#include "bifree/distributions.hpp"

#include <algorithm>
#include <bit>
#include <mutex>
#include <sstream>

#include "bifree/errors.hpp"

namespace bifree {

Letter::Letter(unsigned pair, Base base, bool starred)
{
    if (pair > kMaxPairId) throw DomainError("pair id " + std::to_string(pair) + " exceeds " + std::to_string(kMaxPairId));
    code_ = static_cast<std::uint8_t>(pair << 2 | static_cast<unsigned>(base) << 1 | (starred ? 1u : 0u));
}

std::string Letter::token() const
{
    std::string t = base() == Base::First ? "X" : "Y";
    if (starred()) t += "*";
    if (pair() != 0) t += "@" + std::to_string(pair());
    return t;
}

Letter Letter::parse(std::string_view token)
{
    std::string t(token);
    unsigned pair = 0;
    if (auto at = t.find('@'); at != std::string::npos) {
        std::string idx = t.substr(at + 1);
        if (idx.empty() || idx.size() > 2 || !std::all_of(idx.begin(), idx.end(), [](char c) { return c >= '0' && c <= '9'; })) {
            throw ParseError("bad pair index in token '" + t + "'");
        }
        pair = static_cast<unsigned>(std::stoul(idx));
        if (pair > kMaxPairId) throw ParseError("pair index too large in token '" + t + "'");
        t = t.substr(0, at);
    }
    bool starred = false;
    if (!t.empty() && t.back() == '*') {
        starred = true;
        t.pop_back();
    }
    Base base;
    if (t == "X" || t == "Z" || t == "ul")
        base = Base::First;
    else if (t == "Y" || t == "W" || t == "ur")
        base = Base::Second;
    else
        throw ParseError("unknown word token '" + std::string(token) + "'");
    return Letter(pair, base, starred);
}

Word::Word(std::initializer_list<Letter> letters)
{
    for (Letter l : letters) push_back(l);
}

Word::Word(const std::vector<Letter>& letters)
{
    for (Letter l : letters) push_back(l);
}

Word Word::parse(std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::string tok;
    Word w;
    while (in >> tok) {
        if (tok == "1" && w.empty()) continue;
        w.push_back(Letter::parse(tok));
    }
    return w;
}

Word Word::from_key(std::string key)
{
    Word w;
    w.codes_ = std::move(key);
    return w;
}

ChiMap Word::chi() const
{
    if (empty()) throw DomainError("the empty word has no chi map");
    std::vector<Side> sides;
    sides.reserve(size());
    for (std::size_t k = 0; k < size(); ++k) sides.push_back((*this)[k].side());
    return ChiMap(std::move(sides));
}

Word Word::star() const
{
    Word w;
    for (std::size_t k = size(); k-- > 0;) w.push_back((*this)[k].star());
    return w;
}

Word Word::subword(Mask positions) const
{
    Word w;
    for (Mask r = positions; r; r &= r - 1) {
        auto k = static_cast<std::size_t>(std::countr_zero(r));
        if (k >= size()) throw DomainError("subword position out of range");
        w.codes_.push_back(codes_[k]);
    }
    return w;
}

Word Word::subword(const std::vector<std::size_t>& positions) const
{
    std::vector<std::size_t> sorted = positions;
    std::sort(sorted.begin(), sorted.end());
    Word w;
    for (auto k : sorted) {
        if (k >= size()) throw DomainError("subword position out of range");
        w.codes_.push_back(codes_[k]);
    }
    return w;
}

std::string Word::str() const
{
    if (empty()) return "1";
    std::string out;
    for (std::size_t k = 0; k < size(); ++k) {
        if (k) out += " ";
        out += (*this)[k].token();
    }
    return out;
}

std::vector<Letter> pair_alphabet(unsigned pair)
{
    return {Letter(pair, Base::First, false), Letter(pair, Base::First, true), Letter(pair, Base::Second, false),
            Letter(pair, Base::Second, true)};
}

std::vector<Word> words_of_length(const std::vector<Letter>& alphabet, std::size_t length)
{
    std::vector<Word> out;
    std::vector<std::size_t> idx(length, 0);
    if (alphabet.empty()) return out;
    while (true) {
        Word w;
        for (auto i : idx) w.push_back(alphabet[i]);
        out.push_back(std::move(w));
        std::size_t k = length;
        while (k > 0) {
            --k;
            if (++idx[k] < alphabet.size()) break;
            idx[k] = 0;
            if (k == 0) return out;
        }
        if (length == 0) return out;
    }
}

MomentOracle::MomentOracle(std::vector<unsigned> pair_ids, std::size_t degree_bound)
    : pair_ids_(std::move(pair_ids)), degree_bound_(degree_bound)
{
    std::sort(pair_ids_.begin(), pair_ids_.end());
    if (std::adjacent_find(pair_ids_.begin(), pair_ids_.end()) != pair_ids_.end()) {
        throw DomainError("duplicate pair id");
    }
}

bool MomentOracle::has_pair(unsigned id) const
{
    return std::binary_search(pair_ids_.begin(), pair_ids_.end(), id);
}

Scalar MomentOracle::moment(const Word& w) const
{
    if (w.empty()) return Scalar(1);
    if (w.size() > degree_bound_) {
        throw LimitError("word of length " + std::to_string(w.size()) + " exceeds the degree bound " +
                         std::to_string(degree_bound_) + " of " + description());
    }
    {
        std::shared_lock lock(mutex_);
        if (auto it = memo_.find(w.key()); it != memo_.end()) return it->second;
    }
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (!has_pair(w[k].pair())) throw DomainError("letter " + w[k].token() + " is foreign to " + description());
    }
    Scalar value = compute(w);
    std::unique_lock lock(mutex_);
    memo_.emplace(w.key(), value);
    return value;
}

Scalar moment_restricted(const MomentOracle& m, const Word& w, const std::vector<std::size_t>& V)
{
    if (V.empty()) throw DomainError("restriction to an empty set");
    return m.moment(w.subword(V));
}

Scalar phi_pi(const MomentOracle& m, const Word& w, const SetPartition& p)
{
    if (p.size() != w.size()) throw DomainError("word and partition sizes differ");
    Scalar value(1);
    for (Mask b : p.blocks()) {
        value *= m.moment(w.subword(b));
        if (value.is_zero()) break;
    }
    return value;
}

ShiftBiHaarModel::ShiftBiHaarModel(unsigned pair, std::size_t degree_bound) : MomentOracle({pair}, degree_bound) {}

Scalar ShiftBiHaarModel::compute(const Word& w) const
{
    long total = 0;
    for (std::size_t k = 0; k < w.size(); ++k) total += w[k].starred() ? -1 : 1;
    return Scalar(total == 0 ? 1 : 0);
}

Matrix::Matrix(std::size_t d, std::vector<Scalar> entries) : d_(d), a_(std::move(entries))
{
    if (a_.size() != d * d) throw DomainError("matrix entries do not form a square");
}

Matrix Matrix::identity(std::size_t d)
{
    Matrix m(d);
    for (std::size_t i = 0; i < d; ++i) m.at(i, i) = Scalar(1);
    return m;
}

Matrix Matrix::adjoint() const
{
    Matrix m(d_);
    for (std::size_t i = 0; i < d_; ++i)
        for (std::size_t j = 0; j < d_; ++j) m.at(j, i) = at(i, j).conj();
    return m;
}

Matrix Matrix::operator*(const Matrix& o) const
{
    if (o.d_ != d_) throw DomainError("matrix dimension mismatch");
    Matrix m(d_);
    for (std::size_t i = 0; i < d_; ++i)
        for (std::size_t k = 0; k < d_; ++k) {
            const Scalar& a = at(i, k);
            if (a.is_zero()) continue;
            for (std::size_t j = 0; j < d_; ++j) {
                if (!o.at(k, j).is_zero()) m.at(i, j) += a * o.at(k, j);
            }
        }
    return m;
}

Scalar Matrix::trace() const
{
    Scalar t;
    for (std::size_t i = 0; i < d_; ++i) t += at(i, i);
    return t;
}

MatrixStateModel::MatrixStateModel(Matrix x, Matrix y, unsigned pair, std::size_t degree_bound)
    : MomentOracle({pair}, degree_bound), x_(std::move(x)), y_(std::move(y))
{
    if (x_.dim() == 0 || x_.dim() != y_.dim()) throw DomainError("matrix pair must be square of equal size");
    xs_ = x_.adjoint();
    ys_ = y_.adjoint();
}

Scalar MatrixStateModel::compute(const Word& w) const
{
    Matrix acc = Matrix::identity(x_.dim());
    for (std::size_t k = 0; k < w.size(); ++k) {
        Letter l = w[k];
        const Matrix& m = l.base() == Base::First ? (l.starred() ? xs_ : x_) : (l.starred() ? ys_ : y_);
        acc = acc * m;
    }
    return acc.trace() / Scalar(static_cast<std::int64_t>(x_.dim()));
}

TableModel::TableModel(std::vector<unsigned> pair_ids, std::map<Word, Scalar> entries, std::size_t degree_bound,
                       bool default_zero)
    : MomentOracle(std::move(pair_ids), degree_bound), entries_(std::move(entries)), default_zero_(default_zero)
{
    if (auto it = entries_.find(Word()); it != entries_.end() && !(it->second == Scalar(1))) {
        throw DomainError("a table model must assign 1 to the empty word");
    }
    for (const auto& [w, v] : entries_) {
        if (w.size() > degree_bound) throw DomainError("table entry '" + w.str() + "' exceeds the degree bound");
        for (std::size_t k = 0; k < w.size(); ++k) {
            if (!has_pair(w[k].pair())) throw DomainError("table entry '" + w.str() + "' uses a foreign letter");
        }
    }
}

Scalar TableModel::compute(const Word& w) const
{
    if (auto it = entries_.find(w); it != entries_.end()) return it->second;
    if (default_zero_) return Scalar(0);
    throw DomainError("table has no entry for '" + w.str() + "'");
}

Polynomial::Polynomial(Scalar constant)
{
    add(Word(), constant);
}

Polynomial Polynomial::letter(Letter l)
{
    return word(Word{l});
}

Polynomial Polynomial::word(const Word& w, Scalar coeff)
{
    Polynomial p;
    p.add(w, coeff);
    return p;
}

void Polynomial::add(const Word& w, const Scalar& c)
{
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

std::size_t Polynomial::degree() const
{
    std::size_t d = 0;
    for (const auto& [w, c] : terms_) d = std::max(d, w.size());
    return d;
}

Polynomial& Polynomial::operator+=(const Polynomial& o)
{
    for (const auto& [w, c] : o.terms_) add(w, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o)
{
    for (const auto& [w, c] : o.terms_) add(w, -c);
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b)
{
    Polynomial p;
    for (const auto& [wa, ca] : a.terms_)
        for (const auto& [wb, cb] : b.terms_) p.add(wa + wb, ca * cb);
    return p;
}

Polynomial Polynomial::star() const
{
    Polynomial p;
    for (const auto& [w, c] : terms_) p.add(w.star(), c.conj());
    return p;
}

Scalar Polynomial::evaluate(const MomentOracle& m) const
{
    Scalar total;
    for (const auto& [w, c] : terms_) total += c * m.moment(w);
    return total;
}

std::string Polynomial::str() const
{
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [w, c] : terms_) {
        if (!out.empty()) out += " + ";
        out += "(" + c.str() + ")";
        if (!w.empty()) out += "*" + w.str();
    }
    return out;
}

PolyMatrix::PolyMatrix(Polynomial p) : d_(1), a_{std::move(p)} {}

PolyMatrix PolyMatrix::adjoint() const
{
    PolyMatrix m(d_);
    for (std::size_t i = 0; i < d_; ++i)
        for (std::size_t j = 0; j < d_; ++j) m.at(j, i) = at(i, j).star();
    return m;
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& o) const
{
    if (o.d_ != d_) throw DomainError("matrix dimension mismatch");
    PolyMatrix m(d_);
    for (std::size_t i = 0; i < d_; ++i)
        for (std::size_t k = 0; k < d_; ++k) {
            if (at(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < d_; ++j) {
                if (!o.at(k, j).is_zero()) m.at(i, j) += at(i, k) * o.at(k, j);
            }
        }
    return m;
}

std::size_t PolyMatrix::degree() const
{
    std::size_t d = 0;
    for (const auto& p : a_) d = std::max(d, p.degree());
    return d;
}

namespace {

std::vector<unsigned> derived_ids(const std::vector<DerivedPair>& pairs)
{
    std::vector<unsigned> ids;
    for (const auto& p : pairs) ids.push_back(p.id);
    return ids;
}

std::size_t derived_bound(const OraclePtr& base, const std::vector<DerivedPair>& pairs, std::size_t requested)
{
    if (requested != 0) return requested;
    std::size_t deg = 1;
    for (const auto& p : pairs) deg = std::max({deg, p.x.degree(), p.y.degree()});
    return std::max<std::size_t>(1, base->degree_bound() / deg);
}

} // namespace

PolynomialModel::PolynomialModel(OraclePtr base, std::vector<DerivedPair> pairs, std::size_t degree_bound)
    : MomentOracle(derived_ids(pairs), derived_bound(base, pairs, degree_bound)), base_(std::move(base))
{
    if (pairs.empty()) throw DomainError("a polynomial model needs at least one pair");
    dim_ = pairs.front().x.dim();
    for (const auto& p : pairs) {
        if (p.x.dim() != dim_ || p.y.dim() != dim_ || dim_ == 0) throw DomainError("derived pairs must share one matrix size");
        images_[Letter(p.id, Base::First, false).code()] = p.x;
        images_[Letter(p.id, Base::First, true).code()] = p.x.adjoint();
        images_[Letter(p.id, Base::Second, false).code()] = p.y;
        images_[Letter(p.id, Base::Second, true).code()] = p.y.adjoint();
    }
}

Scalar PolynomialModel::compute(const Word& w) const
{
    PolyMatrix acc = images_.at(w[0].code());
    for (std::size_t k = 1; k < w.size(); ++k) acc = acc * images_.at(w[k].code());
    Scalar total;
    for (std::size_t i = 0; i < dim_; ++i) total += acc.at(i, i).evaluate(*base_);
    return total / Scalar(static_cast<std::int64_t>(dim_));
}

std::shared_ptr<const PolynomialModel> derived_pair(OraclePtr base, const Polynomial& x, const Polynomial& y,
                                                    std::size_t degree_bound)
{
    return std::make_shared<const PolynomialModel>(std::move(base), std::vector<DerivedPair>{{0, x, y}}, degree_bound);
}

namespace {

std::vector<unsigned> single_pair_of(const OraclePtr& p)
{
    if (!p) throw DomainError("null model");
    if (p->pair_ids().size() != 1) throw DomainError("only single-pair models can be relabeled");
    return p->pair_ids();
}

} // namespace

RelabeledModel::RelabeledModel(OraclePtr inner, unsigned id)
    : MomentOracle({id}, inner ? inner->degree_bound() : 0), inner_(std::move(inner)), from_(single_pair_of(inner_)[0])
{
}

Scalar RelabeledModel::compute(const Word& w) const
{
    Word v;
    for (std::size_t k = 0; k < w.size(); ++k) v.push_back(Letter(from_, w[k].base(), w[k].starred()));
    return inner_->moment(v);
}

OraclePtr relabel(OraclePtr p, unsigned id)
{
    if (single_pair_of(p)[0] == id) return p;
    return std::make_shared<const RelabeledModel>(std::move(p), id);
}

} // namespace bifree
