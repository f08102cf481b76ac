#include "bifree/classifiers.hpp"

#include <algorithm>
#include <tuple>

#include "bifree/cumulants.hpp"
#include "bifree/errors.hpp"

namespace bifree {

namespace {

unsigned resolve_pair(const OraclePtr& p, std::optional<unsigned> pair)
{
    if (!p) throw DomainError("null model");
    if (pair) {
        if (!p->has_pair(*pair)) throw DomainError("pair " + std::to_string(*pair) + " is not part of the model");
        return *pair;
    }
    if (p->pair_ids().size() != 1) throw DomainError("model carries several pairs; choose one");
    return p->pair_ids().front();
}

void check_degree(const OraclePtr& p, std::size_t max_degree)
{
    if (max_degree > p->degree_bound()) {
        throw LimitError("check degree " + std::to_string(max_degree) + " exceeds the model's degree bound " +
                         std::to_string(p->degree_bound()));
    }
}

class Collector {
public:
    Collector(std::size_t max_degree, std::size_t cap) : cap_(cap) { report_.max_degree = max_degree; }

    void add(Word w, Scalar v, std::string kind, std::string detail = {})
    {
        ++report_.violations;
        found_.push_back({std::move(w), std::move(v), std::move(kind), std::move(detail)});
    }

    ClassReport finish()
    {
        std::sort(found_.begin(), found_.end(), [](const Witness& a, const Witness& b) {
            if (!(a.word == b.word)) return a.word < b.word;
            return std::tie(a.kind, a.detail) < std::tie(b.kind, b.detail);
        });
        if (found_.size() > cap_) found_.resize(cap_);
        report_.witnesses = std::move(found_);
        report_.verdict = report_.violations == 0;
        return std::move(report_);
    }

private:
    std::size_t cap_;
    ClassReport report_;
    std::vector<Witness> found_;
};

} // namespace

std::string reason_name(PatternReason r)
{
    switch (r) {
    case PatternReason::None: return "none";
    case PatternReason::OddLength: return "odd-length";
    case PatternReason::StarNonalternating: return "star-nonalternating";
    case PatternReason::BaseOrderViolation: return "base-order-violation";
    }
    return "none";
}

PatternVerdict is_admissible_pattern(const ChiMap& chi, const Word& w)
{
    if (chi.size() != w.size()) throw DomainError("chi and word lengths differ");
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (w[k].pair() != w[0].pair()) throw DomainError("pattern letters must come from one pair");
        if (w[k].side() != chi.sides()[k]) throw DomainError("letter " + w[k].token() + " does not sit on side " +
                                                             std::string(1, side_char(chi.sides()[k])));
    }
    if (w.size() % 2 == 1) return {false, PatternReason::OddLength};
    Perm s = build_s_chi(chi);
    for (std::size_t r = 0; r + 1 < w.size(); ++r) {
        if (w[s(r)].starred() == w[s(r + 1)].starred()) return {false, PatternReason::StarNonalternating};
    }
    for (std::size_t r = 0; r + 1 < w.size(); ++r) {
        if (w[s(r)].base() == Base::Second && w[s(r + 1)].base() == Base::First) {
            return {false, PatternReason::BaseOrderViolation};
        }
    }
    return {true, PatternReason::None};
}

ClassReport check_bi_r_diagonal(const OraclePtr& p, std::size_t max_degree, std::optional<unsigned> pair,
                                std::size_t cap)
{
    unsigned id = resolve_pair(p, pair);
    check_degree(p, max_degree);
    CumulantTable table(p);
    Collector out(max_degree, cap);
    for (std::size_t n = 1; n <= max_degree; ++n) {
        for (const auto& w : words_of_length(pair_alphabet(id), n)) {
            if (is_admissible_pattern(w.chi(), w).admissible) continue;
            Scalar k = table.full(w);
            if (!k.is_zero()) out.add(w, k, "cumulant");
        }
    }
    return out.finish();
}

ClassReport check_star_bi_even(const OraclePtr& p, std::size_t max_degree, std::optional<unsigned> pair,
                               std::size_t cap)
{
    unsigned id = resolve_pair(p, pair);
    check_degree(p, max_degree);
    CumulantTable table(p);
    Collector out(max_degree, cap);
    for (std::size_t n = 1; n <= max_degree; n += 2) {
        for (const auto& w : words_of_length(pair_alphabet(id), n)) {
            Scalar m = p->moment(w);
            if (!m.is_zero()) out.add(w, m, "moment");
            Scalar k = table.full(w);
            if (!k.is_zero()) out.add(w, k, "cumulant");
        }
    }
    return out.finish();
}

ClassReport check_bi_haar(const OraclePtr& p, std::size_t max_degree, std::optional<unsigned> pair,
                          std::size_t cap)
{
    unsigned id = resolve_pair(p, pair);
    check_degree(p, max_degree);
    const auto alpha = pair_alphabet(id);
    Collector out(max_degree, cap);

    // Unitarity: inserting u u* or u* u anywhere leaves the moment unchanged.
    for (std::size_t n = 0; n + 2 <= max_degree; ++n) {
        for (const auto& w : words_of_length(alpha, n)) {
            Scalar base = p->moment(w);
            for (std::size_t at = 0; at <= n; ++at) {
                for (Letter a : alpha) {
                    Word v;
                    for (std::size_t k = 0; k < at; ++k) v.push_back(w[k]);
                    v.push_back(a);
                    v.push_back(a.star());
                    for (std::size_t k = at; k < n; ++k) v.push_back(w[k]);
                    Scalar m = p->moment(v);
                    if (!(m == base)) out.add(v, m - base, "unitarity", "position " + std::to_string(at + 1));
                }
            }
        }
    }

    // The two faces commute: swapping adjacent opposite-side letters.
    for (std::size_t n = 2; n <= max_degree; ++n) {
        for (const auto& w : words_of_length(alpha, n)) {
            for (std::size_t k = 0; k + 1 < n; ++k) {
                if (w[k].side() != Side::Left || w[k + 1].side() != Side::Right) continue;
                Word v;
                for (std::size_t q = 0; q < n; ++q) v.push_back(w[q == k ? k + 1 : q == k + 1 ? k : q]);
                Scalar a = p->moment(w), b = p->moment(v);
                if (!(a == b)) out.add(w, a - b, "commutation", "swap " + std::to_string(k + 1));
            }
        }
    }

    // phi(u_l^a u_r^b) = [a + b = 0]; negative exponents are starred powers.
    const long d = static_cast<long>(max_degree);
    for (long a = -d; a <= d; ++a) {
        for (long b = -(d - std::labs(a)); b <= d - std::labs(a); ++b) {
            Word w;
            for (long q = 0; q < std::labs(a); ++q) w.push_back(Letter(id, Base::First, a < 0));
            for (long q = 0; q < std::labs(b); ++q) w.push_back(Letter(id, Base::Second, b < 0));
            Scalar m = p->moment(w);
            if (!(m == Scalar(a + b == 0 ? 1 : 0))) out.add(w, m, "haar-moment");
        }
    }
    return out.finish();
}

ClassReport check_r_cyclic_2x2(const OraclePtr& p, std::size_t max_degree, std::optional<unsigned> pair,
                               std::size_t cap)
{
    unsigned id = resolve_pair(p, pair);
    check_degree(p, max_degree);
    CumulantTable table(p);
    Collector out(max_degree, cap);

    // entry(face, i, j) of Z (face First) or W (face Second); nullopt = 0.
    auto entry = [id](Base face, unsigned i, unsigned j) -> std::optional<Letter> {
        if (i == 0 && j == 1) return Letter(id, face, false);
        if (i == 1 && j == 0) return Letter(id, face, true);
        return std::nullopt;
    };

    for (std::size_t n = 1; n <= max_degree; ++n) {
        for (const auto& chi : all_chi_maps(n)) {
            Perm s = build_s_chi(chi);
            for (std::size_t ij = 0; ij < (std::size_t{1} << (2 * n)); ++ij) {
                std::vector<unsigned> i(n), j(n);
                for (std::size_t k = 0; k < n; ++k) {
                    i[k] = (ij >> (2 * k)) & 1;
                    j[k] = (ij >> (2 * k + 1)) & 1;
                }
                bool cycle = true;
                for (std::size_t r = 0; r < n && cycle; ++r) cycle = j[s(r)] == i[s((r + 1) % n)];
                if (cycle) continue;
                Word w;
                bool zero = false;
                for (std::size_t k = 0; k < n && !zero; ++k) {
                    Base face = chi.sides()[k] == Side::Left ? Base::First : Base::Second;
                    auto l = entry(face, i[k], j[k]);
                    if (!l) zero = true;
                    else w.push_back(*l);
                }
                if (zero) continue;
                Scalar k = table.full(w);
                if (k.is_zero()) continue;
                std::string detail = "i=";
                for (auto v : i) detail += std::to_string(v + 1);
                detail += " j=";
                for (auto v : j) detail += std::to_string(v + 1);
                out.add(w, k, "entry-cumulant", detail);
            }
        }
    }
    return out.finish();
}

ClassReport check_face_r_diagonal(const OraclePtr& p, std::size_t max_degree, Base face,
                                  std::optional<unsigned> pair, std::size_t cap)
{
    unsigned id = resolve_pair(p, pair);
    check_degree(p, max_degree);
    CumulantTable table(p);
    Collector out(max_degree, cap);
    std::vector<Letter> alpha{Letter(id, face, false), Letter(id, face, true)};
    for (std::size_t n = 1; n <= max_degree; ++n) {
        for (const auto& w : words_of_length(alpha, n)) {
            bool alternating = n % 2 == 0;
            for (std::size_t k = 0; k + 1 < n && alternating; ++k) alternating = w[k].starred() != w[k + 1].starred();
            if (alternating) continue;
            Scalar k = table.full(w);
            if (!k.is_zero()) out.add(w, k, "cumulant");
        }
    }
    return out.finish();
}

nlohmann::json to_json(const ClassReport& r)
{
    nlohmann::json ws = nlohmann::json::array();
    for (const auto& w : r.witnesses) {
        nlohmann::json j{{"word", w.word.str()}, {"chi", w.word.chi().str()}, {"kappa", w.value.str()}};
        if (w.kind != "cumulant") j["kind"] = w.kind;
        if (!w.detail.empty()) j["detail"] = w.detail;
        ws.push_back(std::move(j));
    }
    return {{"verdict", r.verdict}, {"max_degree", r.max_degree}, {"violations", r.violations}, {"witnesses", ws}};
}

} // namespace bifree
