#include "bifree/bifree_product.hpp"

#include <algorithm>
#include <limits>

#include "bifree/errors.hpp"

namespace bifree {

namespace {

std::vector<unsigned> collect_ids(const std::vector<OraclePtr>& pairs)
{
    if (pairs.empty()) throw DomainError("a bi-free product needs at least one pair");
    std::vector<unsigned> ids;
    for (const auto& p : pairs) {
        if (!p) throw DomainError("null pair distribution");
        for (unsigned id : p->pair_ids()) {
            if (std::find(ids.begin(), ids.end(), id) != ids.end()) {
                throw DomainError("duplicate pair id " + std::to_string(id) + " in bi-free product");
            }
            ids.push_back(id);
        }
    }
    return ids;
}

std::size_t common_bound(const std::vector<OraclePtr>& pairs, std::size_t requested)
{
    if (requested != 0) return requested;
    std::size_t bound = std::numeric_limits<std::size_t>::max();
    for (const auto& p : pairs) bound = std::min(bound, p->degree_bound());
    return bound;
}

} // namespace

JointDistribution::JointDistribution(std::vector<OraclePtr> pairs, std::size_t degree_bound)
    : MomentOracle(collect_ids(pairs), common_bound(pairs, degree_bound))
{
    for (auto& p : pairs) {
        for (unsigned id : p->pair_ids()) factor_of_.emplace(id, factors_.size());
        tables_.push_back(std::make_unique<CumulantTable>(p));
        factors_.push_back(std::move(p));
    }
}

Scalar JointDistribution::compute(const Word& w) const
{
    std::size_t first = factor_of_.at(w[0].pair());
    bool single = true;
    for (std::size_t k = 1; k < w.size() && single; ++k) single = factor_of_.at(w[k].pair()) == first;
    if (single) return factors_[first]->moment(w);

    // Blocks may only join letters of one factor; the block of the chi-first
    // letter therefore stays inside that letter's factor.
    Perm s = build_s_chi(w.chi());
    std::size_t lead = factor_of_.at(w[s(0)].pair());
    Mask allowed = 0;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (factor_of_.at(w[k].pair()) == lead) allowed |= Mask{1} << k;
    }
    const CumulantTable& table = *tables_[lead];
    auto phi = [this](const Word& u) { return moment(u); };
    auto kap = [&table](const Word& u) { return table.full(u); };
    return first_block_sum(w, allowed, true, phi, kap);
}

std::shared_ptr<const JointDistribution> bifree_product(std::vector<OraclePtr> pairs, std::size_t degree_bound)
{
    return std::make_shared<const JointDistribution>(std::move(pairs), degree_bound);
}

BifreeReport check_bifree(const OraclePtr& joint, const std::vector<unsigned>& pair_ids, std::size_t max_degree,
                          std::size_t cap)
{
    if (max_degree > joint->degree_bound()) throw LimitError("check degree exceeds the model's degree bound");
    std::vector<Letter> alphabet;
    for (unsigned id : pair_ids) {
        if (!joint->has_pair(id)) throw DomainError("pair " + std::to_string(id) + " is not part of the model");
        for (Letter l : pair_alphabet(id)) alphabet.push_back(l);
    }
    std::sort(alphabet.begin(), alphabet.end());
    CumulantTable table(joint);
    BifreeReport report;
    report.max_degree = max_degree;
    for (std::size_t len = 2; len <= max_degree; ++len) {
        for (const auto& w : words_of_length(alphabet, len)) {
            bool mixed = false;
            for (std::size_t k = 1; k < w.size() && !mixed; ++k) mixed = w[k].pair() != w[0].pair();
            if (!mixed) continue;
            ++report.words_checked;
            Scalar k = table.full(w);
            if (k.is_zero()) continue;
            ++report.violations;
            if (report.findings.size() < cap) report.findings.push_back({w, k});
        }
    }
    return report;
}

} // namespace bifree
