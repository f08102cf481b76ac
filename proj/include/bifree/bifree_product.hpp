#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "bifree/cumulants.hpp"
#include "bifree/distributions.hpp"

namespace bifree {

// Joint distribution of pairs declared bi-free: every cumulant mixing two
// factors is zero and cumulants inside one factor come from that factor's own
// distribution. A factor is usually a single pair but may itself be a family
// of pairs (e.g. another product); pair ids must be distinct across factors.
class JointDistribution final : public MomentOracle {
public:
    explicit JointDistribution(std::vector<OraclePtr> pairs, std::size_t degree_bound = 0);

    std::string description() const override { return "bifree_product"; }
    const CumulantTable& table(unsigned pair) const { return *tables_.at(factor_of_.at(pair)); }

protected:
    Scalar compute(const Word& w) const override;

private:
    std::vector<OraclePtr> factors_;
    std::vector<std::unique_ptr<CumulantTable>> tables_;
    std::map<unsigned, std::size_t> factor_of_;
};

std::shared_ptr<const JointDistribution> bifree_product(std::vector<OraclePtr> pairs, std::size_t degree_bound = 0);

struct BifreeFinding {
    Word word;
    Scalar kappa;
};

struct BifreeReport {
    std::size_t max_degree = 0;
    std::size_t words_checked = 0;
    std::size_t violations = 0;
    // Sorted by word, capped.
    std::vector<BifreeFinding> findings;
    bool bifree() const { return violations == 0; }
};

// Every word of length <= max_degree that mixes letters of at least two of
// `pair_ids` and has a nonzero cumulant is a violation.
BifreeReport check_bifree(const OraclePtr& joint, const std::vector<unsigned>& pair_ids, std::size_t max_degree,
                          std::size_t cap = 10);

} // namespace bifree
