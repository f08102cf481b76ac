#pragma once

#include <functional>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "bifree/distributions.hpp"
#include "bifree/partitions.hpp"

namespace bifree {

// Sum over the blocks V that contain the chi-first position of w and lie in
// `allowed`, of kappa(w|V) times the moments of the chi-order gaps that V
// leaves. These are exactly the BNC partitions of w grouped by the block of
// the first element, so with `allowed` = everything
//   phi(w) = sum over all such V (including V = all positions).
// Terms whose gap moments vanish are skipped before kappa is requested.
// With include_full false the block V = all positions is left out.
Scalar first_block_sum(const Word& w, Mask allowed, bool include_full,
                       const std::function<Scalar(const Word&)>& phi,
                       const std::function<Scalar(const Word&)>& kappa);

// Bi-free cumulants of one oracle. Full cumulants kappa_chi(w) (chi read off
// the letters) are memoised; kappa at a partition tau is the product over the
// blocks of tau.
class CumulantTable {
public:
    // Without an explicit flag the process-wide default applies.
    explicit CumulantTable(OraclePtr oracle, std::optional<bool> paranoid = {});

    const MomentOracle& oracle() const { return *oracle_; }
    const OraclePtr& oracle_ptr() const { return oracle_; }

    // kappa_{chi(w)}(w). In paranoid mode every value is also computed by
    // Moebius inversion over BNC and a disagreement throws std::logic_error.
    Scalar full(const Word& w) const;

    // kappa_{chi, tau}(w); DomainError unless tau is in BNC(chi(w)).
    Scalar kappa(const Word& w, const SetPartition& tau) const;

    // sum over lambda <= tau in BNC of phi_lambda(w) mu(lambda, tau).
    Scalar kappa_direct(const Word& w, const SetPartition& tau) const;

    // sum over tau in BNC(chi(w)) of kappa_{chi, tau}(w).
    Scalar moments_from_cumulants(const Word& w) const;

    // kappa_chi of the products of the segments, via the sum over tau in
    // BNC(chi_hat) with bnc_closure(tau v 0_hat) = 1. Each segment must be
    // nonempty and use one side only.
    Scalar kappa_of_products(const std::vector<Word>& segments) const;

private:
    Scalar compute_full(const Word& w) const;

    OraclePtr oracle_;
    bool paranoid_;
    mutable std::shared_mutex mutex_;
    mutable std::unordered_map<std::string, Scalar> memo_;
};

void set_default_paranoid(bool on);
bool default_paranoid();

// The same quantity as kappa_of_products, computed directly: Moebius
// inversion over BNC(chi) of the moments of the multiplied-out segments.
Scalar kappa_of_products_direct(const MomentOracle& oracle, const std::vector<Word>& segments);

// Side of a product segment; DomainError if empty or mixed.
Side segment_side(const Word& segment);

} // namespace bifree
