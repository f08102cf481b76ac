#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "bifree/chi_order.hpp"

namespace bifree {

using Mask = std::uint64_t;
inline constexpr std::size_t kMaxPartitionSize = 64;

// Partition of {0..n-1}. Blocks are bitmasks kept sorted by their least
// element, so two partitions are equal iff their block vectors are equal.
class SetPartition {
public:
    SetPartition() = default;

    static SetPartition from_masks(std::size_t n, std::vector<Mask> blocks);
    static SetPartition from_blocks(std::size_t n, const std::vector<std::vector<std::size_t>>& blocks);
    static SetPartition zero(std::size_t n);
    static SetPartition one(std::size_t n);

    // "{1,4|2,5|3,6}" with 1-based entries. With n == 0 the size is the
    // largest entry; otherwise the entries must cover exactly {1..n}.
    static SetPartition parse(std::string_view text, std::size_t n = 0);

    std::size_t size() const { return n_; }
    std::size_t block_count() const { return blocks_.size(); }
    const std::vector<Mask>& blocks() const { return blocks_; }
    std::vector<std::vector<std::size_t>> block_lists() const;
    std::size_t block_of(std::size_t i) const;
    bool same_block(std::size_t i, std::size_t j) const;

    // p.leq(q): every block of p lies inside a block of q.
    bool leq(const SetPartition& other) const;
    bool is_zero() const { return blocks_.size() == n_; }
    bool is_one() const { return blocks_.size() == 1; }

    std::string str() const;
    std::size_t hash() const;

    friend bool operator==(const SetPartition& a, const SetPartition& b)
    {
        return a.n_ == b.n_ && a.blocks_ == b.blocks_;
    }
    // Lexicographic on the lists of blocks, each block an ascending list.
    friend bool operator<(const SetPartition& a, const SetPartition& b);

private:
    std::size_t n_ = 0;
    std::vector<Mask> blocks_;
};

struct SetPartitionHash {
    std::size_t operator()(const SetPartition& p) const { return p.hash(); }
};

inline Mask full_mask(std::size_t n) { return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

bool is_noncrossing(const SetPartition& p);

// Each element e is replaced by s(e).
SetPartition apply_perm(const Perm& s, const SetPartition& p);

bool is_bnc(const ChiMap& chi, const SetPartition& p);

// NC(n) in canonical order; cached.
const std::vector<SetPartition>& enumerate_nc(std::size_t n, std::size_t limit = 12);

// BNC(chi) = s_chi . NC(n), in canonical order. Throws LimitError if n > limit.
std::vector<SetPartition> enumerate_bnc(const ChiMap& chi, std::size_t limit = 12);

SetPartition join_p(const SetPartition& p, const SetPartition& q);

// Smallest non-crossing partition above p.
SetPartition nc_closure(const SetPartition& p);

// Smallest element of BNC(chi) above p.
SetPartition bnc_closure(const ChiMap& chi, const SetPartition& p);

// Cycles of pi^{-1} gamma, gamma = (0 1 ... n-1), blocks of pi read as
// increasing cycles. Throws DomainError if p crosses.
SetPartition kreweras_nc(const SetPartition& p);

SetPartition kreweras_bnc(const ChiMap& chi, const SetPartition& p);

// chi_hat pairs consecutive positions; true iff s(0) ~ s(2n-1) and
// s(2i-1) ~ s(2i) for i = 1..n-1 (0-based). Throws DomainError when chi_hat
// has odd length or chi_hat(2i) != chi_hat(2i+1).
bool connects_consecutive(const ChiMap& chi_hat, const SetPartition& t);

// C_n; throws LimitError past n = 35.
std::int64_t catalan(std::size_t n);

// (-1)^{|V|-1} C_{|V|-1} over the blocks of p.
std::int64_t mobius_from_zero(const SetPartition& p);

// mu_NC(p, q) from the factorisation over the blocks of q and the Kreweras
// complement; 0 unless p <= q. Both must be non-crossing.
std::int64_t mobius_nc_factorized(const SetPartition& p, const SetPartition& q);

// BNC(chi) with its Moebius function. The Moebius values are produced by the
// defining recursion sum_{t <= r <= l} mu(t, r) = delta(t, l), row by row.
class BncContext {
public:
    explicit BncContext(ChiMap chi, std::size_t limit = 12);

    const ChiMap& chi() const { return chi_; }
    const Perm& s() const { return s_; }
    const Perm& s_inv() const { return s_inv_; }
    const std::vector<SetPartition>& elements() const { return elements_; }
    std::size_t size() const { return elements_.size(); }
    bool contains(const SetPartition& p) const { return index_.count(p) != 0; }
    // Throws DomainError when p is not in BNC(chi).
    std::size_t index_of(const SetPartition& p) const;

    std::int64_t mobius(const SetPartition& t, const SetPartition& l) const;
    std::int64_t mobius(std::size_t t, std::size_t l) const;
    // Same values via mu_NC(s^{-1} t, s^{-1} l) in closed form.
    std::int64_t mobius_factorized(const SetPartition& t, const SetPartition& l) const;

    // Indices of all elements below element l (inclusive).
    const std::vector<std::size_t>& below(std::size_t l) const;

private:
    const std::vector<std::int64_t>& row(std::size_t t) const;

    ChiMap chi_;
    Perm s_;
    Perm s_inv_;
    std::vector<SetPartition> elements_;
    std::unordered_map<SetPartition, std::size_t, SetPartitionHash> index_;

    mutable std::shared_mutex mutex_;
    mutable std::unordered_map<std::size_t, std::vector<std::int64_t>> rows_;
    mutable std::unordered_map<std::size_t, std::vector<std::size_t>> below_;
};

// Shared, lazily built context per chi.
std::shared_ptr<const BncContext> bnc_context(const ChiMap& chi, std::size_t limit = 12);

} // namespace bifree
