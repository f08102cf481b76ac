#include "bifree/cumulants.hpp"

#include <atomic>
#include <mutex>
#include <stdexcept>

#include "bifree/errors.hpp"

namespace bifree {

Scalar first_block_sum(const Word& w, Mask allowed, bool include_full,
                       const std::function<Scalar(const Word&)>& phi,
                       const std::function<Scalar(const Word&)>& kappa)
{
    const std::size_t n = w.size();
    if (n == 0) throw DomainError("first_block_sum on the empty word");
    if (n > 64) throw LimitError("words are limited to 64 letters");
    Perm s = build_s_chi(w.chi());
    std::vector<Mask> bit(n);
    for (std::size_t r = 0; r < n; ++r) bit[r] = Mask{1} << s(r);
    const Mask all = full_mask(n);

    Scalar total;
    // `last` is the chi-rank of the most recent element of V.
    auto dfs = [&](auto&& self, std::size_t last, Mask V, const Scalar& acc) -> void {
        Mask gap = 0;
        for (std::size_t q = last + 1; q <= n; ++q) {
            if (q == n) {
                if (!include_full && V == all) return;
                Scalar g = gap ? phi(w.subword(gap)) : Scalar(1);
                if (g.is_zero()) return;
                Scalar k = kappa(w.subword(V));
                if (!k.is_zero()) total += acc * g * k;
                return;
            }
            if (allowed & bit[q]) {
                Scalar g = gap ? phi(w.subword(gap)) : Scalar(1);
                if (!g.is_zero()) self(self, q, V | bit[q], acc * g);
            }
            gap |= bit[q];
        }
    };
    dfs(dfs, 0, bit[0], Scalar(1));
    return total;
}

namespace {
std::atomic<bool> paranoid_default{false};
}

void set_default_paranoid(bool on) { paranoid_default = on; }
bool default_paranoid() { return paranoid_default; }

CumulantTable::CumulantTable(OraclePtr oracle, std::optional<bool> paranoid)
    : oracle_(std::move(oracle)), paranoid_(paranoid.value_or(paranoid_default.load()))
{
    if (!oracle_) throw DomainError("cumulant table needs an oracle");
}

Scalar CumulantTable::full(const Word& w) const
{
    if (w.empty()) throw DomainError("cumulant of the empty word");
    if (w.size() > oracle_->degree_bound()) {
        throw LimitError("word of length " + std::to_string(w.size()) + " exceeds the degree bound " +
                         std::to_string(oracle_->degree_bound()));
    }
    {
        std::shared_lock lock(mutex_);
        if (auto it = memo_.find(w.key()); it != memo_.end()) return it->second;
    }
    Scalar value = compute_full(w);
    if (paranoid_ && w.size() <= 12) {
        Scalar check = kappa_direct(w, SetPartition::one(w.size()));
        if (!(check == value)) {
            throw std::logic_error("cumulant routes disagree on '" + w.str() + "': " + value.str() + " vs " + check.str());
        }
    }
    std::unique_lock lock(mutex_);
    memo_.emplace(w.key(), value);
    return value;
}

Scalar CumulantTable::compute_full(const Word& w) const
{
    Scalar phi_w = oracle_->moment(w);
    if (w.size() == 1) return phi_w;
    auto phi = [this](const Word& u) { return oracle_->moment(u); };
    auto kap = [this](const Word& u) { return full(u); };
    return phi_w - first_block_sum(w, full_mask(w.size()), false, phi, kap);
}

Scalar CumulantTable::kappa(const Word& w, const SetPartition& tau) const
{
    if (tau.size() != w.size()) throw DomainError("word and partition sizes differ");
    if (!is_bnc(w.chi(), tau)) throw DomainError(tau.str() + " is not bi-non-crossing for chi " + w.chi().str());
    Scalar value(1);
    for (Mask b : tau.blocks()) {
        value *= full(w.subword(b));
        if (value.is_zero()) break;
    }
    return value;
}

Scalar CumulantTable::kappa_direct(const Word& w, const SetPartition& tau) const
{
    if (tau.size() != w.size()) throw DomainError("word and partition sizes differ");
    auto ctx = bnc_context(w.chi());
    std::size_t t = ctx->index_of(tau);
    Scalar total;
    for (std::size_t l : ctx->below(t)) {
        std::int64_t mu = ctx->mobius(l, t);
        if (mu == 0) continue;
        Scalar phi = phi_pi(*oracle_, w, ctx->elements()[l]);
        if (!phi.is_zero()) total += phi * Scalar(mu);
    }
    return total;
}

Scalar CumulantTable::moments_from_cumulants(const Word& w) const
{
    if (w.empty()) return Scalar(1);
    if (w.size() > oracle_->degree_bound()) throw LimitError("word exceeds the degree bound");
    Scalar total;
    for (const auto& tau : bnc_context(w.chi())->elements()) total += kappa(w, tau);
    return total;
}

Side segment_side(const Word& segment)
{
    if (segment.empty()) throw DomainError("empty product segment");
    Side side = segment[0].side();
    for (std::size_t k = 1; k < segment.size(); ++k) {
        if (segment[k].side() != side) throw DomainError("product segment '" + segment.str() + "' mixes left and right letters");
    }
    return side;
}

Scalar CumulantTable::kappa_of_products(const std::vector<Word>& segments) const
{
    if (segments.empty()) throw DomainError("no product segments");
    Word hat;
    std::vector<Mask> zero_hat;
    for (const auto& seg : segments) {
        segment_side(seg);
        zero_hat.push_back(full_mask(hat.size() + seg.size()) & ~full_mask(hat.size()));
        hat += seg;
    }
    ChiMap chi_hat = hat.chi();
    SetPartition zero = SetPartition::from_masks(hat.size(), zero_hat);
    Scalar total;
    for (const auto& tau : bnc_context(chi_hat)->elements()) {
        if (!bnc_closure(chi_hat, join_p(tau, zero)).is_one()) continue;
        total += kappa(hat, tau);
    }
    return total;
}

Scalar kappa_of_products_direct(const MomentOracle& oracle, const std::vector<Word>& segments)
{
    if (segments.empty()) throw DomainError("no product segments");
    std::vector<Side> sides;
    for (const auto& seg : segments) sides.push_back(segment_side(seg));
    ChiMap chi(sides);
    auto ctx = bnc_context(chi);
    std::size_t one = ctx->index_of(SetPartition::one(chi.size()));
    Scalar total;
    for (std::size_t l = 0; l < ctx->size(); ++l) {
        std::int64_t mu = ctx->mobius(l, one);
        if (mu == 0) continue;
        Scalar phi(1);
        for (const auto& block : ctx->elements()[l].block_lists()) {
            Word product;
            for (auto k : block) product += segments[k];
            phi *= oracle.moment(product);
            if (phi.is_zero()) break;
        }
        if (!phi.is_zero()) total += phi * Scalar(mu);
    }
    return total;
}

} // namespace bifree
