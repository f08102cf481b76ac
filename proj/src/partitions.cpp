#include "bifree/partitions.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <numeric>

#include "bifree/errors.hpp"

namespace bifree {

namespace {

std::size_t lowest(Mask m) { return static_cast<std::size_t>(std::countr_zero(m)); }

void check_size(std::size_t n)
{
    if (n == 0) throw DomainError("partition of an empty set");
    if (n > kMaxPartitionSize) throw LimitError("partitions are limited to 64 elements");
}

void require_same_size(const SetPartition& p, const SetPartition& q)
{
    if (p.size() != q.size()) throw DomainError("partition size mismatch");
}

// Merge blocks that are linked by `linked` until stable.
std::vector<Mask> merge_until_stable(std::vector<Mask> blocks, const std::function<bool(Mask, Mask)>& linked)
{
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t a = 0; a < blocks.size() && !changed; ++a) {
            for (std::size_t b = a + 1; b < blocks.size(); ++b) {
                if (linked(blocks[a], blocks[b])) {
                    blocks[a] |= blocks[b];
                    blocks.erase(blocks.begin() + static_cast<std::ptrdiff_t>(b));
                    changed = true;
                    break;
                }
            }
        }
    }
    return blocks;
}

bool masks_cross(Mask v, Mask w)
{
    // v1 < w1 < v2 < w2 for some v's in V and w's in W, in either role.
    auto crosses = [](Mask a, Mask b) {
        Mask rest = a;
        while (rest) {
            std::size_t a1 = lowest(rest);
            rest &= rest - 1;
            Mask after_a1 = ~full_mask(a1 + 1);
            Mask bs = b & after_a1;
            while (bs) {
                std::size_t b1 = lowest(bs);
                bs &= bs - 1;
                Mask a_after = a & ~full_mask(b1 + 1);
                if (!a_after) break;
                std::size_t a2 = lowest(a_after);
                if (b & ~full_mask(a2 + 1)) return true;
            }
        }
        return false;
    };
    return crosses(v, w) || crosses(w, v);
}

// NC partitions of {0..len-1} as block masks.
const std::vector<std::vector<Mask>>& nc_masks(std::size_t len)
{
    static std::mutex mutex;
    static std::map<std::size_t, std::vector<std::vector<Mask>>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    if (auto it = cache.find(len); it != cache.end()) return it->second;

    std::vector<std::vector<std::vector<Mask>>> table(len + 1);
    table[0] = {{}};
    for (std::size_t m = 1; m <= len; ++m) {
        if (auto it = cache.find(m); it != cache.end()) {
            table[m] = it->second;
            continue;
        }
        std::vector<std::vector<Mask>> out;
        std::size_t others = m - 1;
        for (Mask sub = 0; sub < (Mask{1} << others); ++sub) {
            Mask block = 1 | (sub << 1);
            // Gaps between consecutive elements of the block and after the last.
            std::vector<std::pair<std::size_t, std::size_t>> gaps;
            std::size_t prev = 0;
            for (std::size_t k = 1; k <= m; ++k) {
                if (k == m || (block >> k) & 1) {
                    if (k > prev + 1) gaps.emplace_back(prev + 1, k - prev - 1);
                    prev = k;
                }
            }
            std::vector<std::vector<Mask>> partial{{block}};
            for (auto [start, glen] : gaps) {
                std::vector<std::vector<Mask>> next;
                for (const auto& base : partial) {
                    for (const auto& inner : table[glen]) {
                        auto combined = base;
                        for (Mask b : inner) combined.push_back(b << start);
                        next.push_back(std::move(combined));
                    }
                }
                partial = std::move(next);
            }
            for (auto& p : partial) out.push_back(std::move(p));
        }
        table[m] = out;
        cache.emplace(m, std::move(out));
    }
    return cache.at(len);
}

int compare_masks(Mask a, Mask b)
{
    while (a && b) {
        std::size_t x = lowest(a), y = lowest(b);
        if (x != y) return x < y ? -1 : 1;
        a &= a - 1;
        b &= b - 1;
    }
    if (!a && !b) return 0;
    return a ? 1 : -1;
}

} // namespace

SetPartition SetPartition::from_masks(std::size_t n, std::vector<Mask> blocks)
{
    check_size(n);
    Mask seen = 0;
    for (Mask b : blocks) {
        if (!b) throw DomainError("empty block");
        if (b & ~full_mask(n)) throw DomainError("block element out of range");
        if (seen & b) throw DomainError("blocks overlap");
        seen |= b;
    }
    if (seen != full_mask(n)) throw DomainError("blocks do not cover the ground set");
    std::sort(blocks.begin(), blocks.end(), [](Mask a, Mask b) { return lowest(a) < lowest(b); });
    SetPartition p;
    p.n_ = n;
    p.blocks_ = std::move(blocks);
    return p;
}

SetPartition SetPartition::from_blocks(std::size_t n, const std::vector<std::vector<std::size_t>>& blocks)
{
    check_size(n);
    std::vector<Mask> masks;
    for (const auto& b : blocks) {
        Mask m = 0;
        for (auto e : b) {
            if (e >= n) throw DomainError("block element out of range");
            if (m >> e & 1) throw DomainError("repeated element in block");
            m |= Mask{1} << e;
        }
        masks.push_back(m);
    }
    return from_masks(n, std::move(masks));
}

SetPartition SetPartition::zero(std::size_t n)
{
    check_size(n);
    std::vector<Mask> masks(n);
    for (std::size_t k = 0; k < n; ++k) masks[k] = Mask{1} << k;
    return from_masks(n, std::move(masks));
}

SetPartition SetPartition::one(std::size_t n)
{
    check_size(n);
    return from_masks(n, {full_mask(n)});
}

SetPartition SetPartition::parse(std::string_view text, std::size_t n)
{
    std::string s;
    for (char c : text) {
        if (c != ' ') s.push_back(c);
    }
    if (s.size() < 2 || s.front() != '{' || s.back() != '}') {
        throw ParseError("partition must look like {1,4|2,5|3,6}");
    }
    s = s.substr(1, s.size() - 2);
    std::vector<std::vector<std::size_t>> blocks(1);
    std::string num;
    std::size_t largest = 0;
    auto flush = [&]() {
        if (num.empty()) throw ParseError("empty entry in partition '" + std::string(text) + "'");
        std::size_t v = 0;
        for (char c : num) {
            if (c < '0' || c > '9') throw ParseError("bad entry '" + num + "' in partition");
            v = v * 10 + static_cast<std::size_t>(c - '0');
            if (v > kMaxPartitionSize) throw ParseError("partition entry too large");
        }
        if (v == 0) throw ParseError("partition entries are 1-based");
        largest = std::max(largest, v);
        blocks.back().push_back(v - 1);
        num.clear();
    };
    for (char c : s) {
        if (c == ',') {
            flush();
        } else if (c == '|') {
            flush();
            blocks.emplace_back();
        } else {
            num.push_back(c);
        }
    }
    flush();
    if (n == 0) n = largest;
    try {
        return from_blocks(n, blocks);
    } catch (const DomainError& e) {
        throw ParseError(std::string("invalid partition: ") + e.what());
    }
}

std::vector<std::vector<std::size_t>> SetPartition::block_lists() const
{
    std::vector<std::vector<std::size_t>> out;
    for (Mask b : blocks_) {
        std::vector<std::size_t> list;
        for (Mask r = b; r; r &= r - 1) list.push_back(lowest(r));
        out.push_back(std::move(list));
    }
    return out;
}

std::size_t SetPartition::block_of(std::size_t i) const
{
    for (std::size_t k = 0; k < blocks_.size(); ++k) {
        if (blocks_[k] >> i & 1) return k;
    }
    throw std::out_of_range("block_of: element out of range");
}

bool SetPartition::same_block(std::size_t i, std::size_t j) const
{
    return block_of(i) == block_of(j);
}

bool SetPartition::leq(const SetPartition& other) const
{
    require_same_size(*this, other);
    for (Mask b : blocks_) {
        bool inside = false;
        for (Mask c : other.blocks_) {
            if ((b & c) == b) {
                inside = true;
                break;
            }
        }
        if (!inside) return false;
    }
    return true;
}

std::string SetPartition::str() const
{
    std::string out = "{";
    bool first_block = true;
    for (const auto& b : block_lists()) {
        if (!first_block) out += "|";
        first_block = false;
        for (std::size_t k = 0; k < b.size(); ++k) {
            if (k) out += ",";
            out += std::to_string(b[k] + 1);
        }
    }
    return out + "}";
}

std::size_t SetPartition::hash() const
{
    std::size_t h = n_;
    for (Mask b : blocks_) h ^= std::hash<Mask>{}(b) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

bool operator<(const SetPartition& a, const SetPartition& b)
{
    std::size_t k = 0;
    for (; k < a.blocks_.size() && k < b.blocks_.size(); ++k) {
        int c = compare_masks(a.blocks_[k], b.blocks_[k]);
        if (c != 0) return c < 0;
    }
    if (a.blocks_.size() != b.blocks_.size()) return a.blocks_.size() < b.blocks_.size();
    return a.n_ < b.n_;
}

bool is_noncrossing(const SetPartition& p)
{
    const auto& bl = p.blocks();
    for (std::size_t a = 0; a < bl.size(); ++a) {
        for (std::size_t b = a + 1; b < bl.size(); ++b) {
            if (masks_cross(bl[a], bl[b])) return false;
        }
    }
    return true;
}

SetPartition apply_perm(const Perm& s, const SetPartition& p)
{
    if (s.size() != p.size()) throw DomainError("permutation and partition sizes differ");
    std::vector<Mask> out;
    out.reserve(p.block_count());
    for (Mask b : p.blocks()) {
        Mask m = 0;
        for (Mask r = b; r; r &= r - 1) m |= Mask{1} << s(lowest(r));
        out.push_back(m);
    }
    return SetPartition::from_masks(p.size(), std::move(out));
}

bool is_bnc(const ChiMap& chi, const SetPartition& p)
{
    if (chi.size() != p.size()) throw DomainError("chi and partition sizes differ");
    return is_noncrossing(apply_perm(build_s_chi(chi).inverse(), p));
}

const std::vector<SetPartition>& enumerate_nc(std::size_t n, std::size_t limit)
{
    check_size(n);
    if (n > limit) throw LimitError("NC(" + std::to_string(n) + ") exceeds the enumeration limit " + std::to_string(limit));
    static std::mutex mutex;
    static std::map<std::size_t, std::vector<SetPartition>> cache;
    {
        std::lock_guard<std::mutex> lock(mutex);
        if (auto it = cache.find(n); it != cache.end()) return it->second;
    }
    std::vector<SetPartition> out;
    for (const auto& masks : nc_masks(n)) out.push_back(SetPartition::from_masks(n, masks));
    std::sort(out.begin(), out.end());
    std::lock_guard<std::mutex> lock(mutex);
    return cache.emplace(n, std::move(out)).first->second;
}

std::vector<SetPartition> enumerate_bnc(const ChiMap& chi, std::size_t limit)
{
    Perm s = build_s_chi(chi);
    const auto& nc = enumerate_nc(chi.size(), limit);
    std::vector<SetPartition> out;
    out.reserve(nc.size());
    for (const auto& p : nc) out.push_back(apply_perm(s, p));
    std::sort(out.begin(), out.end());
    return out;
}

SetPartition join_p(const SetPartition& p, const SetPartition& q)
{
    require_same_size(p, q);
    std::vector<Mask> blocks = p.blocks();
    for (Mask b : q.blocks()) blocks.push_back(b);
    return SetPartition::from_masks(p.size(), merge_until_stable(std::move(blocks), [](Mask a, Mask b) { return (a & b) != 0; }));
}

SetPartition nc_closure(const SetPartition& p)
{
    return SetPartition::from_masks(p.size(), merge_until_stable(p.blocks(), masks_cross));
}

SetPartition bnc_closure(const ChiMap& chi, const SetPartition& p)
{
    if (chi.size() != p.size()) throw DomainError("chi and partition sizes differ");
    Perm s = build_s_chi(chi);
    return apply_perm(s, nc_closure(apply_perm(s.inverse(), p)));
}

SetPartition kreweras_nc(const SetPartition& p)
{
    if (!is_noncrossing(p)) throw DomainError("Kreweras complement needs a non-crossing partition, got " + p.str());
    std::size_t n = p.size();
    // pi_inv maps each element to its predecessor in its block (cyclically).
    std::vector<std::size_t> pi_inv(n);
    for (const auto& b : p.block_lists()) {
        for (std::size_t k = 0; k < b.size(); ++k) pi_inv[b[(k + 1) % b.size()]] = b[k];
    }
    std::vector<bool> seen(n, false);
    std::vector<Mask> out;
    for (std::size_t start = 0; start < n; ++start) {
        if (seen[start]) continue;
        Mask m = 0;
        std::size_t k = start;
        while (!seen[k]) {
            seen[k] = true;
            m |= Mask{1} << k;
            k = pi_inv[(k + 1) % n];
        }
        out.push_back(m);
    }
    return SetPartition::from_masks(n, std::move(out));
}

SetPartition kreweras_bnc(const ChiMap& chi, const SetPartition& p)
{
    if (!is_bnc(chi, p)) throw DomainError(p.str() + " is not bi-non-crossing for chi " + chi.str());
    Perm s = build_s_chi(chi);
    return apply_perm(s, kreweras_nc(apply_perm(s.inverse(), p)));
}

bool connects_consecutive(const ChiMap& chi_hat, const SetPartition& t)
{
    std::size_t m = chi_hat.size();
    if (m % 2 != 0) throw DomainError("chi_hat must have even length");
    if (t.size() != m) throw DomainError("chi_hat and partition sizes differ");
    for (std::size_t i = 0; i < m; i += 2) {
        if (chi_hat[i] != chi_hat[i + 1]) throw DomainError("chi_hat must agree on each consecutive pair");
    }
    Perm s = build_s_chi(chi_hat);
    if (!t.same_block(s(0), s(m - 1))) return false;
    for (std::size_t i = 1; i + 1 < m; i += 2) {
        if (!t.same_block(s(i), s(i + 1))) return false;
    }
    return true;
}

std::int64_t catalan(std::size_t n)
{
    if (n > 35) throw LimitError("Catalan numbers past C_35 overflow 64 bits");
    std::int64_t c = 1;
    for (std::size_t k = 0; k < n; ++k) {
        // C_{k+1} = C_k * 2(2k+1) / (k+2), exact at every step.
        __int128 next = static_cast<__int128>(c) * 2 * (2 * static_cast<std::int64_t>(k) + 1);
        c = static_cast<std::int64_t>(next / static_cast<std::int64_t>(k + 2));
    }
    return c;
}

std::int64_t mobius_from_zero(const SetPartition& p)
{
    std::int64_t value = 1;
    for (Mask b : p.blocks()) {
        std::size_t sz = static_cast<std::size_t>(std::popcount(b));
        std::int64_t c = catalan(sz - 1);
        value *= (sz % 2 == 1) ? c : -c;
    }
    return value;
}

std::int64_t mobius_nc_factorized(const SetPartition& p, const SetPartition& q)
{
    require_same_size(p, q);
    if (!p.leq(q)) return 0;
    std::int64_t value = 1;
    for (Mask w : q.blocks()) {
        // p restricted to W, relabelled 0..|W|-1 in increasing order.
        std::vector<std::size_t> elems;
        for (Mask r = w; r; r &= r - 1) elems.push_back(lowest(r));
        std::vector<Mask> sub;
        for (Mask b : p.blocks()) {
            if ((b & w) == 0) continue;
            Mask m = 0;
            for (std::size_t k = 0; k < elems.size(); ++k) {
                if (b >> elems[k] & 1) m |= Mask{1} << k;
            }
            sub.push_back(m);
        }
        SetPartition local = SetPartition::from_masks(elems.size(), std::move(sub));
        // mu(sigma, 1) = mu(0, K(sigma)).
        value *= mobius_from_zero(kreweras_nc(local));
    }
    return value;
}

BncContext::BncContext(ChiMap chi, std::size_t limit)
    : chi_(std::move(chi)), s_(build_s_chi(chi_)), s_inv_(s_.inverse()), elements_(enumerate_bnc(chi_, limit))
{
    for (std::size_t k = 0; k < elements_.size(); ++k) index_.emplace(elements_[k], k);
}

std::size_t BncContext::index_of(const SetPartition& p) const
{
    auto it = index_.find(p);
    if (it == index_.end()) throw DomainError(p.str() + " is not bi-non-crossing for chi " + chi_.str());
    return it->second;
}

const std::vector<std::int64_t>& BncContext::row(std::size_t t) const
{
    {
        std::shared_lock lock(mutex_);
        if (auto it = rows_.find(t); it != rows_.end()) return it->second;
    }
    const SetPartition& tp = elements_[t];
    // Elements above t, finer ones first so every proper lower bound of l
    // inside [t, l] is finished before l.
    std::vector<std::size_t> above;
    for (std::size_t k = 0; k < elements_.size(); ++k) {
        if (tp.leq(elements_[k])) above.push_back(k);
    }
    std::stable_sort(above.begin(), above.end(), [&](std::size_t a, std::size_t b) {
        return elements_[a].block_count() > elements_[b].block_count();
    });
    std::vector<std::int64_t> mu(elements_.size(), 0);
    for (std::size_t idx = 0; idx < above.size(); ++idx) {
        std::size_t l = above[idx];
        if (l == t) {
            mu[l] = 1;
            continue;
        }
        std::int64_t sum = 0;
        for (std::size_t j = 0; j < idx; ++j) {
            std::size_t r = above[j];
            if (r != l && elements_[r].leq(elements_[l])) sum += mu[r];
        }
        mu[l] = -sum;
    }
    std::unique_lock lock(mutex_);
    return rows_.emplace(t, std::move(mu)).first->second;
}

std::int64_t BncContext::mobius(std::size_t t, std::size_t l) const
{
    return row(t)[l];
}

std::int64_t BncContext::mobius(const SetPartition& t, const SetPartition& l) const
{
    return mobius(index_of(t), index_of(l));
}

std::int64_t BncContext::mobius_factorized(const SetPartition& t, const SetPartition& l) const
{
    index_of(t);
    index_of(l);
    return mobius_nc_factorized(apply_perm(s_inv_, t), apply_perm(s_inv_, l));
}

const std::vector<std::size_t>& BncContext::below(std::size_t l) const
{
    {
        std::shared_lock lock(mutex_);
        if (auto it = below_.find(l); it != below_.end()) return it->second;
    }
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < elements_.size(); ++k) {
        if (elements_[k].leq(elements_[l])) out.push_back(k);
    }
    std::unique_lock lock(mutex_);
    return below_.emplace(l, std::move(out)).first->second;
}

std::shared_ptr<const BncContext> bnc_context(const ChiMap& chi, std::size_t limit)
{
    static std::mutex mutex;
    static std::map<std::string, std::shared_ptr<const BncContext>> cache;
    std::string key = chi.str();
    {
        std::lock_guard<std::mutex> lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    if (chi.size() > limit) throw LimitError("BNC(" + key + ") exceeds the enumeration limit " + std::to_string(limit));
    auto ctx = std::make_shared<const BncContext>(chi, limit);
    std::lock_guard<std::mutex> lock(mutex);
    return cache.emplace(key, std::move(ctx)).first->second;
}

} // namespace bifree
