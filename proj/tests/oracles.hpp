#pragma once

// Brute-force helpers shared by the unit tests. Nothing here calls into the
// library routines they are used to check.

#include <algorithm>
#include <cstddef>
#include <vector>

namespace oracle {

// All set partitions of {0..n-1} as restricted growth strings.
inline std::vector<std::vector<int>> all_rgs(std::size_t n)
{
    std::vector<std::vector<int>> out;
    std::vector<int> a(n, 0);
    auto rec = [&](auto&& self, std::size_t k, int maxv) -> void {
        if (k == n) {
            out.push_back(a);
            return;
        }
        for (int v = 0; v <= maxv + 1; ++v) {
            a[k] = v;
            self(self, k + 1, std::max(maxv, v));
        }
    };
    if (n == 0) return out;
    a[0] = 0;
    rec(rec, 1, 0);
    return out;
}

inline std::vector<std::vector<std::size_t>> rgs_blocks(const std::vector<int>& a)
{
    int m = 0;
    for (int v : a) m = std::max(m, v + 1);
    std::vector<std::vector<std::size_t>> blocks(static_cast<std::size_t>(m));
    for (std::size_t k = 0; k < a.size(); ++k) blocks[static_cast<std::size_t>(a[k])].push_back(k);
    return blocks;
}

// Quadruple test for crossing under an arbitrary total order given by rank.
inline bool crosses_under(const std::vector<int>& label, const std::vector<std::size_t>& rank)
{
    std::size_t n = label.size();
    std::vector<std::size_t> at(n);
    for (std::size_t k = 0; k < n; ++k) at[rank[k]] = k;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            for (std::size_t c = b + 1; c < n; ++c)
                for (std::size_t d = c + 1; d < n; ++d) {
                    int x = label[at[a]], y = label[at[b]];
                    if (x != y && label[at[c]] == x && label[at[d]] == y) return true;
                }
    return false;
}

inline long long catalan(std::size_t n)
{
    std::vector<long long> c(n + 1, 0);
    c[0] = 1;
    for (std::size_t m = 1; m <= n; ++m)
        for (std::size_t k = 0; k < m; ++k) c[m] += c[k] * c[m - 1 - k];
    return c[n];
}

} // namespace oracle
