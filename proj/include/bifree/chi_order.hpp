#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace bifree {

enum class Side : std::uint8_t { Left = 0, Right = 1 };

inline char side_char(Side s) { return s == Side::Left ? 'l' : 'r'; }

// A word over {l, r}; position k says which face the k-th entry belongs to.
// All positions in the C++ API are 0-based; text forms are 1-based.
class ChiMap {
public:
    ChiMap() = default;
    explicit ChiMap(std::vector<Side> sides);

    // Parses "l|r"+; throws ParseError otherwise.
    static ChiMap parse(std::string_view text);

    std::size_t size() const { return sides_.size(); }
    Side operator[](std::size_t k) const { return sides_[k]; }
    const std::vector<Side>& sides() const { return sides_; }
    std::string str() const;

    friend bool operator==(const ChiMap&, const ChiMap&) = default;
    friend auto operator<=>(const ChiMap&, const ChiMap&) = default;

private:
    std::vector<Side> sides_;
};

// Permutation of {0..n-1}; images()[k] is the image of k.
class Perm {
public:
    Perm() = default;
    explicit Perm(std::vector<std::uint32_t> images);

    static Perm identity(std::size_t n);

    std::size_t size() const { return img_.size(); }
    std::uint32_t operator()(std::size_t k) const { return img_[k]; }
    const std::vector<std::uint32_t>& images() const { return img_; }
    Perm inverse() const;
    // (a * b)(k) = a(b(k))
    Perm operator*(const Perm& other) const;

    // "(1,2,3,6,5,4)"
    std::string str() const;

    friend bool operator==(const Perm&, const Perm&) = default;

private:
    std::vector<std::uint32_t> img_;
};

// s_chi: left positions ascending, then right positions descending.
// s(k) is the position read k-th in chi-order.
Perm build_s_chi(const ChiMap& chi);

// i precedes j in chi-order. Throws std::out_of_range on a bad index.
bool chi_less(const ChiMap& chi, std::size_t i, std::size_t j);

// chi restricted to the positions in V (any order, no duplicates), relabelled
// 0..|V|-1 preserving the natural order. Throws DomainError on empty V.
ChiMap restrict_chi(const ChiMap& chi, const std::vector<std::size_t>& V);

// All 2^n maps of length n, in lexicographic order with l < r.
std::vector<ChiMap> all_chi_maps(std::size_t n);

} // namespace bifree
