#include "bifree/chi_order.hpp"

#include <algorithm>
#include <stdexcept>

#include "bifree/errors.hpp"

namespace bifree {

ChiMap::ChiMap(std::vector<Side> sides) : sides_(std::move(sides))
{
    if (sides_.empty()) throw DomainError("chi map must be nonempty");
}

ChiMap ChiMap::parse(std::string_view text)
{
    if (text.empty()) throw ParseError("empty chi map");
    std::vector<Side> sides;
    sides.reserve(text.size());
    for (char c : text) {
        if (c == 'l')
            sides.push_back(Side::Left);
        else if (c == 'r')
            sides.push_back(Side::Right);
        else
            throw ParseError("chi map must match [lr]+, got '" + std::string(text) + "'");
    }
    return ChiMap(std::move(sides));
}

std::string ChiMap::str() const
{
    std::string out;
    out.reserve(sides_.size());
    for (Side s : sides_) out.push_back(side_char(s));
    return out;
}

Perm::Perm(std::vector<std::uint32_t> images) : img_(std::move(images))
{
    std::vector<bool> seen(img_.size(), false);
    for (auto v : img_) {
        if (v >= img_.size() || seen[v]) throw DomainError("not a permutation");
        seen[v] = true;
    }
}

Perm Perm::identity(std::size_t n)
{
    std::vector<std::uint32_t> img(n);
    for (std::size_t k = 0; k < n; ++k) img[k] = static_cast<std::uint32_t>(k);
    return Perm(std::move(img));
}

Perm Perm::inverse() const
{
    std::vector<std::uint32_t> inv(img_.size());
    for (std::size_t k = 0; k < img_.size(); ++k) inv[img_[k]] = static_cast<std::uint32_t>(k);
    Perm p;
    p.img_ = std::move(inv);
    return p;
}

Perm Perm::operator*(const Perm& other) const
{
    if (other.size() != size()) throw DomainError("permutation size mismatch");
    std::vector<std::uint32_t> img(size());
    for (std::size_t k = 0; k < size(); ++k) img[k] = img_[other.img_[k]];
    Perm p;
    p.img_ = std::move(img);
    return p;
}

std::string Perm::str() const
{
    std::string out = "(";
    for (std::size_t k = 0; k < img_.size(); ++k) {
        if (k) out += ",";
        out += std::to_string(img_[k] + 1);
    }
    return out + ")";
}

Perm build_s_chi(const ChiMap& chi)
{
    std::vector<std::uint32_t> img;
    img.reserve(chi.size());
    for (std::size_t k = 0; k < chi.size(); ++k) {
        if (chi[k] == Side::Left) img.push_back(static_cast<std::uint32_t>(k));
    }
    for (std::size_t k = chi.size(); k-- > 0;) {
        if (chi[k] == Side::Right) img.push_back(static_cast<std::uint32_t>(k));
    }
    return Perm(std::move(img));
}

bool chi_less(const ChiMap& chi, std::size_t i, std::size_t j)
{
    if (i >= chi.size() || j >= chi.size()) throw std::out_of_range("chi_less: index out of range");
    // Rank in chi-order without building the permutation.
    auto rank = [&](std::size_t k) -> std::size_t {
        std::size_t lefts = 0;
        for (Side s : chi.sides()) lefts += s == Side::Left;
        if (chi[k] == Side::Left) {
            std::size_t r = 0;
            for (std::size_t q = 0; q < k; ++q) r += chi[q] == Side::Left;
            return r;
        }
        std::size_t r = lefts;
        for (std::size_t q = k + 1; q < chi.size(); ++q) r += chi[q] == Side::Right;
        return r;
    };
    return rank(i) < rank(j);
}

ChiMap restrict_chi(const ChiMap& chi, const std::vector<std::size_t>& V)
{
    if (V.empty()) throw DomainError("restriction to an empty set");
    std::vector<std::size_t> sorted = V;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw DomainError("restriction set has duplicates");
    }
    std::vector<Side> sides;
    sides.reserve(sorted.size());
    for (auto k : sorted) {
        if (k >= chi.size()) throw std::out_of_range("restrict_chi: index out of range");
        sides.push_back(chi[k]);
    }
    return ChiMap(std::move(sides));
}

std::vector<ChiMap> all_chi_maps(std::size_t n)
{
    std::vector<ChiMap> out;
    if (n == 0 || n > 24) throw LimitError("all_chi_maps: n out of range");
    out.reserve(std::size_t{1} << n);
    for (std::size_t bits = 0; bits < (std::size_t{1} << n); ++bits) {
        std::vector<Side> sides(n);
        for (std::size_t k = 0; k < n; ++k) {
            sides[k] = (bits >> (n - 1 - k)) & 1 ? Side::Right : Side::Left;
        }
        out.emplace_back(std::move(sides));
    }
    return out;
}

} // namespace bifree
