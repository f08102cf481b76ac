#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bifree/distributions.hpp"

namespace bifree {

enum class PatternReason { None, OddLength, StarNonalternating, BaseOrderViolation };

std::string reason_name(PatternReason r);

struct PatternVerdict {
    bool admissible = false;
    PatternReason reason = PatternReason::None;
};

// Even length, stars alternating when read in chi-order, and every X-letter
// before every Y-letter in chi-order. Letters must come from one pair and
// their sides must agree with chi; DomainError otherwise.
PatternVerdict is_admissible_pattern(const ChiMap& chi, const Word& w);

struct Witness {
    Word word;
    Scalar value;
    // "cumulant", "moment", "unitarity", "commutation", "haar-moment" or
    // "entry-cumulant".
    std::string kind;
    std::string detail;
};

struct ClassReport {
    bool verdict = true;
    std::size_t max_degree = 0;
    std::size_t violations = 0;
    // Sorted by (word, kind, detail) and capped.
    std::vector<Witness> witnesses;
};

// `pair` may be omitted when the model carries a single pair.
ClassReport check_bi_r_diagonal(const OraclePtr& p, std::size_t max_degree, std::optional<unsigned> pair = {},
                                std::size_t cap = 10);
ClassReport check_star_bi_even(const OraclePtr& p, std::size_t max_degree, std::optional<unsigned> pair = {},
                               std::size_t cap = 10);
ClassReport check_bi_haar(const OraclePtr& p, std::size_t max_degree, std::optional<unsigned> pair = {},
                          std::size_t cap = 10);
// Entry cumulants of Z = [[0,X],[X*,0]] and W = [[0,Y],[Y*,0]] whose index
// cycle is broken must vanish.
ClassReport check_r_cyclic_2x2(const OraclePtr& p, std::size_t max_degree, std::optional<unsigned> pair = {},
                               std::size_t cap = 10);

// Free R-diagonality of one face: every cumulant of a word over {X, X*}
// (or {Y, Y*}) that is not of even length with alternating stars vanishes.
ClassReport check_face_r_diagonal(const OraclePtr& p, std::size_t max_degree, Base face,
                                  std::optional<unsigned> pair = {}, std::size_t cap = 10);

nlohmann::json to_json(const ClassReport& r);

} // namespace bifree
