#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace bifree {

struct SuiteOptions {
    // Empty selects every check.
    std::vector<std::string> only;
    std::size_t max_degree = 6;
    std::size_t spectrum_degree = 8;
    std::uint64_t seed = 0;
    // 0 = hardware concurrency.
    unsigned threads = 0;
};

struct CheckOutcome {
    std::string id;
    std::string statement;
    bool passed = false;
    std::size_t degree = 0;
    nlohmann::json values = nlohmann::json::object();
    nlohmann::json witnesses = nlohmann::json::array();
    std::string error;
    double elapsed_ms = 0;
};

struct SuiteReport {
    std::size_t max_degree = 0;
    std::uint64_t seed = 0;
    std::vector<CheckOutcome> checks;
    double elapsed_ms = 0;
    bool passed() const;
};

const std::vector<std::string>& check_ids();

// ParseError on an unknown id. Checks run in parallel; the report lists them
// in suite order whatever the thread count.
SuiteReport run_suite(const SuiteOptions& opts);

nlohmann::json to_json(const SuiteReport& r, bool with_timing = true);
std::string to_text(const SuiteReport& r);

} // namespace bifree
