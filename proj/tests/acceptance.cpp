// Acceptance run: one PASS/FAIL line per criterion, with its runtime target.
// Usage: acceptance <path to the bifree CLI>

#include <array>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "bifree/harness.hpp"

using namespace bifree;
using nlohmann::json;

namespace {

struct Criterion {
    int number;
    std::string title;
    double target_s;
    std::vector<std::string> checks;
};

std::string run_command(const std::string& cmd, int& status)
{
    std::string out;
    std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
    if (!pipe) {
        status = -1;
        return out;
    }
    std::array<char, 4096> buf{};
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe.get())) out.append(buf.data(), n);
    status = pclose(pipe.release());
    return out;
}

void strip_timing(json& j)
{
    if (j.is_object()) {
        j.erase("elapsed_ms");
        for (auto& [k, v] : j.items()) strip_timing(v);
    } else if (j.is_array()) {
        for (auto& v : j) strip_timing(v);
    }
}

void report_line(bool ok, int number, const std::string& title, double secs, double target, const std::string& note)
{
    bool in_time = secs < target;
    std::printf("%s criterion %d: %s (%.1f s, target < %.0f s)%s\n", ok && in_time ? "PASS" : "FAIL", number,
                title.c_str(), secs, target, note.c_str());
    std::fflush(stdout);
}

} // namespace

int main(int argc, char** argv)
{
    if (argc < 2) {
        std::cerr << "usage: acceptance <bifree cli>\n";
        return 2;
    }
    const std::string cli = argv[1];
    const std::vector<Criterion> criteria{
        {1, "|BNC(chi)| = C_n for all chi, n <= 8", 10, {"catalan-counts"}},
        {2, "Moebius values and product formula vs recursion", 30, {"mobius"}},
        {3, "cancellation identity, n <= 5, three random assignments", 30, {"cancellation"}},
        {4, "bi-Haar cumulant spectrum up to order 8", 120, {"bihaar-cumulants"}},
        {5, "products formula equals direct cumulants, expanded length <= 8", 120, {"products-formula"}},
        {6, "counterexample values 1/4, -1/4 and (1, 0)", 10,
         {"quarter-counterexample", "neg-quarter-counterexample", "invariance-counterexample"}},
        {7, "theorem suite at degree 6", 900,
         {"sum-of-birdiag", "prod-birdiag-any", "prod-birdiag-both", "powers", "selfadjoint-bifree", "bieven-product",
          "key-lemma", "invariance", "equivalence-i-iii", "rcyclic-equivalence"}},
        {8, "even-blocks equivalence, 2n <= 8", 60, {"even-blocks"}},
    };

    bool all = true;
    for (const auto& c : criteria) {
        SuiteOptions opts;
        opts.only = c.checks;
        auto t0 = std::chrono::steady_clock::now();
        std::string note;
        bool ok = false;
        try {
            SuiteReport r = run_suite(opts);
            ok = r.passed();
            for (const auto& check : r.checks) {
                if (!check.passed) note += " [" + check.id + " failed" + (check.error.empty() ? "" : ": " + check.error) + "]";
            }
        } catch (const std::exception& e) {
            note = std::string(" [") + e.what() + "]";
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        report_line(ok, c.number, c.title, secs, c.target_s, note);
        all = all && ok && secs < c.target_s;
    }

    {
        auto t0 = std::chrono::steady_clock::now();
        const std::string cmd = "'" + cli + "' verify --suite paper --json";
        int s1 = 0, s2 = 0;
        std::string a = run_command(cmd, s1);
        std::string b = run_command(cmd, s2);
        bool ok = false;
        std::string note;
        try {
            json ja = json::parse(a), jb = json::parse(b);
            strip_timing(ja);
            strip_timing(jb);
            ok = ja.dump() == jb.dump() && s1 == 0 && s2 == 0;
            if (!ok) note = " [reports differ or the suite failed]";
        } catch (const std::exception& e) {
            note = std::string(" [") + e.what() + "]";
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        report_line(ok, 9, "two verify --json runs are identical apart from timing", secs, 1800, note);
        all = all && ok;
    }
    return all ? 0 : 1;
}
