#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bifree/bifree_product.hpp"
#include "bifree/classifiers.hpp"
#include "bifree/cumulants.hpp"
#include "bifree/errors.hpp"
#include "bifree/harness.hpp"
#include "bifree/model_io.hpp"
#include "bifree/partitions.hpp"

using namespace bifree;
using nlohmann::json;

namespace {

enum Exit { kPass = 0, kVerdictFalse = 1, kUsage = 2, kDomain = 3, kLimit = 4 };

struct Globals {
    std::size_t max_degree = 6;
    bool json = false;
    std::uint64_t seed = 0;
    bool paranoid = false;
};

ChiMap chi_arg(const std::string& text)
{
    ChiMap chi = ChiMap::parse(text);
    if (chi.size() > 12) throw LimitError("chi maps are limited to 12 positions");
    return chi;
}

// "0" and "1" stand for the bottom and top partitions.
SetPartition partition_arg(const std::string& text, std::size_t n)
{
    if (text == "0") return SetPartition::zero(n);
    if (text == "1") return SetPartition::one(n);
    SetPartition p = SetPartition::parse(text, n);
    return p;
}

void print(const Globals& g, const json& j, const std::string& text)
{
    if (g.json) std::cout << j.dump(2) << "\n";
    else std::cout << text;
}

int cmd_enumerate(const Globals& g, const std::string& chi_text)
{
    ChiMap chi = chi_arg(chi_text);
    auto all = enumerate_bnc(chi);
    json list = json::array();
    std::string text;
    for (const auto& p : all) {
        list.push_back(p.str());
        text += p.str() + "\n";
    }
    print(g, {{"chi", chi.str()}, {"count", all.size()}, {"partitions", list}}, text);
    return kPass;
}

int cmd_mobius(const Globals& g, const std::string& chi_text, const std::string& tau_text, const std::string& lambda_text)
{
    ChiMap chi = chi_arg(chi_text);
    SetPartition tau = partition_arg(tau_text, chi.size());
    SetPartition lambda = partition_arg(lambda_text, chi.size());
    auto ctx = bnc_context(chi);
    for (const auto* p : {&tau, &lambda}) {
        if (!ctx->contains(*p)) throw DomainError(p->str() + " is not bi-non-crossing for chi " + chi.str());
    }
    std::int64_t mu = ctx->mobius(tau, lambda);
    print(g, {{"chi", chi.str()}, {"tau", tau.str()}, {"lambda", lambda.str()}, {"mu", mu}}, std::to_string(mu) + "\n");
    return kPass;
}

int cmd_kreweras(const Globals& g, const std::string& chi_text, const std::string& tau_text)
{
    ChiMap chi = chi_arg(chi_text);
    SetPartition tau = partition_arg(tau_text, chi.size());
    SetPartition k = kreweras_bnc(chi, tau);
    print(g, {{"chi", chi.str()}, {"tau", tau.str()}, {"kreweras", k.str()}}, k.str() + "\n");
    return kPass;
}

json value_json(const OraclePtr& model, const Word& w, const std::string& partition)
{
    CumulantTable table(model);
    json j{{"word", w.str()}, {"chi", w.chi().str()}, {"moment", model->moment(w).str()}};
    if (partition.empty()) {
        j["kappa"] = table.full(w).str();
    } else {
        SetPartition tau = partition_arg(partition, w.size());
        j["partition"] = tau.str();
        j["kappa"] = table.kappa(w, tau).str();
    }
    return j;
}

int cmd_cumulant(const Globals& g, const std::string& path, const std::string& word, const std::string& partition)
{
    OraclePtr model = load_model(path);
    Word w = Word::parse(word);
    if (w.empty()) throw ParseError("the word is empty");
    json j = value_json(model, w, partition);
    print(g, j, j["kappa"].get<std::string>() + "\n");
    return kPass;
}

OraclePtr joint_of(const std::vector<std::string>& paths)
{
    std::vector<OraclePtr> pairs;
    for (std::size_t k = 0; k < paths.size(); ++k) pairs.push_back(load_model(paths[k], static_cast<unsigned>(k)));
    if (pairs.size() == 1) return pairs.front();
    return bifree_product(pairs);
}

int cmd_product(const Globals& g, const std::vector<std::string>& paths, const std::vector<std::string>& words,
                const std::string& partition)
{
    if (paths.size() < 2) throw ParseError("product needs at least two model files");
    OraclePtr joint = joint_of(paths);
    json out{{"pairs", paths.size()}};
    std::string text;
    if (words.empty()) {
        std::vector<unsigned> ids(paths.size());
        for (unsigned k = 0; k < ids.size(); ++k) ids[k] = k;
        auto report = check_bifree(joint, ids, g.max_degree);
        json findings = json::array();
        for (const auto& f : report.findings) findings.push_back({{"word", f.word.str()}, {"kappa", f.kappa.str()}});
        out["bifree"] = report.bifree();
        out["max_degree"] = report.max_degree;
        out["mixed_words"] = report.words_checked;
        out["findings"] = findings;
        text = std::string(report.bifree() ? "bi-free" : "NOT bi-free") + " up to degree " +
               std::to_string(report.max_degree) + " (" + std::to_string(report.words_checked) + " mixed words)\n";
        for (const auto& f : report.findings) text += "  kappa(" + f.word.str() + ") = " + f.kappa.str() + "\n";
        print(g, out, text);
        return report.bifree() ? kPass : kVerdictFalse;
    }
    out["values"] = json::array();
    for (const auto& word : words) {
        Word w = Word::parse(word);
        if (w.empty()) throw ParseError("empty word");
        json j = value_json(joint, w, partition);
        text += "phi(" + w.str() + ") = " + j["moment"].get<std::string>() + "\n";
        text += "kappa(" + w.str() + ") = " + j["kappa"].get<std::string>() + "\n";
        out["values"].push_back(std::move(j));
    }
    print(g, out, text);
    return kPass;
}

int cmd_check(const Globals& g, const std::string& kind, const std::vector<std::string>& paths, int pair)
{
    OraclePtr model = joint_of(paths);
    std::optional<unsigned> id;
    if (pair >= 0) id = static_cast<unsigned>(pair);
    else if (paths.size() > 1) id = 0u;
    ClassReport r;
    if (kind == "birdiagonal") r = check_bi_r_diagonal(model, g.max_degree, id);
    else if (kind == "bieven") r = check_star_bi_even(model, g.max_degree, id);
    else if (kind == "bihaar") r = check_bi_haar(model, g.max_degree, id);
    else if (kind == "rcyclic2") r = check_r_cyclic_2x2(model, g.max_degree, id);
    else throw ParseError("unknown check kind '" + kind + "'");
    json j = to_json(r);
    j["kind"] = kind;
    std::string text = kind + ": " + (r.verdict ? "true" : "false") + " up to degree " + std::to_string(r.max_degree);
    if (!r.verdict) text += " (" + std::to_string(r.violations) + " violations)";
    text += "\n";
    for (const auto& w : r.witnesses) {
        text += "  " + w.kind + " " + w.word.str() + " [" + w.word.chi().str() + "] = " + w.value.str();
        if (!w.detail.empty()) text += " (" + w.detail + ")";
        text += "\n";
    }
    print(g, j, text);
    return r.verdict ? kPass : kVerdictFalse;
}

int cmd_verify(const Globals& g, const std::string& suite, const std::vector<std::string>& only, unsigned threads,
               std::size_t spectrum_degree)
{
    if (suite != "paper") throw ParseError("unknown suite '" + suite + "'");
    SuiteOptions opts;
    opts.only = only;
    opts.max_degree = g.max_degree;
    opts.seed = g.seed;
    opts.threads = threads;
    opts.spectrum_degree = spectrum_degree;
    SuiteReport r = run_suite(opts);
    print(g, to_json(r), to_text(r));
    return r.passed() ? kPass : kVerdictFalse;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Bi-free probability: BNC lattices, bi-free cumulants and products, classifiers"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--max-degree", g.max_degree, "Degree bound for checks")->check(CLI::Range(1, 64));
    app.add_flag("--json", g.json, "JSON output");
    app.add_option("--seed", g.seed, "Seed for random models");
    app.add_flag("--paranoid", g.paranoid, "Cross-check every cumulant against Moebius inversion");

    std::string chi, tau, lambda, path, word, partition, kind, suite = "paper";
    std::vector<std::string> paths, words, only;
    int pair = -1;
    unsigned threads = 0;
    std::size_t spectrum_degree = 8;

    auto* enumerate = app.add_subcommand("enumerate", "List BNC(chi) in canonical order");
    enumerate->add_option("chi", chi, "Word over {l, r}")->required();

    auto* mobius = app.add_subcommand("mobius", "Moebius function mu_BNC(tau, lambda)");
    mobius->add_option("chi", chi)->required();
    mobius->add_option("tau", tau, "Partition such as {1,2|3}; 0 and 1 for the bottom and top")->required();
    mobius->add_option("lambda", lambda)->required();

    auto* kreweras = app.add_subcommand("kreweras", "Kreweras complement in BNC(chi)");
    kreweras->add_option("chi", chi)->required();
    kreweras->add_option("tau", tau)->required();

    auto* cumulant = app.add_subcommand("cumulant", "Bi-free cumulant of a word in a model");
    cumulant->add_option("model", path, "Model file")->required();
    cumulant->add_option("word", word, "Tokens such as \"X Y*\" or \"ul ur*\"")->required();
    cumulant->add_option("partition", partition, "Optional partition in BNC of the word's chi");

    auto* product = app.add_subcommand("product", "Bi-free product of model files (file k is pair k, tokens X@k)");
    product->add_option("models", paths, "Model files")->required();
    product->add_option("--word,-w", words, "Word to evaluate; without words the product is checked for bi-freeness");
    product->add_option("--partition", partition, "Partition for the cumulant of each word");

    auto* check = app.add_subcommand("check", "Classify a model");
    check->add_option("kind", kind, "birdiagonal, bieven, bihaar or rcyclic2")
        ->required()
        ->check(CLI::IsMember({"birdiagonal", "bieven", "bihaar", "rcyclic2"}));
    check->add_option("models", paths, "Model file(s); several files form a bi-free product")->required();
    check->add_option("--pair", pair, "Pair to classify in a product");

    auto* verify = app.add_subcommand("verify", "Run the verification suite");
    verify->add_option("--suite", suite, "Suite name")->capture_default_str();
    verify->add_option("--only", only, "Comma separated check ids")->delimiter(',');
    verify->add_option("--threads", threads, "Worker threads (0 = all cores)");
    verify->add_option("--spectrum-degree", spectrum_degree, "Degree of the bi-Haar spectrum check")
        ->capture_default_str();
    auto* list = app.add_subcommand("list-checks", "Print the ids of the suite's checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    set_default_paranoid(g.paranoid);
    try {
        if (*enumerate) return cmd_enumerate(g, chi);
        if (*mobius) return cmd_mobius(g, chi, tau, lambda);
        if (*kreweras) return cmd_kreweras(g, chi, tau);
        if (*cumulant) return cmd_cumulant(g, path, word, partition);
        if (*product) return cmd_product(g, paths, words, partition);
        if (*check) return cmd_check(g, kind, paths, pair);
        if (*verify) return cmd_verify(g, suite, only, threads, spectrum_degree);
        if (*list) {
            for (const auto& id : check_ids()) std::cout << id << "\n";
            return kPass;
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDomain;
    } catch (const LimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kLimit;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kDomain;
    }
    return kUsage;
}
