#include "bifree/model_io.hpp"

#include <cmath>
#include <fstream>

#include "bifree/errors.hpp"

namespace bifree {

namespace {

using nlohmann::json;

Scalar scalar_of(const json& v)
{
    if (v.is_string()) return Scalar::parse(v.get<std::string>());
    if (v.is_number_integer()) return Scalar(v.get<std::int64_t>());
    throw ParseError("matrix entries and table values must be strings like \"p/q\" or integers");
}

Matrix matrix_of(const json& j, const char* name)
{
    if (!j.contains(name) || !j[name].is_array()) throw ParseError(std::string("matrix model needs an array \"") + name + "\"");
    const auto& a = j[name];
    auto d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(a.size()))));
    if (d == 0 || d * d != a.size()) throw ParseError(std::string("\"") + name + "\" must hold d*d entries");
    std::vector<Scalar> entries;
    for (const auto& v : a) entries.push_back(scalar_of(v));
    return Matrix(d, std::move(entries));
}

std::size_t size_field(const json& j, const char* name, std::size_t fallback)
{
    if (!j.contains(name)) return fallback;
    if (!j[name].is_number_unsigned() && !(j[name].is_number_integer() && j[name].get<std::int64_t>() >= 0)) {
        throw ParseError(std::string("\"") + name + "\" must be a nonnegative integer");
    }
    return j[name].get<std::size_t>();
}

Word onto_pair(const Word& w, unsigned id)
{
    Word out;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (w[k].pair() != w[0].pair()) throw ParseError("table word '" + w.str() + "' mixes pairs");
        out.push_back(Letter(id, w[k].base(), w[k].starred()));
    }
    return out;
}

} // namespace

OraclePtr model_from_json(const json& j, std::optional<unsigned> pair)
{
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) throw ParseError("model needs a string \"type\"");
    const std::string type = j["type"];
    unsigned id = pair ? *pair : static_cast<unsigned>(size_field(j, "pair", 0));
    if (id > kMaxPairId) throw ParseError("pair id out of range");
    std::size_t degree = size_field(j, "degree", 64);

    if (type == "shift_bihaar") return std::make_shared<const ShiftBiHaarModel>(id, degree);
    if (type == "matrix_state") {
        Matrix x = matrix_of(j, "x");
        Matrix y = matrix_of(j, "y");
        if (x.dim() != y.dim()) throw ParseError("\"x\" and \"y\" must have the same dimension");
        return std::make_shared<const MatrixStateModel>(x, y, id, degree);
    }
    if (type == "table") {
        if (!j.contains("degree")) throw ParseError("table model needs \"degree\"");
        bool default_zero = false;
        if (j.contains("default_zero")) {
            if (!j["default_zero"].is_boolean()) throw ParseError("\"default_zero\" must be a boolean");
            default_zero = j["default_zero"];
        }
        std::map<Word, Scalar> entries;
        if (j.contains("entries")) {
            if (!j["entries"].is_object()) throw ParseError("\"entries\" must be an object");
            for (const auto& [key, value] : j["entries"].items()) {
                Word w = onto_pair(Word::parse(key), id);
                if (!entries.emplace(w, scalar_of(value)).second) throw ParseError("duplicate table word '" + key + "'");
            }
        }
        return std::make_shared<const TableModel>(std::vector<unsigned>{id}, std::move(entries), degree, default_zero);
    }
    throw ParseError("unknown model type '" + type + "'");
}

OraclePtr load_model(const std::string& path, std::optional<unsigned> pair)
{
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read model file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError("model file '" + path + "': " + e.what());
    }
    return model_from_json(j, pair);
}

json matrix_model_json(const Matrix& x, const Matrix& y)
{
    auto flat = [](const Matrix& m) {
        json a = json::array();
        for (std::size_t i = 0; i < m.dim(); ++i)
            for (std::size_t k = 0; k < m.dim(); ++k) a.push_back(m.at(i, k).str());
        return a;
    };
    return {{"type", "matrix_state"}, {"x", flat(x)}, {"y", flat(y)}};
}

} // namespace bifree
