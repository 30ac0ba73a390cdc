#include "phaselab/io.hpp"

#include <cstdio>
#include <istream>
#include <sstream>

namespace phaselab {
namespace {

std::size_t get_dim(const nlohmann::json& j) {
    if (!j.is_object()) throw IoError("expected a JSON object");
    if (!j.contains("dim") || !j["dim"].is_number_unsigned())
        throw IoError("missing or invalid \"dim\"");
    std::size_t d = j["dim"].get<std::size_t>();
    if (d == 0) throw IoError("\"dim\" must be positive");
    return d;
}

bool is_float_backend(const nlohmann::json& j) {
    std::string s = j.value("scalars", "rational");
    if (s == "rational") return false;
    if (s == "float") return true;
    throw IoError("\"scalars\" must be \"rational\" or \"float\"");
}

Rational entry_to_rational(const nlohmann::json& e) {
    if (e.is_string()) return parse_rational(e.get<std::string>());
    if (e.is_number_integer()) return Rational(static_cast<long>(e.get<std::int64_t>()));
    throw IoError("rational entries must be strings \"p/q\" or integers");
}

double entry_to_double(const nlohmann::json& e) {
    if (e.is_number()) return e.get<double>();
    if (e.is_string()) return backend_traits<Rational>::to_double(parse_rational(e.get<std::string>()));
    throw IoError("float entries must be JSON numbers");
}

template <class S>
Vec<S> parse_vec(const nlohmann::json& e, std::size_t d, S (*conv)(const nlohmann::json&)) {
    if (!e.is_array() || e.size() != d)
        throw IoError("vector must be an array of length dim");
    Vec<S> v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = conv(e[i]);
    return v;
}

template <class S>
Frame<S> parse_frame_t(const nlohmann::json& j, std::size_t d, S (*conv)(const nlohmann::json&)) {
    if (!j.contains("vectors") || !j["vectors"].is_array() || j["vectors"].empty())
        throw IoError("missing or empty \"vectors\"");
    std::vector<Vec<S>> vecs;
    vecs.reserve(j["vectors"].size());
    for (const auto& e : j["vectors"]) vecs.push_back(parse_vec<S>(e, d, conv));
    try {
        return Frame<S>(d, std::move(vecs));
    } catch (const std::invalid_argument& ex) {
        throw IoError(ex.what());
    }
}

template <class S>
Arrangement<S> parse_arrangement_t(const nlohmann::json& j, std::size_t d,
                                   S (*conv)(const nlohmann::json&)) {
    if (!j.contains("subspaces") || !j["subspaces"].is_array() || j["subspaces"].empty())
        throw IoError("missing or empty \"subspaces\"");
    std::vector<Subspace<S>> subs;
    try {
        for (const auto& e : j["subspaces"]) {
            if (!e.is_object()) throw IoError("subspace entries must be objects");
            if (e.contains("normal")) {
                subs.push_back(Subspace<S>::hyperplane(parse_vec<S>(e["normal"], d, conv)));
            } else if (e.contains("basis")) {
                const auto& cols = e["basis"];
                if (!cols.is_array() || cols.empty())
                    throw IoError("\"basis\" must be a nonempty array of columns");
                std::vector<Vec<S>> basis;
                for (const auto& c : cols) basis.push_back(parse_vec<S>(c, d, conv));
                subs.push_back(Subspace<S>::from_basis(Mat<S>::from_columns(basis)));
            } else {
                throw IoError("subspace needs a \"normal\" or \"basis\" field");
            }
        }
        return Arrangement<S>(d, std::move(subs));
    } catch (const std::invalid_argument& ex) {
        throw IoError(ex.what());
    }
}

std::string double_str(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

nlohmann::ordered_json vec_json(const Vec<Rational>& v) {
    auto a = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < v.dim(); ++i) a.push_back(rational_str(v[i]));
    return a;
}

nlohmann::ordered_json vec_json(const Vec<double>& v) {
    auto a = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < v.dim(); ++i) a.push_back(v[i]);
    return a;
}

template <class S>
nlohmann::ordered_json frame_json_t(const Frame<S>& f) {
    nlohmann::ordered_json j;
    j["dim"] = f.dim();
    j["scalars"] = backend_traits<S>::exact ? "rational" : "float";
    auto vecs = nlohmann::ordered_json::array();
    for (const auto& v : f.vectors()) vecs.push_back(vec_json(v));
    j["vectors"] = std::move(vecs);
    return j;
}

template <class S>
nlohmann::ordered_json arrangement_json_t(const Arrangement<S>& a) {
    nlohmann::ordered_json j;
    j["dim"] = a.d;
    j["scalars"] = backend_traits<S>::exact ? "rational" : "float";
    auto subs = nlohmann::ordered_json::array();
    for (const auto& w : a.subs) {
        nlohmann::ordered_json e;
        if (w.normal()) {
            e["normal"] = vec_json(*w.normal());
        } else {
            auto cols = nlohmann::ordered_json::array();
            const Mat<S>& b = w.basis();
            for (std::size_t c = 0; c < b.cols(); ++c) cols.push_back(vec_json(b.col(c)));
            e["basis"] = std::move(cols);
        }
        subs.push_back(std::move(e));
    }
    j["subspaces"] = std::move(subs);
    return j;
}

}  // namespace

FrameVar parse_frame_json(const nlohmann::json& j) {
    std::size_t d = get_dim(j);
    if (is_float_backend(j)) return parse_frame_t<double>(j, d, entry_to_double);
    return parse_frame_t<Rational>(j, d, entry_to_rational);
}

nlohmann::ordered_json frame_to_json(const Frame<Rational>& f) { return frame_json_t(f); }
nlohmann::ordered_json frame_to_json(const Frame<double>& f) { return frame_json_t(f); }

ArrangementVar parse_arrangement_json(const nlohmann::json& j) {
    std::size_t d = get_dim(j);
    if (is_float_backend(j)) return parse_arrangement_t<double>(j, d, entry_to_double);
    return parse_arrangement_t<Rational>(j, d, entry_to_rational);
}

nlohmann::ordered_json arrangement_to_json(const Arrangement<Rational>& a) {
    return arrangement_json_t(a);
}
nlohmann::ordered_json arrangement_to_json(const Arrangement<double>& a) {
    return arrangement_json_t(a);
}

BivariatePoly parse_poly_text(std::istream& in) {
    std::vector<BiTerm> terms;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        int e34, e44;
        std::string coef;
        if (!(ls >> e34)) continue;  // blank or comment-only line
        if (!(ls >> e44 >> coef))
            throw IoError("poly line " + std::to_string(lineno) +
                          ": expected \"e34 e44 coefficient\"");
        std::string extra;
        if (ls >> extra)
            throw IoError("poly line " + std::to_string(lineno) + ": trailing tokens");
        if (e34 < 0 || e44 < 0)
            throw IoError("poly line " + std::to_string(lineno) + ": negative exponent");
        BigInt c;
        if (c.set_str(coef, 10) != 0)
            throw IoError("poly line " + std::to_string(lineno) + ": bad coefficient");
        terms.push_back({e34, e44, std::move(c)});
    }
    return BivariatePoly(std::move(terms));
}

std::string poly_to_text(const BivariatePoly& f) {
    std::string out;
    for (const auto& t : f.terms()) {
        out += std::to_string(t.e34);
        out += ' ';
        out += std::to_string(t.e44);
        out += ' ';
        out += t.coef.get_str();
        out += '\n';
    }
    return out;
}

}  // namespace phaselab
