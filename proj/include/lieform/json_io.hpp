#pragma once

#include <lieform/lie.hpp>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace lieform {

using Json = nlohmann::ordered_json;

/// Malformed input file; the message names the offending field.
struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Rational parse_rational_or_throw(const Json& j, const std::string& path) {
    if (!j.is_string()) throw SchemaError(path + ": expected a rational string");
    auto q = parse_rational(j.get<std::string>());
    if (!q) throw SchemaError(path + ": malformed rational '" + j.get<std::string>() + "'");
    return *q;
}

inline Matrix parse_matrix(const Json& j, std::size_t rows, std::size_t cols,
                           const std::string& path) {
    if (!j.is_array() || j.size() != rows) throw SchemaError(path + ": expected " + std::to_string(rows) + " rows");
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const Json& row = j[i];
        const std::string rp = path + "[" + std::to_string(i) + "]";
        if (!row.is_array() || row.size() != cols)
            throw SchemaError(rp + ": expected " + std::to_string(cols) + " entries");
        for (std::size_t k = 0; k < cols; ++k)
            m(i, k) = parse_rational_or_throw(row[k], rp + "[" + std::to_string(k) + "]");
    }
    return m;
}

/// Lie algebra schema:
/// { "name", "dimension", "basis", "brackets": [[i, j, [[k, "p/q"], ...]]],
///   "theta"?, "rank"?, "invariant_form"? } with 0-based indices.
inline LieAlgebra parse_lie_algebra(const Json& j, const std::string& path = "$") {
    if (!j.is_object()) throw SchemaError(path + ": expected an object");
    if (!j.contains("dimension") || !j["dimension"].is_number_integer() ||
        j["dimension"].get<long>() < 0)
        throw SchemaError(path + ".dimension: expected a nonnegative integer");
    const std::size_t dim = j["dimension"].get<std::size_t>();
    std::string name = j.value("name", std::string("g"));

    std::vector<std::string> basis;
    if (j.contains("basis")) {
        if (!j["basis"].is_array() || j["basis"].size() != dim)
            throw SchemaError(path + ".basis: expected " + std::to_string(dim) + " names");
        for (const auto& b : j["basis"]) {
            if (!b.is_string()) throw SchemaError(path + ".basis: expected strings");
            basis.push_back(b.get<std::string>());
        }
    }
    LieAlgebra g(name, dim, basis);

    if (j.contains("brackets")) {
        if (!j["brackets"].is_array()) throw SchemaError(path + ".brackets: expected an array");
        std::size_t idx = 0;
        std::map<std::pair<long, long>, Vec> seen;
        for (const auto& entry : j["brackets"]) {
            const std::string ep = path + ".brackets[" + std::to_string(idx++) + "]";
            if (!entry.is_array() || entry.size() != 3)
                throw SchemaError(ep + ": expected [i, j, [[k, coeff], ...]]");
            if (!entry[0].is_number_integer() || !entry[1].is_number_integer())
                throw SchemaError(ep + ": indices must be integers");
            const long i = entry[0].get<long>(), jj = entry[1].get<long>();
            if (i < 0 || jj < 0 || i >= static_cast<long>(dim) || jj >= static_cast<long>(dim))
                throw SchemaError(ep + ": index out of range");
            Vec v(dim);
            if (!entry[2].is_array()) throw SchemaError(ep + "[2]: expected an array");
            for (const auto& term : entry[2]) {
                if (!term.is_array() || term.size() != 2 || !term[0].is_number_integer())
                    throw SchemaError(ep + "[2]: expected [k, coeff] pairs");
                const long k = term[0].get<long>();
                if (k < 0 || k >= static_cast<long>(dim)) throw SchemaError(ep + "[2]: index out of range");
                v[k] = parse_rational_or_throw(term[1], ep + "[2]");
            }
            if (i == jj) {
                for (const auto& c : v)
                    if (sgn(c) != 0) throw SchemaError(ep + ": [X_i, X_i] must be zero");
                continue;
            }
            // both orientations may appear; they must agree up to sign
            auto mirror = seen.find({jj, i});
            if (mirror != seen.end()) {
                for (std::size_t k = 0; k < dim; ++k)
                    if (sgn(mirror->second[k] + v[k]) != 0)
                        throw SchemaError(ep + ": bracket contradicts the entry for [" +
                                          std::to_string(jj) + ", " + std::to_string(i) + "]");
            }
            auto dup = seen.find({i, jj});
            if (dup != seen.end() && dup->second != v)
                throw SchemaError(ep + ": duplicate bracket with different coefficients");
            seen[{i, jj}] = v;
            g.set_bracket(i, jj, std::move(v));
        }
    }
    if (j.contains("theta")) g.theta = parse_matrix(j["theta"], dim, dim, path + ".theta");
    if (j.contains("rank")) {
        if (!j["rank"].is_number_integer()) throw SchemaError(path + ".rank: expected an integer");
        g.declared_rank = j["rank"].get<int>();
    }
    if (j.contains("invariant_form"))
        g.invariant_form = parse_matrix(j["invariant_form"], dim, dim, path + ".invariant_form");
    return g;
}

inline Json rational_matrix_json(const Matrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_string(m(i, k)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json lie_algebra_json(const LieAlgebra& g) {
    Json j;
    j["name"] = g.name();
    j["dimension"] = g.dim();
    j["basis"] = g.basis_names();
    Json brackets = Json::array();
    for (std::size_t i = 0; i < g.dim(); ++i)
        for (std::size_t k = i + 1; k < g.dim(); ++k) {
            const Vec& v = g.bracket(i, k);
            Json terms = Json::array();
            for (std::size_t a = 0; a < v.size(); ++a)
                if (sgn(v[a]) != 0) terms.push_back(Json::array({a, to_string(v[a])}));
            if (!terms.empty()) brackets.push_back(Json::array({i, k, std::move(terms)}));
        }
    j["brackets"] = std::move(brackets);
    if (g.theta) j["theta"] = rational_matrix_json(*g.theta);
    if (g.declared_rank) j["rank"] = *g.declared_rank;
    if (g.invariant_form) j["invariant_form"] = rational_matrix_json(*g.invariant_form);
    return j;
}

struct ParsedPair {
    std::string name;
    LieAlgebra g;
    std::vector<Vec> h_basis;
};

/// Pair schema: { "name"?, "g": <inline object or file-ref string>,
/// "h_basis": [[coeff, ...], ...] }. File references resolve relative to
/// the pair file's directory.
inline ParsedPair parse_pair(const Json& j, const std::filesystem::path& base_dir,
                             const std::string& path = "$") {
    if (!j.is_object() || !j.contains("g")) throw SchemaError(path + ": expected an object with 'g'");
    ParsedPair p;
    if (j["g"].is_string()) {
        std::filesystem::path ref = base_dir / j["g"].get<std::string>();
        std::ifstream in(ref);
        if (!in) throw SchemaError(path + ".g: cannot open referenced file " + ref.string());
        Json inner;
        try {
            in >> inner;
        } catch (const std::exception& e) {
            throw SchemaError(path + ".g: invalid JSON in " + ref.string() + ": " + e.what());
        }
        p.g = parse_lie_algebra(inner, ref.string() + ":$");
    } else {
        p.g = parse_lie_algebra(j["g"], path + ".g");
    }
    if (!j.contains("h_basis") || !j["h_basis"].is_array())
        throw SchemaError(path + ".h_basis: expected an array of vectors");
    std::size_t idx = 0;
    for (const auto& row : j["h_basis"]) {
        const std::string rp = path + ".h_basis[" + std::to_string(idx++) + "]";
        if (!row.is_array() || row.size() != p.g.dim())
            throw SchemaError(rp + ": expected " + std::to_string(p.g.dim()) + " coordinates");
        Vec v;
        for (std::size_t k = 0; k < row.size(); ++k)
            v.push_back(parse_rational_or_throw(row[k], rp + "[" + std::to_string(k) + "]"));
        p.h_basis.push_back(std::move(v));
    }
    p.name = j.value("name", p.g.name() + " pair");
    return p;
}

inline Json pair_json(const std::string& name, const LieAlgebra& g,
                      const std::vector<Vec>& h_basis) {
    Json j;
    j["name"] = name;
    j["g"] = lie_algebra_json(g);
    Json rows = Json::array();
    for (const auto& v : h_basis) {
        Json row = Json::array();
        for (const auto& c : v) row.push_back(to_string(c));
        rows.push_back(std::move(row));
    }
    j["h_basis"] = std::move(rows);
    return j;
}

inline Json load_json_file(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw SchemaError("cannot open " + file.string());
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw SchemaError("invalid JSON in " + file.string() + ": " + e.what());
    }
    return j;
}

/// Sparse element serialization: a list of [[odd indices], [even exponents],
/// coeff] triples in canonical monomial order.
inline Json element_json(const GradedElement& e) {
    Json terms = Json::array();
    for (const auto& [m, c] : e.terms()) {
        Json odd = Json::array();
        for (std::size_t i = 0; i < e.generators()->odd_count(); ++i)
            if (m.odd_bits >> i & 1) odd.push_back(i);
        Json even = Json::array();
        for (auto x : m.even_exp) even.push_back(x);
        terms.push_back(Json::array({std::move(odd), std::move(even), to_string(c)}));
    }
    return terms;
}

inline GradedElement element_from_json(const Json& j, const GenSetPtr& gens,
                                       const std::string& path) {
    if (!j.is_array()) throw SchemaError(path + ": expected an array of terms");
    GradedElement e(gens);
    std::size_t idx = 0;
    for (const auto& term : j) {
        const std::string tp = path + "[" + std::to_string(idx++) + "]";
        if (!term.is_array() || term.size() != 3)
            throw SchemaError(tp + ": expected [[odd], [even], coeff]");
        Monomial m{0, std::vector<std::uint16_t>(gens->even_count())};
        for (const auto& o : term[0]) {
            if (!o.is_number_integer() || o.get<long>() < 0 ||
                o.get<long>() >= static_cast<long>(gens->odd_count()))
                throw SchemaError(tp + "[0]: odd index out of range");
            m.odd_bits |= std::uint64_t{1} << o.get<long>();
        }
        if (!term[1].is_array() || term[1].size() != gens->even_count())
            throw SchemaError(tp + "[1]: expected " + std::to_string(gens->even_count()) + " exponents");
        for (std::size_t k = 0; k < gens->even_count(); ++k) {
            if (!term[1][k].is_number_integer() || term[1][k].get<long>() < 0)
                throw SchemaError(tp + "[1]: exponents must be nonnegative integers");
            m.even_exp[k] = static_cast<std::uint16_t>(term[1][k].get<long>());
        }
        e.add_term(std::move(m), parse_rational_or_throw(term[2], tp + "[2]"));
    }
    return e;
}

}  // namespace lieform
