#pragma once

#include <lieform/json_io.hpp>
#include <lieform/obstruction.hpp>

#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace lieform {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;

/// One pair's slice of a report document. Reports are deterministic: the
/// same configuration serializes to identical bytes regardless of thread
/// count, so no timing data lives here.
inline Json pair_report_json(const PairAnalysis& pa, const ConditionReport& rep,
                             const Verdict& verdict, int table_cap = -1) {
    const PairInput& in = pa.input();
    Json j;
    j["name"] = in.name;
    j["input"] = pair_json(in.name, in.g, in.h.basis_in_target);
    j["ranks"] = Json{{"g", in.rank_g},
                      {"g_theta", in.rank_g_theta},
                      {"h", in.rank_h},
                      {"k_h", in.rank_k_h}};

    auto dims_json = [table_cap](std::vector<std::size_t> dims) {
        if (table_cap >= 0 && dims.size() > static_cast<std::size_t>(table_cap) + 1)
            dims.resize(table_cap + 1);
        Json a = Json::array();
        for (auto d : dims) a.push_back(d);
        return a;
    };
    Json coh;
    coh["H(g,h)"] = dims_json(pa.h_gh().dims());
    coh["H(g,k_h)"] = dims_json(pa.h_gk().dims());
    coh["model_H(g,h)"] = dims_json(cohomology_psa(pa.model_gh().psa, pa.pair_cap()).dims());
    j["cohomology"] = std::move(coh);

    Json conds;
    auto put = [&](const char* key, const std::optional<bool>& val, Json witness) {
        if (!val) return;
        Json c;
        c["holds"] = *val;
        if (!*val && !witness.is_null()) c["witness"] = std::move(witness);
        conds[key] = std::move(c);
    };
    {
        Json w;
        if (rep.witness_i) {
            w["degree"] = rep.witness_i->degree;
            w["cocycle"] = element_json(rep.witness_i->cocycle);
            w["primitive"] = element_json(rep.witness_i->primitive);
        }
        put("i", rep.cond_i, rep.witness_i ? std::move(w) : Json());
    }
    {
        Json w;
        if (rep.witness_v) {
            w["sdeg"] = rep.witness_v->sdeg;
            w["poly"] = element_json(rep.witness_v->poly);
        }
        put("v", rep.cond_v, rep.witness_v ? std::move(w) : Json());
    }
    {
        Json w;
        if (rep.witness_vi) {
            w["sdeg"] = rep.witness_vi->sdeg;
            w["poly"] = element_json(rep.witness_vi->poly);
        }
        put("vi", rep.cond_vi, rep.witness_vi ? std::move(w) : Json());
    }
    {
        Json w;
        if (rep.witness_vii) {
            w["degree"] = rep.witness_vii->degree;
            w["form"] = element_json(rep.witness_vii->form);
        }
        put("vii", rep.cond_vii, rep.witness_vii ? std::move(w) : Json());
    }
    {
        Json w;
        if (rep.witness_viii_degree) w["degree"] = *rep.witness_viii_degree;
        put("viii", rep.cond_viii, rep.witness_viii_degree ? std::move(w) : Json());
    }
    j["conditions"] = std::move(conds);

    j["verdict"] = Json{{"rank_lhs", verdict.rank_lhs},
                        {"rank_rhs", verdict.rank_rhs},
                        {"obstructed", verdict.obstructed},
                        {"reason", reason_string(verdict.reason)}};
    j["caps"] = Json{{"pair", rep.cap_pair}, {"i", rep.cap_i}, {"sdeg_v", rep.sdeg_cap_v}};
    return j;
}

inline Json report_document(std::vector<Json> pair_reports) {
    Json doc;
    doc["tool_version"] = kToolVersion;
    doc["schema_version"] = kReportSchemaVersion;
    doc["pairs"] = Json::array();
    for (auto& p : pair_reports) doc["pairs"].push_back(std::move(p));
    return doc;
}

/// Markdown rendering of a report document; a view of the JSON, never a
/// source of truth.
inline std::string report_markdown(const Json& doc) {
    std::ostringstream os;
    os << "| pair | rank g | rank K | rank h | rank K_h | conditions | verdict |\n";
    os << "|---|---|---|---|---|---|---|\n";
    for (const auto& p : doc["pairs"]) {
        os << "| " << p["name"].get<std::string>() << " | " << p["ranks"]["g"] << " | "
           << p["ranks"]["g_theta"] << " | " << p["ranks"]["h"] << " | " << p["ranks"]["k_h"]
           << " | ";
        bool first = true;
        for (const char* key : {"i", "v", "vi", "vii", "viii"}) {
            if (!p["conditions"].contains(key)) continue;
            if (!first) os << ", ";
            first = false;
            os << "(" << key << ")=" << (p["conditions"][key]["holds"].get<bool>() ? "T" : "F");
        }
        os << " | " << (p["verdict"]["obstructed"].get<bool>() ? "OBSTRUCTED" : "no obstruction")
           << " (" << p["verdict"]["reason"].get<std::string>() << ") |\n";
    }
    return os.str();
}

/// Re-verifies every witness serialized in a report; the closed loop behind
/// the verify-witness command. Returns human-readable failures.
inline std::vector<std::string> verify_report_witnesses(const Json& doc) {
    std::vector<std::string> failures;
    if (!doc.contains("pairs") || !doc["pairs"].is_array()) {
        failures.push_back("$.pairs: missing or not an array");
        return failures;
    }
    std::size_t idx = 0;
    for (const auto& p : doc["pairs"]) {
        const std::string base = "$.pairs[" + std::to_string(idx++) + "]";
        std::string name = p.value("name", base);
        ParsedPair parsed = parse_pair(p.at("input"), ".", base + ".input");
        PairInput in = make_pair_input(parsed.g, parsed.h_basis, name);
        rebind(in);
        auto fail = [&](const std::string& what) { failures.push_back(name + ": " + what); };
        std::unique_ptr<PairAnalysis> pa_cache;
        auto analysis = [&]() -> PairAnalysis& {
            if (!pa_cache)
                pa_cache = std::make_unique<PairAnalysis>(
                    make_pair_input(parsed.g, parsed.h_basis, name));
            return *pa_cache;
        };

        const Json& conds = p.at("conditions");
        if (conds.contains("i") && conds["i"].contains("witness")) {
            const Json& w = conds["i"]["witness"];
            const int n = w.at("degree").get<int>();
            auto gens = form_generators(in.g);
            GradedElement z = element_from_json(w.at("cocycle"), gens, base + ".cocycle");
            GradedElement prim = element_from_json(w.at("primitive"), gens, base + ".primitive");
            Derivation d = ce_derivation(in.g, gens);
            if (!is_relative_cochain(in.g, in.h, z)) fail("(i) witness is not an (g,h) cochain");
            if (!d(z).is_zero()) fail("(i) witness is not closed");
            if (!is_relative_cochain(in.g, in.k_h, prim)) fail("(i) primitive is not a (g,k_h) cochain");
            if (!(d(prim) == z)) fail("(i) primitive does not bound the witness");
            // nonzero class in (g,h): not a coboundary there
            CochainComplex rel = relative_complex(in.g, in.h, n + 1);
            auto coords = rel.coords(n, z);
            if (!coords) {
                fail("(i) witness left the relative complex");
            } else if (n >= 1 && coboundary_preimage(rel, n, *coords)) {
                fail("(i) witness is already a coboundary in (g,h)");
            }
        }
        if (conds.contains("v") && conds["v"].contains("witness")) {
            const Json& w = conds["v"]["witness"];
            const int sdeg = w.at("sdeg").get<int>();
            PairAnalysis& pa = analysis();
            GradedElement q =
                element_from_json(w.at("poly"), pa.polys_h().poly_gens, base + ".poly");
            // invariant, theta-minus, outside the ideal
            bool invariant = true;
            for (std::size_t b = 0; b < pa.input().h.dim(); ++b) {
                Vec xh(pa.input().h.dim());
                xh[b] = 1;
                Derivation L = lie_derivative_on_polys(pa.input().h.induced, xh, pa.polys_h().poly_gens);
                if (!L(q).is_zero()) invariant = false;
            }
            if (!invariant) fail("(v) witness is not h-invariant");
            auto images = theta_poly_images(*pa.input().h.theta_on_h, pa.polys_h().poly_gens);
            if (!(substitute(q, pa.polys_h().poly_gens, {}, images) == q * rat(-1)))
                fail("(v) witness is not in the -theta eigenspace");
            auto [holds, wit] = pa.cond_v_ideal_membership(sdeg);
            if (holds) fail("(v) recomputation found no ideal escape at the reported degree");
        }
        if (conds.contains("vii") && conds["vii"].contains("witness")) {
            const Json& w = conds["vii"]["witness"];
            PairAnalysis& pa = analysis();
            auto h_forms = form_generators(pa.input().h.induced);
            GradedElement beta = element_from_json(w.at("form"), h_forms, base + ".form");
            auto [holds, wit] = pa.cond_vii_primitive_surjectivity();
            if (holds) fail("(vii) recomputation says the restriction is surjective");
            // beta must be a -theta primitive of h
            auto images = theta_form_images(*pa.input().h.theta_on_h, h_forms);
            if (!(substitute(beta, h_forms, images, {}) == beta * rat(-1)))
                fail("(vii) witness is not in the -theta eigenspace");
        }
        if (conds.contains("viii") && conds["viii"].contains("witness")) {
            PairAnalysis& pa = analysis();
            auto [holds, deg] = pa.cond_viii_collapse();
            const int reported = conds["viii"]["witness"].at("degree").get<int>();
            if (holds) fail("(viii) recomputation says the sequence collapses");
            else if (deg && *deg != reported)
                fail("(viii) non-collapsing degree differs on recomputation");
        }
        if (conds.contains("vi") && conds["vi"].contains("witness")) {
            PairAnalysis& pa = analysis();
            auto [holds, wit] = pa.cond_vi_indecomposable_surjectivity();
            if (holds) fail("(vi) recomputation says the induced map is surjective");
        }
    }
    return failures;
}

}  // namespace lieform
