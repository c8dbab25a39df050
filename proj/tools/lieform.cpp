// lieform: exact relative Lie algebra cohomology of reductive pairs and the
// cohomological obstruction battery for compact Clifford-Klein forms.
//
// Exit codes: 0 success, 2 input schema violation, 3 mathematical
// validation of input failed, 4 internal invariant violation.

#include <CLI11.hpp>

#include <lieform/catalog.hpp>
#include <lieform/report.hpp>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

namespace {

using namespace lieform;

std::size_t thread_budget(std::size_t jobs) {
    std::size_t n = std::max<unsigned>(1, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("LIEFORM_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 1) n = static_cast<std::size_t>(v);
    }
    return std::max<std::size_t>(1, std::min(n, jobs));
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::filesystem::path p(out_path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream of(p, std::ios::binary);
    if (!of) throw SchemaError("cannot write " + out_path);
    of << text;
}

std::string dims_line(const std::vector<std::size_t>& dims) {
    std::string s;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(dims[i]);
    }
    return s;
}

int cmd_cohomology(const std::string& file, bool relative, int cap_override) {
    Json j = load_json_file(file);
    const auto base = std::filesystem::path(file).parent_path();
    LieAlgebra g;
    std::vector<Vec> h_basis;
    if (j.contains("g")) {
        ParsedPair p = parse_pair(j, base);
        g = std::move(p.g);
        if (relative) h_basis = std::move(p.h_basis);
    } else {
        if (relative) throw SchemaError("--relative needs a pair file with h_basis");
        g = parse_lie_algebra(j);
    }
    g.require_jacobi();
    SubalgebraEmbedding h;
    if (h_basis.empty()) {
        h.target = &g;
        h.induced = LieAlgebra("0", 0, {});
    } else {
        h = make_subalgebra(g, h_basis, "h");
    }
    const int cap = cap_override >= 0 ? cap_override : static_cast<int>(g.dim() - h.dim());
    auto dims = cohomology(relative_complex(g, h, cap), cap).dims();
    std::cout << dims_line(dims) << "\n";
    return 0;
}

int cmd_primitives(const std::string& file) {
    Json j = load_json_file(file);
    LieAlgebra g = j.contains("g")
                       ? parse_pair(j, std::filesystem::path(file).parent_path()).g
                       : parse_lie_algebra(j);
    g.require_jacobi();
    PrimitiveSpace p = primitives(g);
    std::cout << "algebra: " << g.name() << "\n";
    std::cout << "dim P = " << p.rank() << "\n";
    std::cout << "degrees:";
    for (int d : p.degrees) std::cout << " " << d;
    std::cout << "\n";
    for (std::size_t i = 0; i < p.basis.size(); ++i)
        std::cout << "  P[" << i << "] (deg " << p.degrees[i] << ") = " << p.basis[i].str() << "\n";
    if (p.theta_on_p)
        std::cout << "theta split: dim(+1) = " << p.theta_plus.size()
                  << ", dim(-1) = " << p.theta_minus.size() << "\n";
    return 0;
}

int cmd_transgress(const std::string& file) {
    Json j = load_json_file(file);
    LieAlgebra g = j.contains("g")
                       ? parse_pair(j, std::filesystem::path(file).parent_path()).g
                       : parse_lie_algebra(j);
    g.require_jacobi();
    WeilContext ctx(g);
    PrimitiveSpace prims = primitives(g);
    InvariantPolynomials polys = invariant_polynomials(g, prims.max_degree() + 1);
    TransgressionData t = build_transgression(g, ctx, prims, polys);
    std::cout << "algebra: " << g.name() << "\n";
    for (std::size_t i = 0; i < t.tau.size(); ++i) {
        std::cout << "primitive[" << i << "] deg " << t.prims.degrees[i] << ": "
                  << t.prims.basis[i].str() << "\n";
        std::cout << "  tau = " << t.tau[i].str() << "\n";
        std::cout << "  certificate Omega verified (d_{g,g}(alpha + Omega) = -tau)\n";
    }
    if (t.theta_compatible) std::cout << "transgression is theta-compatible\n";
    return 0;
}

PairAnalysis::ConditionSet parse_conditions(const std::string& list) {
    if (list.empty()) return {};
    PairAnalysis::ConditionSet set;
    set.i = set.v = set.vi = set.viii = false;  // (vii) always runs
    std::stringstream ss(list);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok == "i") set.i = true;
        else if (tok == "v") set.v = true;
        else if (tok == "vi") set.vi = true;
        else if (tok == "vii") continue;
        else if (tok == "viii") set.viii = true;
        else throw SchemaError("unknown condition '" + tok + "' (expected i,v,vi,vii,viii)");
    }
    return set;
}

Json run_one_pair(const LieAlgebra& g, const std::vector<Vec>& h_basis, const std::string& name,
                  const PairAnalysis::ConditionSet& conds, int table_cap = -1) {
    PairAnalysis pa(make_pair_input(g, h_basis, name));
    ConditionReport rep = pa.run(conds);
    Verdict v = pa.make_verdict(rep);
    return pair_report_json(pa, rep, v, table_cap);
}

int cmd_check(const std::string& file, const std::string& conditions, const std::string& out,
              const std::string& format, int table_cap) {
    Json j = load_json_file(file);
    ParsedPair p = parse_pair(j, std::filesystem::path(file).parent_path());
    Json doc = report_document(
        {run_one_pair(p.g, p.h_basis, p.name, parse_conditions(conditions), table_cap)});
    write_output(format == "markdown" ? report_markdown(doc) : doc.dump(2) + "\n", out);
    return 0;
}

int cmd_catalog_run(bool all, const std::string& family, const std::string& out,
                    const std::string& format) {
    auto catalog_pairs = catalog::pairs();
    std::vector<catalog::CatalogPair> selected;
    for (auto& cp : catalog_pairs)
        if (all || cp.family == family) selected.push_back(std::move(cp));
    if (selected.empty()) throw SchemaError("catalog selector matched no pairs");

    std::vector<Json> results(selected.size());
    const std::size_t threads = thread_budget(selected.size());
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(threads);
    auto worker = [&](std::size_t tid) {
        try {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= selected.size()) break;
                results[i] = run_one_pair(selected[i].g, selected[i].h_basis, selected[i].name, {});
            }
        } catch (...) {
            errors[tid] = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    Json doc = report_document(std::move(results));
    std::string out_path = out;
    if (!out_path.empty() && std::filesystem::path(out_path).extension() != ".json")
        out_path = (std::filesystem::path(out_path) / "report.json").string();
    write_output(format == "markdown" ? report_markdown(doc) : doc.dump(2) + "\n", out_path);
    return 0;
}

int cmd_verify_witness(const std::string& file) {
    Json doc = load_json_file(file);
    auto failures = verify_report_witnesses(doc);
    if (failures.empty()) {
        std::cout << "all witnesses re-verified\n";
        return 0;
    }
    for (const auto& f : failures) std::cerr << "witness verification failed: " << f << "\n";
    throw InvariantViolation("report witnesses failed re-verification");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lieform: exact cohomological obstructions for reductive pairs"};
    app.require_subcommand(1);

    std::string file, out, format = "json", conditions, family;
    bool relative = false, all = false;
    int cap = -1;

    auto* coh = app.add_subcommand("cohomology", "relative Lie algebra cohomology dimensions");
    coh->add_option("file", file)->required();
    coh->add_flag("--relative", relative, "use the pair's h instead of h = 0");
    coh->add_option("--cap", cap, "top degree to report");

    auto* prim = app.add_subcommand("primitives", "primitive elements of (Lambda g*)^g");
    prim->add_option("file", file)->required();

    auto* trans = app.add_subcommand("transgress", "transgression tau with certificates");
    trans->add_option("file", file)->required();

    auto* check = app.add_subcommand("check", "run the obstruction condition battery on a pair");
    check->add_option("file", file)->required();
    check->add_option("--conditions", conditions,
                      "comma list from i,v,vi,vii,viii ((vii) always runs)");
    check->add_option("--cap", cap, "degree cap override for reported tables");
    check->add_option("-o,--output", out, "write the report here instead of stdout");
    check->add_option("--format", format)->check(CLI::IsMember({"json", "markdown"}));

    auto* cat = app.add_subcommand("catalog", "built-in pair catalog");
    auto* run = cat->add_subcommand("run", "run the battery over catalog pairs");
    run->add_flag("--all", all, "select every catalog pair");
    run->add_option("--family", family, "select pairs of one family (e.g. sl2)");
    run->add_option("-o,--output", out, "output file (.json) or directory");
    run->add_option("--format", format)->check(CLI::IsMember({"json", "markdown"}));

    auto* verify = app.add_subcommand("verify-witness", "re-verify witnesses in a report");
    verify->add_option("file", file)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*coh) return cmd_cohomology(file, relative, cap);
        if (*prim) return cmd_primitives(file);
        if (*trans) return cmd_transgress(file);
        if (*check) return cmd_check(file, conditions, out, format, cap);
        if (*cat && *run) return cmd_catalog_run(all, family, out, format);
        if (*cat) {
            std::cerr << "catalog: expected the 'run' subcommand\n";
            return 2;
        }
        if (*verify) return cmd_verify_witness(file);
    } catch (const lieform::SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return 2;
    } catch (const lieform::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 3;
    } catch (const lieform::InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
