#pragma once

#include <lieform/cartan.hpp>
#include <lieform/sullivan.hpp>
#include <lieform/transgression.hpp>

#include <string>
#include <vector>

namespace lieform {

/// Rewrites an invariant polynomial of h as a polynomial in the
/// transgression generators tau_h(beta_j). Solvable exactly because s tau
/// is a degreewise algebra isomorphism; failure is fatal.
inline std::vector<std::pair<Monomial, Rational>> express_in_transgression_generators(
    const GradedElement& q, const TransgressionData& th, const GenSetPtr& shifted_gens, int sdeg) {
    auto tuples = basis_of_degree(*shifted_gens, sdeg);
    std::vector<GradedElement> products;
    for (const auto& t : tuples) {
        GradedElement prod = GradedElement::unit(th.polys.poly_gens);
        for (std::size_t j = 0; j < th.tau.size(); ++j)
            for (std::uint16_t k = 0; k < t.even_exp[j]; ++k) prod = multiply(prod, th.tau[j]);
        products.push_back(std::move(prod));
    }
    std::map<Monomial, std::size_t> rows;
    for (const auto& p : products)
        for (const auto& [m, c] : p.terms()) rows.emplace(m, 0);
    for (const auto& [m, c] : q.terms()) rows.emplace(m, 0);
    std::size_t r = 0;
    for (auto& [m, idx] : rows) idx = r++;
    Matrix A(rows.size(), products.size());
    for (std::size_t j = 0; j < products.size(); ++j)
        for (const auto& [m, c] : products[j].terms()) A(rows.at(m), j) = c;
    Vec b(rows.size());
    for (const auto& [m, c] : q.terms()) b[rows.at(m)] = c;
    auto sol = solve(A, b);
    if (!sol)
        throw InvariantViolation(
            "invariant polynomial is not expressible in the transgression generators");
    std::vector<std::pair<Monomial, Rational>> out;
    for (std::size_t j = 0; j < tuples.size(); ++j)
        if (sgn((*sol)[j]) != 0) out.push_back({tuples[j], (*sol)[j]});
    return out;
}

/// Generator name/degree lists for the primitive spaces of a pair.
inline std::vector<std::pair<std::string, int>> primitive_generator_list(const PrimitiveSpace& p,
                                                                         const std::string& prefix) {
    std::vector<std::pair<std::string, int>> out;
    for (std::size_t i = 0; i < p.degrees.size(); ++i)
        out.push_back({prefix + std::to_string(i + 1), p.degrees[i]});
    return out;
}

/// The pure Sullivan model Lambda P_{g*} (x) (S sh*)^h of a reductive pair
/// (g, h), with (S sh*)^h presented on the polynomial generators tau_h(beta):
/// the differential sends the i-th primitive of g to tau_g(alpha_i)|_h
/// rewritten in those generators.
struct PairModel {
    PureSullivanAlgebra psa;
    std::vector<std::vector<std::pair<Monomial, Rational>>> f_spec;  // per primitive of g
};

inline PairModel build_pair_model(const TransgressionData& tg, const TransgressionData& th,
                                  const SubalgebraEmbedding& h, const std::string& u_prefix = "a",
                                  const std::string& v_prefix = "b") {
    PairModel pm;
    auto u = primitive_generator_list(tg.prims, u_prefix);
    auto v = primitive_generator_list(th.prims, v_prefix);
    GenSetPtr sv = [&] {
        std::vector<GeneratorSet::Generator> even;
        for (const auto& [name, deg] : v) even.push_back({"s" + name, deg + 1});
        return make_generators({}, std::move(even));
    }();
    for (std::size_t i = 0; i < tg.tau.size(); ++i) {
        GradedElement restricted = restrict_poly(tg.tau[i], h, th.polys.poly_gens);
        pm.f_spec.push_back(express_in_transgression_generators(restricted, th, sv,
                                                                tg.prims.degrees[i] + 1));
    }
    pm.psa = make_psa(u, v, pm.f_spec);
    return pm;
}

/// The Cor-style relative model for g ⊃ h ⊃ l: Lambda P_g (x) S sP_h (x)
/// Lambda P_h (x) S sP_l with f = s tau_{g,h} and g = s tau_{h,l}.
inline RelativeModel build_pair_relative_model(const TransgressionData& tg,
                                               const TransgressionData& th,
                                               const TransgressionData& tl,
                                               const SubalgebraEmbedding& h,
                                               const SubalgebraEmbedding& l_in_h, int cap) {
    auto u = primitive_generator_list(tg.prims, "a");
    auto v = primitive_generator_list(th.prims, "b");
    auto w = primitive_generator_list(tl.prims, "c");
    PairModel gh = build_pair_model(tg, th, h);
    // s tau_{h,l} on the fiber generators
    GenSetPtr sw = [&] {
        std::vector<GeneratorSet::Generator> even;
        for (const auto& [name, deg] : w) even.push_back({"s" + name, deg + 1});
        return make_generators({}, std::move(even));
    }();
    std::vector<std::vector<std::pair<Monomial, Rational>>> g_spec;
    for (std::size_t j = 0; j < th.tau.size(); ++j) {
        GradedElement restricted = restrict_poly(th.tau[j], l_in_h, tl.polys.poly_gens);
        g_spec.push_back(
            express_in_transgression_generators(restricted, tl, sw, th.prims.degrees[j] + 1));
    }
    return relative_model(u, v, w, gh.f_spec, g_spec, cap);
}

/// The Chevalley homomorphism from the pair model into the Cartan model:
/// a_i -> alpha_i (x) 1 + (1 (x) rest)(Omega(alpha_i)), sb_j -> 1 (x)
/// tau_h(beta_j). An algebra map; commutes with the differentials exactly.
class ChevalleyHom {
public:
    ChevalleyHom(const TransgressionData& tg, const TransgressionData& th,
                 const SubalgebraEmbedding& h, const GenSetPtr& psa_gens,
                 const GenSetPtr& cartan_gens)
        : psa_gens_(psa_gens), cartan_gens_(cartan_gens) {
        const std::size_t n = h.target->dim();
        for (std::size_t i = 0; i < tg.prims.basis.size(); ++i) {
            GradedElement im = epsilon(tg.prims.basis[i], cartan_gens);
            // (1 (x) rest)(Omega): forms stay, polynomial part restricts to h
            std::vector<GradedElement> odd_images, even_images;
            for (std::size_t a = 0; a < n; ++a) odd_images.push_back(GradedElement::odd_gen(cartan_gens, a));
            for (std::size_t a = 0; a < n; ++a) {
                GradedElement r(cartan_gens);
                for (std::size_t b = 0; b < h.dim(); ++b)
                    if (sgn(h.basis_in_target[b][a]) != 0)
                        r += GradedElement::even_gen(cartan_gens, b) * h.basis_in_target[b][a];
                even_images.push_back(std::move(r));
            }
            im += substitute(tg.omega[i], cartan_gens, odd_images, even_images);
            odd_images_.push_back(std::move(im));
        }
        for (std::size_t j = 0; j < th.tau.size(); ++j) {
            GradedElement lifted(cartan_gens);
            for (const auto& [m, c] : th.tau[j].terms()) lifted.add_term(Monomial{0, m.even_exp}, c);
            even_images_.push_back(std::move(lifted));
        }
    }

    GradedElement operator()(const GradedElement& e) const {
        if (!same_generators(e.generators(), psa_gens_))
            throw std::invalid_argument("ChevalleyHom: input is not a pair-model element");
        return substitute(e, cartan_gens_, odd_images_, even_images_);
    }

private:
    GenSetPtr psa_gens_, cartan_gens_;
    std::vector<GradedElement> odd_images_;
    std::vector<GradedElement> even_images_;
};

}  // namespace lieform
