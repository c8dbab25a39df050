#pragma once

#include <lieform/complexes.hpp>
#include <lieform/transgression.hpp>

#include <optional>
#include <vector>

namespace lieform {

/// The Cartan model ((Lambda g* (x) S sh*)^h, d_{g,h}) of h-equivariant
/// cohomology of Lambda g*, materialized degreewise. Invariance is imposed
/// as the joint kernel of the diagonal h-action; no group averaging exists
/// here.
struct CartanComplexSpec {
    GenSetPtr gens;  // odd = g* basis, even = s h* basis
    CochainComplex complex;
};

inline CartanComplexSpec build_cartan_complex(const LieAlgebra& g, const SubalgebraEmbedding& h,
                                              int cap) {
    CartanComplexSpec spec;
    spec.gens = cartan_generators(g, h.induced);
    std::vector<LinOp> ops;
    for (std::size_t b = 0; b < h.dim(); ++b) {
        Vec xh(h.dim());
        xh[b] = 1;
        Derivation L = lie_derivative_on_forms(g, h.basis_in_target[b], spec.gens, &h.induced, &xh);
        ops.push_back([L](const GradedElement& e) { return L(e); });
    }
    Derivation d = cartan_derivation(g, h.basis_in_target, spec.gens);
    spec.complex = build_complex(spec.gens, ops, [d](const GradedElement& e) { return d(e); }, cap);
    return spec;
}

/// alpha -> alpha (x) 1, the inclusion of the relative complex into the
/// Cartan model.
inline GradedElement epsilon(const GradedElement& relative_cochain, const GenSetPtr& cartan_gens) {
    GradedElement out(cartan_gens);
    for (const auto& [m, c] : relative_cochain.terms())
        out.add_term(Monomial{m.odd_bits, std::vector<std::uint16_t>(cartan_gens->even_count())}, c);
    return out;
}

/// True when iota(X) e = 0 and L(X) e = 0 for every X in h.
inline bool is_relative_cochain(const LieAlgebra& g, const SubalgebraEmbedding& h,
                                const GradedElement& e) {
    for (std::size_t b = 0; b < h.dim(); ++b) {
        if (!interior_derivation(h.basis_in_target[b], e).is_zero()) return false;
        Derivation L = lie_derivative_on_forms(g, h.basis_in_target[b], e.generators());
        if (!L(e).is_zero()) return false;
    }
    return true;
}

/// Checked inclusion: rejects forms that are not horizontal h-invariant.
inline GradedElement epsilon_checked(const LieAlgebra& g, const SubalgebraEmbedding& h,
                                     const GradedElement& relative_cochain,
                                     const GenSetPtr& cartan_gens) {
    if (!is_relative_cochain(g, h, relative_cochain))
        throw ValidationError("epsilon: input is not a horizontal h-invariant form");
    return epsilon(relative_cochain, cartan_gens);
}

/// A theta-stable h-invariant complement of h in g: the orthogonal
/// complement under B_theta(x, y) = -B(x, theta y). Errors when the form
/// degenerates on h; a user-supplied complement overrides the computation.
inline std::vector<Vec> invariant_complement(const LieAlgebra& g, const SubalgebraEmbedding& h,
                                             const std::optional<std::vector<Vec>>& user_complement =
                                                 std::nullopt) {
    const std::size_t n = g.dim(), m = h.dim();
    if (user_complement) {
        if (user_complement->size() != n - m)
            throw ValidationError("supplied complement has the wrong dimension");
        return *user_complement;
    }
    if (!g.invariant_form)
        throw ValidationError("no invariant form available on " + g.name() +
                              " to construct the complement of " + h.induced.name());
    const Matrix theta = g.theta ? *g.theta : Matrix::identity(n);
    Matrix M = (*g.invariant_form * theta) * Rational(-1);  // entries B_theta(e_i, e_j)
    Matrix constraints(m, n);
    for (std::size_t b = 0; b < m; ++b) {
        Vec row = M * h.basis_in_target[b];
        for (std::size_t i = 0; i < n; ++i) constraints(b, i) = row[i];
    }
    auto v = kernel_basis(constraints);
    if (v.size() != n - m)
        throw ValidationError("B_theta degenerates on " + h.induced.name() +
                              "; supply an invariant complement explicitly");

    // [h, V] must stay in V
    Matrix span = Matrix::from_columns(v, n);
    for (std::size_t b = 0; b < m; ++b)
        for (const auto& vb : v)
            if (!solve(span, g.bracket_of(h.basis_in_target[b], vb)))
                throw ValidationError("computed complement of " + h.induced.name() +
                                      " is not h-invariant");
    return v;
}

/// The inverse-of-epsilon machinery psi_V : alpha (x) sQ -> pi_V(alpha) ^
/// chi(sQ), where pi_V projects along h and chi(sF) = -F([. , .]) on V.
class PsiV {
public:
    PsiV(const LieAlgebra& g, const SubalgebraEmbedding& h, const GenSetPtr& form_gens,
         const std::vector<Vec>& complement)
        : form_gens_(form_gens) {
        const std::size_t n = g.dim(), m = h.dim();
        // S = [h basis | complement basis], P = projection onto V along h
        std::vector<Vec> cols = h.basis_in_target;
        cols.insert(cols.end(), complement.begin(), complement.end());
        Matrix S = Matrix::from_columns(cols, n);
        auto Sinv = solve_many(S, Matrix::identity(n));
        if (!Sinv) throw ValidationError("h and its complement do not span g");
        Matrix select(n, n);
        for (std::size_t j = m; j < n; ++j) select(j, j) = 1;
        Matrix P = S * select * *Sinv;

        odd_images_.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            GradedElement im(form_gens_);
            for (std::size_t k = 0; k < n; ++k)
                if (sgn(P(i, k)) != 0) im += GradedElement::odd_gen(form_gens_, k) * P(i, k);
            odd_images_.push_back(std::move(im));
        }
        // chi(sF^j): the 2-form F^j([P x, P y]), with F^j extended by 0 on V.
        // The sign matches the CE convention used here, d alpha (X, Y) =
        // alpha([X, Y]); texts that put a minus there flip chi as well.
        std::vector<std::vector<Vec>> bracket_coords(n);  // S-coordinates of [P e_k, P e_l]
        for (std::size_t k = 0; k < n; ++k) {
            bracket_coords[k].resize(n);
            for (std::size_t l = k + 1; l < n; ++l)
                bracket_coords[k][l] = *Sinv * g.bracket_of(P * g.unit(k), P * g.unit(l));
        }
        for (std::size_t j = 0; j < m; ++j) {
            GradedElement im(form_gens_);
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = k + 1; l < n; ++l) {
                    const Rational& coeff = bracket_coords[k][l][j];
                    if (sgn(coeff) != 0)
                        im += multiply(GradedElement::odd_gen(form_gens_, k),
                                       GradedElement::odd_gen(form_gens_, l)) *
                              coeff;
                }
            even_images_.push_back(std::move(im));
        }
    }

    GradedElement operator()(const GradedElement& cartan_cochain) const {
        return substitute(cartan_cochain, form_gens_, odd_images_, even_images_);
    }

private:
    GenSetPtr form_gens_;
    std::vector<GradedElement> odd_images_;
    std::vector<GradedElement> even_images_;
};

/// Chern-Weil representative of an invariant polynomial Q in (S sh*)^h:
/// psi_V(1 (x) Q), a cocycle of the relative complex. Its class is read off
/// against a built relative cohomology.
inline GradedElement chern_weil_representative(const PsiV& psi, const GenSetPtr& cartan_gens,
                                               const GradedElement& q_in_h_polys) {
    GradedElement lifted(cartan_gens);
    for (const auto& [m, c] : q_in_h_polys.terms())
        lifted.add_term(Monomial{0, m.even_exp}, c);
    return psi(lifted);
}

}  // namespace lieform
