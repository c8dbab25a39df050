#pragma once

#include <lieform/graded.hpp>
#include <lieform/lie.hpp>

#include <map>
#include <optional>
#include <vector>

namespace lieform {

/// Generator sets attached to a Lie algebra. Forms live in degree 1, the
/// shifted duals in degree 2.
inline GenSetPtr form_generators(const LieAlgebra& g) {
    std::vector<GeneratorSet::Generator> odd;
    for (const auto& n : g.basis_names()) odd.push_back({n + "*", 1});
    return make_generators(std::move(odd), {});
}

inline GenSetPtr multivector_generators(const LieAlgebra& g) {
    std::vector<GeneratorSet::Generator> odd;
    for (const auto& n : g.basis_names()) odd.push_back({n, 1});
    return make_generators(std::move(odd), {});
}

inline GenSetPtr poly_generators(const LieAlgebra& g) {
    std::vector<GeneratorSet::Generator> even;
    for (const auto& n : g.basis_names()) even.push_back({"s" + n + "*", 2});
    return make_generators({}, std::move(even));
}

/// Lambda g* (x) S s h*: the carrier of the Cartan model.
inline GenSetPtr cartan_generators(const LieAlgebra& g, const LieAlgebra& h) {
    std::vector<GeneratorSet::Generator> odd, even;
    for (const auto& n : g.basis_names()) odd.push_back({n + "*", 1});
    for (const auto& n : h.basis_names()) even.push_back({"s" + n + "*", 2});
    return make_generators(std::move(odd), std::move(even));
}

/// The Chevalley-Eilenberg differential as a derivation of Lambda g*
/// (even generators, if any, are annihilated): d x^k = sum_{i<j} c_ij^k
/// x^i x^j. No global sign; this matches d alpha (X, Y) = alpha([X, Y])
/// on 1-forms.
inline Derivation ce_derivation(const LieAlgebra& g, const GenSetPtr& gens) {
    std::vector<GradedElement> odd_images, even_images;
    for (std::size_t k = 0; k < g.dim(); ++k) {
        GradedElement im(gens);
        for (std::size_t i = 0; i < g.dim(); ++i)
            for (std::size_t j = i + 1; j < g.dim(); ++j) {
                const Rational& c = g.bracket(i, j)[k];
                if (sgn(c) == 0) continue;
                im += multiply(GradedElement::odd_gen(gens, i), GradedElement::odd_gen(gens, j)) * c;
            }
        odd_images.push_back(std::move(im));
    }
    for (std::size_t i = 0; i < gens->even_count(); ++i) even_images.push_back(GradedElement::zero(gens));
    return Derivation(gens, std::move(odd_images), std::move(even_images), true);
}

/// Lie derivative of x in g on a generator set whose odd part is the dual
/// basis of g; `h` and `x_in_h`, when given, extend the action to an even
/// part holding the shifted dual of h (coadjointly).
inline Derivation lie_derivative_on_forms(const LieAlgebra& g, const Vec& x, const GenSetPtr& gens,
                                          const LieAlgebra* h = nullptr, const Vec* x_in_h = nullptr) {
    Matrix A = g.ad(x);
    std::vector<GradedElement> odd_images, even_images;
    for (std::size_t a = 0; a < g.dim(); ++a) {
        GradedElement im(gens);
        for (std::size_t j = 0; j < g.dim(); ++j)
            if (sgn(A(a, j)) != 0) im += GradedElement::odd_gen(gens, j) * -A(a, j);
        odd_images.push_back(std::move(im));
    }
    if (h) {
        Matrix Ah = h->ad(*x_in_h);
        for (std::size_t a = 0; a < h->dim(); ++a) {
            GradedElement im(gens);
            for (std::size_t j = 0; j < h->dim(); ++j)
                if (sgn(Ah(a, j)) != 0) im += GradedElement::even_gen(gens, j) * -Ah(a, j);
            even_images.push_back(std::move(im));
        }
    } else {
        for (std::size_t i = 0; i < gens->even_count(); ++i) even_images.push_back(GradedElement::zero(gens));
    }
    return Derivation(gens, std::move(odd_images), std::move(even_images), false);
}

/// Adjoint action on multivectors (odd generators = basis of g).
inline Derivation lie_derivative_on_vectors(const LieAlgebra& g, const Vec& x, const GenSetPtr& gens) {
    Matrix A = g.ad(x);
    std::vector<GradedElement> odd_images;
    for (std::size_t j = 0; j < g.dim(); ++j) {
        GradedElement im(gens);
        for (std::size_t k = 0; k < g.dim(); ++k)
            if (sgn(A(k, j)) != 0) im += GradedElement::odd_gen(gens, k) * A(k, j);
        odd_images.push_back(std::move(im));
    }
    return Derivation(gens, std::move(odd_images),
                      std::vector<GradedElement>(gens->even_count(), GradedElement::zero(gens)), false);
}

/// Coadjoint action on S sg* (even generators = shifted dual of g).
inline Derivation lie_derivative_on_polys(const LieAlgebra& g, const Vec& x, const GenSetPtr& gens) {
    Matrix A = g.ad(x);
    std::vector<GradedElement> even_images;
    for (std::size_t a = 0; a < g.dim(); ++a) {
        GradedElement im(gens);
        for (std::size_t j = 0; j < g.dim(); ++j)
            if (sgn(A(a, j)) != 0) im += GradedElement::even_gen(gens, j) * -A(a, j);
        even_images.push_back(std::move(im));
    }
    return Derivation(gens, std::vector<GradedElement>(gens->odd_count(), GradedElement::zero(gens)),
                      std::move(even_images), false);
}

/// Degree-indexed basis lists with differential matrices. Bases run one
/// degree past `cap` so that cohomology at `cap` is well-defined.
struct CochainComplex {
    GenSetPtr gens;
    std::vector<std::vector<GradedElement>> basis;  // degrees 0 .. cap+1
    std::vector<Matrix> diff;                       // diff[n] : basis[n] -> basis[n+1]
    int cap = 0;

    std::size_t dim(int n) const {
        return (n < 0 || n >= static_cast<int>(basis.size())) ? 0 : basis[n].size();
    }

    GradedElement element(int n, const Vec& coords) const {
        GradedElement e(gens);
        for (std::size_t j = 0; j < basis[n].size(); ++j)
            if (sgn(coords[j]) != 0) e += basis[n][j] * coords[j];
        return e;
    }

    /// Coordinates of an element in the degree-n basis; nullopt if outside
    /// the span.
    std::optional<Vec> coords(int n, const GradedElement& e) const {
        if (n < 0 || n >= static_cast<int>(basis.size())) return e.is_zero() ? std::optional<Vec>(Vec{}) : std::nullopt;
        std::map<Monomial, std::size_t> rows;
        for (const auto& b : basis[n])
            for (const auto& [m, c] : b.terms()) rows.emplace(m, 0);
        for (const auto& [m, c] : e.terms())
            if (!rows.count(m)) return std::nullopt;
        std::size_t r = 0;
        for (auto& [m, idx] : rows) idx = r++;
        Matrix A(rows.size(), basis[n].size());
        for (std::size_t j = 0; j < basis[n].size(); ++j)
            for (const auto& [m, c] : basis[n][j].terms()) A(rows.at(m), j) = c;
        Vec b(rows.size());
        for (const auto& [m, c] : e.terms()) b[rows.at(m)] = c;
        return solve(A, b);
    }

    /// d (d x) = 0 for every computed basis vector.
    void verify_d_squared() const {
        for (std::size_t n = 0; n + 1 < diff.size(); ++n)
            if (!(diff[n + 1] * diff[n]).is_zero())
                throw InvariantViolation("differential does not square to zero in degree " + std::to_string(n));
    }
};

/// Materializes the subcomplex cut out by the joint kernel of `ops` inside
/// the full graded algebra, with the differential restricted to it. Errors
/// if the computed subspace is not d-stable.
inline CochainComplex build_complex(const GenSetPtr& gens, const std::vector<LinOp>& ops,
                                    const LinOp& d, int cap) {
    CochainComplex c;
    c.gens = gens;
    c.cap = cap;
    for (int n = 0; n <= cap + 1; ++n) {
        auto full = degree_basis_elements(gens, n);
        c.basis.push_back(ops.empty() ? std::move(full) : joint_kernel(std::move(full), ops));
    }
    for (int n = 0; n <= cap; ++n) {
        const auto& dom = c.basis[n];
        const auto& codom = c.basis[n + 1];
        std::map<Monomial, std::size_t> rows;
        for (const auto& b : codom)
            for (const auto& [m, coeff] : b.terms()) rows.emplace(m, 0);
        std::vector<GradedElement> images;
        for (const auto& b : dom) {
            images.push_back(d(b));
            for (const auto& [m, coeff] : images.back().terms())
                if (!rows.count(m))
                    throw ValidationError("differential leaves the computed subcomplex in degree " +
                                          std::to_string(n));
        }
        std::size_t r = 0;
        for (auto& [m, idx] : rows) idx = r++;
        Matrix A(rows.size(), codom.size());
        for (std::size_t j = 0; j < codom.size(); ++j)
            for (const auto& [m, coeff] : codom[j].terms()) A(rows.at(m), j) = coeff;
        Matrix B(rows.size(), dom.size());
        for (std::size_t j = 0; j < images.size(); ++j)
            for (const auto& [m, coeff] : images[j].terms()) B(rows.at(m), j) = coeff;
        auto sol = solve_many(A, B);
        if (!sol)
            throw ValidationError("differential leaves the computed subcomplex in degree " + std::to_string(n));
        c.diff.push_back(std::move(*sol));
    }
    c.verify_d_squared();
    return c;
}

/// Full Chevalley-Eilenberg complex (Lambda g*, d).
inline CochainComplex ce_complex(const LieAlgebra& g, int cap) {
    auto gens = form_generators(g);
    Derivation d = ce_derivation(g, gens);
    return build_complex(gens, {}, [d](const GradedElement& e) { return d(e); }, cap);
}

/// Relative complex (Lambda (g/h)*)^h: forms killed by iota(X) and L(X)
/// for X in h, with the restricted CE differential.
inline CochainComplex relative_complex(const LieAlgebra& g, const SubalgebraEmbedding& h, int cap) {
    auto gens = form_generators(g);
    std::vector<LinOp> ops;
    for (std::size_t b = 0; b < h.dim(); ++b) {
        Derivation L = lie_derivative_on_forms(g, h.basis_in_target[b], gens);
        ops.push_back([L](const GradedElement& e) { return L(e); });
    }
    for (std::size_t b = 0; b < h.dim(); ++b) {
        Vec x = h.basis_in_target[b];
        ops.push_back([x](const GradedElement& e) { return interior_derivation(x, e); });
    }
    Derivation d = ce_derivation(g, gens);
    return build_complex(gens, ops, [d](const GradedElement& e) { return d(e); }, cap);
}

/// Kernel/image data per degree with explicit representative cocycles.
/// Representatives are chosen deterministically: boundaries are spanned
/// first, then kernel vectors are admitted in their canonical order.
struct Cohomology {
    struct Degree {
        std::vector<Vec> reps;
        std::vector<Vec> cocycles;
        std::vector<Vec> boundaries;
        std::size_t dim() const { return reps.size(); }
    };
    std::vector<Degree> deg;  // 0 .. cap

    std::vector<std::size_t> dims() const {
        std::vector<std::size_t> d;
        for (const auto& x : deg) d.push_back(x.dim());
        return d;
    }
};

inline Cohomology cohomology(const CochainComplex& c, int cap) {
    if (cap > c.cap) throw std::invalid_argument("cohomology: cap exceeds the built complex");
    Cohomology h;
    for (int n = 0; n <= cap; ++n) {
        Cohomology::Degree d;
        d.cocycles = kernel_basis(c.diff[n]);
        SpanBuilder span(c.dim(n));
        if (n > 0) {
            const Matrix& prev = c.diff[n - 1];
            for (std::size_t j = 0; j < prev.cols(); ++j) {
                Vec col(prev.rows());
                for (std::size_t i = 0; i < prev.rows(); ++i) col[i] = prev(i, j);
                if (span.add(col)) d.boundaries.push_back(std::move(col));
            }
        }
        for (const auto& z : d.cocycles)
            if (span.add(z)) d.reps.push_back(z);
        h.deg.push_back(std::move(d));
    }
    return h;
}

/// Class coordinates of a cocycle in the chosen representatives; nullopt if
/// the vector is not a cocycle.
inline std::optional<Vec> class_coords(const CochainComplex& c, const Cohomology& h, int n,
                                       const Vec& v) {
    if (n > c.cap || n >= static_cast<int>(h.deg.size())) throw std::invalid_argument("class_coords: degree out of range");
    Vec dv = c.diff[n] * v;
    for (const auto& x : dv)
        if (sgn(x) != 0) return std::nullopt;
    const auto& d = h.deg[n];
    const std::size_t k = d.reps.size();
    std::vector<Vec> cols;
    cols.insert(cols.end(), d.reps.begin(), d.reps.end());
    cols.insert(cols.end(), d.boundaries.begin(), d.boundaries.end());
    Matrix A = Matrix::from_columns(cols, c.dim(n));
    auto sol = solve(A, v);
    if (!sol) throw InvariantViolation("cocycle failed to decompose into representatives and boundaries");
    Vec out(k);
    for (std::size_t i = 0; i < k; ++i) out[i] = (*sol)[i];
    return out;
}

/// Solves d y = v in degree n-1; nullopt when v is not a coboundary.
inline std::optional<Vec> coboundary_preimage(const CochainComplex& c, int n, const Vec& v) {
    if (n == 0) return std::nullopt;
    return solve(c.diff[n - 1], v);
}

/// Induced map on cohomology of a cochain map between built complexes.
/// Column j of by_degree[n] holds the class of F(rep_j).
struct InducedMap {
    std::vector<Matrix> by_degree;
};

inline InducedMap induced_map_on_cohomology(const CochainComplex& src, const Cohomology& hsrc,
                                            const CochainComplex& dst, const Cohomology& hdst,
                                            const LinOp& f, int cap) {
    InducedMap out;
    for (int n = 0; n <= cap; ++n) {
        const std::size_t k = hsrc.deg[n].reps.size();
        const std::size_t kr = hdst.deg[n].reps.size();
        Matrix m(kr, k);
        if (k > 0) {
            // all image coordinates at once
            Matrix images(dst.dim(n), k);
            for (std::size_t j = 0; j < k; ++j) {
                GradedElement fe = f(src.element(n, hsrc.deg[n].reps[j]));
                auto coords = dst.coords(n, fe);
                if (!coords) throw InvariantViolation("cochain map leaves the target complex");
                Vec dz = dst.diff[n] * *coords;
                for (const auto& c : dz)
                    if (sgn(c) != 0) throw InvariantViolation("cochain map image is not a cocycle");
                for (std::size_t i = 0; i < coords->size(); ++i) images(i, j) = (*coords)[i];
            }
            // one factorization of [reps | boundaries] for every column
            std::vector<Vec> cols;
            cols.insert(cols.end(), hdst.deg[n].reps.begin(), hdst.deg[n].reps.end());
            cols.insert(cols.end(), hdst.deg[n].boundaries.begin(), hdst.deg[n].boundaries.end());
            Matrix A = Matrix::from_columns(cols, dst.dim(n));
            auto sol = solve_many(A, images);
            if (!sol)
                throw InvariantViolation("cocycle failed to decompose into representatives and boundaries");
            for (std::size_t i = 0; i < kr; ++i)
                for (std::size_t j = 0; j < k; ++j) m(i, j) = (*sol)(i, j);
        }
        out.by_degree.push_back(std::move(m));
    }
    return out;
}

/// Joint kernels from explicit per-degree action matrices (one matrix per
/// acting basis element); the invariants functor on raw coordinates.
inline std::vector<std::vector<Vec>> invariants_from_actions(
    const std::vector<std::vector<Matrix>>& actions_per_degree) {
    std::vector<std::vector<Vec>> out;
    for (const auto& actions : actions_per_degree) {
        if (actions.empty()) {
            out.push_back({});
            continue;
        }
        const std::size_t dim = actions.front().cols();
        Matrix stacked(actions.size() * dim, dim);
        for (std::size_t a = 0; a < actions.size(); ++a)
            for (std::size_t i = 0; i < dim; ++i)
                for (std::size_t j = 0; j < dim; ++j) stacked(a * dim + i, j) = actions[a](i, j);
        out.push_back(kernel_basis(stacked));
    }
    return out;
}

/// Invariant forms (Lambda^n g*)^g per degree, as elements.
inline std::vector<std::vector<GradedElement>> invariant_forms(const LieAlgebra& g,
                                                               const GenSetPtr& gens, int cap) {
    std::vector<LinOp> ops;
    for (std::size_t b = 0; b < g.dim(); ++b) {
        Derivation L = lie_derivative_on_forms(g, g.unit(b), gens);
        ops.push_back([L](const GradedElement& e) { return L(e); });
    }
    std::vector<std::vector<GradedElement>> out;
    for (int n = 0; n <= cap; ++n) out.push_back(joint_kernel(degree_basis_elements(gens, n), ops));
    return out;
}

}  // namespace lieform
