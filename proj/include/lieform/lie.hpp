#pragma once

#include <lieform/graded.hpp>
#include <lieform/matrix.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lieform {

/// Thrown when input data fails mathematical validation (Jacobi identity,
/// involution axioms, subalgebra closure, degenerate invariant form).
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when an internal invariant that the underlying theory guarantees
/// fails to hold; indicates corrupted input metadata or an engine bug.
struct InvariantViolation : std::logic_error {
    using std::logic_error::logic_error;
};

struct JacobiWitness {
    std::size_t i, j, k;
};

/// Lie algebra over the rationals, presented by structure constants.
/// `declared_rank` is trusted constructor metadata and is cross-validated
/// against the dimension of the primitive space whenever primitives are
/// computed. `invariant_form`, when present, must be symmetric,
/// nondegenerate and ad-invariant.
class LieAlgebra {
public:
    LieAlgebra() = default;

    LieAlgebra(std::string name, std::size_t dim, std::vector<std::string> basis_names)
        : name_(std::move(name)),
          dim_(dim),
          basis_names_(std::move(basis_names)),
          bracket_(dim, std::vector<Vec>(dim, Vec(dim))) {
        if (basis_names_.empty()) {
            for (std::size_t i = 0; i < dim_; ++i) basis_names_.push_back("X" + std::to_string(i));
        }
        if (basis_names_.size() != dim_) throw std::invalid_argument("LieAlgebra: basis name count mismatch");
    }

    const std::string& name() const { return name_; }
    std::size_t dim() const { return dim_; }
    const std::vector<std::string>& basis_names() const { return basis_names_; }

    /// Sets [X_i, X_j]; the opposite bracket is filled by antisymmetry.
    void set_bracket(std::size_t i, std::size_t j, Vec v) {
        if (i >= dim_ || j >= dim_ || v.size() != dim_)
            throw std::invalid_argument("set_bracket: index or length out of range");
        Vec neg(dim_);
        for (std::size_t k = 0; k < dim_; ++k) neg[k] = -v[k];
        bracket_[i][j] = std::move(v);
        bracket_[j][i] = std::move(neg);
    }

    const Vec& bracket(std::size_t i, std::size_t j) const { return bracket_[i][j]; }

    Vec bracket_of(const Vec& x, const Vec& y) const {
        Vec r(dim_);
        for (std::size_t i = 0; i < dim_; ++i) {
            if (sgn(x[i]) == 0) continue;
            for (std::size_t j = 0; j < dim_; ++j) {
                if (sgn(y[j]) == 0) continue;
                const Rational c = x[i] * y[j];
                for (std::size_t k = 0; k < dim_; ++k)
                    if (sgn(bracket_[i][j][k]) != 0) r[k] += c * bracket_[i][j][k];
            }
        }
        return r;
    }

    /// Matrix of ad(x) on the basis: column j holds [x, X_j].
    Matrix ad(const Vec& x) const {
        Matrix m(dim_, dim_);
        for (std::size_t j = 0; j < dim_; ++j) {
            Vec ej(dim_);
            ej[j] = 1;
            Vec col = bracket_of(x, ej);
            for (std::size_t k = 0; k < dim_; ++k) m(k, j) = col[k];
        }
        return m;
    }

    std::optional<int> declared_rank;
    std::optional<Matrix> invariant_form;
    std::optional<Matrix> theta;  // standard Cartan involution, when the constructor supplies one

    /// Pass iff the Jacobi identity holds on all basis triples; on failure
    /// returns the first violating triple in lexicographic order.
    std::optional<JacobiWitness> check_jacobi() const {
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = i + 1; j < dim_; ++j)
                for (std::size_t k = j + 1; k < dim_; ++k) {
                    Vec s = bracket_of(bracket_[i][j], unit(k));
                    Vec t = bracket_of(bracket_[j][k], unit(i));
                    Vec u = bracket_of(bracket_[k][i], unit(j));
                    for (std::size_t a = 0; a < dim_; ++a)
                        if (sgn(s[a] + t[a] + u[a]) != 0) return JacobiWitness{i, j, k};
                }
        return std::nullopt;
    }

    void require_jacobi() const {
        if (auto w = check_jacobi())
            throw ValidationError("Jacobi identity fails on basis triple (" + basis_names_[w->i] + ", " +
                                  basis_names_[w->j] + ", " + basis_names_[w->k] + ") of " + name_);
    }

    /// True when the linear map given by `m` preserves brackets.
    bool is_automorphism(const Matrix& m) const {
        if (m.rows() != dim_ || m.cols() != dim_) return false;
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = i + 1; j < dim_; ++j) {
                Vec lhs = m * bracket_[i][j];
                Vec rhs = bracket_of(m * unit(i), m * unit(j));
                if (lhs != rhs) return false;
            }
        return true;
    }

    /// Checks B([x,y],z) + B(y,[x,z]) = 0 plus symmetry and nondegeneracy.
    void validate_invariant_form() const {
        if (!invariant_form) return;
        const Matrix& B = *invariant_form;
        if (B.rows() != dim_ || B.cols() != dim_)
            throw ValidationError("invariant form has wrong shape on " + name_);
        if (!(B == B.transpose())) throw ValidationError("invariant form is not symmetric on " + name_);
        if (rank(B) != dim_) throw ValidationError("invariant form is degenerate on " + name_);
        for (std::size_t x = 0; x < dim_; ++x)
            for (std::size_t y = 0; y < dim_; ++y)
                for (std::size_t z = y; z < dim_; ++z) {
                    Rational s;
                    for (std::size_t k = 0; k < dim_; ++k) {
                        if (sgn(bracket_[x][y][k]) != 0) s += bracket_[x][y][k] * B(k, z);
                        if (sgn(bracket_[x][z][k]) != 0) s += B(y, k) * bracket_[x][z][k];
                    }
                    if (sgn(s) != 0) throw ValidationError("invariant form is not ad-invariant on " + name_);
                }
    }

    Vec unit(std::size_t i) const {
        Vec v(dim_);
        v[i] = 1;
        return v;
    }

private:
    std::string name_;
    std::size_t dim_ = 0;
    std::vector<std::string> basis_names_;
    std::vector<std::vector<Vec>> bracket_;
};

/// Involutive Lie algebra automorphism.
struct Involution {
    Matrix matrix;

    void validate(const LieAlgebra& g) const {
        if (matrix.rows() != g.dim() || matrix.cols() != g.dim())
            throw ValidationError("involution has wrong shape on " + g.name());
        if (!(matrix * matrix == Matrix::identity(g.dim())))
            throw ValidationError("involution does not square to the identity on " + g.name());
        if (!g.is_automorphism(matrix))
            throw ValidationError("involution is not a Lie algebra automorphism on " + g.name());
    }

    /// Basis of the fixed subspace.
    std::vector<Vec> fixed_space() const {
        Matrix m = matrix;
        for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) -= 1;
        return kernel_basis(m);
    }
};

/// A subalgebra h of an ambient algebra g, carried both as a span inside g
/// and as an abstract Lie algebra in its own right.
struct SubalgebraEmbedding {
    const LieAlgebra* target = nullptr;
    std::vector<Vec> basis_in_target;
    LieAlgebra induced;
    std::optional<Matrix> theta_on_h;  // restriction of an ambient involution, in h coordinates

    std::size_t dim() const { return basis_in_target.size(); }

    /// Coordinates in g of an h-coordinate vector.
    Vec to_ambient(const Vec& vh) const {
        Vec r(target->dim());
        for (std::size_t a = 0; a < basis_in_target.size(); ++a)
            for (std::size_t k = 0; k < target->dim(); ++k)
                if (sgn(basis_in_target[a][k]) != 0) r[k] += vh[a] * basis_in_target[a][k];
        return r;
    }
};

/// Builds the embedding, checking linear independence and bracket closure
/// and solving for the induced structure constants.
inline SubalgebraEmbedding make_subalgebra(const LieAlgebra& g, std::vector<Vec> basis,
                                           const std::string& name) {
    const std::size_t n = g.dim(), m = basis.size();
    for (const auto& v : basis)
        if (v.size() != n) throw ValidationError("subalgebra basis vector has wrong length in " + name);
    Matrix span = Matrix::from_columns(basis, n);
    if (rank(span) != m) throw ValidationError("subalgebra basis is linearly dependent in " + name);

    SubalgebraEmbedding emb;
    emb.target = &g;
    emb.basis_in_target = std::move(basis);
    emb.induced = LieAlgebra(name, m, {});
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            Vec br = g.bracket_of(emb.basis_in_target[i], emb.basis_in_target[j]);
            auto coords = solve(span, br);
            if (!coords)
                throw ValidationError("span is not closed under the bracket in " + name);
            emb.induced.set_bracket(i, j, *coords);
        }
    return emb;
}

/// Restriction of an ambient involution to a theta-stable subalgebra,
/// expressed in h coordinates. Errors when the span is not stable.
inline Matrix restrict_involution(const SubalgebraEmbedding& h, const Matrix& theta) {
    const std::size_t n = h.target->dim(), m = h.dim();
    Matrix span = Matrix::from_columns(h.basis_in_target, n);
    Matrix images(n, m);
    for (std::size_t j = 0; j < m; ++j) {
        Vec im = theta * h.basis_in_target[j];
        for (std::size_t i = 0; i < n; ++i) images(i, j) = im[i];
    }
    auto sol = solve_many(span, images);
    if (!sol) throw ValidationError("involution does not preserve the subalgebra " + h.induced.name());
    return *sol;
}

}  // namespace lieform
