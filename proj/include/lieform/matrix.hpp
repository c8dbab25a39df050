#pragma once

#include <lieform/rational.hpp>

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace lieform {

using Vec = std::vector<Rational>;

/// Dense matrix over exact rationals. Row reduction is deterministic
/// (leftmost pivot column, first nonzero row), so every basis this kernel
/// reports is reproducible byte-for-byte.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static Matrix from_rows(const std::vector<Vec>& rows, std::size_t cols) {
        Matrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw std::invalid_argument("row length mismatch");
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    static Matrix from_columns(const std::vector<Vec>& cols, std::size_t rows) {
        Matrix m(rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != rows) throw std::invalid_argument("column length mismatch");
            for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix operator*(const Matrix& b) const {
        if (cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
        Matrix c(rows_, b.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Rational& x = (*this)(i, k);
                if (sgn(x) == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    if (sgn(b(k, j)) != 0) c(i, j) += x * b(k, j);
                }
            }
        return c;
    }

    Vec operator*(const Vec& v) const {
        if (cols_ != v.size()) throw std::invalid_argument("matrix-vector shape mismatch");
        Vec r(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (sgn((*this)(i, j)) != 0 && sgn(v[j]) != 0) r[i] += (*this)(i, j) * v[j];
        return r;
    }

    Matrix operator+(const Matrix& b) const {
        if (rows_ != b.rows_ || cols_ != b.cols_) throw std::invalid_argument("matrix sum shape mismatch");
        Matrix c = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) c.a_[i] += b.a_[i];
        return c;
    }

    Matrix operator-(const Matrix& b) const {
        if (rows_ != b.rows_ || cols_ != b.cols_) throw std::invalid_argument("matrix difference shape mismatch");
        Matrix c = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) c.a_[i] -= b.a_[i];
        return c;
    }

    Matrix operator*(const Rational& c) const {
        Matrix r = *this;
        for (auto& x : r.a_) x *= c;
        return r;
    }

    bool is_zero() const {
        for (const auto& x : a_)
            if (sgn(x) != 0) return false;
        return true;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> a_;
};

struct Rref {
    Matrix m;                     // reduced row echelon form
    std::vector<std::size_t> pivots;  // pivot column per nonzero row
    std::size_t rank() const { return pivots.size(); }
};

/// Reduced row echelon form. The forward pass is fraction-free
/// (Bareiss single-step) on integer-scaled rows to keep intermediate
/// coefficients small; back-substitution is plain rational arithmetic.
/// `limit_cols` restricts pivot selection to the first k columns
/// (used for augmented solves).
inline Rref rref(const Matrix& in, std::size_t limit_cols = SIZE_MAX) {
    const std::size_t nr = in.rows(), nc = in.cols();
    const std::size_t pivot_cols = std::min(nc, limit_cols);

    // Scale each row to integers.
    std::vector<std::vector<mpz_class>> m(nr, std::vector<mpz_class>(nc));
    for (std::size_t i = 0; i < nr; ++i) {
        mpz_class l = 1;
        for (std::size_t j = 0; j < nc; ++j) {
            mpz_class den(in(i, j).get_den());
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
        }
        for (std::size_t j = 0; j < nc; ++j) {
            const Rational& q = in(i, j);
            m[i][j] = q.get_num() * (l / q.get_den());
        }
    }

    std::vector<std::size_t> pivots;
    mpz_class prev = 1;
    std::size_t r = 0;
    for (std::size_t col = 0; col < pivot_cols && r < nr; ++col) {
        std::size_t pr = r;
        while (pr < nr && sgn(m[pr][col]) == 0) ++pr;
        if (pr == nr) continue;
        if (pr != r) std::swap(m[pr], m[r]);
        const mpz_class piv = m[r][col];
        for (std::size_t i = r + 1; i < nr; ++i) {
            if (sgn(m[i][col]) == 0) {
                // Still rescale so the fraction-free invariant holds.
                for (std::size_t j = col + 1; j < nc; ++j) {
                    if (sgn(m[i][j]) != 0) {
                        mpz_class t = piv * m[i][j];
                        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                        m[i][j] = t;
                    }
                }
                continue;
            }
            for (std::size_t j = col + 1; j < nc; ++j) {
                mpz_class t = piv * m[i][j] - m[i][col] * m[r][j];
                if (sgn(t) != 0) mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                m[i][j] = t;
            }
            m[i][col] = 0;
        }
        prev = piv;
        pivots.push_back(col);
        ++r;
    }

    // Back-substitute to the unique RREF, over rationals. Rows below the
    // rank are copied as-is: with `limit_cols` set they can retain nonzero
    // entries in the excluded columns, which is the inconsistency signal
    // augmented solves look for.
    Matrix out(nr, nc);
    for (std::size_t i = 0; i < r; ++i) {
        const mpz_class& piv = m[i][pivots[i]];
        for (std::size_t j = pivots[i]; j < nc; ++j) {
            Rational q(m[i][j], piv);
            q.canonicalize();
            out(i, j) = q;
        }
    }
    for (std::size_t i = r; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) out(i, j) = Rational(m[i][j]);
    for (std::size_t k = r; k-- > 0;) {
        for (std::size_t i = 0; i < k; ++i) {
            Rational f = out(i, pivots[k]);
            if (sgn(f) == 0) continue;
            for (std::size_t j = pivots[k]; j < nc; ++j) out(i, j) -= f * out(k, j);
        }
    }
    return Rref{std::move(out), std::move(pivots)};
}

inline std::size_t rank(const Matrix& m) { return rref(m).rank(); }

/// Basis of {x : m x = 0}, one vector per free column, in ascending
/// free-column order, each scaled so its first nonzero entry is 1.
inline std::vector<Vec> kernel_basis(const Matrix& m) {
    Rref e = rref(m);
    const std::size_t nc = m.cols();
    std::vector<bool> is_pivot(nc, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<Vec> basis;
    for (std::size_t f = 0; f < nc; ++f) {
        if (is_pivot[f]) continue;
        Vec v(nc);
        v[f] = 1;
        for (std::size_t i = 0; i < e.pivots.size(); ++i)
            if (e.pivots[i] < f) v[e.pivots[i]] = -e.m(i, f);
        std::size_t lead = 0;
        while (sgn(v[lead]) == 0) ++lead;
        if (!(v[lead] == 1)) {
            const Rational scale = v[lead];
            for (auto& c : v) c /= scale;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Some x with m x = b (free variables set to zero), or nullopt when the
/// system is inconsistent.
inline std::optional<Vec> solve(const Matrix& m, const Vec& b) {
    if (b.size() != m.rows()) throw std::invalid_argument("solve: rhs length mismatch");
    Matrix aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    Rref e = rref(aug, m.cols());
    const std::size_t r = e.rank();
    for (std::size_t i = r; i < m.rows(); ++i)
        if (sgn(e.m(i, m.cols())) != 0) return std::nullopt;
    Vec x(m.cols());
    for (std::size_t i = 0; i < r; ++i) x[e.pivots[i]] = e.m(i, m.cols());
    return x;
}

/// Simultaneous solve for many right-hand sides (columns of B).
/// Returns X with m X = B, or nullopt if any column is inconsistent.
inline std::optional<Matrix> solve_many(const Matrix& m, const Matrix& B) {
    if (B.rows() != m.rows()) throw std::invalid_argument("solve_many: rhs shape mismatch");
    Matrix aug(m.rows(), m.cols() + B.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        for (std::size_t j = 0; j < B.cols(); ++j) aug(i, m.cols() + j) = B(i, j);
    }
    Rref e = rref(aug, m.cols());
    const std::size_t r = e.rank();
    for (std::size_t i = r; i < m.rows(); ++i)
        for (std::size_t j = 0; j < B.cols(); ++j)
            if (sgn(e.m(i, m.cols() + j)) != 0) return std::nullopt;
    Matrix X(m.cols(), B.cols());
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < B.cols(); ++j) X(e.pivots[i], j) = e.m(i, m.cols() + j);
    return X;
}

/// Projection/section pair presenting the quotient of the ambient space by
/// span(sub): projection ∘ lift = identity on the quotient and
/// ker projection = span(sub). Quotient coordinates are indexed by the
/// non-pivot coordinates of the row-reduced span.
inline std::pair<Matrix, Matrix> quotient_and_section(std::size_t ambient_dim,
                                                      const std::vector<Vec>& sub) {
    Rref e = rref(Matrix::from_rows(sub, ambient_dim));
    std::vector<bool> is_pivot(ambient_dim, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t j = 0; j < ambient_dim; ++j)
        if (!is_pivot[j]) free_cols.push_back(j);

    Matrix proj(free_cols.size(), ambient_dim);
    Matrix lift(ambient_dim, free_cols.size());
    for (std::size_t a = 0; a < free_cols.size(); ++a) {
        proj(a, free_cols[a]) = 1;
        lift(free_cols[a], a) = 1;
        for (std::size_t i = 0; i < e.pivots.size(); ++i)
            proj(a, e.pivots[i]) = -e.m(i, free_cols[a]);
    }
    return {std::move(proj), std::move(lift)};
}

/// Splits the ambient space into the +1 and -1 eigenspaces of an involution.
inline std::pair<std::vector<Vec>, std::vector<Vec>> eigenspace_split(const Matrix& inv) {
    if (inv.rows() != inv.cols()) throw std::invalid_argument("eigenspace_split: not square");
    const std::size_t n = inv.rows();
    if (!(inv * inv == Matrix::identity(n)))
        throw std::invalid_argument("eigenspace_split: matrix is not an involution");
    Matrix minus = inv, plus = inv;
    for (std::size_t i = 0; i < n; ++i) {
        minus(i, i) -= 1;
        plus(i, i) += 1;
    }
    auto plus_basis = kernel_basis(minus);
    auto minus_basis = kernel_basis(plus);
    if (plus_basis.size() + minus_basis.size() != n)
        throw std::logic_error("eigenspace_split: eigenspace dimensions do not fill the space");
    return {std::move(plus_basis), std::move(minus_basis)};
}

/// Incremental row space with exact membership queries.
class SpanBuilder {
public:
    explicit SpanBuilder(std::size_t dim) : dim_(dim) {}

    /// Reduces v against the current rows; returns the residue.
    Vec reduce(Vec v) const {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const Rational& c = v[pivots_[i]];
            if (sgn(c) == 0) continue;
            Rational f = c;
            for (std::size_t j = pivots_[i]; j < dim_; ++j) v[j] -= f * rows_[i][j];
        }
        return v;
    }

    bool contains(const Vec& v) const {
        Vec r = reduce(v);
        for (const auto& x : r)
            if (sgn(x) != 0) return false;
        return true;
    }

    /// Adds v to the span. Returns true if the rank grew.
    bool add(const Vec& v) {
        Vec r = reduce(v);
        std::size_t p = 0;
        while (p < dim_ && sgn(r[p]) == 0) ++p;
        if (p == dim_) return false;
        Rational lead = r[p];
        for (std::size_t j = p; j < dim_; ++j) r[j] /= lead;
        // Keep rows fully reduced against each other.
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            Rational f = rows_[i][p];
            if (sgn(f) == 0) continue;
            for (std::size_t j = p; j < dim_; ++j) rows_[i][j] -= f * r[j];
        }
        std::size_t pos = 0;
        while (pos < pivots_.size() && pivots_[pos] < p) ++pos;
        rows_.insert(rows_.begin() + pos, std::move(r));
        pivots_.insert(pivots_.begin() + pos, p);
        return true;
    }

    std::size_t rank() const { return rows_.size(); }
    std::size_t dim() const { return dim_; }

private:
    std::size_t dim_;
    std::vector<Vec> rows_;
    std::vector<std::size_t> pivots_;
};

}  // namespace lieform
