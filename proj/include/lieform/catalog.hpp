#pragma once

#include <lieform/lie.hpp>

#include <string>
#include <utility>
#include <vector>

namespace lieform {

/// Classical real forms presented on explicit rational bases. Cohomology
/// dimensions are stable under field extension, so computations over the
/// rationals answer the corresponding real questions. Each constructor
/// supplies the standard Cartan involution of the family, the complex rank
/// (the convention here: the rank of u(p,q) is p+q, not min(p,q)) and the
/// trace form as invariant form.
namespace catalog {

namespace detail {

/// Complex matrix with rational real and imaginary parts; enough to realify
/// su(p,q) and u(p,q).
struct CMat {
    Matrix re, im;

    CMat(std::size_t n) : re(n, n), im(n, n) {}

    CMat operator*(const CMat& o) const {
        CMat r(re.rows());
        r.re = re * o.re - im * o.im;
        r.im = re * o.im + im * o.re;
        return r;
    }
    CMat operator-(const CMat& o) const {
        CMat r(re.rows());
        r.re = re - o.re;
        r.im = im - o.im;
        return r;
    }
    CMat commutator(const CMat& o) const { return *this * o - o * *this; }

    Rational trace_re() const {
        Rational t;
        for (std::size_t i = 0; i < re.rows(); ++i) t += re(i, i);
        return t;
    }

    Vec flatten() const {
        const std::size_t n = re.rows();
        Vec v(2 * n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                v[i * n + j] = re(i, j);
                v[n * n + i * n + j] = im(i, j);
            }
        return v;
    }
};

inline CMat real_mat(Matrix m) {
    CMat c(m.rows());
    c.re = std::move(m);
    return c;
}

/// Builds a LieAlgebra from explicit matrices: structure constants and the
/// involution are solved for exactly in the given basis; the invariant form
/// is Re tr(XY).
inline LieAlgebra from_matrices(const std::string& name, const std::vector<std::string>& names,
                                const std::vector<CMat>& basis,
                                const std::function<CMat(const CMat&)>& theta_map, int rank) {
    const std::size_t m = basis.size();
    const std::size_t n = basis.front().re.rows();
    std::vector<Vec> cols;
    for (const auto& b : basis) cols.push_back(b.flatten());
    Matrix span = Matrix::from_columns(cols, 2 * n * n);

    LieAlgebra g(name, m, names);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            auto coords = solve(span, basis[i].commutator(basis[j]).flatten());
            if (!coords) throw InvariantViolation("catalog: bracket leaves the span in " + name);
            g.set_bracket(i, j, *coords);
        }

    Matrix theta(m, m);
    for (std::size_t j = 0; j < m; ++j) {
        auto coords = solve(span, theta_map(basis[j]).flatten());
        if (!coords) throw InvariantViolation("catalog: involution leaves the span in " + name);
        for (std::size_t i = 0; i < m; ++i) theta(i, j) = (*coords)[i];
    }
    g.theta = theta;

    Matrix form(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
            form(i, j) = (basis[i] * basis[j]).trace_re();
            form(j, i) = form(i, j);
        }
    g.invariant_form = form;
    g.declared_rank = rank;
    return g;
}

inline Matrix unit_matrix(std::size_t n, std::size_t a, std::size_t b) {
    Matrix m(n, n);
    m(a, b) = 1;
    return m;
}

}  // namespace detail

/// sl(n, R). Basis order: Cartan H_a = E_aa - E_{a+1,a+1}, then upper E_ab
/// (a < b, lexicographic), then lower E_ba. theta = -transpose. For n = 2
/// this is the (h, e, f) basis with [h,e] = 2e, [h,f] = -2f, [e,f] = h.
inline LieAlgebra sl_R(std::size_t n) {
    if (n < 2) throw std::invalid_argument("sl(n,R) needs n >= 2");
    using detail::unit_matrix;
    std::vector<std::string> names;
    std::vector<detail::CMat> basis;
    for (std::size_t a = 0; a + 1 < n; ++a) {
        names.push_back(n == 2 ? "h" : "h" + std::to_string(a + 1));
        basis.push_back(detail::real_mat(unit_matrix(n, a, a) - unit_matrix(n, a + 1, a + 1)));
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            names.push_back(n == 2 ? "e" : "e" + std::to_string(a + 1) + std::to_string(b + 1));
            basis.push_back(detail::real_mat(unit_matrix(n, a, b)));
        }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            names.push_back(n == 2 ? "f" : "f" + std::to_string(a + 1) + std::to_string(b + 1));
            basis.push_back(detail::real_mat(unit_matrix(n, b, a)));
        }
    auto theta = [](const detail::CMat& x) {
        detail::CMat r(x.re.rows());
        r.re = x.re.transpose() * Rational(-1);
        r.im = x.im.transpose() * Rational(-1);
        return r;
    };
    return detail::from_matrices("sl(" + std::to_string(n) + ",R)", names, basis, theta,
                                 static_cast<int>(n) - 1);
}

namespace detail {
inline std::vector<int> signature(std::size_t p, std::size_t q) {
    std::vector<int> eps(p + q, 1);
    for (std::size_t i = p; i < p + q; ++i) eps[i] = -1;
    return eps;
}

inline CMat conjugate_by_J(const CMat& x, const std::vector<int>& eps) {
    CMat r(x.re.rows());
    for (std::size_t i = 0; i < x.re.rows(); ++i)
        for (std::size_t j = 0; j < x.re.cols(); ++j) {
            const int s = eps[i] * eps[j];
            r.re(i, j) = s > 0 ? x.re(i, j) : -x.re(i, j);
            r.im(i, j) = s > 0 ? x.im(i, j) : -x.im(i, j);
        }
    return r;
}
}  // namespace detail

namespace detail {
/// Basis of su(p,q): i(E_aa - E_{a+1,a+1}), then eps_a E_ab - eps_b E_ba,
/// then i(eps_a E_ab + eps_b E_ba), pairs lexicographic.
inline void append_su_basis(std::size_t n, const std::vector<int>& eps,
                            std::vector<std::string>& names, std::vector<CMat>& basis) {
    for (std::size_t a = 0; a + 1 < n; ++a) {
        CMat d(n);
        d.im = unit_matrix(n, a, a) - unit_matrix(n, a + 1, a + 1);
        names.push_back("d" + std::to_string(a + 1));
        basis.push_back(d);
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            CMat x(n);
            x.re = unit_matrix(n, a, b) * Rational(eps[a]) - unit_matrix(n, b, a) * Rational(eps[b]);
            names.push_back("x" + std::to_string(a + 1) + std::to_string(b + 1));
            basis.push_back(x);
        }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            CMat y(n);
            y.im = unit_matrix(n, a, b) * Rational(eps[a]) + unit_matrix(n, b, a) * Rational(eps[b]);
            names.push_back("y" + std::to_string(a + 1) + std::to_string(b + 1));
            basis.push_back(y);
        }
}
}  // namespace detail

/// su(p, q) realified on a rational basis; theta = Ad(J).
inline LieAlgebra su(std::size_t p, std::size_t q) {
    const std::size_t n = p + q;
    if (n < 2) throw std::invalid_argument("su(p,q) needs p+q >= 2");
    const auto eps = detail::signature(p, q);
    std::vector<std::string> names;
    std::vector<detail::CMat> basis;
    detail::append_su_basis(n, eps, names, basis);
    auto theta = [eps](const detail::CMat& x) { return detail::conjugate_by_J(x, eps); };
    return detail::from_matrices("su(" + std::to_string(p) + "," + std::to_string(q) + ")", names,
                                 basis, theta, static_cast<int>(n) - 1);
}

/// u(p, q) = su(p, q) + the central line R iI, appended last.
inline LieAlgebra u(std::size_t p, std::size_t q) {
    const std::size_t n = p + q;
    if (n < 1) throw std::invalid_argument("u(p,q) needs p+q >= 1");
    const auto eps = detail::signature(p, q);
    std::vector<std::string> names;
    std::vector<detail::CMat> basis;
    if (n >= 2) detail::append_su_basis(n, eps, names, basis);
    detail::CMat z(n);
    z.im = Matrix::identity(n);
    names.push_back("z");
    basis.push_back(z);
    auto theta = [eps](const detail::CMat& x) { return detail::conjugate_by_J(x, eps); };
    return detail::from_matrices("u(" + std::to_string(p) + "," + std::to_string(q) + ")", names,
                                 basis, theta, static_cast<int>(n));
}

/// so(p, q) = {A real : A^T J + J A = 0}; basis eps_a E_ab - eps_b E_ba for
/// a < b. theta = Ad(J). Complex rank floor((p+q)/2).
inline LieAlgebra so_pq(std::size_t p, std::size_t q) {
    const std::size_t n = p + q;
    if (n < 2) throw std::invalid_argument("so(p,q) needs p+q >= 2");
    using detail::unit_matrix;
    const auto eps = detail::signature(p, q);
    std::vector<std::string> names;
    std::vector<detail::CMat> basis;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            names.push_back("r" + std::to_string(a + 1) + std::to_string(b + 1));
            basis.push_back(detail::real_mat(unit_matrix(n, a, b) * Rational(eps[a]) -
                                             unit_matrix(n, b, a) * Rational(eps[b])));
        }
    auto theta = [eps](const detail::CMat& x) { return detail::conjugate_by_J(x, eps); };
    return detail::from_matrices("so(" + std::to_string(p) + "," + std::to_string(q) + ")", names,
                                 basis, theta, static_cast<int>(n / 2));
}

/// sp(2n, R) in the block presentation [[A, B], [C, -A^T]], B and C
/// symmetric. theta = -transpose; rank n.
inline LieAlgebra sp_R(std::size_t two_n) {
    if (two_n < 2 || two_n % 2 != 0) throw std::invalid_argument("sp(2n,R) needs an even size >= 2");
    const std::size_t n = two_n / 2;
    using detail::unit_matrix;
    std::vector<std::string> names;
    std::vector<detail::CMat> basis;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Matrix m(two_n, two_n);
            m(i, j) = 1;
            m(n + j, n + i) = -1;
            names.push_back("a" + std::to_string(i + 1) + std::to_string(j + 1));
            basis.push_back(detail::real_mat(std::move(m)));
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            Matrix m(two_n, two_n);
            m(i, n + j) = 1;
            m(j, n + i) = 1;
            names.push_back("b" + std::to_string(i + 1) + std::to_string(j + 1));
            basis.push_back(detail::real_mat(std::move(m)));
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            Matrix m(two_n, two_n);
            m(n + i, j) = 1;
            m(n + j, i) = 1;
            names.push_back("c" + std::to_string(i + 1) + std::to_string(j + 1));
            basis.push_back(detail::real_mat(std::move(m)));
        }
    auto theta = [](const detail::CMat& x) {
        detail::CMat r(x.re.rows());
        r.re = x.re.transpose() * Rational(-1);
        r.im = x.im.transpose() * Rational(-1);
        return r;
    };
    return detail::from_matrices("sp(" + std::to_string(two_n) + ",R)", names, basis, theta,
                                 static_cast<int>(n));
}

/// Abelian algebra; theta defaults to the identity.
inline LieAlgebra abelian(std::size_t n, std::optional<Matrix> theta = std::nullopt) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("t" + std::to_string(i + 1));
    LieAlgebra g("abelian(" + std::to_string(n) + ")", n, names);
    g.declared_rank = static_cast<int>(n);
    g.invariant_form = Matrix::identity(n);
    if (theta) {
        Involution inv{*theta};
        inv.validate(g);
        g.theta = std::move(*theta);
    } else {
        g.theta = Matrix::identity(n);
    }
    return g;
}

/// Model of so(1,1): the split torus, theta = -1.
inline LieAlgebra split_torus() {
    Matrix minus = Matrix::identity(1);
    minus(0, 0) = -1;
    LieAlgebra g = abelian(1, minus);
    return g;
}

/// Direct sum: block structure constants, componentwise theta, ranks add.
inline LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b) {
    const std::size_t n = a.dim() + b.dim();
    std::vector<std::string> names;
    for (const auto& s : a.basis_names()) names.push_back(s + "'");
    for (const auto& s : b.basis_names()) names.push_back(s + "''");
    LieAlgebra g(a.name() + "+" + b.name(), n, names);
    auto lift = [&](const Vec& v, bool second) {
        Vec r(n);
        const std::size_t off = second ? a.dim() : 0;
        for (std::size_t k = 0; k < v.size(); ++k) r[off + k] = v[k];
        return r;
    };
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = i + 1; j < a.dim(); ++j) g.set_bracket(i, j, lift(a.bracket(i, j), false));
    for (std::size_t i = 0; i < b.dim(); ++i)
        for (std::size_t j = i + 1; j < b.dim(); ++j)
            g.set_bracket(a.dim() + i, a.dim() + j, lift(b.bracket(i, j), true));
    if (a.declared_rank && b.declared_rank) g.declared_rank = *a.declared_rank + *b.declared_rank;
    if (a.invariant_form && b.invariant_form) {
        Matrix f(n, n);
        for (std::size_t i = 0; i < a.dim(); ++i)
            for (std::size_t j = 0; j < a.dim(); ++j) f(i, j) = (*a.invariant_form)(i, j);
        for (std::size_t i = 0; i < b.dim(); ++i)
            for (std::size_t j = 0; j < b.dim(); ++j) f(a.dim() + i, a.dim() + j) = (*b.invariant_form)(i, j);
        g.invariant_form = std::move(f);
    }
    if (a.theta && b.theta) {
        Matrix t(n, n);
        for (std::size_t i = 0; i < a.dim(); ++i)
            for (std::size_t j = 0; j < a.dim(); ++j) t(i, j) = (*a.theta)(i, j);
        for (std::size_t i = 0; i < b.dim(); ++i)
            for (std::size_t j = 0; j < b.dim(); ++j) t(a.dim() + i, a.dim() + j) = (*b.theta)(i, j);
        g.theta = std::move(t);
    }
    return g;
}

/// Built-in reductive pairs: (g with its Cartan involution, h given by
/// basis vectors inside g). The battery and the CLI batch runner iterate
/// these in this order.
struct CatalogPair {
    std::string name;
    std::string family;
    LieAlgebra g;
    std::vector<Vec> h_basis;
};

inline std::vector<CatalogPair> pairs() {
    std::vector<CatalogPair> out;
    {
        LieAlgebra g = sl_R(2);
        out.push_back({"sl2R_so2", "sl2", g, {Vec{rat(0), rat(1), rat(-1)}}});
        out.push_back({"sl2R_so11", "sl2", g, {Vec{rat(1), rat(0), rat(0)}}});
        out.push_back({"sl2R_trivial", "sl2", g, {}});
    }
    {
        LieAlgebra g = su(2, 0);
        out.push_back({"su2_u1", "su2", g, {Vec{rat(1), rat(0), rat(0)}}});
    }
    {
        LieAlgebra g = direct_sum(sl_R(2), sl_R(2));
        std::vector<Vec> diag;
        for (std::size_t i = 0; i < 3; ++i) {
            Vec v(6);
            v[i] = 1;
            v[3 + i] = 1;
            diag.push_back(v);
        }
        out.push_back({"sl2xsl2_diag", "sl2xsl2", g, diag});
    }
    {
        LieAlgebra g = direct_sum(su(2, 0), su(2, 0));
        std::vector<Vec> diag;
        for (std::size_t i = 0; i < 3; ++i) {
            Vec v(6);
            v[i] = 1;
            v[3 + i] = 1;
            diag.push_back(v);
        }
        out.push_back({"su2xsu2_diag", "su2xsu2", g, diag});
    }
    {
        LieAlgebra g = sl_R(3);
        // basis order: h1 h2 e12 e13 e23 f12 f13 f23
        out.push_back({"sl3R_so11torus", "sl3", g, {g.unit(0)}});
        std::vector<Vec> sl2_block{g.unit(0), g.unit(2), g.unit(5)};  // h1, e12, f12
        out.push_back({"sl3R_sl2block", "sl3", g, sl2_block});
        // so(3): the antisymmetric matrices e_ab - f_ab, fixed by theta
        auto anti = [&](std::size_t e_idx, std::size_t f_idx) {
            Vec v(8);
            v[e_idx] = 1;
            v[f_idx] = -1;
            return v;
        };
        out.push_back({"sl3R_so3", "sl3", g, {anti(2, 5), anti(3, 6), anti(4, 7)}});
    }
    return out;
}

}  // namespace catalog
}  // namespace lieform
