#pragma once

#include <lieform/matrix.hpp>
#include <lieform/rational.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace lieform {

/// Free graded-commutative algebra Lambda(odd generators) (x) S(even
/// generators). Odd generators square to zero and anticommute pairwise
/// (their degrees are odd, so every interchange costs -1 under the Koszul
/// convention); even generators are polynomial variables.
///
/// The generator order given at construction is the canonical order: all
/// monomials are kept sorted against it and every sign in the engine is a
/// count of transpositions relative to it.
struct GeneratorSet {
    struct Generator {
        std::string name;
        int degree;
    };

    std::vector<Generator> odd;
    std::vector<Generator> even;

    GeneratorSet(std::vector<Generator> odd_gens, std::vector<Generator> even_gens)
        : odd(std::move(odd_gens)), even(std::move(even_gens)) {
        if (odd.size() > 64) throw std::invalid_argument("GeneratorSet: at most 64 odd generators");
        for (const auto& g : odd)
            if (g.degree < 1 || g.degree % 2 == 0)
                throw std::invalid_argument("GeneratorSet: odd generator '" + g.name + "' needs odd degree >= 1");
        for (const auto& g : even)
            if (g.degree < 2 || g.degree % 2 != 0)
                throw std::invalid_argument("GeneratorSet: even generator '" + g.name + "' needs even degree >= 2");
    }

    std::size_t odd_count() const { return odd.size(); }
    std::size_t even_count() const { return even.size(); }

    friend bool operator==(const GeneratorSet& a, const GeneratorSet& b) {
        auto same = [](const std::vector<Generator>& x, const std::vector<Generator>& y) {
            if (x.size() != y.size()) return false;
            for (std::size_t i = 0; i < x.size(); ++i)
                if (x[i].name != y[i].name || x[i].degree != y[i].degree) return false;
            return true;
        };
        return same(a.odd, b.odd) && same(a.even, b.even);
    }
};

/// Same ambient algebra: pointer identity or structural equality.
inline bool same_generators(const std::shared_ptr<const GeneratorSet>& a,
                            const std::shared_ptr<const GeneratorSet>& b) {
    return a == b || (a && b && *a == *b);
}

using GenSetPtr = std::shared_ptr<const GeneratorSet>;

inline GenSetPtr make_generators(std::vector<GeneratorSet::Generator> odd,
                                 std::vector<GeneratorSet::Generator> even) {
    return std::make_shared<const GeneratorSet>(std::move(odd), std::move(even));
}

/// Suspended copy: every generator of `v` reappears with degree + 1 and
/// flipped parity, names prefixed "s".
inline GenSetPtr suspension(const GeneratorSet& v) {
    std::vector<GeneratorSet::Generator> odd, even;
    for (const auto& g : v.odd) even.push_back({"s" + g.name, g.degree + 1});
    for (const auto& g : v.even) odd.push_back({"s" + g.name, g.degree + 1});
    return make_generators(std::move(odd), std::move(even));
}

struct Monomial {
    std::uint64_t odd_bits = 0;
    std::vector<std::uint16_t> even_exp;  // always sized to even_count()

    auto operator<=>(const Monomial&) const = default;

    int degree(const GeneratorSet& gens) const {
        int d = 0;
        for (std::size_t i = 0; i < gens.odd.size(); ++i)
            if (odd_bits >> i & 1) d += gens.odd[i].degree;
        for (std::size_t i = 0; i < gens.even.size(); ++i) d += even_exp[i] * gens.even[i].degree;
        return d;
    }
};

/// Sign for reordering the concatenation (word of m1)(word of m2) of odd
/// generators into canonical order; 0 when the words overlap. Every odd
/// generator has odd degree, so each crossing contributes -1.
inline int wedge_sign(std::uint64_t m1, std::uint64_t m2) {
    if (m1 & m2) return 0;
    int crossings = 0;
    std::uint64_t rest = m2;
    while (rest) {
        const int j = __builtin_ctzll(rest);
        rest &= rest - 1;
        const std::uint64_t up_to_j =
            (j >= 63) ? ~std::uint64_t{0} : ((std::uint64_t{1} << (j + 1)) - 1);
        crossings += __builtin_popcountll(m1 & ~up_to_j);
    }
    return crossings % 2 == 0 ? 1 : -1;
}

/// Sparse element of the algebra: canonical monomials with nonzero exact
/// coefficients. Value semantics throughout; thread-safe to share.
class GradedElement {
public:
    GradedElement() = default;
    explicit GradedElement(GenSetPtr gens) : gens_(std::move(gens)) {}

    static GradedElement zero(GenSetPtr gens) { return GradedElement(std::move(gens)); }

    static GradedElement unit(GenSetPtr gens, Rational c = 1) {
        GradedElement e(std::move(gens));
        e.add_term(Monomial{0, std::vector<std::uint16_t>(e.gens_->even_count())}, std::move(c));
        return e;
    }

    static GradedElement odd_gen(GenSetPtr gens, std::size_t i, Rational c = 1) {
        GradedElement e(gens);
        if (i >= gens->odd_count()) throw std::out_of_range("odd generator index");
        e.add_term(Monomial{std::uint64_t{1} << i, std::vector<std::uint16_t>(gens->even_count())},
                   std::move(c));
        return e;
    }

    static GradedElement even_gen(GenSetPtr gens, std::size_t i, Rational c = 1) {
        GradedElement e(gens);
        if (i >= gens->even_count()) throw std::out_of_range("even generator index");
        Monomial m{0, std::vector<std::uint16_t>(gens->even_count())};
        m.even_exp[i] = 1;
        e.add_term(std::move(m), std::move(c));
        return e;
    }

    static GradedElement monomial(GenSetPtr gens, Monomial m, Rational c = 1) {
        GradedElement e(std::move(gens));
        e.add_term(std::move(m), std::move(c));
        return e;
    }

    const GenSetPtr& generators() const { return gens_; }
    const std::map<Monomial, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(Monomial m, Rational c) {
        if (sgn(c) == 0) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(std::move(m), std::move(c));
        } else {
            it->second += c;
            if (sgn(it->second) == 0) terms_.erase(it);
        }
    }

    GradedElement& operator+=(const GradedElement& o) {
        check_ambient(o);
        for (const auto& [m, c] : o.terms_) {
            auto [it, inserted] = terms_.emplace(m, c);
            if (!inserted) {
                it->second += c;
                if (sgn(it->second) == 0) terms_.erase(it);
            }
        }
        return *this;
    }

    GradedElement& operator-=(const GradedElement& o) {
        check_ambient(o);
        for (const auto& [m, c] : o.terms_) {
            auto [it, inserted] = terms_.emplace(m, -c);
            if (!inserted) {
                it->second -= c;
                if (sgn(it->second) == 0) terms_.erase(it);
            }
        }
        return *this;
    }

    GradedElement& operator*=(const Rational& c) {
        if (sgn(c) == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, v] : terms_) v *= c;
        return *this;
    }

    friend GradedElement operator+(GradedElement a, const GradedElement& b) { return a += b; }
    friend GradedElement operator-(GradedElement a, const GradedElement& b) { return a -= b; }
    friend GradedElement operator*(GradedElement a, const Rational& c) { return a *= c; }
    friend GradedElement operator*(const Rational& c, GradedElement a) { return a *= c; }

    bool operator==(const GradedElement& o) const { return terms_ == o.terms_; }

    /// True when every term has the given total degree.
    bool is_homogeneous_of(int n) const {
        for (const auto& [m, c] : terms_)
            if (m.degree(*gens_) != n) return false;
        return true;
    }

    /// Max degree over terms; -1 for zero.
    int top_degree() const {
        int d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, m.degree(*gens_));
        return d;
    }

    void check_ambient(const GradedElement& o) const {
        if (!same_generators(gens_, o.gens_))
            throw std::invalid_argument("GradedElement: ambient generator sets differ");
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << "(" << to_string(c) << ")";
            for (std::size_t i = 0; i < gens_->odd.size(); ++i)
                if (m.odd_bits >> i & 1) os << "*" << gens_->odd[i].name;
            for (std::size_t i = 0; i < gens_->even.size(); ++i)
                if (m.even_exp[i] > 0) {
                    os << "*" << gens_->even[i].name;
                    if (m.even_exp[i] > 1) os << "^" << m.even_exp[i];
                }
        }
        return os.str();
    }

private:
    GenSetPtr gens_;
    std::map<Monomial, Rational> terms_;
};

/// Graded-commutative product with exact Koszul signs.
inline GradedElement multiply(const GradedElement& a, const GradedElement& b) {
    a.check_ambient(b);
    GradedElement out(a.generators());
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            const int s = wedge_sign(ma.odd_bits, mb.odd_bits);
            if (s == 0) continue;
            Monomial m;
            m.odd_bits = ma.odd_bits | mb.odd_bits;
            m.even_exp = ma.even_exp;
            for (std::size_t i = 0; i < mb.even_exp.size(); ++i) m.even_exp[i] += mb.even_exp[i];
            Rational prod = ca * cb;
            if (s < 0) prod = -prod;
            out.add_term(std::move(m), std::move(prod));
        }
    }
    return out;
}

/// Drops all terms of degree > cap.
inline GradedElement truncate(const GradedElement& e, int cap) {
    GradedElement out(e.generators());
    for (const auto& [m, c] : e.terms())
        if (m.degree(*e.generators()) <= cap) out.add_term(m, c);
    return out;
}

/// Interior derivation iota(alpha) for a functional alpha on the odd
/// generator span: the odd derivation with iota(alpha) x_i = alpha_i.
inline GradedElement interior_derivation(const Vec& alpha, const GradedElement& e) {
    const auto& gens = *e.generators();
    if (alpha.size() != gens.odd_count())
        throw std::invalid_argument("interior_derivation: functional length mismatch");
    GradedElement out(e.generators());
    for (const auto& [m, c] : e.terms()) {
        int presign = 1;
        std::uint64_t rest = m.odd_bits;
        while (rest) {
            const int b = __builtin_ctzll(rest);
            rest &= rest - 1;
            if (sgn(alpha[b]) != 0) {
                Monomial nm{m.odd_bits & ~(std::uint64_t{1} << b), m.even_exp};
                Rational coeff = c * alpha[b];
                if (presign < 0) coeff = -coeff;
                out.add_term(std::move(nm), std::move(coeff));
            }
            presign = -presign;
        }
    }
    return out;
}

/// Polynomial derivation for a functional alpha on the even generator span:
/// on a power u^k it acts as k alpha(u) u^{k-1}.
inline GradedElement polynomial_derivation(const Vec& alpha, const GradedElement& e) {
    const auto& gens = *e.generators();
    if (alpha.size() != gens.even_count())
        throw std::invalid_argument("polynomial_derivation: functional length mismatch");
    GradedElement out(e.generators());
    for (const auto& [m, c] : e.terms()) {
        for (std::size_t i = 0; i < gens.even_count(); ++i) {
            if (m.even_exp[i] == 0 || sgn(alpha[i]) == 0) continue;
            Monomial nm = m;
            nm.even_exp[i] -= 1;
            out.add_term(std::move(nm), c * alpha[i] * m.even_exp[i]);
        }
    }
    return out;
}

/// Derivation given per-generator images. `odd_degree_op` selects the
/// operator parity. On a canonical monomial the term for the j-th odd
/// factor carries (-1)^{j-1}: for odd operators that is the Koszul crossing
/// cost of the operator itself, for even operators it is the cost of moving
/// the (odd) image back to the front. Odd operators must annihilate even
/// generators (every differential in this engine does).
class Derivation {
public:
    Derivation(GenSetPtr gens, std::vector<GradedElement> odd_images,
               std::vector<GradedElement> even_images, bool odd_degree_op)
        : gens_(std::move(gens)),
          odd_images_(std::move(odd_images)),
          even_images_(std::move(even_images)),
          odd_op_(odd_degree_op) {
        if (odd_images_.size() != gens_->odd_count() || even_images_.size() != gens_->even_count())
            throw std::invalid_argument("Derivation: image count mismatch");
        if (odd_op_)
            for (const auto& im : even_images_)
                if (!im.is_zero())
                    throw std::invalid_argument("Derivation: odd operator with nonzero even-generator image");
    }

    GradedElement operator()(const GradedElement& e) const {
        if (!same_generators(e.generators(), gens_))
            throw std::invalid_argument("Derivation: ambient mismatch");
        GradedElement out(gens_);
        for (const auto& [m, c] : e.terms()) {
            int presign = 1;
            std::uint64_t rest = m.odd_bits;
            while (rest) {
                const int b = __builtin_ctzll(rest);
                rest &= rest - 1;
                const GradedElement& im = odd_images_[b];
                if (!im.is_zero()) {
                    GradedElement tail = GradedElement::monomial(
                        gens_, Monomial{m.odd_bits & ~(std::uint64_t{1} << b), m.even_exp},
                        presign > 0 ? c : -c);
                    out += multiply(im, tail);
                }
                presign = -presign;
            }
            // Even factors: only even operators reach here, so no signs.
            for (std::size_t i = 0; i < gens_->even_count(); ++i) {
                if (m.even_exp[i] == 0) continue;
                const GradedElement& im = even_images_[i];
                if (im.is_zero()) continue;
                Monomial nm = m;
                nm.even_exp[i] -= 1;
                GradedElement tail = GradedElement::monomial(gens_, std::move(nm), c * m.even_exp[i]);
                out += multiply(tail, im);
            }
        }
        return out;
    }

    const GenSetPtr& generators() const { return gens_; }

private:
    GenSetPtr gens_;
    std::vector<GradedElement> odd_images_;
    std::vector<GradedElement> even_images_;
    bool odd_op_;
};

using LinOp = std::function<GradedElement(const GradedElement&)>;

/// Algebra homomorphism determined by generator images in a target algebra.
/// Odd images must be odd-degree, even images even-degree; products are
/// formed in canonical order so Koszul signs come out of multiply().
inline GradedElement substitute(const GradedElement& e, const GenSetPtr& target,
                                const std::vector<GradedElement>& odd_images,
                                const std::vector<GradedElement>& even_images) {
    const auto& gens = *e.generators();
    if (odd_images.size() != gens.odd_count() || even_images.size() != gens.even_count())
        throw std::invalid_argument("substitute: image count mismatch");
    GradedElement out = GradedElement::zero(target);
    for (const auto& [m, c] : e.terms()) {
        GradedElement prod = GradedElement::unit(target, c);
        std::uint64_t rest = m.odd_bits;
        while (rest && !prod.is_zero()) {
            const int b = __builtin_ctzll(rest);
            rest &= rest - 1;
            prod = multiply(prod, odd_images[b]);
        }
        for (std::size_t i = 0; i < gens.even_count() && !prod.is_zero(); ++i)
            for (std::uint16_t k = 0; k < m.even_exp[i] && !prod.is_zero(); ++k)
                prod = multiply(prod, even_images[i]);
        out += prod;
    }
    return out;
}

namespace detail {
inline void enumerate_even(const GeneratorSet& gens, std::size_t i, int remaining,
                           Monomial& current, std::vector<Monomial>& out) {
    if (i == gens.even_count()) {
        if (remaining == 0) out.push_back(current);
        return;
    }
    const int d = gens.even[i].degree;
    for (int k = 0; k * d <= remaining; ++k) {
        current.even_exp[i] = static_cast<std::uint16_t>(k);
        enumerate_even(gens, i + 1, remaining - k * d, current, out);
    }
    current.even_exp[i] = 0;
}
}  // namespace detail

/// Complete monomial basis of the degree-n component, in canonical
/// (odd_bits, even_exp) order. Finite since even degrees are >= 2 and odd
/// generators appear at most once.
inline std::vector<Monomial> basis_of_degree(const GeneratorSet& gens, int n) {
    if (n < 0) throw std::invalid_argument("basis_of_degree: negative degree");
    std::vector<Monomial> out;
    const std::uint64_t masks = std::uint64_t{1} << gens.odd_count();
    for (std::uint64_t mask = 0; mask < masks; ++mask) {
        int d_odd = 0;
        for (std::size_t i = 0; i < gens.odd_count(); ++i)
            if (mask >> i & 1) d_odd += gens.odd[i].degree;
        if (d_odd > n) continue;
        Monomial cur{mask, std::vector<std::uint16_t>(gens.even_count())};
        detail::enumerate_even(gens, 0, n - d_odd, cur, out);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::size_t dim_of_degree(const GeneratorSet& gens, int n) {
    return basis_of_degree(gens, n).size();
}

/// Coordinates of elements against an indexed monomial list (rows) for
/// exact linear algebra over a degree component.
struct MonomialIndex {
    std::map<Monomial, std::size_t> index;

    explicit MonomialIndex(const std::vector<Monomial>& monos) {
        for (std::size_t i = 0; i < monos.size(); ++i) index.emplace(monos[i], i);
    }

    std::size_t size() const { return index.size(); }

    Vec coords(const GradedElement& e) const {
        Vec v(index.size());
        for (const auto& [m, c] : e.terms()) {
            auto it = index.find(m);
            if (it == index.end()) throw std::logic_error("MonomialIndex: element leaves the indexed span");
            v[it->second] = c;
        }
        return v;
    }
};

/// Kernel of a linear operator restricted to the span of `domain`,
/// returned as elements (combinations of the domain basis).
inline std::vector<GradedElement> kernel_of_operator(const std::vector<GradedElement>& domain,
                                                     const LinOp& op) {
    if (domain.empty()) return {};
    const GenSetPtr gens = domain.front().generators();
    std::vector<GradedElement> images;
    images.reserve(domain.size());
    bool diagonal = true;
    for (const auto& b : domain) {
        images.push_back(op(b));
        const auto& im = images.back();
        if (!(im.is_zero() ||
              (b.terms().size() == 1 && im.terms().size() == 1 &&
               im.terms().begin()->first == b.terms().begin()->first)))
            diagonal = false;
    }

    std::vector<Vec> combos;
    if (diagonal) {
        // Scaling operator on a monomial basis: the kernel is spanned by the
        // annihilated basis vectors directly.
        for (std::size_t j = 0; j < domain.size(); ++j) {
            if (!images[j].is_zero()) continue;
            Vec v(domain.size());
            v[j] = 1;
            combos.push_back(std::move(v));
        }
    } else {
        std::map<Monomial, std::size_t> rows;
        for (const auto& im : images)
            for (const auto& [m, c] : im.terms()) rows.emplace(m, 0);
        std::size_t r = 0;
        for (auto& [m, idx] : rows) idx = r++;
        Matrix mat(rows.size(), domain.size());
        for (std::size_t j = 0; j < images.size(); ++j)
            for (const auto& [m, c] : images[j].terms()) mat(rows.at(m), j) = c;
        combos = kernel_basis(mat);
    }

    std::vector<GradedElement> out;
    out.reserve(combos.size());
    for (const auto& v : combos) {
        GradedElement e(gens);
        for (std::size_t j = 0; j < domain.size(); ++j)
            if (sgn(v[j]) != 0) e += domain[j] * v[j];
        out.push_back(std::move(e));
    }
    return out;
}

/// Joint kernel of several operators, shrinking the domain iteratively.
inline std::vector<GradedElement> joint_kernel(std::vector<GradedElement> domain,
                                               const std::vector<LinOp>& ops) {
    for (const auto& op : ops) {
        if (domain.empty()) break;
        domain = kernel_of_operator(domain, op);
    }
    return domain;
}

/// Monomial basis of a degree component as elements.
inline std::vector<GradedElement> degree_basis_elements(const GenSetPtr& gens, int n) {
    std::vector<GradedElement> out;
    for (auto& m : basis_of_degree(*gens, n)) out.push_back(GradedElement::monomial(gens, std::move(m)));
    return out;
}

}  // namespace lieform
