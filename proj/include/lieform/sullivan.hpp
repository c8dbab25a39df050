#pragma once

#include <lieform/complexes.hpp>

#include <map>
#include <tuple>
#include <utility>
#include <vector>

namespace lieform {

/// Pure Sullivan algebra (Lambda U (x) S sV, -delta_f), with U and V oddly
/// positively graded and f : S sU -> S sV given on shifted generators. The
/// stored differential carries the minus sign: u -> -f(su), sv -> 0.
struct PureSullivanAlgebra {
    GenSetPtr gens;  // odd = U, even = sV
    std::vector<GradedElement> f_images;  // f(su_i), in the even part

    Derivation differential() const {
        std::vector<GradedElement> odd_images;
        for (const auto& fi : f_images) odd_images.push_back(fi * rat(-1));
        return Derivation(gens, std::move(odd_images),
                          std::vector<GradedElement>(gens->even_count(), GradedElement::zero(gens)),
                          true);
    }
};

/// U generators of the given odd degrees, sV generators of degree
/// (odd degree + 1); f given by coefficient images over sV monomials.
inline PureSullivanAlgebra make_psa(const std::vector<std::pair<std::string, int>>& u_gens,
                                    const std::vector<std::pair<std::string, int>>& v_gens,
                                    const std::vector<std::vector<std::pair<Monomial, Rational>>>& f) {
    std::vector<GeneratorSet::Generator> odd, even;
    for (const auto& [name, deg] : u_gens) odd.push_back({name, deg});
    for (const auto& [name, deg] : v_gens) even.push_back({"s" + name, deg + 1});
    PureSullivanAlgebra psa;
    psa.gens = make_generators(std::move(odd), std::move(even));
    if (f.size() != u_gens.size()) throw std::invalid_argument("make_psa: need one f image per U generator");
    for (std::size_t i = 0; i < f.size(); ++i) {
        GradedElement im(psa.gens);
        for (const auto& [m, c] : f[i]) im.add_term(m, c);
        if (!im.is_zero() && !im.is_homogeneous_of(u_gens[i].second + 1))
            throw std::invalid_argument("make_psa: f(su) must be homogeneous of degree deg(u)+1");
        psa.f_images.push_back(std::move(im));
    }
    return psa;
}

/// The Koszul complex of a pure Sullivan algebra, built degreewise.
inline CochainComplex koszul_complex(const PureSullivanAlgebra& psa, int cap) {
    Derivation d = psa.differential();
    return build_complex(psa.gens, {}, [d](const GradedElement& e) { return d(e); }, cap);
}

inline Cohomology cohomology_psa(const PureSullivanAlgebra& psa, int cap) {
    return cohomology(koszul_complex(psa, cap), cap);
}

/// The Sullivan model of 1 (x) g : (Lambda U (x) S sV, -delta_f) ->
/// (Lambda U (x) S sW, -delta_{gf}): the four-factor algebra
/// Lambda U (x) S sV (x) Lambda V (x) S sW with differential
/// -delta_f - delta_g + delta_V, filtered by the (Lambda U (x) S sV)-degree.
struct RelativeModel {
    GenSetPtr gens;         // odd: U then V; even: sV then sW
    std::size_t nu = 0, nv = 0, nw = 0;
    std::vector<GradedElement> f_images;  // f(su_i), supported on the sV block
    std::vector<GradedElement> g_images;  // g(sv_j), supported on the sW block
    int cap = 0;

    GenSetPtr target_gens;  // odd: U, even: sW
    std::vector<GradedElement> gf_images;  // gf(su_i) in target coordinates

    /// Total differential -delta_f - delta_g + delta_V.
    Derivation total_differential() const {
        std::vector<GradedElement> odd_images;
        for (std::size_t i = 0; i < nu; ++i) odd_images.push_back(f_images[i] * rat(-1));
        for (std::size_t j = 0; j < nv; ++j)
            odd_images.push_back(GradedElement::even_gen(gens, j) - g_images[j]);
        return Derivation(gens, std::move(odd_images),
                          std::vector<GradedElement>(gens->even_count(), GradedElement::zero(gens)),
                          true);
    }

    /// Target differential -delta_{gf}.
    Derivation target_differential() const {
        std::vector<GradedElement> odd_images;
        for (std::size_t i = 0; i < nu; ++i) odd_images.push_back(gf_images[i] * rat(-1));
        return Derivation(target_gens, std::move(odd_images),
                          std::vector<GradedElement>(target_gens->even_count(),
                                                     GradedElement::zero(target_gens)),
                          true);
    }

    /// Filtration degree: the (Lambda U (x) S sV)-part of the monomial.
    int filtration_index(const Monomial& m) const {
        int d = 0;
        for (std::size_t i = 0; i < nu; ++i)
            if (m.odd_bits >> i & 1) d += gens->odd[i].degree;
        for (std::size_t j = 0; j < nv; ++j) d += m.even_exp[j] * gens->even[j].degree;
        return d;
    }

    /// (S^p sV, Lambda^q V) bidegree used by pi_{p,q} and kappa.
    std::pair<int, int> sv_v_bidegree(const Monomial& m) const {
        int p = 0, q = 0;
        for (std::size_t j = 0; j < nv; ++j) p += m.even_exp[j];
        for (std::size_t j = 0; j < nv; ++j)
            if (m.odd_bits >> (nu + j) & 1) ++q;
        return {p, q};
    }

    GradedElement pi_pq(const GradedElement& e, int p, int q) const {
        GradedElement out(gens);
        for (const auto& [m, c] : e.terms())
            if (sv_v_bidegree(m) == std::pair<int, int>{p, q}) out.add_term(m, c);
        return out;
    }

    /// m : big model -> target, the algebra map killing Lambda^+ V and
    /// pushing S sV through g.
    GradedElement m_map(const GradedElement& e) const {
        std::vector<GradedElement> odd_images, even_images;
        for (std::size_t i = 0; i < nu; ++i) odd_images.push_back(GradedElement::odd_gen(target_gens, i));
        for (std::size_t j = 0; j < nv; ++j) odd_images.push_back(GradedElement::zero(target_gens));
        for (std::size_t j = 0; j < nv; ++j) even_images.push_back(to_target(g_images[j]));
        for (std::size_t k = 0; k < nw; ++k) even_images.push_back(GradedElement::even_gen(target_gens, k));
        return substitute(e, target_gens, odd_images, even_images);
    }

    /// Natural inclusion of the target into the big model.
    GradedElement include_target(const GradedElement& e) const {
        std::vector<GradedElement> odd_images, even_images;
        for (std::size_t i = 0; i < nu; ++i) odd_images.push_back(GradedElement::odd_gen(gens, i));
        for (std::size_t k = 0; k < nw; ++k) even_images.push_back(GradedElement::even_gen(gens, nv + k));
        return substitute(e, gens, odd_images, even_images);
    }

    /// Transport of an element supported on the (U, sW) factors into target
    /// coordinates.
    GradedElement to_target(const GradedElement& e) const {
        GradedElement out(target_gens);
        for (const auto& [m, c] : e.terms()) {
            Monomial t{0, std::vector<std::uint16_t>(nw)};
            if (m.odd_bits >> nu) throw std::logic_error("to_target: element touches the V factor");
            for (std::size_t j = 0; j < nv; ++j)
                if (m.even_exp[j]) throw std::logic_error("to_target: element touches the sV factor");
            t.odd_bits = m.odd_bits;
            for (std::size_t k = 0; k < nw; ++k) t.even_exp[k] = m.even_exp[nv + k];
            out.add_term(std::move(t), c);
        }
        return out;
    }

    /// The contraction kappa: (1/(p+q)) sum_j (1 (x) d(sv^j) (x) eps(v_j) (x) 1)
    /// on the (S^p sV, Lambda^q V) component, zero on (0,0).
    GradedElement kappa(const GradedElement& e) const {
        GradedElement out(gens);
        for (const auto& [m, c] : e.terms()) {
            auto [p, q] = sv_v_bidegree(m);
            if (p == 0 && q == 0) continue;
            for (std::size_t j = 0; j < nv; ++j) {
                if (m.even_exp[j] == 0) continue;
                Monomial lowered = m;
                lowered.even_exp[j] -= 1;
                GradedElement tail =
                    GradedElement::monomial(gens, std::move(lowered), c * m.even_exp[j] / Rational(p + q));
                out += multiply(GradedElement::odd_gen(gens, nu + j), tail);
            }
        }
        return out;
    }

    /// delta_g alone (positive sign), used inside phi's series.
    Derivation delta_g() const {
        std::vector<GradedElement> odd_images(nu, GradedElement::zero(gens));
        for (std::size_t j = 0; j < nv; ++j) odd_images.push_back(g_images[j]);
        return Derivation(gens, std::move(odd_images),
                          std::vector<GradedElement>(gens->even_count(), GradedElement::zero(gens)),
                          true);
    }

    /// delta_V alone: v_j -> sv_j.
    Derivation delta_v() const {
        std::vector<GradedElement> odd_images(nu, GradedElement::zero(gens));
        for (std::size_t j = 0; j < nv; ++j) odd_images.push_back(GradedElement::even_gen(gens, j));
        return Derivation(gens, std::move(odd_images),
                          std::vector<GradedElement>(gens->even_count(), GradedElement::zero(gens)),
                          true);
    }
};

inline RelativeModel relative_model(const std::vector<std::pair<std::string, int>>& u_gens,
                                    const std::vector<std::pair<std::string, int>>& v_gens,
                                    const std::vector<std::pair<std::string, int>>& w_gens,
                                    const std::vector<std::vector<std::pair<Monomial, Rational>>>& f,
                                    const std::vector<std::vector<std::pair<Monomial, Rational>>>& g,
                                    int cap) {
    RelativeModel rm;
    rm.nu = u_gens.size();
    rm.nv = v_gens.size();
    rm.nw = w_gens.size();
    rm.cap = cap;
    std::vector<GeneratorSet::Generator> odd, even, todd, teven;
    for (const auto& [name, deg] : u_gens) odd.push_back({name, deg}), todd.push_back({name, deg});
    for (const auto& [name, deg] : v_gens) odd.push_back({name, deg});
    for (const auto& [name, deg] : v_gens) even.push_back({"s" + name, deg + 1});
    for (const auto& [name, deg] : w_gens) even.push_back({"s" + name, deg + 1});
    for (const auto& [name, deg] : w_gens) teven.push_back({"s" + name, deg + 1});
    rm.gens = make_generators(std::move(odd), std::move(even));
    rm.target_gens = make_generators(std::move(todd), std::move(teven));

    if (f.size() != rm.nu || g.size() != rm.nv)
        throw std::invalid_argument("relative_model: image count mismatch");
    // f images arrive as monomials over the sV generators alone; g images
    // over the sW generators alone. Re-key them into the big set.
    for (std::size_t i = 0; i < rm.nu; ++i) {
        GradedElement im(rm.gens);
        for (const auto& [m, c] : f[i]) {
            Monomial big{0, std::vector<std::uint16_t>(rm.nv + rm.nw)};
            for (std::size_t j = 0; j < rm.nv; ++j) big.even_exp[j] = m.even_exp[j];
            im.add_term(std::move(big), c);
        }
        if (!im.is_zero() && !im.is_homogeneous_of(u_gens[i].second + 1))
            throw std::invalid_argument("relative_model: f(su) has the wrong degree");
        rm.f_images.push_back(std::move(im));
    }
    for (std::size_t j = 0; j < rm.nv; ++j) {
        GradedElement im(rm.gens);
        for (const auto& [m, c] : g[j]) {
            Monomial big{0, std::vector<std::uint16_t>(rm.nv + rm.nw)};
            for (std::size_t k = 0; k < rm.nw; ++k) big.even_exp[rm.nv + k] = m.even_exp[k];
            im.add_term(std::move(big), c);
        }
        if (!im.is_zero() && !im.is_homogeneous_of(v_gens[j].second + 1))
            throw std::invalid_argument("relative_model: g(sv) has the wrong degree");
        rm.g_images.push_back(std::move(im));
    }
    for (std::size_t i = 0; i < rm.nu; ++i) {
        // gf(su_i): push f through g, then into target coordinates
        std::vector<GradedElement> even_images;
        for (std::size_t j = 0; j < rm.nv; ++j) even_images.push_back(rm.g_images[j]);
        for (std::size_t k = 0; k < rm.nw; ++k)
            even_images.push_back(GradedElement::even_gen(rm.gens, rm.nv + k));
        std::vector<GradedElement> odd_ident;
        for (std::size_t b = 0; b < rm.gens->odd_count(); ++b)
            odd_ident.push_back(GradedElement::odd_gen(rm.gens, b));
        rm.gf_images.push_back(rm.to_target(substitute(rm.f_images[i], rm.gens, odd_ident, even_images)));
    }
    return rm;
}

/// phi: the coordinate-change automorphism of the big model intertwining
/// -delta_{gf} + delta_V with -delta_f - delta_g + delta_V.
struct PhiOperators {
    const RelativeModel* rm;
    std::vector<GradedElement> odd_images, even_images;

    explicit PhiOperators(const RelativeModel& model) : rm(&model) {
        Derivation dg = model.delta_g();
        for (std::size_t i = 0; i < model.nu; ++i) {
            // u + kappa sum_p (delta_g kappa)^p (f(su)); each delta_g kappa
            // step lowers the S sV degree, so the series is finite
            GradedElement acc(model.gens);
            GradedElement cur = model.f_images[i];
            int guard = 0;
            while (!cur.is_zero()) {
                GradedElement kc = model.kappa(cur);
                acc += kc;
                cur = dg(kc);
                if (++guard > 512) throw InvariantViolation("phi series did not terminate");
            }
            odd_images.push_back(GradedElement::odd_gen(model.gens, i) + acc);
        }
        for (std::size_t j = 0; j < model.nv; ++j)
            odd_images.push_back(GradedElement::odd_gen(model.gens, model.nu + j));
        for (std::size_t j = 0; j < model.nv; ++j)
            even_images.push_back(GradedElement::even_gen(model.gens, j) - model.g_images[j]);
        for (std::size_t k = 0; k < model.nw; ++k)
            even_images.push_back(GradedElement::even_gen(model.gens, model.nv + k));
    }

    GradedElement phi(const GradedElement& e) const {
        return substitute(e, rm->gens, odd_images, even_images);
    }

    /// Inverse via the nilpotent series sum_k (1 - phi)^k.
    GradedElement phi_inverse(const GradedElement& e) const {
        GradedElement out(rm->gens);
        GradedElement cur = e;
        int guard = 0;
        while (!cur.is_zero()) {
            out += cur;
            cur = cur - phi(cur);
            if (++guard > 512) throw InvariantViolation("phi inverse series did not terminate");
        }
        return out;
    }
};

/// Spectral sequence of the filtration F^p = (degree >= p part of
/// Lambda U (x) S sV) (x) Lambda V (x) S sW, by exact subquotient linear
/// algebra. Pages are indexed from r = 2; the last page equals E_infinity
/// for all total degrees <= cap.
struct SpectralSequence {
    int cap = 0;
    int r_max = 0;  // pages stored for r = 2 .. r_max
    std::vector<std::map<std::pair<int, int>, std::size_t>> pages;

    std::size_t dim(int r, int p, int q) const {
        const auto& page = pages.at(r - 2);
        auto it = page.find({p, q});
        return it == page.end() ? 0 : it->second;
    }
    std::size_t dim_e2(int p, int q) const { return dim(2, p, q); }
    std::size_t dim_einf(int p, int q) const { return dim(r_max, p, q); }

    std::size_t e2_total(int n) const {
        std::size_t s = 0;
        for (int p = 0; p <= n; ++p) s += dim_e2(p, n - p);
        return s;
    }
    std::size_t einf_total(int n) const {
        std::size_t s = 0;
        for (int p = 0; p <= n; ++p) s += dim_einf(p, n - p);
        return s;
    }
};

namespace detail {

/// Per-degree scaffolding for the filtration subquotients.
struct FiltrationDegree {
    std::vector<Monomial> monos;
    MonomialIndex index;
    std::vector<int> fil;

    FiltrationDegree(const RelativeModel& rm, int n)
        : monos(basis_of_degree(*rm.gens, n)), index(monos) {
        for (const auto& m : monos) fil.push_back(rm.filtration_index(m));
    }
};

}  // namespace detail

class SpectralSequenceBuilder {
public:
    SpectralSequenceBuilder(const RelativeModel& rm, int cap) : rm_(rm), cap_(cap) {
        Derivation d = rm.total_differential();
        for (int n = 0; n <= cap + 1; ++n) {
            degrees_.emplace_back(rm, n);
            const auto& dom = degrees_[n].monos;
            std::vector<Vec> images;
            if (n > 0) {
                const auto& prev = degrees_[n - 1];
                Matrix D(dom.size(), prev.monos.size());
                for (std::size_t j = 0; j < prev.monos.size(); ++j) {
                    GradedElement im = d(GradedElement::monomial(rm.gens, prev.monos[j]));
                    for (const auto& [m, c] : im.terms()) D(degrees_[n].index.index.at(m), j) = c;
                }
                diff_.push_back(std::move(D));
            }
        }
    }

    /// Z_r^{p, n-p}: vectors in F^p C^n with d x in F^{p+r} C^{n+1};
    /// returned in full degree-n coordinates. Memoized: the condition only
    /// depends on min(p + r, n + 2) since F^q C^{n+1} is empty past q = n+1.
    const std::vector<Vec>& z_space(int n, int p, int r) const {
        static const std::vector<Vec> kEmpty;
        if (n < 0 || n > cap_) return kEmpty;
        p = std::max(p, 0);
        const int bound = std::min(p + r, n + 2);
        auto key = std::make_tuple(n, p, bound);
        auto it = z_cache_.find(key);
        if (it != z_cache_.end()) return it->second;

        const auto& deg = degrees_[n];
        std::vector<std::size_t> cols;
        for (std::size_t j = 0; j < deg.monos.size(); ++j)
            if (deg.fil[j] >= p) cols.push_back(j);
        std::vector<Vec> out;
        if (!cols.empty()) {
            // rows: target monomials of filtration < p + r
            const auto& next = degrees_[n + 1];
            const Matrix& D = diff_[n];
            std::vector<std::size_t> rows;
            for (std::size_t i = 0; i < next.monos.size(); ++i)
                if (next.fil[i] < bound) rows.push_back(i);
            Matrix A(rows.size(), cols.size());
            for (std::size_t a = 0; a < rows.size(); ++a)
                for (std::size_t b = 0; b < cols.size(); ++b) A(a, b) = D(rows[a], cols[b]);
            for (const auto& k : kernel_basis(A)) {
                Vec v(deg.monos.size());
                for (std::size_t b = 0; b < cols.size(); ++b) v[cols[b]] = k[b];
                out.push_back(std::move(v));
            }
        }
        return z_cache_.emplace(key, std::move(out)).first->second;
    }

    Vec apply_d(int n, const Vec& v) const { return diff_[n] * v; }

    /// dim E_r^{p,q} together with representative vectors (independent
    /// modulo Z_{r-1}^{p+1,q-1} + d Z_{r-1}^{p-r+1, q+r-2}). The returned
    /// span holds the denominator subspace only. Memoized per (r, p, n).
    const std::pair<std::vector<Vec>, SpanBuilder>& e_page_at(int r, int p, int n) const {
        static const std::pair<std::vector<Vec>, SpanBuilder> kEmpty{{}, SpanBuilder(0)};
        if (n < 0 || n > cap_) return kEmpty;
        auto key = std::make_tuple(r, p, n);
        auto it = page_cache_.find(key);
        if (it != page_cache_.end()) return it->second;

        SpanBuilder denom(degrees_[n].monos.size());
        for (const auto& v : z_space(n, p + 1, r - 1)) denom.add(v);
        {
            const int p_src = std::max(0, p - r + 1);
            const int jump = p - p_src;
            if (n >= 1)
                for (const auto& y : z_space(n - 1, p_src, jump)) denom.add(apply_d(n - 1, y));
        }
        SpanBuilder working = denom;
        std::vector<Vec> reps;
        for (const auto& z : z_space(n, p, r))
            if (working.add(z)) reps.push_back(z);
        return page_cache_.emplace(key, std::make_pair(std::move(reps), std::move(denom)))
            .first->second;
    }

    /// Builds pages r = 2 .. cap+2 and verifies E_{r+1} = H(E_r, d_r).
    SpectralSequence run() {
        SpectralSequence ss;
        ss.cap = cap_;
        ss.r_max = cap_ + 2;
        for (int r = 2; r <= ss.r_max; ++r) {
            std::map<std::pair<int, int>, std::size_t> page;
            for (int n = 0; n <= cap_; ++n)
                for (int p = 0; p <= n; ++p) {
                    const auto& reps = e_page_at(r, p, n).first;
                    if (!reps.empty()) page[{p, n - p}] = reps.size();
                }
            ss.pages.push_back(std::move(page));
        }

        // E_{r+1} = H(E_r, d_r): dim E_{r+1}^{p,q} must equal
        // dim E_r^{p,q} - rank d_r|(p,q) - rank d_r into (p,q). The outgoing
        // rank needs total degree n+1, so the check runs below the cap.
        for (int r = 2; r < ss.r_max; ++r) {
            for (int n = 0; n + 1 <= cap_; ++n)
                for (int p = 0; p <= n; ++p) {
                    const std::size_t er = ss.dim(r, p, n - p);
                    const std::size_t er1 = ss.dim(r + 1, p, n - p);
                    const std::size_t out_rank = d_rank(r, p, n);
                    const std::size_t in_rank = (p - r >= 0 && n >= 1) ? d_rank(r, p - r, n - 1) : 0;
                    if (er1 != er - out_rank - in_rank)
                        throw InvariantViolation("spectral sequence page " + std::to_string(r + 1) +
                                                 " does not equal the cohomology of page " + std::to_string(r));
                }
        }
        return ss;
    }

private:
    /// Rank of d_r out of E_r^{p, n-p}: classes of the images of the page
    /// representatives modulo the target denominators.
    std::size_t d_rank(int r, int p, int n) const {
        const auto& reps = e_page_at(r, p, n).first;
        if (reps.empty() || n + 1 > cap_) return 0;
        SpanBuilder span = e_page_at(r, p + r, n + 1).second;
        std::size_t rank = 0;
        for (const auto& x : reps)
            if (span.add(apply_d(n, x))) ++rank;
        return rank;
    }

    const RelativeModel& rm_;
    int cap_;
    std::vector<detail::FiltrationDegree> degrees_;
    std::vector<Matrix> diff_;
    mutable std::map<std::tuple<int, int, int>, std::vector<Vec>> z_cache_;
    mutable std::map<std::tuple<int, int, int>, std::pair<std::vector<Vec>, SpanBuilder>> page_cache_;
};

inline SpectralSequence spectral_sequence(const RelativeModel& rm, int cap) {
    return SpectralSequenceBuilder(rm, cap).run();
}

}  // namespace lieform
