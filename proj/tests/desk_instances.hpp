#pragma once

// Randomized desk-scale Sullivan data shared by the unit suite and the
// acceptance suite, plus the identity battery they both run. Instances are
// drawn from a fixed-seed generator so every run sees the same data.

#include <lieform/sullivan.hpp>

#include <random>
#include <string>
#include <vector>

namespace lieform::testing {

struct DeskInstance {
    std::vector<std::pair<std::string, int>> u, v, w;
    std::vector<std::vector<std::pair<Monomial, Rational>>> f, g;
    int cap = 0;
};

/// Random polynomial of the given degree over an even-only generator set,
/// as (monomial, coefficient) pairs keyed to that set.
inline std::vector<std::pair<Monomial, Rational>> random_poly(std::mt19937& rng,
                                                              const GenSetPtr& evens, int degree) {
    std::vector<std::pair<Monomial, Rational>> out;
    std::uniform_int_distribution<long> coeff(-2, 2);
    for (auto& m : basis_of_degree(*evens, degree)) {
        long c = coeff(rng);
        if (c != 0) out.push_back({std::move(m), rat(c)});
    }
    return out;
}

inline GenSetPtr shifted_evens(const std::vector<std::pair<std::string, int>>& gens) {
    std::vector<GeneratorSet::Generator> even;
    for (const auto& [name, deg] : gens) even.push_back({"s" + name, deg + 1});
    return make_generators({}, std::move(even));
}

/// |U|, |V|, |W| <= 3 generators of odd degree <= 7, cap <= 12, resampled
/// until the four-factor algebra is neither trivial nor too large for an
/// exact run (every degree component capped, total size bounded below).
inline DeskInstance random_instance(std::mt19937& rng) {
    const int degree_pool[8] = {1, 1, 1, 3, 3, 3, 5, 7};
    for (;;) {
        DeskInstance inst;
        auto draw = [&](const char* prefix, std::size_t count) {
            std::vector<std::pair<std::string, int>> gens;
            for (std::size_t i = 0; i < count; ++i)
                gens.push_back({prefix + std::to_string(i + 1), degree_pool[rng() % 8]});
            return gens;
        };
        inst.u = draw("u", rng() % 4);
        inst.v = draw("v", rng() % 4);
        inst.w = draw("w", rng() % 4);
        if (inst.u.size() + inst.v.size() + inst.w.size() < 2) continue;
        inst.cap = 6 + static_cast<int>(rng() % 7);

        auto sv = shifted_evens(inst.v);
        auto sw = shifted_evens(inst.w);
        for (const auto& [name, deg] : inst.u) inst.f.push_back(random_poly(rng, sv, deg + 1));
        for (const auto& [name, deg] : inst.v) inst.g.push_back(random_poly(rng, sw, deg + 1));

        // size guards on the big algebra
        std::vector<GeneratorSet::Generator> odd, even;
        for (const auto& [n, d] : inst.u) odd.push_back({n, d});
        for (const auto& [n, d] : inst.v) odd.push_back({n, d});
        for (const auto& [n, d] : inst.v) even.push_back({"s" + n, d + 1});
        for (const auto& [n, d] : inst.w) even.push_back({"s" + n, d + 1});
        auto big = make_generators(std::move(odd), std::move(even));
        bool small_enough = true;
        std::size_t total = 0;
        for (int d = 0; d <= inst.cap + 1 && small_enough; ++d) {
            const std::size_t n = dim_of_degree(*big, d);
            total += n;
            if (n > 220) small_enough = false;
        }
        if (small_enough && total >= 15) return inst;
    }
}

inline RelativeModel build_model(const DeskInstance& inst) {
    return relative_model(inst.u, inst.v, inst.w, inst.f, inst.g, inst.cap);
}

/// delta_V kappa + kappa delta_V = 1 - pi_{0,0} on every monomial of
/// degree <= cap.
inline bool check_kappa_homotopy(const RelativeModel& rm) {
    Derivation dv = rm.delta_v();
    for (int n = 0; n <= rm.cap; ++n)
        for (const auto& e : degree_basis_elements(rm.gens, n)) {
            GradedElement lhs = dv(rm.kappa(e)) + rm.kappa(dv(e));
            GradedElement rhs = e - rm.pi_pq(e, 0, 0);
            if (!(lhs == rhs)) return false;
        }
    return true;
}

/// Lemma identities for the coordinate change phi:
///  (1) phi (-delta_{gf} + delta_V) = (-delta_f - delta_g + delta_V) phi
///  (2) the (1-phi) series is nilpotent (phi_inverse terminates and inverts)
///  (3) m phi = pi.
inline bool check_phi_identities(const RelativeModel& rm) {
    PhiOperators ops(rm);
    Derivation total = rm.total_differential();
    Derivation dv = rm.delta_v();

    // -delta_{gf} + delta_V on the big algebra
    std::vector<GradedElement> odd_images;
    for (std::size_t i = 0; i < rm.nu; ++i)
        odd_images.push_back(rm.include_target(rm.gf_images[i]) * rat(-1));
    for (std::size_t j = 0; j < rm.nv; ++j)
        odd_images.push_back(GradedElement::even_gen(rm.gens, j));
    Derivation shifted(rm.gens, std::move(odd_images),
                       std::vector<GradedElement>(rm.gens->even_count(), GradedElement::zero(rm.gens)),
                       true);

    for (int n = 0; n <= rm.cap; ++n)
        for (const auto& e : degree_basis_elements(rm.gens, n)) {
            if (!(ops.phi(shifted(e)) == total(ops.phi(e)))) return false;
            if (!(ops.phi_inverse(ops.phi(e)) == e)) return false;
            GradedElement lhs = rm.m_map(ops.phi(e));
            GradedElement rhs = rm.to_target(rm.pi_pq(e, 0, 0));
            if (!(lhs == rhs)) return false;
        }
    return true;
}

/// Prop 2.1(i): m restricted to the source factor is 1 (x) g.
inline bool check_m_restricts_to_g(const RelativeModel& rm) {
    // source = Lambda U (x) S sV sitting inside the big algebra
    std::vector<GeneratorSet::Generator> odd, even;
    for (std::size_t i = 0; i < rm.nu; ++i) odd.push_back(rm.gens->odd[i]);
    for (std::size_t j = 0; j < rm.nv; ++j) even.push_back(rm.gens->even[j]);
    auto src = make_generators(std::move(odd), std::move(even));

    std::vector<GradedElement> inc_odd, inc_even, g_odd, g_even;
    for (std::size_t i = 0; i < rm.nu; ++i) {
        inc_odd.push_back(GradedElement::odd_gen(rm.gens, i));
        g_odd.push_back(GradedElement::odd_gen(rm.target_gens, i));
    }
    for (std::size_t j = 0; j < rm.nv; ++j) {
        inc_even.push_back(GradedElement::even_gen(rm.gens, j));
        g_even.push_back(rm.to_target(rm.g_images[j]));
    }
    for (int n = 0; n <= rm.cap; ++n)
        for (const auto& e : degree_basis_elements(src, n)) {
            GradedElement via_m = rm.m_map(substitute(e, rm.gens, inc_odd, inc_even));
            GradedElement direct = substitute(e, rm.target_gens, g_odd, g_even);
            if (!(via_m == direct)) return false;
        }
    return true;
}

/// Prop 2.1(ii): H(m) is a degreewise isomorphism up to cap.
inline bool check_m_quasi_iso(const RelativeModel& rm) {
    Derivation total = rm.total_differential();
    Derivation dt = rm.target_differential();
    CochainComplex big = build_complex(rm.gens, {}, [total](const GradedElement& e) { return total(e); }, rm.cap);
    CochainComplex tgt =
        build_complex(rm.target_gens, {}, [dt](const GradedElement& e) { return dt(e); }, rm.cap);
    Cohomology hbig = cohomology(big, rm.cap);
    Cohomology htgt = cohomology(tgt, rm.cap);
    auto induced = induced_map_on_cohomology(big, hbig, tgt, htgt,
                                             [&rm](const GradedElement& e) { return rm.m_map(e); }, rm.cap);
    for (int n = 0; n <= rm.cap; ++n) {
        if (hbig.deg[n].dim() != htgt.deg[n].dim()) return false;
        if (rank(induced.by_degree[n]) != hbig.deg[n].dim()) return false;
    }
    return true;
}

struct ConvergenceReport {
    bool converges = true;         // sum dim E_inf = dim H(target) per degree
    bool e2_tensor_formula = true; // dim E_2^{p,q} = dim H^p(f-part) dim H^q(g-part)
    bool edge_factorization = true;  // rank H(1 (x) g) = dim E_inf^{p,0}
    bool collapse_detected = true;   // E_2 totals match the abutment
};

/// Prop 2.2 and its use: E_2 tensor shape, convergence of the filtration
/// spectral sequence to H(target), and the edge factorization.
inline ConvergenceReport check_spectral_sequence(const RelativeModel& rm) {
    ConvergenceReport rep;
    SpectralSequence ss = spectral_sequence(rm, rm.cap);

    // source and fiber pure Sullivan algebras
    PureSullivanAlgebra src, fib;
    {
        std::vector<GeneratorSet::Generator> odd, even;
        for (std::size_t i = 0; i < rm.nu; ++i) odd.push_back(rm.gens->odd[i]);
        for (std::size_t j = 0; j < rm.nv; ++j) even.push_back(rm.gens->even[j]);
        src.gens = make_generators(std::move(odd), std::move(even));
        for (std::size_t i = 0; i < rm.nu; ++i) {
            GradedElement im(src.gens);
            for (const auto& [m, c] : rm.f_images[i].terms()) {
                Monomial sm{0, std::vector<std::uint16_t>(rm.nv)};
                for (std::size_t j = 0; j < rm.nv; ++j) sm.even_exp[j] = m.even_exp[j];
                im.add_term(std::move(sm), c);
            }
            src.f_images.push_back(std::move(im));
        }
    }
    {
        std::vector<GeneratorSet::Generator> odd, even;
        for (std::size_t j = 0; j < rm.nv; ++j) odd.push_back(rm.gens->odd[rm.nu + j]);
        for (std::size_t k = 0; k < rm.nw; ++k) even.push_back(rm.gens->even[rm.nv + k]);
        fib.gens = make_generators(std::move(odd), std::move(even));
        for (std::size_t j = 0; j < rm.nv; ++j) {
            GradedElement im(fib.gens);
            for (const auto& [m, c] : rm.g_images[j].terms()) {
                Monomial sm{0, std::vector<std::uint16_t>(rm.nw)};
                for (std::size_t k = 0; k < rm.nw; ++k) sm.even_exp[k] = m.even_exp[rm.nv + k];
                im.add_term(std::move(sm), c);
            }
            fib.f_images.push_back(std::move(im));
        }
    }

    CochainComplex src_cx = koszul_complex(src, rm.cap);
    CochainComplex fib_cx = koszul_complex(fib, rm.cap);
    Cohomology hsrc = cohomology(src_cx, rm.cap);
    Cohomology hfib = cohomology(fib_cx, rm.cap);

    Derivation dt = rm.target_differential();
    CochainComplex tgt =
        build_complex(rm.target_gens, {}, [dt](const GradedElement& e) { return dt(e); }, rm.cap);
    Cohomology htgt = cohomology(tgt, rm.cap);

    for (int p = 0; p <= rm.cap; ++p)
        for (int q = 0; p + q <= rm.cap; ++q)
            if (ss.dim_e2(p, q) != hsrc.deg[p].dim() * hfib.deg[q].dim()) rep.e2_tensor_formula = false;

    for (int n = 0; n <= rm.cap; ++n) {
        if (ss.einf_total(n) != htgt.deg[n].dim()) rep.converges = false;
        if (ss.e2_total(n) != htgt.deg[n].dim()) rep.collapse_detected = false;
    }

    // edge: rank of H(1 (x) g) in degree p equals dim E_inf^{p,0}
    std::vector<GradedElement> odd_images, even_images;
    for (std::size_t i = 0; i < rm.nu; ++i) odd_images.push_back(GradedElement::odd_gen(rm.target_gens, i));
    for (std::size_t j = 0; j < rm.nv; ++j) even_images.push_back(rm.to_target(rm.g_images[j]));
    auto one_tensor_g = [&](const GradedElement& e) {
        return substitute(e, rm.target_gens, odd_images, even_images);
    };
    auto induced = induced_map_on_cohomology(src_cx, hsrc, tgt, htgt, one_tensor_g, rm.cap);
    for (int p = 0; p <= rm.cap; ++p)
        if (rank(induced.by_degree[p]) != ss.dim_einf(p, 0)) rep.edge_factorization = false;

    return rep;
}

}  // namespace lieform::testing
