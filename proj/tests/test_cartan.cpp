#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <lieform/cartan.hpp>
#include <lieform/catalog.hpp>

using namespace lieform;

namespace {

struct PairFixture {
    LieAlgebra g;
    SubalgebraEmbedding h;
    CartanComplexSpec cartan;
    CochainComplex rel;
    int cap;

    PairFixture(LieAlgebra alg, std::vector<Vec> h_basis, const std::string& name)
        : g(std::move(alg)) {
        h = make_subalgebra(g, std::move(h_basis), name);
        cap = static_cast<int>(g.dim() - h.dim()) + 1;
        cartan = build_cartan_complex(g, h, cap);
        rel = relative_complex(g, h, cap);
    }
};

}  // namespace

TEST_CASE("Cartan complex of (g, 0) is the CE complex") {
    LieAlgebra g = catalog::sl_R(2);
    SubalgebraEmbedding trivial;
    trivial.target = &g;
    trivial.induced = LieAlgebra("0", 0, {});
    CartanComplexSpec spec = build_cartan_complex(g, trivial, 3);
    CochainComplex ce = ce_complex(g, 3);
    for (int n = 0; n <= 3; ++n) CHECK(spec.complex.dim(n) == ce.dim(n));
    CHECK(cohomology(spec.complex, 3).dims() == cohomology(ce, 3).dims());
}

TEST_CASE("Cartan complex of (sl(2), so(2))") {
    PairFixture fx(catalog::sl_R(2), {Vec{rat(0), rat(1), rat(-1)}}, "so(2)");
    // degree 2 contains 1 (x) sF
    bool found = false;
    for (const auto& b : fx.cartan.complex.basis[2]) {
        Monomial unit_sF{0, {1}};
        if (b.terms().size() == 1 && b.terms().begin()->first == unit_sF) found = true;
    }
    CHECK(found);
    // epsilon is a quasi-isomorphism: equal cohomology dims degreewise
    auto hc = cohomology(fx.cartan.complex, fx.cap).dims();
    auto hr = cohomology(fx.rel, fx.cap).dims();
    CHECK(hc == hr);
    CHECK(hr == std::vector<std::size_t>{1, 0, 1, 0});
}

TEST_CASE("epsilon and psi_V identities") {
    for (auto&& [alg, hb, name] :
         {std::tuple{catalog::sl_R(2), Vec{rat(0), rat(1), rat(-1)}, "so(2)"},
          std::tuple{catalog::sl_R(2), Vec{rat(1), rat(0), rat(0)}, "so(1,1)"}}) {
        PairFixture fx(alg, {hb}, name);
        CAPTURE(name);
        auto complement = invariant_complement(fx.g, fx.h);
        PsiV psi(fx.g, fx.h, fx.rel.gens, complement);

        // psi_V . epsilon = identity on the whole relative basis
        for (int n = 0; n <= fx.cap; ++n)
            for (const auto& b : fx.rel.basis[n]) CHECK(psi(epsilon(b, fx.cartan.gens)) == b);

        // both are cochain maps
        Derivation d_rel = ce_derivation(fx.g, fx.rel.gens);
        Derivation d_car = cartan_derivation(fx.g, fx.h.basis_in_target, fx.cartan.gens);
        for (int n = 0; n <= fx.cap; ++n) {
            for (const auto& b : fx.rel.basis[n])
                CHECK(epsilon(d_rel(b), fx.cartan.gens) == d_car(epsilon(b, fx.cartan.gens)));
            for (const auto& b : fx.cartan.complex.basis[n]) CHECK(psi(d_car(b)) == d_rel(psi(b)));
        }

        // induced maps on cohomology are mutually inverse
        Cohomology hrel = cohomology(fx.rel, fx.cap);
        Cohomology hcar = cohomology(fx.cartan.complex, fx.cap);
        auto eps_gens = fx.cartan.gens;
        auto ind_eps = induced_map_on_cohomology(
            fx.rel, hrel, fx.cartan.complex, hcar,
            [eps_gens](const GradedElement& e) { return epsilon(e, eps_gens); }, fx.cap);
        auto ind_psi = induced_map_on_cohomology(
            fx.cartan.complex, hcar, fx.rel, hrel,
            [&psi](const GradedElement& e) { return psi(e); }, fx.cap);
        for (int n = 0; n <= fx.cap; ++n) {
            CHECK(hrel.deg[n].dim() == hcar.deg[n].dim());
            CHECK(ind_psi.by_degree[n] * ind_eps.by_degree[n] ==
                  Matrix::identity(hrel.deg[n].dim()));
            CHECK(ind_eps.by_degree[n] * ind_psi.by_degree[n] ==
                  Matrix::identity(hcar.deg[n].dim()));
        }
    }
}

TEST_CASE("Chern-Weil classes of the sl(2) pairs") {
    {
        PairFixture fx(catalog::sl_R(2), {Vec{rat(0), rat(1), rat(-1)}}, "so(2)");
        auto complement = invariant_complement(fx.g, fx.h);
        PsiV psi(fx.g, fx.h, fx.rel.gens, complement);
        Cohomology hrel = cohomology(fx.rel, fx.cap);

        auto h_polys = poly_generators(fx.h.induced);
        // w(1) = [1]
        GradedElement one_rep =
            chern_weil_representative(psi, fx.cartan.gens, GradedElement::unit(h_polys));
        auto c0 = fx.rel.coords(0, one_rep);
        REQUIRE(c0);
        auto cls0 = class_coords(fx.rel, hrel, 0, *c0);
        REQUIRE(cls0);
        CHECK(sgn((*cls0)[0]) != 0);

        // w(sF) spans H^2: the Euler/area class
        GradedElement sF = GradedElement::even_gen(h_polys, 0);
        GradedElement rep = chern_weil_representative(psi, fx.cartan.gens, sF);
        auto c2 = fx.rel.coords(2, rep);
        REQUIRE(c2);
        auto cls = class_coords(fx.rel, hrel, 2, *c2);
        REQUIRE(cls);
        REQUIRE(cls->size() == 1);
        CHECK(sgn((*cls)[0]) != 0);

        // multiplicativity: w(sF . sF) = w(sF) w(sF) as classes (both zero
        // here: H^4 vanishes above dim g/h)
        GradedElement rep2 = chern_weil_representative(psi, fx.cartan.gens, multiply(sF, sF));
        CHECK(fx.rel.dim(4) == 0);
        CHECK(rep2.is_zero());
    }
    {
        PairFixture fx(catalog::sl_R(2), {Vec{rat(1), rat(0), rat(0)}}, "so(1,1)");
        auto complement = invariant_complement(fx.g, fx.h);
        PsiV psi(fx.g, fx.h, fx.rel.gens, complement);
        auto h_polys = poly_generators(fx.h.induced);
        GradedElement sF2 = multiply(GradedElement::even_gen(h_polys, 0),
                                     GradedElement::even_gen(h_polys, 0));
        GradedElement rep = chern_weil_representative(psi, fx.cartan.gens, sF2);
        CHECK(rep.is_zero());  // degree 4 exceeds dim g/h = 2
    }
}

TEST_CASE("Chern-Weil classes multiply") {
    // w(Q R) = w(Q) w(R) as classes: the representative of the product is
    // the product of representatives, compared modulo coboundaries.
    PairFixture fx(catalog::sl_R(2), {Vec{rat(0), rat(1), rat(-1)}}, "so(2)");
    auto complement = invariant_complement(fx.g, fx.h);
    PsiV psi(fx.g, fx.h, fx.rel.gens, complement);
    Cohomology hrel = cohomology(fx.rel, fx.cap);
    auto h_polys = poly_generators(fx.h.induced);
    GradedElement sF = GradedElement::even_gen(h_polys, 0);

    GradedElement rep_q = chern_weil_representative(psi, fx.cartan.gens, sF);
    GradedElement prod_of_reps = multiply(rep_q, rep_q);
    GradedElement rep_of_prod = chern_weil_representative(psi, fx.cartan.gens, multiply(sF, sF));
    // degree 4 exceeds dim g/h, so both classes vanish; the cochains agree
    // exactly because psi_V is an algebra map
    CHECK(prod_of_reps == rep_of_prod);
    CHECK(rep_of_prod.is_zero());

    // degree-0 case: w(1) w(sF) = w(sF)
    GradedElement one_rep = chern_weil_representative(psi, fx.cartan.gens, GradedElement::unit(h_polys));
    auto c = fx.rel.coords(2, multiply(one_rep, rep_q));
    REQUIRE(c);
    auto cls = class_coords(fx.rel, hrel, 2, *c);
    auto c2 = fx.rel.coords(2, rep_q);
    auto cls2 = class_coords(fx.rel, hrel, 2, *c2);
    REQUIRE(cls);
    REQUIRE(cls2);
    CHECK(*cls == *cls2);
}

TEST_CASE("Cartan complex is independent of the h dual basis choice") {
    LieAlgebra g = catalog::sl_R(2);
    auto h1 = make_subalgebra(g, {Vec{rat(0), rat(1), rat(-1)}}, "so(2)");
    auto h2 = make_subalgebra(g, {Vec{rat(0), rat(-5, 2), rat(5, 2)}}, "so(2) rescaled");
    CartanComplexSpec c1 = build_cartan_complex(g, h1, 3);
    CartanComplexSpec c2 = build_cartan_complex(g, h2, 3);

    // transport: odd generators fixed, sF' = (1/a) sF for h' = a h
    std::vector<GradedElement> odd_images, even_images;
    for (std::size_t i = 0; i < g.dim(); ++i)
        odd_images.push_back(GradedElement::odd_gen(c1.gens, i));
    even_images.push_back(GradedElement::even_gen(c1.gens, 0) * rat(-2, 5));
    Derivation d1 = cartan_derivation(g, h1.basis_in_target, c1.gens);
    Derivation d2 = cartan_derivation(g, h2.basis_in_target, c2.gens);
    for (int n = 0; n <= 3; ++n) {
        CHECK(c1.complex.dim(n) == c2.complex.dim(n));
        for (const auto& b : c2.complex.basis[n]) {
            GradedElement tb = substitute(b, c1.gens, odd_images, even_images);
            CHECK(c1.complex.coords(n, tb).has_value());
            CHECK(substitute(d2(b), c1.gens, odd_images, even_images) == d1(tb));
        }
    }
}

TEST_CASE("checked epsilon rejects non-relative cochains") {
    PairFixture fx(catalog::sl_R(2), {Vec{rat(0), rat(1), rat(-1)}}, "so(2)");
    auto one = GradedElement::unit(fx.rel.gens);
    CHECK(epsilon_checked(fx.g, fx.h, one, fx.cartan.gens) == GradedElement::unit(fx.cartan.gens));
    // e* is neither horizontal nor invariant for so(2)
    CHECK_THROWS_AS(
        epsilon_checked(fx.g, fx.h, GradedElement::odd_gen(fx.rel.gens, 1), fx.cartan.gens),
        ValidationError);
}

TEST_CASE("complement construction and failure modes") {
    LieAlgebra g = catalog::sl_R(2);
    auto so2 = make_subalgebra(g, {Vec{rat(0), rat(1), rat(-1)}}, "so(2)");
    auto v = invariant_complement(g, so2);
    REQUIRE(v.size() == 2);

    // the complement is theta-stable
    SpanBuilder span(3);
    for (const auto& x : v) span.add(x);
    for (const auto& x : v) CHECK(span.contains(*g.theta * x));

    // user-supplied complement is honored
    auto custom = invariant_complement(g, so2, std::vector<Vec>{g.unit(0), Vec{rat(0), rat(1), rat(1)}});
    CHECK(custom.size() == 2);
}
