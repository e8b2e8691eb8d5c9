#include <doctest.h>

#include "common.hpp"
#include "oracles.hpp"

using namespace silt;
using namespace silt::testing;

TEST_CASE("shift conventions") {
    auto A = example57_algebra();
    auto P1 = ProjComplex::stalk(A, 0);
    auto s = P1.shifted(1);
    CHECK(s.lo() == -1);
    CHECK(s.hi() == -1);
    CHECK(P1.shifted(1).shifted(-1) == P1);
    auto T2 = two_term_a(A);
    auto sT2 = T2.shifted(1);
    CHECK(sT2.lo() == -2);
    // differential picks up a sign
    CHECK(sT2.diff_from(-2).at(0, 0) == A->scale(Rat(-1), T2.diff_from(-1).at(0, 0)));
    CHECK(T2.shifted(2).diff_from(-3).at(0, 0) == T2.diff_from(-1).at(0, 0));
}

TEST_CASE("cones") {
    auto A = example57_algebra();
    auto T2 = two_term_a(A);
    auto id = ChainMap::identity(T2);
    CHECK(is_acyclic(cone(id).z));

    auto P1 = ProjComplex::stalk(A, 0);
    auto toz = ChainMap::zero(P1, ProjComplex::zero_complex(A));
    CHECK(cone(toz).z == P1.shifted(1));

    // cone of a: P2 -> P1 as stalk map is the two-term complex
    auto P2 = ProjComplex::stalk(A, 1);
    ChainMap am = ChainMap::zero(P2, P1);
    AlgMat c(A, 1, 1);
    c.at(0, 0) = A->basis_elt(A->arrow_basis_index(0));
    am.comps[0] = c;
    REQUIRE(am.commutes());
    Triangle t = cone(am);
    CHECK(t.z == T2);
}

TEST_CASE("hom spaces in the homotopy category (worked values)") {
    auto A = example57_algebra();
    auto T = example57_T(A);
    // T[0]=P1, T[1]=(P2->P1), T[2]=Sigma P3
    CHECK(hom_complexes(T[0], T[1], 0).quotient_dim() == 1);
    CHECK(hom_complexes(T[1], T[0].shifted(1), 0).quotient_dim() == 0);
    CHECK(hom_complexes(T[1], T[0], 1).quotient_dim() == 0); // same thing by shift argument
    CHECK(hom_complexes(T[0], ProjComplex::stalk(A, 1).shifted(1), 0).quotient_dim() == 0);
    // End blocks and the extra morphism from the shifted stalk
    for (int i = 0; i < 3; ++i) CHECK(hom_complexes(T[i], T[i], 0).quotient_dim() == 1);
    CHECK(hom_complexes(T[2], T[1], 0).quotient_dim() == 1);
    CHECK(hom_complexes(T[1], T[2], 0).quotient_dim() == 0);
    CHECK(hom_complexes(T[0], T[2], 0).quotient_dim() == 0);
    CHECK(hom_complexes(T[2], T[0], 0).quotient_dim() == 0);
    // null-homotopic representative: P2 -> T2 chain maps all die
    CHECK(hom_complexes(ProjComplex::stalk(A, 1), T[1], 0).quotient_dim() == 0);
    CHECK(hom_complexes(ProjComplex::stalk(A, 1), T[1], 0).chain_dim() == 1);
}

TEST_CASE("hom dimensions agree with the total-complex oracle") {
    auto A = example57_algebra();
    auto T = example57_T(A);
    std::vector<ProjComplex> objs = T;
    objs.push_back(ProjComplex::stalk(A, 1));
    objs.push_back(ProjComplex::algebra_stalk(A));
    objs.push_back(T[1].shifted(1));
    for (const auto& x : objs)
        for (const auto& y : objs)
            for (int sh = -2; sh <= 2; ++sh)
                CHECK(hom_complexes(x, y, sh).quotient_dim() == oracle_hom_dim(x, y, sh));
}

TEST_CASE("homology of complexes") {
    auto A = example57_algebra();
    auto T2 = two_term_a(A);
    auto S1 = FdModule::simple(A, 0);
    auto S3 = FdModule::simple(A, 2);
    CHECK(is_isomorphic(homology_of_complex(T2, 0), S1).iso);
    CHECK(is_isomorphic(homology_of_complex(T2, -1), S3).iso);
    auto P1 = ProjComplex::stalk(A, 0);
    CHECK(is_isomorphic(homology_of_complex(P1, 0), FdModule::projective(A, 0)).iso);
    CHECK(homology_of_complex(P1, 1).total_dim() == 0);
    CHECK(!is_acyclic(T2));
    CHECK(homology_of_complex(T2, 0).dims() == std::vector<int>{1, 0, 0});
}

TEST_CASE("minimal models strip contractible summands") {
    auto A = example57_algebra();
    auto T2 = two_term_a(A);
    auto mm0 = minimal_model(cone(ChainMap::identity(ProjComplex::stalk(A, 0))).z);
    CHECK(mm0.model.is_zero_complex());
    auto big = ProjComplex::direct_sum({T2, cone(ChainMap::identity(ProjComplex::stalk(A, 2))).z});
    auto mm = minimal_model(big);
    CHECK(mm.model == T2);
    CHECK(is_isomorphic_kb(big, T2).iso);
}

TEST_CASE("isomorphism in K^b") {
    auto A = example57_algebra();
    auto T2 = two_term_a(A);
    auto P1 = ProjComplex::stalk(A, 0);
    CHECK(is_isomorphic_kb(P1, minimal_model(P1).model).iso);
    CHECK(!is_isomorphic_kb(P1, P1.shifted(1)).iso);
    // doubled differential is still isomorphic over Q
    AlgMat d(A, 1, 1);
    d.at(0, 0) = A->scale(Rat(2), A->basis_elt(A->arrow_basis_index(0)));
    auto T2x2 = ProjComplex::build(A, -1, {{1}, {0}}, {d});
    CHECK(is_isomorphic_kb(T2, T2x2).iso);
    CHECK(!is_isomorphic_kb(T2, ProjComplex::direct_sum({P1, ProjComplex::stalk(A, 1).shifted(1)})).iso);
}

TEST_CASE("add membership with certified multiplicities") {
    auto A = example57_algebra();
    auto T = example57_T(A);
    auto X = ProjComplex::direct_sum({T[1], T[2]});
    auto r = add_membership(X, T);
    CHECK(r.member);
    CHECK(r.mult == std::vector<int>{0, 1, 1});
    auto z = add_membership(ProjComplex::zero_complex(A), T);
    CHECK(z.member);
    CHECK(z.mult == std::vector<int>{0, 0, 0});
    auto none = add_membership(ProjComplex::stalk(A, 0), {ProjComplex::stalk(A, 0).shifted(1)});
    CHECK(!none.member);
}

TEST_CASE("decompose complexes") {
    auto A = example57_algebra();
    auto T = example57_T(A);
    auto X = ProjComplex::direct_sum({T[1], T[2], T[0]});
    auto parts = decompose_complex(X);
    CHECK(parts.size() == 3);
    CHECK(end_residue_dim_kb(T[1]) == 1);
    CHECK(end_residue_dim_kb(X) == 3);
    // the worked endomorphism algebra itself is 5-dimensional
    CHECK(hom_complexes(X, X, 0).quotient_dim() == 5);
}

TEST_CASE("decompose splits basis-disguised summands") {
    // (P2 -(a,a)-> P1 + P1): connected as a graph, but a row operation splits
    // off a stalk copy of P1; requires the idempotent route
    auto A = a2_algebra();
    AlgMat d(A, 2, 1);
    d.at(0, 0) = A->basis_elt(A->arrow_basis_index(0));
    d.at(1, 0) = A->basis_elt(A->arrow_basis_index(0));
    auto X = ProjComplex::build(A, -1, {{1}, {0, 0}}, {d});
    REQUIRE(end_residue_dim_kb(X) == 2);
    auto dec = decompose_complex_with_witness(X);
    REQUIRE(dec.parts.size() == 2);
    bool has_stalk = false, has_two_term = false;
    for (const auto& p : dec.parts) {
        if (is_isomorphic_kb(p, ProjComplex::stalk(A, 0)).iso) has_stalk = true;
        if (is_isomorphic_kb(p, two_term_a(A)).iso) has_two_term = true;
    }
    CHECK(has_stalk);
    CHECK(has_two_term);
}

TEST_CASE("hom from complex to module stalk") {
    auto A = example57_algebra();
    auto T = example57_T(A);
    auto S1 = FdModule::simple(A, 0);
    auto P2 = FdModule::projective(A, 1);
    // F(S1) components: 1 from P1, 1 from the two-term summand, 0 from Sigma P3
    CHECK(hom_complex_to_module(T[0], S1, 0).quotient_dim() == 1);
    CHECK(hom_complex_to_module(T[1], S1, 0).quotient_dim() == 1);
    CHECK(hom_complex_to_module(T[2], S1, 0).quotient_dim() == 0);
    // F(P2) = 0
    for (int i = 0; i < 3; ++i) CHECK(hom_complex_to_module(T[i], P2, 0).quotient_dim() == 0);
    // F'(S2): the two-term summand contributes 1
    auto S2 = FdModule::simple(A, 1);
    CHECK(hom_complex_to_module(T[1], S2, 1).quotient_dim() == 1);
    CHECK(hom_complex_to_module(T[0], S2, 1).quotient_dim() == 0);
}

TEST_CASE("projective presentations") {
    auto A = example57_algebra();
    auto S1 = FdModule::simple(A, 0);
    auto pres = projective_presentation(S1);
    CHECK(pres.complex.summands_at(0) == std::vector<int>{0});
    CHECK(pres.complex.summands_at(-1) == std::vector<int>{1});
    CHECK(is_isomorphic(homology_of_complex(pres.complex, 0), S1).iso);

    auto P2 = FdModule::projective(A, 1);
    auto pres2 = projective_presentation(P2);
    CHECK(pres2.complex.summands_at(-1).empty());
    CHECK(pres2.complex.summands_at(0) == std::vector<int>{1});

    auto S3 = FdModule::simple(A, 2);
    auto pres3 = projective_presentation(S3);
    CHECK(pres3.complex.summands_at(-1).empty());
    CHECK(pres3.complex.summands_at(0) == std::vector<int>{2});

    // homology of the presentation recovers the module, across the corpus
    for (const auto& M : {S1, FdModule::simple(A, 1), P2, FdModule::projective(A, 0)})
        CHECK(is_isomorphic(homology_of_complex(projective_presentation(M).complex, 0), M).iso);
}
