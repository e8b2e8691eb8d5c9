#include <doctest.h>

#include "silt/torsion.hpp"

#include "common.hpp"

using namespace silt;
using namespace silt::testing;

namespace {

struct Fixture57 {
    PathAlgebraPtr A;
    Pipeline p;
    FdModule P1, P2, P3, S1, S2, S3;
    Fixture57() : A(example57_algebra()), p(run_pipeline(A, verify_silting(A, example57_T(A)))) {
        P1 = FdModule::projective(A, 0);
        P2 = FdModule::projective(A, 1);
        P3 = FdModule::projective(A, 2);
        S1 = FdModule::simple(A, 0);
        S2 = FdModule::simple(A, 1);
        S3 = FdModule::simple(A, 2);
    }
};

} // namespace

TEST_CASE("functor F on the worked modules") {
    Fixture57 fx;
    CHECK(functor_F(fx.p, fx.S1).total_dim() == 2);
    CHECK(functor_F(fx.p, fx.P2).total_dim() == 0);
    CHECK(functor_F(fx.p, FdModule::zero_module(fx.A)).total_dim() == 0);
    CHECK(functor_F(fx.p, fx.P1).total_dim() == 1);
    // dim F(M) = dim Hom(H^0(T), M) throughout
    FdModule h0 = h0_of(fx.p.T);
    for (const auto& M : {fx.P1, fx.P2, fx.P3, fx.S1, fx.S2, fx.S3})
        CHECK(functor_F(fx.p, M).total_dim() == static_cast<int>(hom_module(h0, M).size()));
}

TEST_CASE("memberships of the five indecomposables") {
    Fixture57 fx;
    auto mT = [&](const FdModule& m) { return memberships_A(fx.p, m); };
    CHECK(mT(fx.P1).in_T);
    CHECK(mT(fx.S1).in_T);
    CHECK(!mT(fx.P1).in_F);
    CHECK(!mT(fx.S1).in_F);
    for (const auto& M : {fx.S2, fx.S3, fx.P2}) {
        CHECK(mT(M).in_F);
        CHECK(!mT(M).in_T);
    }
    // H^0(T) itself is torsion
    CHECK(memberships_A(fx.p, h0_of(fx.p.T)).in_T);
}

TEST_CASE("Yoneda transport of G") {
    Fixture57 fx;
    for (int j = 0; j < 3; ++j) {
        FdModule ej = FdModule::projective(fx.p.endo.algebra, j);
        FdModule g = functor_G(fx.p, ej);
        CHECK(is_isomorphic(g, homology_of_complex(fx.p.endo.summands[j], 0)).iso);
    }
    CHECK(functor_G(fx.p, FdModule::zero_module(fx.p.endo.algebra)).total_dim() == 0);
}

TEST_CASE("roundtrips on the worked example") {
    Fixture57 fx;
    FdModule fs1 = functor_F(fx.p, fx.S1);
    CHECK(is_isomorphic(functor_G(fx.p, fs1), fx.S1).iso);
    FdModule fp1 = functor_F(fx.p, fx.P1);
    CHECK(is_isomorphic(functor_G(fx.p, fp1), fx.P1).iso);
    // F_T members return through G' o F'
    for (const auto& M : {fx.S2, fx.S3, fx.P2}) {
        FdModule fpm = functor_Fprime(fx.p, M);
        CHECK(is_isomorphic(functor_Gprime(fx.p, fpm), M).iso);
    }
}

TEST_CASE("torsion decomposition witnesses") {
    Fixture57 fx;
    auto d1 = torsion_decompose(fx.p, fx.P2);
    CHECK(d1.verified);
    CHECK(d1.torsion.sub.total_dim() == 0);
    auto d2 = torsion_decompose(fx.p, fx.P1);
    CHECK(d2.verified);
    CHECK(d2.torsion_free.quot.total_dim() == 0);
    auto d3 = torsion_decompose(fx.p, FdModule::direct_sum({fx.P1, fx.P2}));
    CHECK(d3.verified);
    CHECK(d3.torsion.sub.total_dim() == fx.P1.total_dim());
    CHECK(d3.torsion_free.quot.total_dim() == fx.P2.total_dim());
}

TEST_CASE("default corpus is the five indecomposables") {
    Fixture57 fx;
    auto mods = default_test_modules(fx.p, fx.A);
    CHECK(mods.size() == 5);
    int matched = 0;
    for (const auto& M : {fx.P1, fx.P2, fx.P3, fx.S1, fx.S2})
        for (const auto& x : mods)
            if (is_isomorphic(x, M).iso) ++matched;
    CHECK(matched == 5); // P3 = S3, so these five cover the list
}

TEST_CASE("full equivalence verification on the worked example") {
    Fixture57 fx;
    auto a_side = default_test_modules(fx.p, fx.A);
    // add the pairwise direct sums
    std::vector<FdModule> with_sums = a_side;
    for (size_t i = 0; i < a_side.size(); ++i)
        for (size_t j = i; j < a_side.size(); ++j)
            with_sums.push_back(FdModule::direct_sum({a_side[i], a_side[j]}));
    auto b_side = default_test_modules_B(fx.p);
    auto rep = verify_equivalences(fx.p, with_sums, b_side, {});
    if (!rep.all_ok())
        for (const auto& f : rep.failures) MESSAGE(f);
    CHECK(rep.all_ok());
}

TEST_CASE("trivial torsion pairs for T = A and T = Sigma A") {
    auto A = example57_algebra();
    {
        Pipeline p = run_pipeline(A, silting_free_module(A));
        for (int i = 0; i < 3; ++i) {
            CHECK(memberships_A(p, FdModule::projective(A, i)).in_T);
            CHECK(memberships_A(p, FdModule::simple(A, i)).in_T);
        }
        auto rep = verify_equivalences(p, default_test_modules(p, A), default_test_modules_B(p), {});
        CHECK(rep.all_ok());
    }
    {
        Pipeline p = run_pipeline(A, silting_shifted_free(A));
        for (int i = 0; i < 3; ++i) {
            CHECK(memberships_A(p, FdModule::projective(A, i)).in_F);
            CHECK(memberships_A(p, FdModule::simple(A, i)).in_F);
        }
        auto rep = verify_equivalences(p, default_test_modules(p, A), default_test_modules_B(p), {});
        CHECK(rep.all_ok());
    }
}

TEST_CASE("shifted functors and n-term classes") {
    // P1 + Sigma(P2 -> P1) is a three-term silting object over A2
    auto A = a2_algebra();
    std::vector<ProjComplex> parts = {ProjComplex::stalk(A, 0), two_term_a(A).shifted(1)};
    REQUIRE(is_presilting(parts));
    auto pkg = end_package(A, parts);
    std::vector<FdModule> mods = {FdModule::projective(A, 0), FdModule::projective(A, 1),
                                  FdModule::simple(A, 0), FdModule::simple(A, 1)};
    for (const auto& M : mods) {
        auto flags = nterm_class_flags(pkg, M, 3);
        int count = 0;
        for (bool b : flags) count += b ? 1 : 0;
        CHECK(count <= 1); // classes intersect pairwise in 0
        int total = 0;
        for (int i = 0; i < 3; ++i) total += hom_stalk_functor(pkg, M, i).module.total_dim();
        CHECK(total > 0); // the functors are jointly conservative on modules
    }
    // Sigma^2 A over A2: F^2 is the identity-like functor, other shifts vanish
    std::vector<ProjComplex> s2;
    for (int i = 0; i < 2; ++i) s2.push_back(ProjComplex::stalk(A, i).shifted(2));
    auto pkg2 = end_package(A, s2);
    for (const auto& M : mods) {
        CHECK(hom_stalk_functor(pkg2, M, 2).module.total_dim() == M.total_dim());
        CHECK(hom_stalk_functor(pkg2, M, 0).module.total_dim() == 0);
        CHECK(hom_stalk_functor(pkg2, M, 1).module.total_dim() == 0);
    }
}
