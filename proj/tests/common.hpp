#pragma once

// Shared desk fixtures for the test suites: the three corpus algebras and the
// worked two-term silting complex over the quotient of the linear A3 quiver.

#include "silt/path_algebra.hpp"
#include "silt/silting.hpp"

namespace silt::testing {

// 1 <-a- 2 <-b- 3 with a*b = 0 (composition right-to-left).
inline PathAlgebraPtr example57_algebra(Field f = Field::rationals()) {
    Quiver q;
    q.vertices = {"1", "2", "3"};
    q.arrows = {{"a", 1, 0}, {"b", 2, 1}};
    // path a*b applied right-to-left: first b (index 1), then a (index 0)
    PathAlgebra::Relation rel = {{Rat(1), {1, 0}}};
    return PathAlgebra::build(f, q, {rel}, 6);
}

// 1 <-a- 2, no relations.
inline PathAlgebraPtr a2_algebra(Field f = Field::rationals()) {
    Quiver q;
    q.vertices = {"1", "2"};
    q.arrows = {{"a", 1, 0}};
    return PathAlgebra::build(f, q, {}, 6);
}

// 1 <-a- 2 <-b- 3, no relations.
inline PathAlgebraPtr a3_algebra(Field f = Field::rationals()) {
    Quiver q;
    q.vertices = {"1", "2", "3"};
    q.arrows = {{"a", 1, 0}, {"b", 2, 1}};
    return PathAlgebra::build(f, q, {}, 6);
}

// one vertex, loop x, x^3 = 0.
inline PathAlgebraPtr kx3_algebra(Field f = Field::rationals()) {
    Quiver q;
    q.vertices = {"1"};
    q.arrows = {{"x", 0, 0}};
    PathAlgebra::Relation rel = {{Rat(1), {0, 0, 0}}};
    return PathAlgebra::build(f, q, {rel}, 6);
}

// T2 = (P2 -a-> P1) concentrated in degrees -1, 0.
inline ProjComplex two_term_a(const PathAlgebraPtr& A) {
    AlgMat d(A, 1, 1);
    d.at(0, 0) = A->basis_elt(A->arrow_basis_index(0));
    return ProjComplex::build(A, -1, {{1}, {0}}, {d});
}

// The worked silting complex T = P1 + (P2 -> P1) + Sigma P3.
inline std::vector<ProjComplex> example57_T(const PathAlgebraPtr& A) {
    return {ProjComplex::stalk(A, 0), two_term_a(A), ProjComplex::stalk(A, 2).shifted(1)};
}

} // namespace silt::testing
