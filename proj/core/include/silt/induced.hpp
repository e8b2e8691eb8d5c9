#pragma once

#include "silt/end_algebra.hpp"

namespace silt {

/// Everything the two-step construction produces for one (A, T):
/// B = End(T), the approximation triangle A -> T' -> T'' -> Sigma A (with T''
/// replaced by a literal sum of summand copies through a certified
/// isomorphism), the induced complex S over B, Abar = End(S), and the
/// surjection pi: A -> Abar obtained by lifting each basis element of A to a
/// morphism of triangles.
struct Pipeline {
    AlgebraPtr A;
    SiltingObject T;
    EndPackage endo; // B

    ApproxTriangle tri;           // original triangle (minimal T'')
    std::vector<int> tsecond_idx; // literal copies of summands forming W = T''
    ChainMap f_lit;               // T' -> W
    ChainMap conn_lit;            // W -> Sigma A

    ProjComplex S_raw;  // cone of Hom(T, f) over B, degrees -1..0
    ProjComplex S_min;  // minimal model
    ComplexDecomposition S_dec;
    SiltingObject S_obj; // verification record over B

    EndPackage abar; // End(S) over B
    AlgebraHom pi;   // A -> Abar, certified unital and multiplicative
    int hom_S_shiftminus1_dim = 0;
    int lemma54_dim = 0;
};

struct PipelineOptions {
    IsoPolicy policy;
    bool assume_symmetric = false;
};

Pipeline run_pipeline(AlgebraPtr a, const SiltingObject& t, const PipelineOptions& opts = {});

/// dim and basis of {g in Hom_{K^b}(T'', T') : g f = 0 = f g}; the two-sided
/// annihilator computed inside the homotopy-category Hom space.
struct AnnihilatorSpace {
    int dim = 0;
    std::vector<ChainMap> basis;
};
AnnihilatorSpace lemma54_space(const Pipeline& p);

/// Restriction of a module along an algebra homomorphism (pi^*).
FdModule restrict_along(const AlgebraHom& h, const FdModule& m);

/// The sufficient-condition report for "S is tilting".
struct TiltingConditions {
    bool hereditary = false;      // A hereditary (path algebras only)
    bool hereditary_known = false;
    bool h_minus1_tprime_zero = false; // pd H^0(T') <= 1
    bool t_tilting = false;
    bool mutation_condition = false; // T is a left mutation of A or right mutation of Sigma A
    bool assume_symmetric = false;   // user-asserted flag, never computed
    bool any() const {
        return (hereditary_known && hereditary) || h_minus1_tprime_zero || t_tilting ||
               mutation_condition || assume_symmetric;
    }
};
TiltingConditions tilting_sufficient_conditions(const Pipeline& p, bool assume_symmetric = false,
                                                const IsoPolicy& policy = {});

} // namespace silt
