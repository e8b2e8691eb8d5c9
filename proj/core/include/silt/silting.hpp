#pragma once

#include "silt/complex.hpp"

namespace silt {

struct SiltingVerification {
    bool presilting = false;
    bool generation = false; // approximation triangle produced and certified
    bool silting = false;
    bool tilting = false;
    int shift_range = 0;
    std::string failure; // first failing Hom pair, for reports
};

/// A (candidate) silting object: pairwise non-isomorphic indecomposable
/// minimal complexes with local endomorphism rings, plus the verification
/// record produced when it was checked.
struct SiltingObject {
    AlgebraPtr owner;
    std::vector<ProjComplex> summands;
    SiltingVerification verification;

    ProjComplex sum() const;
    bool two_term() const;
    std::string shape_str() const;
};

/// The triangle A -> T' -> T'' -> Sigma A with both middle terms in add(T).
struct ApproxTriangle {
    ProjComplex tprime;            // literal direct sum of summand copies
    std::vector<int> tprime_index; // which summand each copy is
    ProjComplex tsecond;           // minimal, certified in add(T)
    std::vector<int> tsecond_mult; // multiplicities per summand
    ChainMap unit;                 // A -> T'
    ChainMap f;                    // T' -> T''
    ChainMap conn;                 // T'' -> Sigma A
};

struct LeftApproximation {
    ChainMap map;          // X -> target
    std::vector<int> used; // summand index per target copy
    ProjComplex target;
};

struct RightApproximation {
    ChainMap map;          // source -> X
    std::vector<int> used;
    ProjComplex source;
};

/// Hom(T_a, Sigma^i T_b) = 0 for 1 <= i <= width; the scan range is complete
/// because larger shifts separate the degree supports.
bool is_presilting(const std::vector<ProjComplex>& parts, std::string* why = nullptr);

/// Minimal left add(T)-approximation of x, built from a full Hom basis and
/// greedily trimmed with a surjectivity certificate at every step.
LeftApproximation left_approximation(const ProjComplex& x, const std::vector<ProjComplex>& summands);
RightApproximation right_approximation(const std::vector<ProjComplex>& summands, const ProjComplex& x);

std::optional<ApproxTriangle> approximation_triangle(const AlgebraPtr& A,
                                                     const std::vector<ProjComplex>& summands,
                                                     const IsoPolicy& policy = {});

/// Builds the verification record: presilting scan, generation certificate,
/// negative-shift scan for tilting. Summand shape (locality, pairwise
/// non-isomorphy, minimality) is certified first.
SiltingObject verify_silting(AlgebraPtr owner, std::vector<ProjComplex> parts,
                             const IsoPolicy& policy = {});

SiltingObject silting_free_module(AlgebraPtr owner, const IsoPolicy& policy = {});  // T = A
SiltingObject silting_shifted_free(AlgebraPtr owner, const IsoPolicy& policy = {}); // T = Sigma A

struct MutationResult {
    SiltingObject object;
    Triangle exchange; // T_k -> E -> T_k^* -> Sigma T_k (left) or rotated (right)
    int index = 0;
    bool left = true;
};

/// Silting mutation at summand k. Throws ComputeError when the exchanged
/// summand leaves the two-term window or degenerates.
MutationResult mutate(const SiltingObject& t, int k, bool left, const IsoPolicy& policy = {});

/// add(T) = add(S): multiset matching of summands by certified isomorphism.
bool equivalent_silting(const SiltingObject& a, const SiltingObject& b, const IsoPolicy& policy = {});

struct Enumeration {
    std::vector<SiltingObject> objects;
    bool complete = false;
    int nodes_expanded = 0;
};

/// Breadth-first closure of {A} under left/right mutation inside the
/// two-term window, deduplicated by certified equivalence.
Enumeration enumerate_2silt(AlgebraPtr owner, int max_nodes = 256, const IsoPolicy& policy = {});

/// H^0(T): the support tau-tilting module attached to a 2-term T.
FdModule h0_of(const SiltingObject& t);

} // namespace silt
