#pragma once

#include "silt/silting.hpp"

namespace silt {

/// End(T) of a list of pairwise non-isomorphic local summands, packaged as an
/// abstract algebra together with the dictionary of chain-map representatives
/// needed to convert Hom(T, X) into right modules over it.
struct EndPackage {
    AlgebraPtr base;                    // the algebra T lives over
    std::vector<ProjComplex> summands;  // T_i, minimal
    std::shared_ptr<const FdAlgebra> algebra; // End(T)
    std::vector<std::vector<HomSpace>> homs;  // homs[src][tgt]

    struct BasisOrigin {
        int src, tgt, rep;
    };
    std::vector<BasisOrigin> origin;

    int basis_index(int src, int tgt, int rep) const;
    /// Dictionary representative of a basis element.
    ChainMap rep_chain_map(int basis) const;
    /// Class of a chain map T_src -> T_tgt in End(T) coordinates.
    AlgElt class_elt(int src, int tgt, const ChainMap& g) const;
    /// Chain map between literal direct sums of summands, re-expressed as a
    /// matrix over End(T) (entry (w, u) = class of the sliced component).
    AlgMat transport(const ChainMap& g, const std::vector<int>& src_idx,
                     const std::vector<int>& tgt_idx) const;
};

EndPackage end_package(AlgebraPtr base, std::vector<ProjComplex> summands,
                       const IsoPolicy& policy = {});

/// Hom_{K^b}(T, X) as a right End(T)-module (block i = classes T_i -> X),
/// acting by precomposition through the dictionary.
struct HomIntoModule {
    FdModule module;
    std::vector<HomSpace> spaces; // per summand
};
HomIntoModule hom_into(const EndPackage& pkg, const ProjComplex& x);

/// Algebra homomorphism given by its matrix on basis vectors; construction
/// certifies unitality and multiplicativity.
struct AlgebraHom {
    AlgebraPtr src, tgt;
    Matrix mat; // tgt.dim x src.dim
    AlgElt apply(const AlgElt& a) const { return mat.apply(a); }
    std::vector<AlgElt> kernel() const;
    bool surjective() const;
    bool bijective() const;
    void certify() const; // throws when not unital or not multiplicative
};

/// For T = A (summand list = the projective stalks): the canonical
/// comparison A -> End(T), a |-> left multiplication. Certified bijective
/// algebra map when it is one.
AlgebraHom canonical_end_comparison(const EndPackage& pkg);

/// Degreewise two-sided inverse of an invertible chain map.
ChainMap chainmap_inverse(const ChainMap& g);

} // namespace silt
