#pragma once

#include <map>

#include "silt/module.hpp"

namespace silt {

/// Bounded complex of finitely generated projectives e_i A over an Algebra.
/// Degree d carries a list of vertex indices (one per projective summand);
/// the differential from degree d is a matrix of Peirce-homogeneous algebra
/// elements acting by left multiplication. d o d = 0 is enforced on build.
class ProjComplex {
public:
    ProjComplex() = default;

    static ProjComplex build(AlgebraPtr owner, int lo, std::vector<std::vector<int>> summands,
                             std::vector<AlgMat> diffs, bool validate = true);
    static ProjComplex zero_complex(AlgebraPtr owner);
    /// Single projective e_v A sitting in the given degree.
    static ProjComplex stalk(AlgebraPtr owner, int vertex, int degree = 0);
    /// The free module A = sum of all e_i A as a stalk complex in degree 0.
    static ProjComplex algebra_stalk(AlgebraPtr owner);
    static ProjComplex direct_sum(const std::vector<ProjComplex>& parts);

    const AlgebraPtr& owner() const { return owner_; }
    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(summands_.size()) - 1; }
    bool is_zero_complex() const;
    int n_summands(int degree) const;
    const std::vector<int>& summands_at(int degree) const;
    /// Differential degree -> degree+1 (zero matrix outside the range).
    AlgMat diff_from(int degree) const;

    /// Sigma^n: degree d of the result is degree d+n of X; differential
    /// picks up (-1)^n.
    ProjComplex shifted(int n) const;
    /// Drops empty degrees at both ends.
    ProjComplex normalized() const;
    int total_summands() const;

    bool operator==(const ProjComplex& o) const;
    std::string shape_str() const;

private:
    AlgebraPtr owner_;
    int lo_ = 0;
    std::vector<std::vector<int>> summands_;
    std::vector<AlgMat> diffs_; // diffs_[k]: degree lo_+k -> lo_+k+1; size = #degrees-1 (or 0)
    void validate_complex() const;
};

/// Degreewise map of complexes commuting with the differentials.
struct ChainMap {
    ProjComplex src, tgt;
    std::map<int, AlgMat> comps; // absolute degree -> component (missing = zero)

    static ChainMap zero(const ProjComplex& src, const ProjComplex& tgt);
    static ChainMap identity(const ProjComplex& x);

    AlgMat comp(int degree) const;
    bool commutes() const;
    ChainMap compose(const ChainMap& first) const;
    ChainMap add(const ChainMap& o) const;
    ChainMap scale(const Rat& c) const;
    ChainMap shifted(int n) const;
    bool is_zero() const;
};

struct Triangle {
    ProjComplex x, y, z;
    ChainMap u; // x -> y
    ChainMap v; // y -> z
    ChainMap w; // z -> Sigma x
};

/// Mapping cone with differential [[d_Y, f],[0, -d_X]] and the canonical
/// triangle X -> Y -> Cone(f) -> Sigma X.
Triangle cone(const ChainMap& f);

/// Hom_{K^b}(X, Sigma^i Y): chain maps, the null-homotopic subspace, and
/// canonical quotient representatives, all in one flat coordinate space.
struct HomSpace {
    ProjComplex src, tgt; // tgt is already shifted
    int shift = 0;
    struct Slot {
        int degree; // absolute degree in src / tgt
        int row, col;
        int basis_index;
    };
    std::vector<Slot> slots;
    std::vector<std::vector<Rat>> chain_basis;
    std::vector<std::vector<Rat>> null_basis;
    std::vector<std::vector<Rat>> quot_reps;

    int chain_dim() const { return static_cast<int>(chain_basis.size()); }
    int null_dim() const { return static_cast<int>(null_basis.size()); }
    int quotient_dim() const { return static_cast<int>(quot_reps.size()); }

    ChainMap materialize(const std::vector<Rat>& coords) const;
    ChainMap rep(int k) const { return materialize(quot_reps[k]); }
    std::vector<Rat> flatten(const ChainMap& g) const;
    /// Coordinates of [g] over the quotient representatives.
    std::vector<Rat> class_coords(const ChainMap& g) const;
};

HomSpace hom_complexes(const ProjComplex& x, const ProjComplex& y, int shift);

/// Evaluation of a complex at the idempotent block k: vector-space complex
/// with the right action of the algebra across blocks.
struct BlockEvaluation {
    int lo = 0;
    std::vector<int> dims;       // per degree
    std::vector<Matrix> diffs;   // degree d -> d+1
};
BlockEvaluation evaluate_block(const ProjComplex& x, int block);
/// Dimension of H^deg of the evaluation at the block.
int block_homology_dim(const ProjComplex& x, int block, int degree);

bool is_acyclic(const ProjComplex& x);

/// H^degree(X) as a right module over the owner.
FdModule homology_of_complex(const ProjComplex& x, int degree);

/// Homotopy-equivalent complex whose differential has no invertible entries,
/// with certified equivalences both ways (to_min o from_min = id exactly,
/// cone of to_min acyclic).
struct MinimalModel {
    ProjComplex model;
    ChainMap to_min;   // X -> model
    ChainMap from_min; // model -> X
};
MinimalModel minimal_model(const ProjComplex& x);

struct KbIsoResult {
    bool iso = false;
    bool certified = true;
    std::optional<ChainMap> witness; // degreewise-invertible up to homotopy equivalence
};
KbIsoResult is_isomorphic_kb(const ProjComplex& x, const ProjComplex& y, const IsoPolicy& policy = {});

/// dim of End_{K^b}(X) / rad; 1 certifies an indecomposable with split ends.
int end_residue_dim_kb(const ProjComplex& x);

/// X ?= direct sum of the given pairwise non-isomorphic local summands;
/// multiplicities certified by an explicit isomorphism.
struct AddMembership {
    bool member = false;
    std::vector<int> mult;
    std::optional<ChainMap> witness; // sum(T_i^mult) -> X
};
AddMembership add_membership(const ProjComplex& x, const std::vector<ProjComplex>& summands,
                             const IsoPolicy& policy = {});

/// Splits a complex into indecomposable direct summands (block structure of
/// a minimal model), each certified local, with explicit permutation
/// witnesses between the minimal model and the assembled sum of the parts.
struct ComplexDecomposition {
    ProjComplex model;
    MinimalModel mm; // of the input
    std::vector<ProjComplex> parts;
    ChainMap assemble; // direct_sum(parts) -> model
    ChainMap split;    // model -> direct_sum(parts)
};
ComplexDecomposition decompose_complex_with_witness(const ProjComplex& x, const IsoPolicy& policy = {});
std::vector<ProjComplex> decompose_complex(const ProjComplex& x, const IsoPolicy& policy = {});

/// Hom_{K^b}(X, Sigma^i M) for a module stalk M: maps X^{-i} -> M killing
/// the incoming differential, modulo those factoring through the outgoing one.
struct ModuleHomSpace {
    ProjComplex src;
    FdModule stalk;
    int shift = 0;
    // coordinates: for each summand u of X^{-shift} (vertex c_u), a vector in M e_{c_u}
    std::vector<int> summand_vertices;
    std::vector<int> offsets;
    int coord_dim = 0;
    std::vector<std::vector<Rat>> chain_basis;
    std::vector<std::vector<Rat>> null_basis;
    std::vector<std::vector<Rat>> quot_reps;
    int quotient_dim() const { return static_cast<int>(quot_reps.size()); }
    std::vector<Rat> class_coords(const std::vector<Rat>& chain_vec) const;
};
ModuleHomSpace hom_complex_to_module(const ProjComplex& x, const FdModule& m, int shift);

/// Re-expresses a module map between direct sums of the e_i A (with the
/// stated summand orders) as a matrix of algebra elements acting by left
/// multiplication.
AlgMat module_map_to_algmat(const ModuleMap& f, const std::vector<int>& src_vertices,
                            const std::vector<int>& tgt_vertices);

/// Minimal projective presentation P^{-1} -> P^0 with cokernel M, as a
/// two-term complex in degrees -1, 0.
struct Presentation {
    ProjComplex complex;   // degrees -1..0
    ProjectiveCover cover; // of M (degree 0 data)
};
Presentation projective_presentation(const FdModule& m);

} // namespace silt
