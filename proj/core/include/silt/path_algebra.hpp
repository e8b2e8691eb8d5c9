#pragma once

#include "silt/algebra.hpp"
#include "silt/quiver.hpp"

namespace silt {

/// Path algebra kQ/I with an admissible ideal, reduced to a finite basis of
/// normal-form paths with a multiplication table.
///
/// Composition is right-to-left (function order): in a product p*q the path
/// q is applied first, so arrows compose like maps. Paths are stored as the
/// arrow sequence in application order; labels are printed in composition
/// order, i.e. "a*b" means first b, then a.
class PathAlgebra final : public Algebra {
public:
    struct RelationTerm {
        Rat coef;
        std::vector<int> arrows; // application order (rightmost of the printed word first)
    };
    using Relation = std::vector<RelationTerm>;

    /// Builds the quotient. Throws InputError when a relation is not
    /// admissible or when the quotient cannot be certified finite-dimensional
    /// within max_path_length.
    static std::shared_ptr<const PathAlgebra> build(Field f, Quiver q,
                                                    std::vector<Relation> relations,
                                                    int max_path_length = 12);

    const Quiver& quiver() const { return quiver_; }
    /// N with: every path of length >= N lies in the relation ideal.
    int nilpotency_bound() const { return nilp_; }
    /// True iff the reduced relation ideal is zero.
    bool is_hereditary() const { return ideal_dim_ == 0; }
    std::string hereditary_diagnostic() const;

    /// Arrow sequence (application order) of basis element b.
    const std::vector<int>& basis_path(int b) const { return basis_paths_[b]; }
    int path_length(int b) const { return static_cast<int>(basis_paths_[b].size()); }
    /// Basis index of the trivial path at vertex i.
    int trivial_path_index(int i) const { return trivial_[i]; }
    /// Basis index of the length-1 path of arrow a.
    int arrow_basis_index(int a) const;

    /// Normal form of an arbitrary composable arrow sequence; zero if the
    /// path dies in the ideal.
    AlgElt path_elt(int src_vertex, const std::vector<int>& arrows_app_order) const;

    std::string describe() const override;

protected:
    std::vector<AlgElt> compute_radical() const override;

private:
    PathAlgebra() = default;
    Quiver quiver_;
    int nilp_ = 0;
    int ideal_dim_ = 0;
    bool has_cycle_ = false;
    std::vector<std::vector<int>> basis_paths_;
    std::vector<int> trivial_;
    // reduction of the free paths of length < N to the quotient basis
    std::vector<std::vector<int>> short_paths_;   // arrow sequences, index order = enumeration
    std::vector<int> short_src_;
    std::vector<int> short_to_basis_;             // -1 when the path is not a basis path
    std::vector<std::vector<Rat>> ideal_rows_;    // RREF rows of the ideal inside span(short paths)
    std::vector<int> ideal_pivots_;
    AlgElt reduce_short(std::vector<Rat> v) const; // coordinates over short_paths_ -> quotient basis
};

using PathAlgebraPtr = std::shared_ptr<const PathAlgebra>;

} // namespace silt
