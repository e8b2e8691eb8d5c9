#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "silt/matrix.hpp"

namespace silt {

/// Coefficient vector over an algebra's basis.
using AlgElt = std::vector<Rat>;

/// A finite-dimensional algebra with a fixed complete set of orthogonal
/// idempotents e_0..e_{n-1} and a Peirce-homogeneous basis: every basis
/// element b satisfies b = e_{tgt(b)} * b * e_{src(b)}.
///
/// Module and complex code only sees this interface, so the same machinery
/// runs over path algebras and over abstractly presented endomorphism
/// algebras.
class Algebra {
public:
    struct BasisInfo {
        std::string label;
        int src = 0;
        int tgt = 0;
    };

    virtual ~Algebra() = default;

    const Field& field() const { return field_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    int n_vertices() const { return n_idem_; }

    const BasisInfo& basis(int b) const { return basis_[b]; }
    const std::string& vertex_label(int i) const { return vertex_labels_[i]; }

    const AlgElt& idempotent(int i) const { return idem_[i]; }
    const AlgElt& unit() const { return unit_; }

    /// Basis indices spanning e_tgt * A * e_src.
    const std::vector<int>& peirce(int tgt, int src) const { return peirce_[tgt][src]; }
    /// Position of basis element b inside its Peirce block.
    int block_pos(int b) const { return block_pos_[b]; }

    AlgElt zero() const { return AlgElt(dim(), Rat(0)); }
    AlgElt basis_elt(int b) const;
    AlgElt mul(const AlgElt& a, const AlgElt& b) const;
    AlgElt add(const AlgElt& a, const AlgElt& b) const;
    AlgElt sub(const AlgElt& a, const AlgElt& b) const;
    AlgElt scale(const Rat& c, const AlgElt& a) const;
    bool is_zero(const AlgElt& a) const { return vec_is_zero(a); }
    /// True when the support of a lies in e_tgt A e_src.
    bool in_block(const AlgElt& a, int tgt, int src) const;

    /// Left-multiplication matrix dim x dim.
    Matrix left_mul_matrix(const AlgElt& a) const;

    /// Canonical basis of the Jacobson radical (certified nilpotent ideal).
    const std::vector<AlgElt>& radical_basis() const { return radical_; }
    bool in_radical(const AlgElt& a) const;
    /// Basis indices b (necessarily src==tgt==i ones) of rad intersected with
    /// the diagonal block are not tracked separately; use in_radical.

    /// Two-sided inverse of a inside A when it exists; a must be supported in
    /// the block e_tgt A e_src (then the inverse sits in e_src A e_tgt).
    std::optional<AlgElt> block_inverse(const AlgElt& a, int tgt, int src) const;

    std::string elt_str(const AlgElt& a) const;
    virtual std::string describe() const = 0;

protected:
    /// Subclasses fill the fields below, then call finalize() which builds
    /// the Peirce tables and checks unit laws, orthogonality, associativity
    /// and Peirce homogeneity of all structure constants.
    void finalize();
    virtual std::vector<AlgElt> compute_radical() const;

    Field field_ = Field::rationals();
    int n_idem_ = 0;
    std::vector<std::string> vertex_labels_;
    std::vector<BasisInfo> basis_;
    std::vector<std::vector<std::pair<int, Rat>>> products_; // [u*dim+v] -> b_u * b_v sparse
    std::vector<AlgElt> idem_;
    AlgElt unit_;

private:
    std::vector<std::vector<std::vector<int>>> peirce_;
    std::vector<int> block_pos_;
    std::vector<AlgElt> radical_;
    friend class FdAlgebra;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

/// An abstract finite-dimensional algebra given by structure constants,
/// e.g. the endomorphism algebra of a silting object. Construction certifies
/// that each e_i A e_i is local with one-dimensional residue field and that
/// the trace-form radical is nilpotent (aborts otherwise).
class FdAlgebra final : public Algebra {
public:
    static std::shared_ptr<const FdAlgebra> build(
        Field f,
        std::vector<BasisInfo> basis,
        std::vector<std::string> vertex_labels,
        const std::function<AlgElt(int, int)>& product,
        std::vector<AlgElt> idempotents,
        std::string description);

    std::string describe() const override { return description_; }

private:
    FdAlgebra() = default;
    std::string description_;
};

/// Certified radical basis (trace form + nilpotency certificate) of an
/// abstract algebra given by structure constants c[u][v] = coords of b_u b_v.
/// Throws when the certificate fails, e.g. in unfortunate characteristic.
std::vector<std::vector<Rat>> table_radical_basis(const Field& f,
                                                  const std::vector<std::vector<std::vector<Rat>>>& c);

/// dim(R / rad R) for the same presentation.
int residue_dim_of_table(const Field& f, const std::vector<std::vector<std::vector<Rat>>>& c);

/// Matrix with entries in an algebra; represents a map between direct sums
/// of the indecomposable projectives e_i A acting by left multiplication.
struct AlgMat {
    AlgebraPtr owner;
    int rows = 0, cols = 0;
    std::vector<AlgElt> e;

    AlgMat() = default;
    AlgMat(AlgebraPtr a, int r, int c);

    AlgElt& at(int i, int j) { return e[static_cast<size_t>(i) * cols + j]; }
    const AlgElt& at(int i, int j) const { return e[static_cast<size_t>(i) * cols + j]; }

    AlgMat mul(const AlgMat& o) const;
    AlgMat add(const AlgMat& o) const;
    AlgMat sub(const AlgMat& o) const;
    AlgMat neg() const;
    bool is_zero() const;
};

} // namespace silt
