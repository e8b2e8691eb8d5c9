#pragma once

#include <random>

#include "silt/algebra.hpp"

namespace silt {

/// Finite-dimensional right module over an Algebra, stored per idempotent
/// block. For a basis element b of the owner, action(b) maps the e_{tgt(b)}
/// block to the e_{src(b)} block (m |-> m*b), so action is an
/// anti-homomorphism: gact(x*y) = gact(y) * gact(x) on global coordinates.
class FdModule {
public:
    FdModule() = default;

    /// actions[b] must have shape dims[src(b)] x dims[tgt(b)].
    static FdModule from_actions(AlgebraPtr owner, std::vector<int> dims,
                                 std::vector<Matrix> actions, bool verify = true);

    static FdModule zero_module(AlgebraPtr owner);
    static FdModule simple(AlgebraPtr owner, int i);
    static FdModule projective(AlgebraPtr owner, int i);
    static FdModule direct_sum(const std::vector<FdModule>& parts);

    const AlgebraPtr& owner() const { return owner_; }
    const std::vector<int>& dims() const { return dims_; }
    int dim(int block) const { return dims_[block]; }
    int total_dim() const { return total_; }
    int block_offset(int i) const { return offset_[i]; }
    const Matrix& action(int b) const { return act_[b]; }

    /// Global matrix of m |-> m*a on concatenated block coordinates.
    Matrix global_action(const AlgElt& a) const;

    bool operator==(const FdModule& o) const;
    std::string dims_str() const;

private:
    AlgebraPtr owner_;
    std::vector<int> dims_;
    std::vector<int> offset_;
    int total_ = 0;
    std::vector<Matrix> act_;
    void check() const;
};

/// Module homomorphism as per-block matrices (block i: N_i x M_i).
struct ModuleMap {
    FdModule src, tgt;
    std::vector<Matrix> blocks;

    static ModuleMap zero(const FdModule& src, const FdModule& tgt);
    static ModuleMap identity(const FdModule& m);

    bool commutes() const; // intertwines all actions
    ModuleMap compose(const ModuleMap& first) const; // this after first
    ModuleMap add(const ModuleMap& o) const;
    ModuleMap scale(const Rat& c) const;
    bool is_zero() const;
    bool is_invertible() const;
    Matrix global() const;
    std::vector<Rat> flatten() const;
};

/// Canonical basis of Hom_A(M, N).
std::vector<ModuleMap> hom_module(const FdModule& m, const FdModule& n);

struct Submodule {
    FdModule ambient;
    FdModule sub;
    std::vector<Matrix> incl; // per block: amb_dim x sub_dim, columns = sub basis
    ModuleMap inclusion() const;
};

struct QuotientModule {
    FdModule ambient;
    FdModule quot;
    std::vector<Matrix> proj; // per block: quot_dim x amb_dim
    ModuleMap projection() const;
};

/// Span given per block (vectors in block coordinates); verified
/// action-stable.
Submodule submodule_from_block_spans(const FdModule& m,
                                     const std::vector<std::vector<std::vector<Rat>>>& spans);
/// Span given by global vectors; sliced into blocks first (a submodule is
/// always the direct sum of its idempotent slices).
Submodule submodule_from_global_span(const FdModule& m, const std::vector<std::vector<Rat>>& vectors);

QuotientModule quotient_by(const Submodule& s);

Submodule kernel_submodule(const ModuleMap& f);
Submodule image_submodule(const ModuleMap& f);

/// Smallest submodule of m containing every homomorphic image of the
/// generators (the trace).
Submodule trace_submodule(const std::vector<FdModule>& generators, const FdModule& m);

Submodule radical_submodule(const FdModule& m); // m * rad(A)
Submodule socle_submodule(const FdModule& m);   // killed by rad(A)
QuotientModule top_of(const FdModule& m);       // m / rad

struct ProjectiveCover {
    FdModule cover;            // direct sum of e_i A
    std::vector<int> mult;     // multiplicity of each projective
    ModuleMap onto;            // cover ->> m
    std::vector<int> cover_vertices; // vertex of each cover summand, in order
};
ProjectiveCover projective_cover(const FdModule& m);

bool is_projective(const FdModule& m);
/// Iterated syzygies; true iff the n-th syzygy is projective.
bool pd_at_most(const FdModule& m, int n);

/// How isomorphism witnesses are searched: exhaustive grid when the Hom
/// space is small (a complete decision procedure via the degree bound on the
/// determinant), otherwise seeded random trials whose negative answer is
/// only probabilistic.
struct IsoPolicy {
    bool exhaustive_only = false;
    unsigned long seed = 2024;
    long grid_budget = 400000;
    int random_trials = 40;
};

struct IsoResult {
    bool iso = false;
    bool certified = true; // false when a negative answer is only probabilistic
    std::optional<ModuleMap> witness;
};

IsoResult is_isomorphic(const FdModule& m, const FdModule& n, const IsoPolicy& policy = {});

/// dim of End(M)/rad(End(M)); equals 1 iff M is indecomposable with split
/// endomorphism ring.
int end_residue_dim(const FdModule& m);

/// Splits M into indecomposable summands (Fitting decompositions along
/// endomorphisms), each certified to have local endomorphism ring.
std::vector<FdModule> decompose_indecomposables(const FdModule& m, const IsoPolicy& policy = {});

} // namespace silt
