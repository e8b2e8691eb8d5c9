#pragma once

#include "silt/induced.hpp"

namespace silt {

/// Image of a module under one of the Hom-side functors, together with the
/// per-summand Hom spaces used to transport the action.
struct FunctorImage {
    FdModule module; // over pkg.algebra
    std::vector<ModuleHomSpace> spaces;
};

/// H^i RHom(T, M) for a module stalk M, as a right module over End(T).
/// shift 0 is F, shift 1 is F'; general shifts serve n-term objects.
FunctorImage hom_stalk_functor(const EndPackage& pkg, const FdModule& m, int shift);

/// F and F' for the pipeline's (A, T).
FdModule functor_F(const Pipeline& p, const FdModule& m);
FdModule functor_Fprime(const Pipeline& p, const FdModule& m);

/// G via the spec route: transport a projective presentation of Y along
/// e_j B -> T_j and take H^0 of the cone (equals ? tensor_B H^0(T)).
FdModule functor_G(const Pipeline& p, const FdModule& y);
/// G' via the adjunction route: Hom_{K^b(proj B)}(S, Y) restricted along pi.
FdModule functor_Gprime(const Pipeline& p, const FdModule& y);

struct SideA {
    bool in_T = false; // F'(M) = 0
    bool in_F = false; // F(M) = 0
    int dim_F = 0, dim_Fprime = 0;
};
SideA memberships_A(const Pipeline& p, const FdModule& m);

struct SideB {
    bool in_X = false;  // G(Y) = 0
    bool in_Y = false;  // G'(Y) = 0
    bool in_TS = false; // Hom_D(S, Sigma Y) = 0
    bool in_FS = false; // Hom_D(S, Y) = 0
    int dim_G = 0, dim_Gprime = 0;
};
SideB memberships_B(const Pipeline& p, const FdModule& y);

/// n-term classes: M in T^i iff the shifted functors vanish away from i.
std::vector<bool> nterm_class_flags(const EndPackage& pkg, const FdModule& m, int n);

struct TorsionDecomposition {
    Submodule torsion;        // tM = trace of H^0(T)
    QuotientModule torsion_free;
    bool verified = false;    // tM in T_T and M/tM in F_T re-checked
};
TorsionDecomposition torsion_decompose(const Pipeline& p, const FdModule& m);

/// The default verification corpus: indecomposable summands of
/// {P_i, rad P_i, P_i/soc, S_i}, closed under the torsion-radical
/// decomposition, deduplicated by certified isomorphism.
std::vector<FdModule> default_test_modules(const Pipeline& p, const AlgebraPtr& owner,
                                           const IsoPolicy& policy = {});
std::vector<FdModule> default_test_modules_B(const Pipeline& p, const IsoPolicy& policy = {});

struct TorsionReport {
    struct RowA {
        std::string dims;
        SideA cls;
        bool decomposition_ok = false;
        bool roundtrip_ok = true;     // G(F(M)) = M on T_T, G'(F'(M)) = M on F_T
        bool image_membership_ok = true; // F(M) in Y_T resp. F'(M) in X_T
        bool pi_twist_ok = true;      // the (f)/(g) restricted roundtrip
    };
    struct RowB {
        std::string dims;
        SideB cls;
        bool table_ok = true;     // T_S = X_T and F_S = Y_T at this module
        bool roundtrip_ok = true; // F(G(Y)) = Y on Y_T members
    };
    std::vector<RowA> a_rows;
    std::vector<RowB> b_rows;
    bool hom_vanishing_ok = true; // Hom(T_T-part, F_T-part) = 0 pairwise
    bool naturality_ok = true;    // test morphisms preserve the radical
    bool exhaustive = false;      // set by callers who assert rep-finiteness
    std::vector<std::string> failures;
    bool all_ok() const;
};

TorsionReport verify_equivalences(const Pipeline& p, const std::vector<FdModule>& a_side,
                                  const std::vector<FdModule>& b_side, const IsoPolicy& policy = {});

} // namespace silt
