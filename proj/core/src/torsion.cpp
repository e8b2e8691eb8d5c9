#include "silt/torsion.hpp"

#include <algorithm>
#include <sstream>

namespace silt {

namespace {

// right action of an algebra element a in e_tgt A e_src on module vectors:
// M e_tgt -> M e_src
Matrix entry_action(const FdModule& m, const AlgElt& a, int tgt, int src) {
    Matrix act(m.owner()->field(), m.dim(src), m.dim(tgt));
    for (int b = 0; b < m.owner()->dim(); ++b)
        if (sgn(a[b]) != 0) act = act + m.action(b).scaled(a[b]);
    return act;
}

// coordinates of (psi o g) in the stalk-Hom layout of the source, where psi
// is a chain-level vector in the target's layout and g: X_src -> X_tgt.
std::vector<Rat> precompose_coords(const ModuleHomSpace& dst, const ModuleHomSpace& src,
                                   const ChainMap& g, const std::vector<Rat>& psi) {
    const FdModule& m = dst.stalk;
    const Field& f = m.owner()->field();
    std::vector<Rat> out(dst.coord_dim, Rat(0));
    const int deg = -dst.shift;
    AlgMat gd = g.comp(deg);
    for (size_t u = 0; u < dst.summand_vertices.size(); ++u)
        for (size_t w = 0; w < src.summand_vertices.size(); ++w) {
            const AlgElt& a = gd.at(static_cast<int>(w), static_cast<int>(u));
            if (vec_is_zero(a)) continue;
            Matrix act = entry_action(m, a, src.summand_vertices[w], dst.summand_vertices[u]);
            std::vector<Rat> pw(m.dim(src.summand_vertices[w]));
            for (size_t k = 0; k < pw.size(); ++k) pw[k] = psi[src.offsets[w] + k];
            std::vector<Rat> res = act.apply(pw);
            for (size_t k = 0; k < res.size(); ++k)
                out[dst.offsets[u] + k] = f.add(out[dst.offsets[u] + k], res[k]);
        }
    return out;
}

// chain map between literal sums of package summands realizing a matrix over
// the endomorphism algebra
ChainMap realize_end_matrix(const EndPackage& pkg, const AlgMat& q, const std::vector<int>& src_idx,
                            const std::vector<int>& tgt_idx) {
    std::vector<ProjComplex> sparts, tparts;
    for (int i : src_idx) sparts.push_back(pkg.summands[i]);
    for (int i : tgt_idx) tparts.push_back(pkg.summands[i]);
    const AlgebraPtr A = pkg.base;
    ProjComplex S = sparts.empty() ? ProjComplex::zero_complex(A) : ProjComplex::direct_sum(sparts);
    ProjComplex T = tparts.empty() ? ProjComplex::zero_complex(A) : ProjComplex::direct_sum(tparts);
    ChainMap g = ChainMap::zero(S, T);
    for (int d = S.lo(); d <= S.hi(); ++d) {
        if (S.n_summands(d) == 0 || T.n_summands(d) == 0) continue;
        AlgMat m(A, T.n_summands(d), S.n_summands(d));
        bool nonzero = false;
        int roff = 0;
        for (size_t w = 0; w < tgt_idx.size(); ++w) {
            int coff = 0;
            for (size_t u = 0; u < src_idx.size(); ++u) {
                const AlgElt& entry = q.at(static_cast<int>(w), static_cast<int>(u));
                for (int b = 0; b < pkg.algebra->dim(); ++b) {
                    if (sgn(entry[b]) == 0) continue;
                    AlgMat rb = pkg.rep_chain_map(b).comp(d);
                    for (int r = 0; r < rb.rows; ++r)
                        for (int c = 0; c < rb.cols; ++c) {
                            AlgElt scaled = A->scale(entry[b], rb.at(r, c));
                            m.at(roff + r, coff + c) = A->add(m.at(roff + r, coff + c), scaled);
                            if (!vec_is_zero(m.at(roff + r, coff + c))) nonzero = true;
                        }
                }
                coff += pkg.summands[src_idx[u]].n_summands(d);
            }
            roff += pkg.summands[tgt_idx[w]].n_summands(d);
        }
        if (nonzero) g.comps[d] = std::move(m);
    }
    if (!g.commutes()) throw ComputeError("realized presentation map is not a chain map");
    return g;
}

} // namespace

FunctorImage hom_stalk_functor(const EndPackage& pkg, const FdModule& m, int shift) {
    const int n = static_cast<int>(pkg.summands.size());
    FunctorImage out;
    std::vector<int> dims(n, 0);
    for (int i = 0; i < n; ++i) {
        out.spaces.push_back(hom_complex_to_module(pkg.summands[i], m, shift));
        dims[i] = out.spaces.back().quotient_dim();
    }
    const Field& f = pkg.base->field();
    std::vector<Matrix> act;
    for (int b = 0; b < pkg.algebra->dim(); ++b) {
        const auto& o = pkg.origin[b];
        Matrix mm(f, dims[o.src], dims[o.tgt]);
        ChainMap rep = pkg.rep_chain_map(b);
        for (int q = 0; q < dims[o.tgt]; ++q) {
            std::vector<Rat> comp =
                precompose_coords(out.spaces[o.src], out.spaces[o.tgt], rep, out.spaces[o.tgt].quot_reps[q]);
            auto coords = out.spaces[o.src].class_coords(comp);
            for (int r = 0; r < dims[o.src]; ++r) mm.at(r, q) = coords[r];
        }
        act.push_back(std::move(mm));
    }
    out.module = FdModule::from_actions(pkg.algebra, dims, std::move(act));
    return out;
}

FdModule functor_F(const Pipeline& p, const FdModule& m) { return hom_stalk_functor(p.endo, m, 0).module; }

FdModule functor_Fprime(const Pipeline& p, const FdModule& m) {
    return hom_stalk_functor(p.endo, m, 1).module;
}

FdModule functor_G(const Pipeline& p, const FdModule& y) {
    if (y.owner() != p.endo.algebra) throw ComputeError("functor_G expects a module over End(T)");
    if (y.total_dim() == 0) return FdModule::zero_module(p.A);
    Presentation pres = projective_presentation(y);
    const auto& q0 = pres.complex.summands_at(0);
    const auto& q1 = pres.complex.summands_at(-1);
    if (q1.empty()) {
        // projective: G(e_j B ...) = H^0 of the transported sum
        std::vector<FdModule> parts;
        for (int j : q0) parts.push_back(homology_of_complex(p.endo.summands[j], 0));
        return parts.empty() ? FdModule::zero_module(p.A) : FdModule::direct_sum(parts);
    }
    ChainMap qt = realize_end_matrix(p.endo, pres.complex.diff_from(-1), q1, q0);
    return homology_of_complex(cone(qt).z, 0);
}

FdModule functor_Gprime(const Pipeline& p, const FdModule& y) {
    if (y.owner() != p.endo.algebra) throw ComputeError("functor_Gprime expects a module over End(T)");
    FunctorImage img = hom_stalk_functor(p.abar, y, 0);
    return restrict_along(p.pi, img.module);
}

SideA memberships_A(const Pipeline& p, const FdModule& m) {
    SideA s;
    s.dim_F = functor_F(p, m).total_dim();
    s.dim_Fprime = functor_Fprime(p, m).total_dim();
    s.in_T = s.dim_Fprime == 0;
    s.in_F = s.dim_F == 0;
    return s;
}

SideB memberships_B(const Pipeline& p, const FdModule& y) {
    SideB s;
    s.dim_G = functor_G(p, y).total_dim();
    s.dim_Gprime = functor_Gprime(p, y).total_dim();
    s.in_X = s.dim_G == 0;
    s.in_Y = s.dim_Gprime == 0;
    int ts = 0, fs = 0;
    for (const auto& sp : p.abar.summands) {
        ts += hom_complex_to_module(sp, y, 1).quotient_dim();
        fs += hom_complex_to_module(sp, y, 0).quotient_dim();
    }
    s.in_TS = ts == 0;
    s.in_FS = fs == 0;
    return s;
}

std::vector<bool> nterm_class_flags(const EndPackage& pkg, const FdModule& m, int n) {
    std::vector<int> dims(n, 0);
    for (int i = 0; i < n; ++i) dims[i] = hom_stalk_functor(pkg, m, i).module.total_dim();
    std::vector<bool> flags(n, false);
    for (int i = 0; i < n; ++i) {
        bool ok = true;
        for (int j = 0; j < n; ++j)
            if (j != i && dims[j] != 0) ok = false;
        flags[i] = ok;
    }
    return flags;
}

TorsionDecomposition torsion_decompose(const Pipeline& p, const FdModule& m) {
    TorsionDecomposition out;
    FdModule h0 = h0_of(p.T);
    out.torsion = trace_submodule({h0}, m);
    out.torsion_free = quotient_by(out.torsion);
    SideA st = memberships_A(p, out.torsion.sub);
    SideA sf = memberships_A(p, out.torsion_free.quot);
    out.verified = st.in_T && sf.in_F &&
                   out.torsion.sub.total_dim() + out.torsion_free.quot.total_dim() == m.total_dim();
    return out;
}

namespace {

void add_unique(std::vector<FdModule>& list, const FdModule& m, const IsoPolicy& policy) {
    if (m.total_dim() == 0) return;
    for (const auto& x : list)
        if (is_isomorphic(x, m, policy).iso) return;
    list.push_back(m);
}

} // namespace

std::vector<FdModule> default_test_modules(const Pipeline& p, const AlgebraPtr& owner,
                                           const IsoPolicy& policy) {
    std::vector<FdModule> seeds;
    for (int i = 0; i < owner->n_vertices(); ++i) {
        FdModule pi = FdModule::projective(owner, i);
        seeds.push_back(pi);
        seeds.push_back(FdModule::simple(owner, i));
        seeds.push_back(radical_submodule(pi).sub);
        seeds.push_back(quotient_by(socle_submodule(pi)).quot);
    }
    std::vector<FdModule> out;
    for (const auto& s : seeds)
        for (const auto& part : decompose_indecomposables(s, policy)) add_unique(out, part, policy);
    // closure under the torsion-radical decomposition (A-side only)
    if (owner == p.A) {
        FdModule h0 = h0_of(p.T);
        size_t cursor = 0;
        int guard = 0;
        while (cursor < out.size() && guard++ < 64) {
            FdModule m = out[cursor++];
            Submodule t = trace_submodule({h0}, m);
            for (const auto& piece :
                 {t.sub, quotient_by(t).quot})
                for (const auto& part : decompose_indecomposables(piece, policy))
                    add_unique(out, part, policy);
        }
    }
    return out;
}

std::vector<FdModule> default_test_modules_B(const Pipeline& p, const IsoPolicy& policy) {
    std::vector<FdModule> out = default_test_modules(p, p.endo.algebra, policy);
    for (const auto& m : default_test_modules(p, p.A, policy)) {
        FdModule fm = functor_F(p, m);
        for (const auto& part : decompose_indecomposables(fm, policy)) add_unique(out, part, policy);
    }
    return out;
}

bool TorsionReport::all_ok() const {
    if (!hom_vanishing_ok || !naturality_ok) return false;
    for (const auto& r : a_rows)
        if (!r.decomposition_ok || !r.roundtrip_ok || !r.image_membership_ok || !r.pi_twist_ok)
            return false;
    for (const auto& r : b_rows)
        if (!r.table_ok || !r.roundtrip_ok) return false;
    return true;
}

TorsionReport verify_equivalences(const Pipeline& p, const std::vector<FdModule>& a_side,
                                  const std::vector<FdModule>& b_side, const IsoPolicy& policy) {
    TorsionReport rep;
    auto note = [&rep](const std::string& s) { rep.failures.push_back(s); };

    std::vector<FdModule> torsion_members, free_members;
    for (size_t idx = 0; idx < a_side.size(); ++idx) {
        const FdModule& m = a_side[idx];
        TorsionReport::RowA row;
        row.dims = m.dims_str();
        row.cls = memberships_A(p, m);
        TorsionDecomposition dec = torsion_decompose(p, m);
        row.decomposition_ok = dec.verified;
        if (!dec.verified) note("torsion decomposition failed at A-side module " + row.dims);
        if (row.cls.in_T) torsion_members.push_back(m);
        if (row.cls.in_F) free_members.push_back(m);

        if (row.cls.in_T) {
            FdModule fm = functor_F(p, m);
            SideB img = memberships_B(p, fm);
            row.image_membership_ok = img.in_Y;
            if (!img.in_Y) note("F(M) outside Y_T at " + row.dims);
            FdModule back = functor_G(p, fm);
            row.roundtrip_ok = is_isomorphic(back, m, policy).iso;
            if (!row.roundtrip_ok) note("G(F(M)) != M at " + row.dims);
            // restricted (f): pi^* Hom_D(S, Sigma F(M)) = M
            FdModule tw = restrict_along(p.pi, hom_stalk_functor(p.abar, fm, 1).module);
            row.pi_twist_ok = is_isomorphic(tw, m, policy).iso;
            if (!row.pi_twist_ok) note("restricted Hom(S, Sigma F(M)) != M at " + row.dims);
        } else if (row.cls.in_F) {
            FdModule fm = functor_Fprime(p, m);
            SideB img = memberships_B(p, fm);
            row.image_membership_ok = img.in_X;
            if (!img.in_X) note("F'(M) outside X_T at " + row.dims);
            // restricted (g): pi^* Hom_D(S, F'(M)) = M, which is also G' o F'
            FdModule back = functor_Gprime(p, fm);
            row.roundtrip_ok = is_isomorphic(back, m, policy).iso;
            row.pi_twist_ok = row.roundtrip_ok;
            if (!row.roundtrip_ok) note("G'(F'(M)) != M at " + row.dims);
        }
        rep.a_rows.push_back(row);
    }

    // torsion pair axiom: no homomorphisms from torsion to torsion-free parts
    for (const auto& x : torsion_members)
        for (const auto& y : free_members)
            if (!hom_module(x, y).empty()) {
                rep.hom_vanishing_ok = false;
                note("Hom(T_T member, F_T member) != 0");
            }

    // naturality of the decomposition on test morphisms
    FdModule h0 = h0_of(p.T);
    for (size_t i = 0; i < a_side.size(); ++i)
        for (size_t j = 0; j < a_side.size(); ++j) {
            if (i == j) continue;
            auto homs = hom_module(a_side[i], a_side[j]);
            if (homs.empty()) continue;
            Submodule ti = trace_submodule({h0}, a_side[i]);
            Submodule tj = trace_submodule({h0}, a_side[j]);
            for (const auto& phi : homs) {
                for (int blk = 0; blk < p.A->n_vertices(); ++blk) {
                    // phi(tM) must land inside tN
                    Matrix img = phi.blocks[blk] * ti.incl[blk];
                    for (int c = 0; c < img.cols(); ++c) {
                        std::vector<std::vector<Rat>> span;
                        for (int cc = 0; cc < tj.incl[blk].cols(); ++cc) span.push_back(tj.incl[blk].col(cc));
                        if (!express_in_span(p.A->field(), span, img.col(c))) {
                            rep.naturality_ok = false;
                            note("a test morphism does not preserve the torsion radical");
                        }
                    }
                }
            }
        }

    for (const FdModule& y : b_side) {
        TorsionReport::RowB row;
        row.dims = y.dims_str();
        row.cls = memberships_B(p, y);
        row.table_ok = (row.cls.in_TS == row.cls.in_X) && (row.cls.in_FS == row.cls.in_Y);
        if (!row.table_ok) note("class tables T_S/X_T or F_S/Y_T disagree at B-side " + row.dims);
        if (row.cls.in_Y) {
            FdModule g = functor_G(p, y);
            FdModule back = functor_F(p, g);
            row.roundtrip_ok = is_isomorphic(back, y, policy).iso;
            if (!row.roundtrip_ok) note("F(G(Y)) != Y at B-side " + row.dims);
        }
        rep.b_rows.push_back(row);
    }
    return rep;
}

} // namespace silt
