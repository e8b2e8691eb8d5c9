#include "silt/induced.hpp"

#include <algorithm>

#include "silt/path_algebra.hpp"

namespace silt {

namespace {

// Solve for x in the class space of H with: class(x o pre - post) = 0 and,
// optionally, further conditions; returns coordinates over H.chain_basis.
// Conditions are affine-linear in the chain coordinates, so everything is a
// single exact solve.

// chain map from literal summand copies: inclusion of copy u
ChainMap sum_inclusion(const std::vector<ProjComplex>& parts, const ProjComplex& sum, size_t u) {
    ChainMap inc = ChainMap::zero(parts[u], sum);
    const AlgebraPtr A = sum.owner();
    for (int d = parts[u].lo(); d <= parts[u].hi(); ++d) {
        int n = parts[u].n_summands(d);
        if (n == 0) continue;
        int off = 0;
        for (size_t v = 0; v < u; ++v) off += parts[v].n_summands(d);
        AlgMat m(A, sum.n_summands(d), n);
        for (int i = 0; i < n; ++i)
            m.at(off + i, i) = A->idempotent(parts[u].summands_at(d)[i]);
        inc.comps[d] = std::move(m);
    }
    return inc;
}

std::vector<ProjComplex> literal_parts(const EndPackage& pkg, const std::vector<int>& idx) {
    std::vector<ProjComplex> parts;
    for (int i : idx) parts.push_back(pkg.summands[i]);
    return parts;
}

// the chain map "left multiplication by a" on the free-module stalk
ChainMap left_mult_stalk(const AlgebraPtr& A, const ProjComplex& stalk, const AlgElt& a) {
    ChainMap g = ChainMap::zero(stalk, stalk);
    const int n = A->n_vertices();
    AlgMat m(A, n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            // component e_c A -> e_r A of left multiplication by a
            AlgElt comp = A->mul(A->idempotent(r), A->mul(a, A->idempotent(c)));
            m.at(r, c) = std::move(comp);
        }
    if (!m.is_zero()) g.comps[0] = std::move(m);
    return g;
}

} // namespace

Pipeline run_pipeline(AlgebraPtr a, const SiltingObject& t, const PipelineOptions& opts) {
    if (!t.verification.silting) throw ComputeError("pipeline needs a verified silting object");
    if (!t.two_term()) throw ComputeError("pipeline needs a two-term silting object");
    Pipeline p;
    p.A = a;
    p.T = t;
    p.endo = end_package(a, t.summands, opts.policy);

    auto tri = approximation_triangle(a, t.summands, opts.policy);
    if (!tri) throw ComputeError("approximation triangle failed for a verified silting object");
    p.tri = *tri;

    // replace T'' by the literal sum W through the certified isomorphism
    std::vector<int> widx;
    for (size_t i = 0; i < p.tri.tsecond_mult.size(); ++i)
        for (int c = 0; c < p.tri.tsecond_mult[i]; ++c) widx.push_back(static_cast<int>(i));
    p.tsecond_idx = widx;
    std::vector<ProjComplex> wparts = literal_parts(p.endo, widx);
    ProjComplex W = wparts.empty() ? ProjComplex::zero_complex(a) : ProjComplex::direct_sum(wparts);
    if (p.tri.tsecond.is_zero_complex()) {
        p.f_lit = ChainMap::zero(p.tri.tprime, W);
        p.conn_lit = ChainMap::zero(W, ProjComplex::algebra_stalk(a).shifted(1));
    } else {
        auto iso = is_isomorphic_kb(W, p.tri.tsecond, opts.policy);
        if (!iso.iso || !iso.witness) throw ComputeError("T'' lost its add(T) certificate");
        ChainMap w_to_tsecond = *iso.witness;
        ChainMap tsecond_to_w = chainmap_inverse(w_to_tsecond);
        p.f_lit = tsecond_to_w.compose(p.tri.f);
        p.conn_lit = p.tri.conn.compose(w_to_tsecond);
        if (!p.f_lit.commutes() || !p.conn_lit.commutes())
            throw ComputeError("normalized triangle maps do not commute");
    }

    // S = Cone(Hom(T, f)): degree -1 = Hom(T, T'), degree 0 = Hom(T, W)
    AlgMat d = p.endo.transport(p.f_lit, p.tri.tprime_index, widx);
    p.S_raw = ProjComplex::build(p.endo.algebra, -1, {p.tri.tprime_index, widx}, {d}, true);
    p.S_dec = decompose_complex_with_witness(p.S_raw, opts.policy);
    p.S_min = p.S_dec.model;
    p.S_obj = verify_silting(p.endo.algebra, p.S_dec.parts, opts.policy);
    {
        ProjComplex s_sum = p.S_obj.sum();
        p.hom_S_shiftminus1_dim = hom_complexes(s_sum, s_sum, -1).quotient_dim();
    }

    // Abar = End(S) and pi: A -> Abar through morphisms of triangles
    p.abar = end_package(p.endo.algebra, p.S_dec.parts, opts.policy);
    {
        const AlgebraPtr B = p.endo.algebra;
        ProjComplex stalkA = ProjComplex::algebra_stalk(a);
        HomSpace endT1 = hom_complexes(p.tri.tprime, p.tri.tprime, 0);
        HomSpace endW = W.is_zero_complex() ? HomSpace{} : hom_complexes(W, W, 0);
        HomSpace homAT1 = hom_complexes(stalkA, p.tri.tprime, 0);
        ProjComplex SA = stalkA.shifted(1);
        HomSpace homWSA = W.is_zero_complex() ? HomSpace{} : hom_complexes(W, SA, 0);
        const Field& f = a->field();

        // per basis element of A: lift to (b, c), transport, class in Abar
        std::vector<int> sum_parts_idx(p.S_dec.parts.size());
        for (size_t i = 0; i < sum_parts_idx.size(); ++i) sum_parts_idx[i] = static_cast<int>(i);
        Matrix pim(f, p.abar.algebra->dim(), a->dim());
        auto lift_and_class = [&](const AlgElt& elt, int kernel_offset) -> AlgElt {
            ChainMap ahat = left_mult_stalk(a, stalkA, elt);
            // (1) b o unit ~ unit o ahat
            ChainMap target1 = p.tri.unit.compose(ahat);
            std::vector<Rat> rhs1 = homAT1.flatten(target1);
            // unknowns: coordinates over endT1.chain_basis
            const int nb = endT1.chain_dim();
            // columns: flatten(chain_b o unit) + null coords of Hom(A, T')
            std::vector<std::vector<Rat>> cols;
            for (int q = 0; q < nb; ++q)
                cols.push_back(homAT1.flatten(endT1.materialize(endT1.chain_basis[q]).compose(p.tri.unit)));
            for (const auto& nv : homAT1.null_basis) cols.push_back(nv);
            Matrix sys1(f, static_cast<int>(rhs1.size()), static_cast<int>(cols.size()));
            for (size_t cc = 0; cc < cols.size(); ++cc)
                for (size_t rr = 0; rr < cols[cc].size(); ++rr)
                    sys1.at(static_cast<int>(rr), static_cast<int>(cc)) = cols[cc][rr];
            auto sk1 = solve_and_kernel(sys1, rhs1);
            if (!sk1.particular) throw ComputeError("pi lift: no solution for the first square");
            std::vector<Rat> bcoords(sk1.particular->begin(), sk1.particular->begin() + nb);
            if (kernel_offset > 0 && !sk1.kernel.empty()) {
                const auto& kv = sk1.kernel[(kernel_offset - 1) % sk1.kernel.size()];
                for (int q = 0; q < nb; ++q) bcoords[q] = f.add(bcoords[q], kv[q]);
            }
            std::vector<Rat> bflat(endT1.slots.size(), Rat(0));
            for (int q = 0; q < nb; ++q) vec_add_scaled(f, bflat, bcoords[q], endT1.chain_basis[q]);
            ChainMap bmap = endT1.materialize(bflat);

            ChainMap cmap = ChainMap::zero(W, W);
            if (!W.is_zero_complex()) {
                // (2) c o f ~ f o b  and (3) Sigma(ahat) o conn ~ conn o c
                ChainMap target2 = p.f_lit.compose(bmap);
                HomSpace homT1W = hom_complexes(p.tri.tprime, W, 0);
                std::vector<Rat> rhs2 = homT1W.flatten(target2);
                ChainMap target3 = ahat.shifted(1).compose(p.conn_lit);
                std::vector<Rat> rhs3 = homWSA.flatten(target3);
                const int nc = endW.chain_dim();
                std::vector<std::vector<Rat>> cols2;
                for (int q = 0; q < nc; ++q) {
                    ChainMap cq = endW.materialize(endW.chain_basis[q]);
                    std::vector<Rat> top = homT1W.flatten(cq.compose(p.f_lit));
                    std::vector<Rat> bot = homWSA.flatten(p.conn_lit.compose(cq));
                    top.insert(top.end(), bot.begin(), bot.end());
                    cols2.push_back(std::move(top));
                }
                for (const auto& nv : homT1W.null_basis) {
                    std::vector<Rat> v = nv;
                    v.resize(nv.size() + homWSA.slots.size(), Rat(0));
                    cols2.push_back(std::move(v));
                }
                for (const auto& nv : homWSA.null_basis) {
                    std::vector<Rat> v(homT1W.slots.size(), Rat(0));
                    v.insert(v.end(), nv.begin(), nv.end());
                    cols2.push_back(std::move(v));
                }
                std::vector<Rat> rhs = rhs2;
                rhs.insert(rhs.end(), rhs3.begin(), rhs3.end());
                Matrix sys2(f, static_cast<int>(rhs.size()), static_cast<int>(cols2.size()));
                for (size_t cc = 0; cc < cols2.size(); ++cc)
                    for (size_t rr = 0; rr < cols2[cc].size(); ++rr)
                        sys2.at(static_cast<int>(rr), static_cast<int>(cc)) = cols2[cc][rr];
                auto sk2 = solve_and_kernel(sys2, rhs);
                if (!sk2.particular) throw ComputeError("pi lift: no completion of the triangle morphism");
                std::vector<Rat> cflat(endW.slots.size(), Rat(0));
                for (int q = 0; q < nc; ++q)
                    vec_add_scaled(f, cflat, (*sk2.particular)[q], endW.chain_basis[q]);
                cmap = endW.materialize(cflat);
            }

            // endomorphism of S_raw: degree -1 = Hom(T,b), degree 0 = Hom(T,c)
            ChainMap s_endo = ChainMap::zero(p.S_raw, p.S_raw);
            AlgMat bt = p.endo.transport(bmap, p.tri.tprime_index, p.tri.tprime_index);
            AlgMat ct = p.endo.transport(cmap, widx, widx);
            if (!bt.is_zero()) s_endo.comps[-1] = std::move(bt);
            if (!ct.is_zero()) s_endo.comps[0] = std::move(ct);
            if (!s_endo.commutes()) throw ComputeError("pi lift: induced endomorphism of S is not a chain map");
            // transport to End(S): conjugate onto the assembled minimal parts
            ChainMap on_model = p.S_dec.mm.to_min.compose(s_endo.compose(p.S_dec.mm.from_min));
            ChainMap on_sum = p.S_dec.split.compose(on_model.compose(p.S_dec.assemble));
            // class in Abar: sum of the blockwise component classes
            AlgMat classes = p.abar.transport(on_sum, sum_parts_idx, sum_parts_idx);
            AlgElt out(p.abar.algebra->dim(), Rat(0));
            for (const auto& entry : classes.e) out = p.abar.algebra->add(out, entry);
            return out;
        };

        for (int bidx = 0; bidx < a->dim(); ++bidx) {
            AlgElt img = lift_and_class(a->basis_elt(bidx), 0);
            // well-definedness: a different kernel-offset lift must give the
            // same class
            AlgElt img2 = lift_and_class(a->basis_elt(bidx), 1);
            if (!(img == img2))
                throw ComputeError("pi is not well-defined: lift choice changed the class");
            for (int r = 0; r < p.abar.algebra->dim(); ++r) pim.at(r, bidx) = img[r];
        }
        p.pi = AlgebraHom{a, p.abar.algebra, std::move(pim)};
        p.pi.certify();
    }

    p.lemma54_dim = lemma54_space(p).dim;
    return p;
}

AnnihilatorSpace lemma54_space(const Pipeline& p) {
    AnnihilatorSpace out;
    const AlgebraPtr a = p.A;
    std::vector<ProjComplex> wparts = literal_parts(p.endo, p.tsecond_idx);
    ProjComplex W = wparts.empty() ? ProjComplex::zero_complex(a) : ProjComplex::direct_sum(wparts);
    if (W.is_zero_complex() || p.tri.tprime.is_zero_complex()) return out;
    HomSpace H = hom_complexes(W, p.tri.tprime, 0);
    if (H.quotient_dim() == 0) return out;
    HomSpace endT1 = hom_complexes(p.tri.tprime, p.tri.tprime, 0);
    HomSpace endW = hom_complexes(W, W, 0);
    const Field& f = a->field();
    // conditions on class coordinates: [g o f] = 0 in End(T') and [f o g] = 0 in End(W)
    std::vector<std::vector<Rat>> rows;
    const int q = H.quotient_dim();
    std::vector<std::vector<Rat>> gf(q), fg(q);
    for (int r = 0; r < q; ++r) {
        gf[r] = endT1.class_coords(H.rep(r).compose(p.f_lit));
        fg[r] = endW.class_coords(p.f_lit.compose(H.rep(r)));
    }
    const int n1 = endT1.quotient_dim(), n2 = endW.quotient_dim();
    Matrix sys(f, n1 + n2, q);
    for (int r = 0; r < q; ++r) {
        for (int i = 0; i < n1; ++i) sys.at(i, r) = gf[r][i];
        for (int i = 0; i < n2; ++i) sys.at(n1 + i, r) = fg[r][i];
    }
    auto ker = kernel_basis(sys);
    out.dim = static_cast<int>(ker.size());
    for (const auto& kv : ker) {
        std::vector<Rat> flat(H.slots.size(), Rat(0));
        for (int r = 0; r < q; ++r) vec_add_scaled(f, flat, kv[r], H.quot_reps[r]);
        out.basis.push_back(H.materialize(flat));
    }
    return out;
}

FdModule restrict_along(const AlgebraHom& h, const FdModule& m) {
    const AlgebraPtr A = h.src;
    const Field& f = A->field();
    const int n = A->n_vertices();
    // block decomposition along the images of the idempotents
    std::vector<std::vector<std::vector<Rat>>> bases(n);
    std::vector<int> dims(n, 0);
    for (int i = 0; i < n; ++i) {
        Matrix gi = m.global_action(h.apply(A->idempotent(i)));
        SpanBuilder sb(f, m.total_dim());
        for (int c = 0; c < gi.cols(); ++c) sb.insert(gi.col(c));
        bases[i] = sb.basis();
        dims[i] = static_cast<int>(bases[i].size());
    }
    int total = 0;
    for (int i = 0; i < n; ++i) total += dims[i];
    if (total != m.total_dim())
        throw ComputeError("restriction: idempotent images do not decompose the module");
    std::vector<Matrix> act;
    for (int b = 0; b < A->dim(); ++b) {
        const auto& info = A->basis(b);
        Matrix g = m.global_action(h.apply(A->basis_elt(b)));
        Matrix blk(f, dims[info.src], dims[info.tgt]);
        for (int c = 0; c < dims[info.tgt]; ++c) {
            std::vector<Rat> w = g.apply(bases[info.tgt][c]);
            auto coords = express_in_span(f, bases[info.src], w);
            if (!coords) throw ComputeError("restriction: action left its block");
            for (int r = 0; r < dims[info.src]; ++r) blk.at(r, c) = (*coords)[r];
        }
        act.push_back(std::move(blk));
    }
    return FdModule::from_actions(A, dims, std::move(act));
}

TiltingConditions tilting_sufficient_conditions(const Pipeline& p, bool assume_symmetric,
                                                const IsoPolicy& policy) {
    TiltingConditions c;
    c.assume_symmetric = assume_symmetric;
    if (auto* pa = dynamic_cast<const PathAlgebra*>(p.A.get())) {
        c.hereditary_known = true;
        c.hereditary = pa->is_hereditary();
    }
    c.h_minus1_tprime_zero = homology_of_complex(p.tri.tprime, -1).total_dim() == 0;
    c.t_tilting = p.T.verification.tilting;
    // T equivalent to a one-step mutation of A or Sigma A
    SiltingObject freeA = silting_free_module(p.A, policy);
    for (int k = 0; k < static_cast<int>(freeA.summands.size()) && !c.mutation_condition; ++k) {
        try {
            if (equivalent_silting(mutate(freeA, k, true, policy).object, p.T, policy))
                c.mutation_condition = true;
        } catch (const ComputeError&) {
        }
    }
    SiltingObject shA = silting_shifted_free(p.A, policy);
    for (int k = 0; k < static_cast<int>(shA.summands.size()) && !c.mutation_condition; ++k) {
        try {
            if (equivalent_silting(mutate(shA, k, false, policy).object, p.T, policy))
                c.mutation_condition = true;
        } catch (const ComputeError&) {
        }
    }
    return c;
}

} // namespace silt
