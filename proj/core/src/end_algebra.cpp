#include "silt/end_algebra.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace silt {

namespace {

std::string summand_letter(int i) {
    if (i < 26) return std::string(1, static_cast<char>('a' + i));
    return "v" + std::to_string(i + 1);
}

} // namespace

int EndPackage::basis_index(int src, int tgt, int rep) const {
    for (size_t b = 0; b < origin.size(); ++b)
        if (origin[b].src == src && origin[b].tgt == tgt && origin[b].rep == rep)
            return static_cast<int>(b);
    throw ComputeError("end package: unknown basis origin");
}

ChainMap EndPackage::rep_chain_map(int basis) const {
    const auto& o = origin[basis];
    return homs[o.src][o.tgt].rep(o.rep);
}

AlgElt EndPackage::class_elt(int src, int tgt, const ChainMap& g) const {
    // origin.size() equals the algebra dimension and is already known while
    // the algebra itself is still being built
    AlgElt out(origin.size(), Rat(0));
    const auto coords = homs[src][tgt].class_coords(g);
    for (size_t r = 0; r < coords.size(); ++r)
        out[basis_index(src, tgt, static_cast<int>(r))] = coords[r];
    return out;
}

AlgMat EndPackage::transport(const ChainMap& g, const std::vector<int>& src_idx,
                             const std::vector<int>& tgt_idx) const {
    AlgMat out(algebra, static_cast<int>(tgt_idx.size()), static_cast<int>(src_idx.size()));
    for (size_t w = 0; w < tgt_idx.size(); ++w)
        for (size_t u = 0; u < src_idx.size(); ++u) {
            const ProjComplex& su = summands[src_idx[u]];
            const ProjComplex& tw = summands[tgt_idx[w]];
            // slice out the (w, u) component of g degreewise
            ChainMap comp = ChainMap::zero(su, tw);
            for (int d = su.lo(); d <= su.hi(); ++d) {
                if (tw.n_summands(d) == 0 || su.n_summands(d) == 0) continue;
                int roff = 0, coff = 0;
                for (size_t w2 = 0; w2 < w; ++w2) roff += summands[tgt_idx[w2]].n_summands(d);
                for (size_t u2 = 0; u2 < u; ++u2) coff += summands[src_idx[u2]].n_summands(d);
                AlgMat gd = g.comp(d);
                AlgMat m(base, tw.n_summands(d), su.n_summands(d));
                for (int r = 0; r < m.rows; ++r)
                    for (int c = 0; c < m.cols; ++c) m.at(r, c) = gd.at(roff + r, coff + c);
                if (!m.is_zero()) comp.comps[d] = std::move(m);
            }
            out.at(static_cast<int>(w), static_cast<int>(u)) = class_elt(src_idx[u], tgt_idx[w], comp);
        }
    return out;
}

EndPackage end_package(AlgebraPtr base, std::vector<ProjComplex> summands, const IsoPolicy& policy) {
    EndPackage pkg;
    pkg.base = base;
    pkg.summands = std::move(summands);
    const int n = static_cast<int>(pkg.summands.size());
    for (int i = 0; i < n; ++i)
        if (end_residue_dim_kb(pkg.summands[i]) != 1)
            throw ComputeError("end package: summand " + std::to_string(i) + " is not local");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (is_isomorphic_kb(pkg.summands[i], pkg.summands[j], policy).iso)
                throw ComputeError("end package: summands are not pairwise non-isomorphic");
    pkg.homs.assign(n, {});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            pkg.homs[i].push_back(hom_complexes(pkg.summands[i], pkg.summands[j], 0));

    std::vector<Algebra::BasisInfo> basis;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int q = pkg.homs[i][j].quotient_dim();
            for (int r = 0; r < q; ++r) {
                std::ostringstream label;
                if (i == j) {
                    label << "e" << summand_letter(i);
                    if (r > 0) label << "." << r;
                } else {
                    label << summand_letter(i) << ">" << summand_letter(j);
                    if (q > 1) label << "." << r;
                }
                basis.push_back({label.str(), i, j});
                pkg.origin.push_back({i, j, r});
            }
        }

    // idempotents: classes of the identity maps
    std::vector<AlgElt> idems;
    const int dim = static_cast<int>(basis.size());
    for (int i = 0; i < n; ++i) {
        AlgElt e(dim, Rat(0));
        auto coords = pkg.homs[i][i].class_coords(ChainMap::identity(pkg.summands[i]));
        for (size_t r = 0; r < coords.size(); ++r)
            e[pkg.basis_index(i, i, static_cast<int>(r))] = coords[r];
        idems.push_back(std::move(e));
    }

    auto product = [&pkg](int u, int v) -> AlgElt {
        const auto& ou = pkg.origin[u];
        const auto& ov = pkg.origin[v];
        // b_u * b_v = b_u after b_v, defined when src(u) = tgt(v)
        ChainMap comp = pkg.rep_chain_map(u).compose(pkg.rep_chain_map(v));
        return pkg.class_elt(ov.src, ou.tgt, comp);
    };
    std::vector<std::string> vlabels;
    for (int i = 0; i < n; ++i) vlabels.push_back(summand_letter(i));
    pkg.algebra = FdAlgebra::build(base->field(), basis, vlabels, product, idems,
                                   "endomorphism algebra of " + std::to_string(n) + " summands over [" +
                                       base->describe() + "]");
    return pkg;
}

HomIntoModule hom_into(const EndPackage& pkg, const ProjComplex& x) {
    const int n = static_cast<int>(pkg.summands.size());
    HomIntoModule out;
    std::vector<int> dims(n, 0);
    for (int i = 0; i < n; ++i) {
        out.spaces.push_back(hom_complexes(pkg.summands[i], x, 0));
        dims[i] = out.spaces.back().quotient_dim();
    }
    const Field& f = pkg.base->field();
    std::vector<Matrix> act;
    for (int b = 0; b < pkg.algebra->dim(); ++b) {
        const auto& o = pkg.origin[b];
        // right action by precomposition: block tgt -> block src
        Matrix m(f, dims[o.src], dims[o.tgt]);
        ChainMap rep = pkg.rep_chain_map(b);
        for (int q = 0; q < dims[o.tgt]; ++q) {
            ChainMap comp = out.spaces[o.tgt].rep(q).compose(rep);
            auto coords = out.spaces[o.src].class_coords(comp);
            for (int r = 0; r < dims[o.src]; ++r) m.at(r, q) = coords[r];
        }
        act.push_back(std::move(m));
    }
    out.module = FdModule::from_actions(pkg.algebra, dims, std::move(act));
    return out;
}

std::vector<AlgElt> AlgebraHom::kernel() const { return kernel_basis(mat); }

bool AlgebraHom::surjective() const { return rank(mat) == tgt->dim(); }

bool AlgebraHom::bijective() const { return surjective() && kernel().empty(); }

void AlgebraHom::certify() const {
    if (!(apply(src->unit()) == tgt->unit())) throw ComputeError("algebra map is not unital");
    for (int u = 0; u < src->dim(); ++u)
        for (int v = 0; v < src->dim(); ++v) {
            AlgElt lhs = apply(src->mul(src->basis_elt(u), src->basis_elt(v)));
            AlgElt rhs = tgt->mul(apply(src->basis_elt(u)), apply(src->basis_elt(v)));
            if (!(lhs == rhs)) throw ComputeError("algebra map is not multiplicative");
        }
}

AlgebraHom canonical_end_comparison(const EndPackage& pkg) {
    const AlgebraPtr A = pkg.base;
    std::vector<int> which(A->n_vertices(), -1);
    for (size_t i = 0; i < pkg.summands.size(); ++i) {
        const ProjComplex& s = pkg.summands[i];
        if (s.lo() == 0 && s.hi() == 0 && s.n_summands(0) == 1)
            which[s.summands_at(0)[0]] = static_cast<int>(i);
    }
    for (int v = 0; v < A->n_vertices(); ++v)
        if (which[v] < 0) throw ComputeError("canonical comparison needs all projective stalks");
    Matrix m(A->field(), pkg.algebra->dim(), A->dim());
    for (int b = 0; b < A->dim(); ++b) {
        const auto& info = A->basis(b);
        ChainMap g = ChainMap::zero(pkg.summands[which[info.src]], pkg.summands[which[info.tgt]]);
        AlgMat c(A, 1, 1);
        c.at(0, 0) = A->basis_elt(b);
        g.comps[0] = std::move(c);
        if (!g.commutes()) throw ComputeError("left multiplication is not a chain map");
        AlgElt img = pkg.class_elt(which[info.src], which[info.tgt], g);
        for (int r = 0; r < pkg.algebra->dim(); ++r) m.at(r, b) = img[r];
    }
    AlgebraHom h{A, pkg.algebra, std::move(m)};
    h.certify();
    return h;
}

ChainMap chainmap_inverse(const ChainMap& g) {
    const ProjComplex& X = g.src;
    const ProjComplex& Y = g.tgt;
    const AlgebraPtr A = X.owner();
    const Field& f = A->field();
    if (X.lo() != Y.lo() || X.hi() != Y.hi()) throw ComputeError("chainmap_inverse: degree ranges differ");
    ChainMap h = ChainMap::zero(Y, X);
    for (int d = X.lo(); d <= X.hi(); ++d) {
        const auto& xs = X.summands_at(d);
        const auto& ys = Y.summands_at(d);
        if (xs.empty() && ys.empty()) continue;
        AlgMat gd = g.comp(d);
        std::vector<std::tuple<int, int, int>> slots;
        std::map<std::tuple<int, int, int>, int> slot_id;
        for (size_t k = 0; k < xs.size(); ++k)
            for (size_t c = 0; c < ys.size(); ++c)
                for (int bb : A->peirce(xs[k], ys[c])) {
                    slot_id[{static_cast<int>(k), static_cast<int>(c), bb}] = static_cast<int>(slots.size());
                    slots.emplace_back(static_cast<int>(k), static_cast<int>(c), bb);
                }
        std::map<std::tuple<int, int, int>, int> eq_id;
        int neq = 0;
        for (size_t r = 0; r < ys.size(); ++r)
            for (size_t c = 0; c < ys.size(); ++c)
                for (int bb : A->peirce(ys[r], ys[c]))
                    eq_id[{static_cast<int>(r), static_cast<int>(c), bb}] = neq++;
        Matrix sys(f, neq, static_cast<int>(slots.size()));
        std::vector<Rat> rhs(neq, Rat(0));
        for (size_t s = 0; s < slots.size(); ++s) {
            auto [k, c, bb] = slots[s];
            AlgElt beta = A->basis_elt(bb);
            for (size_t r = 0; r < ys.size(); ++r) {
                AlgElt prod = A->mul(gd.at(static_cast<int>(r), k), beta);
                for (int w = 0; w < A->dim(); ++w) {
                    if (sgn(prod[w]) == 0) continue;
                    auto it = eq_id.find({static_cast<int>(r), c, w});
                    if (it == eq_id.end()) throw ComputeError("chainmap_inverse: product escaped blocks");
                    sys.at(it->second, static_cast<int>(s)) =
                        f.add(sys.at(it->second, static_cast<int>(s)), prod[w]);
                }
            }
        }
        for (size_t r = 0; r < ys.size(); ++r) {
            const AlgElt& e = A->idempotent(ys[r]);
            for (int w = 0; w < A->dim(); ++w) {
                if (sgn(e[w]) == 0) continue;
                auto it = eq_id.find({static_cast<int>(r), static_cast<int>(r), w});
                if (it != eq_id.end()) rhs[it->second] = e[w];
            }
        }
        auto sol = solve(sys, rhs);
        if (!sol) throw ComputeError("chainmap_inverse: degreewise inverse does not exist");
        AlgMat hd(A, static_cast<int>(xs.size()), static_cast<int>(ys.size()));
        for (size_t s = 0; s < slots.size(); ++s) {
            auto [k, c, bb] = slots[s];
            hd.at(k, c)[bb] = f.add(hd.at(k, c)[bb], (*sol)[s]);
        }
        if (!hd.is_zero()) h.comps[d] = std::move(hd);
    }
    ChainMap gh = g.compose(h), hg = h.compose(g);
    ChainMap idy = ChainMap::identity(Y), idx = ChainMap::identity(X);
    for (int d = X.lo(); d <= X.hi(); ++d)
        if (!gh.comp(d).sub(idy.comp(d)).is_zero() || !hg.comp(d).sub(idx.comp(d)).is_zero())
            throw ComputeError("chainmap_inverse: candidate is not a two-sided inverse");
    if (!h.commutes()) throw ComputeError("chainmap_inverse: inverse is not a chain map");
    return h;
}

} // namespace silt
