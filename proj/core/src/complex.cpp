#include "silt/complex.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace silt {

namespace {

AlgMat zero_mat(const AlgebraPtr& a, int r, int c) { return AlgMat(a, r, c); }

// Scalar matrix of left multiplication by the entries of an AlgMat on the
// evaluated block k: columns (u, beta in peirce(src_u, k)), rows (w, gamma).
Matrix evaluate_algmat(const AlgMat& m, const std::vector<int>& row_vertices,
                       const std::vector<int>& col_vertices, int block) {
    const Algebra& A = *m.owner;
    const Field& f = A.field();
    std::vector<int> roff(row_vertices.size() + 1, 0), coff(col_vertices.size() + 1, 0);
    for (size_t w = 0; w < row_vertices.size(); ++w)
        roff[w + 1] = roff[w] + static_cast<int>(A.peirce(row_vertices[w], block).size());
    for (size_t u = 0; u < col_vertices.size(); ++u)
        coff[u + 1] = coff[u] + static_cast<int>(A.peirce(col_vertices[u], block).size());
    Matrix out(f, roff.back(), coff.back());
    for (size_t w = 0; w < row_vertices.size(); ++w) {
        const auto& rowblk = A.peirce(row_vertices[w], block);
        for (size_t u = 0; u < col_vertices.size(); ++u) {
            const AlgElt& entry = m.at(static_cast<int>(w), static_cast<int>(u));
            if (vec_is_zero(entry)) continue;
            const auto& colblk = A.peirce(col_vertices[u], block);
            for (size_t c = 0; c < colblk.size(); ++c) {
                AlgElt prod = A.mul(entry, A.basis_elt(colblk[c]));
                for (int b = 0; b < A.dim(); ++b) {
                    if (sgn(prod[b]) == 0) continue;
                    // prod lies in e_{row vertex} A e_block
                    out.at(roff[w] + A.block_pos(b), coff[u] + static_cast<int>(c)) = prod[b];
                }
            }
        }
    }
    return out;
}

} // namespace

ProjComplex ProjComplex::build(AlgebraPtr owner, int lo, std::vector<std::vector<int>> summands,
                               std::vector<AlgMat> diffs, bool validate) {
    ProjComplex x;
    x.owner_ = std::move(owner);
    x.lo_ = lo;
    x.summands_ = std::move(summands);
    x.diffs_ = std::move(diffs);
    if (!x.summands_.empty() && x.diffs_.size() + 1 != x.summands_.size())
        throw ComputeError("complex needs one differential per adjacent degree pair");
    if (validate) x.validate_complex();
    return x.normalized();
}

void ProjComplex::validate_complex() const {
    const Algebra& A = *owner_;
    for (const auto& deg : summands_)
        for (int v : deg)
            if (v < 0 || v >= A.n_vertices()) throw InputError("unknown vertex index in complex");
    for (size_t k = 0; k < diffs_.size(); ++k) {
        const AlgMat& d = diffs_[k];
        if (d.owner != owner_) throw ComputeError("differential owner mismatch");
        if (d.rows != static_cast<int>(summands_[k + 1].size()) ||
            d.cols != static_cast<int>(summands_[k].size()))
            throw InputError("differential shape mismatch at degree " + std::to_string(lo_ + static_cast<int>(k)));
        for (int r = 0; r < d.rows; ++r)
            for (int c = 0; c < d.cols; ++c)
                if (!A.in_block(d.at(r, c), summands_[k + 1][r], summands_[k][c]))
                    throw InputError("differential entry outside its Peirce block at degree " +
                                     std::to_string(lo_ + static_cast<int>(k)));
    }
    for (size_t k = 0; k + 1 < diffs_.size(); ++k)
        if (!diffs_[k + 1].mul(diffs_[k]).is_zero())
            throw InputError("d^2 != 0 at degree " + std::to_string(lo_ + static_cast<int>(k)));
}

ProjComplex ProjComplex::zero_complex(AlgebraPtr owner) {
    ProjComplex x;
    x.owner_ = std::move(owner);
    x.lo_ = 0;
    return x;
}

ProjComplex ProjComplex::stalk(AlgebraPtr owner, int vertex, int degree) {
    ProjComplex x;
    x.owner_ = std::move(owner);
    x.lo_ = degree;
    x.summands_ = {{vertex}};
    return x;
}

ProjComplex ProjComplex::algebra_stalk(AlgebraPtr owner) {
    ProjComplex x;
    x.owner_ = std::move(owner);
    x.lo_ = 0;
    std::vector<int> all(x.owner_->n_vertices());
    for (int i = 0; i < x.owner_->n_vertices(); ++i) all[i] = i;
    x.summands_ = {all};
    return x;
}

ProjComplex ProjComplex::direct_sum(const std::vector<ProjComplex>& parts) {
    if (parts.empty()) throw ComputeError("direct_sum of no complexes");
    AlgebraPtr owner = parts.front().owner_;
    int lo = 0, hi = -1;
    bool any = false;
    for (const auto& p : parts) {
        if (p.owner_ != owner) throw ComputeError("direct_sum owner mismatch");
        if (p.is_zero_complex()) continue;
        if (!any) { lo = p.lo(); hi = p.hi(); any = true; }
        else { lo = std::min(lo, p.lo()); hi = std::max(hi, p.hi()); }
    }
    if (!any) return zero_complex(owner);
    std::vector<std::vector<int>> summands(hi - lo + 1);
    for (int d = lo; d <= hi; ++d)
        for (const auto& p : parts) {
            const auto& s = p.summands_at(d);
            summands[d - lo].insert(summands[d - lo].end(), s.begin(), s.end());
        }
    std::vector<AlgMat> diffs;
    for (int d = lo; d < hi; ++d) {
        AlgMat m(owner, static_cast<int>(summands[d - lo + 1].size()),
                 static_cast<int>(summands[d - lo].size()));
        int ro = 0, co = 0;
        for (const auto& p : parts) {
            AlgMat pd = p.diff_from(d);
            for (int r = 0; r < pd.rows; ++r)
                for (int c = 0; c < pd.cols; ++c) m.at(ro + r, co + c) = pd.at(r, c);
            ro += pd.rows;
            co += pd.cols;
        }
        diffs.push_back(std::move(m));
    }
    return build(owner, lo, std::move(summands), std::move(diffs), false);
}

bool ProjComplex::is_zero_complex() const { return total_summands() == 0; }

int ProjComplex::total_summands() const {
    int n = 0;
    for (const auto& s : summands_) n += static_cast<int>(s.size());
    return n;
}

int ProjComplex::n_summands(int degree) const {
    if (degree < lo_ || degree > hi()) return 0;
    return static_cast<int>(summands_[degree - lo_].size());
}

const std::vector<int>& ProjComplex::summands_at(int degree) const {
    static const std::vector<int> empty;
    if (degree < lo_ || degree > hi()) return empty;
    return summands_[degree - lo_];
}

AlgMat ProjComplex::diff_from(int degree) const {
    if (degree >= lo_ && degree < hi()) return diffs_[degree - lo_];
    return zero_mat(owner_, n_summands(degree + 1), n_summands(degree));
}

ProjComplex ProjComplex::shifted(int n) const {
    ProjComplex x = *this;
    x.lo_ -= n;
    if (n % 2 != 0)
        for (auto& d : x.diffs_) d = d.neg();
    return x;
}

ProjComplex ProjComplex::normalized() const {
    int a = 0, b = static_cast<int>(summands_.size());
    while (a < b && summands_[a].empty()) ++a;
    while (b > a && summands_[b - 1].empty()) --b;
    if (a == b) return zero_complex(owner_);
    ProjComplex x;
    x.owner_ = owner_;
    x.lo_ = lo_ + a;
    x.summands_.assign(summands_.begin() + a, summands_.begin() + b);
    if (b - a >= 2) x.diffs_.assign(diffs_.begin() + a, diffs_.begin() + (b - 1));
    return x;
}

bool ProjComplex::operator==(const ProjComplex& o) const {
    if (owner_ != o.owner_) return false;
    ProjComplex a = normalized(), b = o.normalized();
    if (a.lo_ != b.lo_ || a.summands_ != b.summands_) return false;
    for (size_t k = 0; k < a.diffs_.size(); ++k)
        if (!(a.diffs_[k].sub(b.diffs_[k]).is_zero())) return false;
    return true;
}

std::string ProjComplex::shape_str() const {
    if (is_zero_complex()) return "0";
    std::ostringstream os;
    for (int d = lo(); d <= hi(); ++d) {
        if (d > lo()) os << " | ";
        os << d << ": ";
        const auto& s = summands_at(d);
        if (s.empty()) os << "0";
        for (size_t i = 0; i < s.size(); ++i)
            os << (i ? "+" : "") << "P" << owner_->vertex_label(s[i]);
    }
    return os.str();
}

ChainMap ChainMap::zero(const ProjComplex& src, const ProjComplex& tgt) {
    return ChainMap{src, tgt, {}};
}

ChainMap ChainMap::identity(const ProjComplex& x) {
    ChainMap f{x, x, {}};
    for (int d = x.lo(); d <= x.hi(); ++d) {
        int n = x.n_summands(d);
        if (n == 0) continue;
        AlgMat m(x.owner(), n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = x.owner()->idempotent(x.summands_at(d)[i]);
        f.comps[d] = std::move(m);
    }
    return f;
}

AlgMat ChainMap::comp(int degree) const {
    auto it = comps.find(degree);
    if (it != comps.end()) return it->second;
    return zero_mat(src.owner(), tgt.n_summands(degree), src.n_summands(degree));
}

bool ChainMap::commutes() const {
    int lo = std::min(src.lo(), tgt.lo()) - 1;
    int hi = std::max(src.hi(), tgt.hi());
    for (int d = lo; d <= hi; ++d) {
        AlgMat lhs = tgt.diff_from(d).mul(comp(d));
        AlgMat rhs = comp(d + 1).mul(src.diff_from(d));
        if (!lhs.sub(rhs).is_zero()) return false;
    }
    return true;
}

ChainMap ChainMap::compose(const ChainMap& first) const {
    ChainMap r{first.src, tgt, {}};
    for (int d = std::max(src.lo(), first.src.lo()); d <= std::min(src.hi(), first.src.hi()); ++d) {
        if (tgt.n_summands(d) == 0 || first.src.n_summands(d) == 0) continue;
        AlgMat m = comp(d).mul(first.comp(d));
        if (!m.is_zero()) r.comps[d] = std::move(m);
    }
    return r;
}

ChainMap ChainMap::add(const ChainMap& o) const {
    ChainMap r{src, tgt, {}};
    for (int d = std::min(src.lo(), tgt.lo()); d <= std::max(src.hi(), tgt.hi()); ++d) {
        if (tgt.n_summands(d) == 0 || src.n_summands(d) == 0) continue;
        AlgMat m = comp(d).add(o.comp(d));
        if (!m.is_zero()) r.comps[d] = std::move(m);
    }
    return r;
}

ChainMap ChainMap::scale(const Rat& c) const {
    ChainMap r{src, tgt, {}};
    for (const auto& [d, m] : comps) {
        AlgMat s(m.owner, m.rows, m.cols);
        for (size_t i = 0; i < m.e.size(); ++i) s.e[i] = m.owner->scale(c, m.e[i]);
        if (!s.is_zero()) r.comps[d] = std::move(s);
    }
    return r;
}

ChainMap ChainMap::shifted(int n) const {
    ChainMap r{src.shifted(n), tgt.shifted(n), {}};
    for (const auto& [d, m] : comps) r.comps[d - n] = m;
    return r;
}

bool ChainMap::is_zero() const {
    for (const auto& [d, m] : comps)
        if (!m.is_zero()) return false;
    return true;
}

Triangle cone(const ChainMap& f) {
    const ProjComplex& X = f.src;
    const ProjComplex& Y = f.tgt;
    AlgebraPtr A = X.owner();
    int lo = std::min(Y.is_zero_complex() ? X.lo() - 1 : Y.lo(), X.lo() - 1);
    int hi = std::max(Y.is_zero_complex() ? X.hi() - 1 : Y.hi(), X.hi() - 1);
    if (X.is_zero_complex() && Y.is_zero_complex()) {
        Triangle t{X, Y, ProjComplex::zero_complex(A), f,
                   ChainMap::zero(Y, ProjComplex::zero_complex(A)),
                   ChainMap::zero(ProjComplex::zero_complex(A), X.shifted(1))};
        return t;
    }
    if (X.is_zero_complex()) { lo = Y.lo(); hi = Y.hi(); }
    if (Y.is_zero_complex()) { lo = X.lo() - 1; hi = X.hi() - 1; }
    std::vector<std::vector<int>> summands;
    for (int d = lo; d <= hi; ++d) {
        std::vector<int> s = Y.summands_at(d);
        const auto& xs = X.summands_at(d + 1);
        s.insert(s.end(), xs.begin(), xs.end());
        summands.push_back(std::move(s));
    }
    std::vector<AlgMat> diffs;
    for (int d = lo; d < hi; ++d) {
        int ny0 = Y.n_summands(d), nx0 = X.n_summands(d + 1);
        int ny1 = Y.n_summands(d + 1), nx1 = X.n_summands(d + 2);
        AlgMat m(A, ny1 + nx1, ny0 + nx0);
        AlgMat dy = Y.diff_from(d), dx = X.diff_from(d + 1), fc = f.comp(d + 1);
        for (int r = 0; r < ny1; ++r)
            for (int c = 0; c < ny0; ++c) m.at(r, c) = dy.at(r, c);
        for (int r = 0; r < ny1; ++r)
            for (int c = 0; c < nx0; ++c) m.at(r, ny0 + c) = fc.at(r, c);
        for (int r = 0; r < nx1; ++r)
            for (int c = 0; c < nx0; ++c) m.at(ny1 + r, ny0 + c) = A->scale(Rat(-1), dx.at(r, c));
        diffs.push_back(std::move(m));
    }
    ProjComplex C = ProjComplex::build(A, lo, std::move(summands), std::move(diffs), true);

    Triangle t;
    t.x = X;
    t.y = Y;
    t.z = C;
    t.u = f;
    // v: Y -> C, inclusion of the first block
    ChainMap v{Y, C, {}};
    for (int d = Y.lo(); d <= Y.hi(); ++d) {
        int ny = Y.n_summands(d);
        if (ny == 0 || C.n_summands(d) == 0) continue;
        AlgMat m(A, C.n_summands(d), ny);
        for (int i = 0; i < ny; ++i) m.at(i, i) = A->idempotent(Y.summands_at(d)[i]);
        v.comps[d] = std::move(m);
    }
    // w: C -> Sigma X, projection onto the second block
    ProjComplex SX = X.shifted(1);
    ChainMap w{C, SX, {}};
    for (int d = SX.lo(); d <= SX.hi(); ++d) {
        int nx = SX.n_summands(d);
        if (nx == 0 || C.n_summands(d) == 0) continue;
        int ny = Y.n_summands(d);
        AlgMat m(A, nx, C.n_summands(d));
        for (int i = 0; i < nx; ++i) m.at(i, ny + i) = A->idempotent(SX.summands_at(d)[i]);
        w.comps[d] = std::move(m);
    }
    t.v = std::move(v);
    t.w = std::move(w);
    if (!t.v.commutes() || !t.w.commutes()) throw ComputeError("cone triangle maps do not commute");
    return t;
}

HomSpace hom_complexes(const ProjComplex& x, const ProjComplex& y, int shift) {
    if (x.owner() != y.owner()) throw ComputeError("hom_complexes owner mismatch");
    const AlgebraPtr A = x.owner();
    const Field& f = A->field();
    HomSpace H;
    H.src = x;
    H.tgt = y.shifted(shift);
    H.shift = shift;
    const ProjComplex& ty = H.tgt;

    // unknown slots
    std::map<std::tuple<int, int, int, int>, int> slot_id;
    for (int d = std::max(x.lo(), ty.lo()); d <= std::min(x.hi(), ty.hi()); ++d)
        for (int v = 0; v < ty.n_summands(d); ++v)
            for (int u = 0; u < x.n_summands(d); ++u)
                for (int b : A->peirce(ty.summands_at(d)[v], x.summands_at(d)[u])) {
                    slot_id[{d, v, u, b}] = static_cast<int>(H.slots.size());
                    H.slots.push_back({d, v, u, b});
                }
    const int nvars = static_cast<int>(H.slots.size());

    // constraint coordinates: maps x^d -> ty^{d+1}
    std::map<std::tuple<int, int, int, int>, int> con_id;
    int ncons = 0;
    for (int d = std::max(x.lo(), ty.lo() - 1); d <= std::min(x.hi(), ty.hi() - 1); ++d)
        for (int w = 0; w < ty.n_summands(d + 1); ++w)
            for (int u = 0; u < x.n_summands(d); ++u)
                for (int b : A->peirce(ty.summands_at(d + 1)[w], x.summands_at(d)[u]))
                    con_id[{d, w, u, b}] = ncons++;

    Matrix sys(f, ncons, nvars);
    for (int s = 0; s < nvars; ++s) {
        const auto& sl = H.slots[s];
        AlgElt beta = A->basis_elt(sl.basis_index);
        // d_ty o g at degree sl.degree
        AlgMat dty = ty.diff_from(sl.degree);
        for (int w = 0; w < dty.rows; ++w) {
            AlgElt prod = A->mul(dty.at(w, sl.row), beta);
            for (int b = 0; b < A->dim(); ++b) {
                if (sgn(prod[b]) == 0) continue;
                auto it = con_id.find({sl.degree, w, sl.col, b});
                if (it == con_id.end()) throw ComputeError("hom system: missing constraint slot");
                sys.at(it->second, s) = f.add(sys.at(it->second, s), prod[b]);
            }
        }
        // g o d_x at degree sl.degree - 1 (minus sign)
        AlgMat dx = x.diff_from(sl.degree - 1);
        for (int u2 = 0; u2 < dx.cols; ++u2) {
            AlgElt prod = A->mul(beta, dx.at(sl.col, u2));
            for (int b = 0; b < A->dim(); ++b) {
                if (sgn(prod[b]) == 0) continue;
                auto it = con_id.find({sl.degree - 1, sl.row, u2, b});
                if (it == con_id.end()) throw ComputeError("hom system: missing constraint slot");
                sys.at(it->second, s) = f.sub(sys.at(it->second, s), prod[b]);
            }
        }
    }
    H.chain_basis = nvars == 0 ? std::vector<std::vector<Rat>>{} : kernel_basis(sys);

    // homotopies h: x^d -> ty^{d-1}; boundary d_ty h + h d_x
    SpanBuilder nullspan(f, std::max(nvars, 1));
    for (int d = std::max(x.lo(), ty.lo() + 1); d <= std::min(x.hi(), ty.hi() + 1); ++d)
        for (int v = 0; v < ty.n_summands(d - 1); ++v)
            for (int u = 0; u < x.n_summands(d); ++u)
                for (int b : A->peirce(ty.summands_at(d - 1)[v], x.summands_at(d)[u])) {
                    std::vector<Rat> img(nvars, Rat(0));
                    AlgElt beta = A->basis_elt(b);
                    AlgMat dty = ty.diff_from(d - 1);
                    for (int w = 0; w < dty.rows; ++w) {
                        AlgElt prod = A->mul(dty.at(w, v), beta);
                        for (int bb = 0; bb < A->dim(); ++bb) {
                            if (sgn(prod[bb]) == 0) continue;
                            auto it = slot_id.find({d, w, u, bb});
                            if (it == slot_id.end()) throw ComputeError("homotopy image: missing slot");
                            img[it->second] = f.add(img[it->second], prod[bb]);
                        }
                    }
                    AlgMat dx = x.diff_from(d - 1);
                    for (int u2 = 0; u2 < dx.cols; ++u2) {
                        AlgElt prod = A->mul(beta, dx.at(u, u2));
                        for (int bb = 0; bb < A->dim(); ++bb) {
                            if (sgn(prod[bb]) == 0) continue;
                            auto it = slot_id.find({d - 1, v, u2, bb});
                            if (it == slot_id.end()) throw ComputeError("homotopy image: missing slot");
                            img[it->second] = f.add(img[it->second], prod[bb]);
                        }
                    }
                    if (nvars > 0 && nullspan.insert(img)) H.null_basis.push_back(std::move(img));
                }
    // canonical quotient representatives
    SpanBuilder reps(f, std::max(nvars, 1));
    for (const auto& nb : H.null_basis) reps.insert(nb);
    for (const auto& cb : H.chain_basis)
        if (reps.insert(cb)) H.quot_reps.push_back(cb);
    return H;
}

ChainMap HomSpace::materialize(const std::vector<Rat>& coords) const {
    const AlgebraPtr A = src.owner();
    ChainMap g{src, tgt, {}};
    for (size_t s = 0; s < slots.size(); ++s) {
        if (sgn(coords[s]) == 0) continue;
        const auto& sl = slots[s];
        auto it = g.comps.find(sl.degree);
        if (it == g.comps.end())
            it = g.comps.emplace(sl.degree, AlgMat(A, tgt.n_summands(sl.degree), src.n_summands(sl.degree))).first;
        it->second.at(sl.row, sl.col)[sl.basis_index] =
            A->field().add(it->second.at(sl.row, sl.col)[sl.basis_index], coords[s]);
    }
    return g;
}

std::vector<Rat> HomSpace::flatten(const ChainMap& g) const {
    std::vector<Rat> v(slots.size(), Rat(0));
    for (size_t s = 0; s < slots.size(); ++s) {
        const auto& sl = slots[s];
        auto it = g.comps.find(sl.degree);
        if (it == g.comps.end()) continue;
        v[s] = it->second.at(sl.row, sl.col)[sl.basis_index];
    }
    return v;
}

std::vector<Rat> HomSpace::class_coords(const ChainMap& g) const {
    std::vector<std::vector<Rat>> span = quot_reps;
    span.insert(span.end(), null_basis.begin(), null_basis.end());
    auto expr = express_in_span(src.owner()->field(), span, flatten(g));
    if (!expr) throw ComputeError("chain map class outside the Hom space span");
    return std::vector<Rat>(expr->begin(), expr->begin() + quot_reps.size());
}

BlockEvaluation evaluate_block(const ProjComplex& x, int block) {
    BlockEvaluation ev;
    ev.lo = x.lo();
    const Algebra& A = *x.owner();
    for (int d = x.lo(); d <= x.hi(); ++d) {
        int n = 0;
        for (int v : x.summands_at(d)) n += static_cast<int>(A.peirce(v, block).size());
        ev.dims.push_back(n);
    }
    for (int d = x.lo(); d < x.hi(); ++d)
        ev.diffs.push_back(evaluate_algmat(x.diff_from(d), x.summands_at(d + 1), x.summands_at(d), block));
    return ev;
}

int block_homology_dim(const ProjComplex& x, int block, int degree) {
    if (x.is_zero_complex()) return 0;
    BlockEvaluation ev = evaluate_block(x, block);
    if (degree < x.lo() || degree > x.hi()) return 0;
    int idx = degree - x.lo();
    int dim = ev.dims[idx];
    int rk_out = (idx < static_cast<int>(ev.diffs.size())) ? rank(ev.diffs[idx]) : 0;
    int rk_in = (idx > 0) ? rank(ev.diffs[idx - 1]) : 0;
    return dim - rk_out - rk_in;
}

bool is_acyclic(const ProjComplex& x) {
    for (int k = 0; k < x.owner()->n_vertices(); ++k)
        for (int d = x.lo(); d <= x.hi(); ++d)
            if (block_homology_dim(x, k, d) != 0) return false;
    return true;
}

FdModule homology_of_complex(const ProjComplex& x, int degree) {
    const AlgebraPtr A = x.owner();
    const Field& f = A->field();
    const int nb = A->n_vertices();
    if (x.is_zero_complex()) return FdModule::zero_module(A);

    // cycles, boundaries and canonical representatives per block
    std::vector<std::vector<std::vector<Rat>>> reps(nb), bnd(nb);
    std::vector<int> dims(nb, 0);
    std::vector<BlockEvaluation> evs;
    for (int k = 0; k < nb; ++k) evs.push_back(evaluate_block(x, k));
    int idx = degree - x.lo();
    for (int k = 0; k < nb; ++k) {
        if (degree < x.lo() || degree > x.hi()) continue;
        const BlockEvaluation& ev = evs[k];
        int n = ev.dims[idx];
        std::vector<std::vector<Rat>> cycles;
        if (idx < static_cast<int>(ev.diffs.size()))
            cycles = kernel_basis(ev.diffs[idx]);
        else {
            for (int i = 0; i < n; ++i) {
                std::vector<Rat> e(n, Rat(0));
                e[i] = 1;
                cycles.push_back(std::move(e));
            }
        }
        SpanBuilder sb(f, std::max(n, 1));
        if (idx > 0)
            for (int c = 0; c < ev.diffs[idx - 1].cols(); ++c) {
                auto col = ev.diffs[idx - 1].col(c);
                if (n > 0 && sb.insert(col)) bnd[k].push_back(ev.diffs[idx - 1].col(c));
            }
        // canonical echelon boundary basis
        bnd[k] = sb.basis();
        for (const auto& z : cycles)
            if (sb.insert(z)) reps[k].push_back(z);
        dims[k] = static_cast<int>(reps[k].size());
    }

    // right action across blocks: (u, beta) |-> (u, beta*b)
    std::vector<Matrix> act;
    for (int b = 0; b < A->dim(); ++b) {
        const auto& info = A->basis(b);
        // evaluated action on degree `degree`: E_{tgt} -> E_{src}
        int ntgt = (degree >= x.lo() && degree <= x.hi()) ? evs[info.tgt].dims[idx] : 0;
        int nsrc = (degree >= x.lo() && degree <= x.hi()) ? evs[info.src].dims[idx] : 0;
        Matrix ablk(f, nsrc, ntgt);
        if (ntgt > 0 && nsrc > 0) {
            const auto& summ = x.summands_at(degree);
            // offsets per summand in the two evaluations
            std::vector<int> toff(summ.size() + 1, 0), soff(summ.size() + 1, 0);
            for (size_t u = 0; u < summ.size(); ++u) {
                toff[u + 1] = toff[u] + static_cast<int>(A->peirce(summ[u], info.tgt).size());
                soff[u + 1] = soff[u] + static_cast<int>(A->peirce(summ[u], info.src).size());
            }
            for (size_t u = 0; u < summ.size(); ++u) {
                const auto& tblk = A->peirce(summ[u], info.tgt);
                for (size_t c = 0; c < tblk.size(); ++c) {
                    AlgElt prod = A->mul(A->basis_elt(tblk[c]), A->basis_elt(b));
                    for (int bb = 0; bb < A->dim(); ++bb) {
                        if (sgn(prod[bb]) == 0) continue;
                        ablk.at(soff[u] + A->block_pos(bb), toff[u] + static_cast<int>(c)) = prod[bb];
                    }
                }
            }
        }
        // induced map on homology classes
        Matrix hblk(f, dims[info.src], dims[info.tgt]);
        for (int c = 0; c < dims[info.tgt]; ++c) {
            std::vector<Rat> w = ablk.apply(reps[info.tgt][c]);
            std::vector<std::vector<Rat>> span = reps[info.src];
            span.insert(span.end(), bnd[info.src].begin(), bnd[info.src].end());
            auto expr = express_in_span(f, span, w);
            if (!expr) throw ComputeError("homology action escaped cycle representatives");
            for (int r = 0; r < dims[info.src]; ++r) hblk.at(r, c) = (*expr)[r];
        }
        act.push_back(std::move(hblk));
    }
    return FdModule::from_actions(A, dims, std::move(act));
}

MinimalModel minimal_model(const ProjComplex& x) {
    const AlgebraPtr A = x.owner();
    MinimalModel mm;
    ProjComplex cur = x;
    ChainMap to_min = ChainMap::identity(x);
    ChainMap from_min = ChainMap::identity(x);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int d = cur.lo(); d < cur.hi() && !changed; ++d) {
            AlgMat dm = cur.diff_from(d);
            for (int v = 0; v < dm.rows && !changed; ++v)
                for (int u = 0; u < dm.cols && !changed; ++u) {
                    const AlgElt& phi = dm.at(v, u);
                    if (vec_is_zero(phi)) continue;
                    int jv = cur.summands_at(d + 1)[v];
                    int iu = cur.summands_at(d)[u];
                    auto psi = A->block_inverse(phi, jv, iu);
                    if (!psi) continue;
                    // build the reduced complex and the two equivalences
                    std::vector<std::vector<int>> summands;
                    for (int dd = cur.lo(); dd <= cur.hi(); ++dd) {
                        std::vector<int> s = cur.summands_at(dd);
                        if (dd == d) s.erase(s.begin() + u);
                        if (dd == d + 1) s.erase(s.begin() + v);
                        summands.push_back(std::move(s));
                    }
                    auto keep = [](int n, int skip) {
                        std::vector<int> k;
                        for (int i = 0; i < n; ++i)
                            if (i != skip) k.push_back(i);
                        return k;
                    };
                    std::vector<int> keep_d = keep(dm.cols, u), keep_d1 = keep(dm.rows, v);
                    std::vector<AlgMat> diffs;
                    for (int dd = cur.lo(); dd < cur.hi(); ++dd) {
                        AlgMat old = cur.diff_from(dd);
                        std::vector<int> rk, ck;
                        if (dd == d) { rk = keep_d1; ck = keep_d; }
                        else if (dd == d - 1) {
                            rk = keep_d;
                            for (int c = 0; c < old.cols; ++c) ck.push_back(c);
                        } else if (dd == d + 1) {
                            ck = keep_d1;
                            for (int r = 0; r < old.rows; ++r) rk.push_back(r);
                        } else {
                            for (int r = 0; r < old.rows; ++r) rk.push_back(r);
                            for (int c = 0; c < old.cols; ++c) ck.push_back(c);
                        }
                        AlgMat nm(A, static_cast<int>(rk.size()), static_cast<int>(ck.size()));
                        for (size_t r = 0; r < rk.size(); ++r)
                            for (size_t c = 0; c < ck.size(); ++c) {
                                AlgElt entry = old.at(rk[r], ck[c]);
                                if (dd == d) {
                                    // Gaussian update: a - b psi c
                                    AlgElt corr = A->mul(old.at(rk[r], u), A->mul(*psi, old.at(v, ck[c])));
                                    entry = A->sub(entry, corr);
                                }
                                nm.at(static_cast<int>(r), static_cast<int>(c)) = std::move(entry);
                            }
                        diffs.push_back(std::move(nm));
                    }
                    ProjComplex red = ProjComplex::build(A, cur.lo(), summands, diffs, false);

                    // p: cur -> red
                    ChainMap p{cur, red, {}};
                    for (int dd = cur.lo(); dd <= cur.hi(); ++dd) {
                        int nr = red.n_summands(dd), nc = cur.n_summands(dd);
                        if (nr == 0 || nc == 0) continue;
                        AlgMat m(A, nr, nc);
                        if (dd == d) {
                            for (size_t r = 0; r < keep_d.size(); ++r)
                                m.at(static_cast<int>(r), keep_d[r]) = A->idempotent(cur.summands_at(dd)[keep_d[r]]);
                        } else if (dd == d + 1) {
                            for (size_t r = 0; r < keep_d1.size(); ++r) {
                                m.at(static_cast<int>(r), keep_d1[r]) = A->idempotent(cur.summands_at(dd)[keep_d1[r]]);
                                AlgElt corr = A->mul(dm.at(keep_d1[r], u), *psi);
                                m.at(static_cast<int>(r), v) = A->scale(Rat(-1), corr);
                            }
                        } else {
                            for (int i = 0; i < nc; ++i) m.at(i, i) = A->idempotent(cur.summands_at(dd)[i]);
                        }
                        p.comps[dd] = std::move(m);
                    }
                    // s: red -> cur
                    ChainMap sm{red, cur, {}};
                    for (int dd = cur.lo(); dd <= cur.hi(); ++dd) {
                        int nr = cur.n_summands(dd), nc = red.n_summands(dd);
                        if (nr == 0 || nc == 0) continue;
                        AlgMat m(A, nr, nc);
                        if (dd == d) {
                            for (size_t c = 0; c < keep_d.size(); ++c) {
                                m.at(keep_d[c], static_cast<int>(c)) = A->idempotent(cur.summands_at(dd)[keep_d[c]]);
                                AlgElt corr = A->mul(*psi, dm.at(v, keep_d[c]));
                                m.at(u, static_cast<int>(c)) = A->scale(Rat(-1), corr);
                            }
                        } else if (dd == d + 1) {
                            for (size_t c = 0; c < keep_d1.size(); ++c)
                                m.at(keep_d1[c], static_cast<int>(c)) = A->idempotent(cur.summands_at(dd)[keep_d1[c]]);
                        } else {
                            for (int i = 0; i < nr; ++i) m.at(i, i) = A->idempotent(cur.summands_at(dd)[i]);
                        }
                        sm.comps[dd] = std::move(m);
                    }
                    if (!p.commutes() || !sm.commutes())
                        throw ComputeError("minimal model reduction maps do not commute");
                    to_min = p.compose(to_min);
                    from_min = from_min.compose(sm);
                    cur = red;
                    changed = true;
                }
        }
    }
    ProjComplex model = cur.normalized();
    // retarget maps onto the normalized model (degrees outside are empty)
    ChainMap tm{x, model, {}};
    for (const auto& [dd, m] : to_min.comps)
        if (model.n_summands(dd) > 0 && x.n_summands(dd) > 0) tm.comps[dd] = m;
    ChainMap fm{model, x, {}};
    for (const auto& [dd, m] : from_min.comps)
        if (model.n_summands(dd) > 0 && x.n_summands(dd) > 0) fm.comps[dd] = m;
    mm.model = model;
    mm.to_min = std::move(tm);
    mm.from_min = std::move(fm);
    // certification: exact retraction and acyclic cone
    ChainMap ps = mm.to_min.compose(mm.from_min);
    ChainMap idm = ChainMap::identity(model);
    for (int dd = model.lo(); dd <= model.hi(); ++dd)
        if (!ps.comp(dd).sub(idm.comp(dd)).is_zero())
            throw ComputeError("minimal model: p o s is not the identity");
    if (!is_acyclic(cone(mm.to_min).z)) throw ComputeError("minimal model: cone of projection not acyclic");
    return mm;
}

int end_residue_dim_kb(const ProjComplex& x) {
    if (x.is_zero_complex()) return 0;
    HomSpace E = hom_complexes(x, x, 0);
    const int h = E.quotient_dim();
    std::vector<std::vector<std::vector<Rat>>> c(h, std::vector<std::vector<Rat>>(h));
    for (int u = 0; u < h; ++u)
        for (int v = 0; v < h; ++v) c[u][v] = E.class_coords(E.rep(u).compose(E.rep(v)));
    return residue_dim_of_table(x.owner()->field(), c);
}

namespace {

// evaluated total dimension per (degree, block) — an iso invariant
std::vector<std::vector<int>> graded_dims(const ProjComplex& x) {
    std::vector<std::vector<int>> out;
    for (int d = x.lo(); d <= x.hi(); ++d) {
        std::vector<int> row;
        for (int k = 0; k < x.owner()->n_vertices(); ++k) {
            int n = 0;
            for (int v : x.summands_at(d)) n += static_cast<int>(x.owner()->peirce(v, k).size());
            row.push_back(n);
        }
        out.push_back(std::move(row));
    }
    return out;
}

bool chainmap_invertible(const ChainMap& g) {
    const ProjComplex& X = g.src;
    const ProjComplex& Y = g.tgt;
    if (X.lo() != Y.lo() || X.hi() != Y.hi()) return false;
    for (int d = X.lo(); d <= X.hi(); ++d) {
        for (int k = 0; k < X.owner()->n_vertices(); ++k) {
            Matrix m = evaluate_algmat(g.comp(d), Y.summands_at(d), X.summands_at(d), k);
            if (m.rows() != m.cols()) return false;
            if (rank(m) != m.rows()) return false;
        }
    }
    return true;
}

} // namespace

KbIsoResult is_isomorphic_kb(const ProjComplex& x, const ProjComplex& y, const IsoPolicy& policy) {
    if (x.owner() != y.owner()) throw ComputeError("is_isomorphic_kb owner mismatch");
    MinimalModel mx = minimal_model(x), my = minimal_model(y);
    if (mx.model.is_zero_complex() || my.model.is_zero_complex())
        return {mx.model.is_zero_complex() && my.model.is_zero_complex(), true,
                mx.model.is_zero_complex() && my.model.is_zero_complex()
                    ? std::optional<ChainMap>(ChainMap::zero(x, y))
                    : std::nullopt};
    if (mx.model.lo() != my.model.lo() || mx.model.hi() != my.model.hi()) return {false, true, std::nullopt};
    if (graded_dims(mx.model) != graded_dims(my.model)) return {false, true, std::nullopt};

    HomSpace H = hom_complexes(mx.model, my.model, 0);
    const auto& cb = H.chain_basis; // honest chain maps, no homotopy quotient
    const int h = static_cast<int>(cb.size());
    const Field& f = x.owner()->field();
    auto finish = [&](const ChainMap& g) {
        ChainMap witness = my.from_min.compose(g.compose(mx.to_min));
        return KbIsoResult{true, true, witness};
    };
    auto try_coords = [&](const std::vector<Rat>& coords) -> std::optional<ChainMap> {
        std::vector<Rat> v(H.slots.size(), Rat(0));
        for (int t = 0; t < h; ++t)
            if (sgn(coords[t]) != 0) vec_add_scaled(f, v, coords[t], cb[t]);
        ChainMap g = H.materialize(v);
        if (chainmap_invertible(g)) return g;
        return std::nullopt;
    };
    for (int t = 0; t < h; ++t) {
        std::vector<Rat> c(h, Rat(0));
        c[t] = 1;
        if (auto g = try_coords(c)) return finish(*g);
    }
    for (int a = 0; a < h; ++a)
        for (int b = a + 1; b < h; ++b)
            for (int sign : {1, -1}) {
                std::vector<Rat> c(h, Rat(0));
                c[a] = 1;
                c[b] = f.from_long(sign);
                if (auto g = try_coords(c)) return finish(*g);
            }
    int dtot = 0;
    for (const auto& row : graded_dims(mx.model))
        for (int v : row) dtot += v;
    std::mt19937_64 rng(policy.seed);
    for (int trial = 0; trial < policy.random_trials; ++trial) {
        std::vector<Rat> c(h);
        for (int t = 0; t < h; ++t)
            c[t] = f.from_long(static_cast<long>(rng() % (2 * dtot + 3)) - dtot - 1);
        if (auto g = try_coords(c)) return finish(*g);
    }
    long gvals = dtot + 1;
    if (f.kind == FieldKind::PrimeField) gvals = std::min<long>(gvals, f.p);
    double size = 1;
    for (int t = 0; t < h; ++t) {
        size *= static_cast<double>(gvals);
        if (size > static_cast<double>(policy.grid_budget)) break;
    }
    if (size <= static_cast<double>(policy.grid_budget)) {
        std::vector<long> odo(h, 0);
        while (true) {
            bool allzero = true;
            std::vector<Rat> c(h);
            for (int t = 0; t < h; ++t) {
                c[t] = f.from_long(odo[t]);
                if (odo[t] != 0) allzero = false;
            }
            if (!allzero)
                if (auto g = try_coords(c)) return finish(*g);
            int k = 0;
            while (k < h && ++odo[k] == gvals) odo[k++] = 0;
            if (k == h) break;
        }
        return {false, true, std::nullopt};
    }
    if (policy.exhaustive_only)
        throw ComputeError("exhaustive complex isomorphism decision infeasible (chain map dim " +
                           std::to_string(h) + ")");
    return {false, false, std::nullopt};
}

AddMembership add_membership(const ProjComplex& x, const std::vector<ProjComplex>& summands,
                             const IsoPolicy& policy) {
    const AlgebraPtr A = x.owner();
    const int n = static_cast<int>(summands.size());
    for (int i = 0; i < n; ++i)
        if (end_residue_dim_kb(summands[i]) != 1)
            throw ComputeError("add_membership: summand " + std::to_string(i) + " is not local");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (is_isomorphic_kb(summands[i], summands[j], policy).iso)
                throw ComputeError("add_membership: summands are not pairwise non-isomorphic");
    AddMembership out;
    MinimalModel mx = minimal_model(x);
    if (mx.model.is_zero_complex()) {
        out.member = true;
        out.mult.assign(n, 0);
        out.witness = ChainMap::zero(ProjComplex::zero_complex(A), x);
        return out;
    }
    const Field& f = A->field();
    // Gram system on Hom dimensions
    Matrix G(f, n, n);
    std::vector<Rat> rhs(n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i)
            G.at(j, i) = Rat(hom_complexes(summands[j], summands[i], 0).quotient_dim());
        rhs[j] = Rat(hom_complexes(summands[j], x, 0).quotient_dim());
    }
    auto certify = [&](const std::vector<int>& m) -> std::optional<ChainMap> {
        std::vector<ProjComplex> parts;
        for (int i = 0; i < n; ++i)
            for (int c = 0; c < m[i]; ++c) parts.push_back(summands[i]);
        ProjComplex W = parts.empty() ? ProjComplex::zero_complex(A) : ProjComplex::direct_sum(parts);
        auto iso = is_isomorphic_kb(W, x, policy);
        if (iso.iso) return iso.witness;
        return std::nullopt;
    };
    auto sol = solve(G, rhs);
    if (sol) {
        std::vector<int> m(n, 0);
        bool ok = true;
        for (int i = 0; i < n; ++i) {
            if ((*sol)[i].get_den() != 1 || sgn((*sol)[i]) < 0) { ok = false; break; }
            m[i] = static_cast<int>((*sol)[i].get_num().get_si());
        }
        if (ok)
            if (auto w = certify(m)) {
                out.member = true;
                out.mult = m;
                out.witness = w;
                return out;
            }
    }
    // bounded exhaustive fallback
    int xsize = 0;
    for (const auto& row : graded_dims(mx.model))
        for (int v : row) xsize += v;
    std::vector<int> bound(n, 0);
    for (int i = 0; i < n; ++i) {
        int isz = 0;
        for (const auto& row : graded_dims(minimal_model(summands[i]).model))
            for (int v : row) isz += v;
        bound[i] = isz > 0 ? xsize / isz : 0;
    }
    std::vector<int> m(n, 0);
    while (true) {
        if (auto w = certify(m)) {
            out.member = true;
            out.mult = m;
            out.witness = w;
            return out;
        }
        int k = 0;
        while (k < n && ++m[k] > bound[k]) m[k++] = 0;
        if (k == n) break;
    }
    out.member = false;
    return out;
}

std::vector<ProjComplex> decompose_complex(const ProjComplex& x, const IsoPolicy& policy) {
    return decompose_complex_with_witness(x, policy).parts;
}

ModuleHomSpace hom_complex_to_module(const ProjComplex& x, const FdModule& m, int shift) {
    if (x.owner() != m.owner()) throw ComputeError("hom_complex_to_module owner mismatch");
    const AlgebraPtr A = x.owner();
    const Field& f = A->field();
    ModuleHomSpace H;
    H.src = x;
    H.stalk = m;
    H.shift = shift;
    const int D = -shift; // maps X^D -> M
    H.summand_vertices = x.summands_at(D);
    H.offsets.assign(H.summand_vertices.size() + 1, 0);
    for (size_t u = 0; u < H.summand_vertices.size(); ++u)
        H.offsets[u + 1] = H.offsets[u] + m.dim(H.summand_vertices[u]);
    H.coord_dim = H.offsets.empty() ? 0 : H.offsets.back();
    if (H.coord_dim == 0) return H;

    auto entry_action = [&](const AlgElt& a, int tgt_blk, int src_blk) {
        // m * a for a in e_{tgt} A e_{src}: M e_tgt -> M e_src
        Matrix act(f, m.dim(src_blk), m.dim(tgt_blk));
        for (int b = 0; b < A->dim(); ++b)
            if (sgn(a[b]) != 0) act = act + m.action(b).scaled(a[b]);
        return act;
    };

    // chain condition: g o d^{D-1} = 0
    AlgMat din = x.diff_from(D - 1);
    std::vector<std::vector<Rat>> rows;
    for (int u2 = 0; u2 < din.cols; ++u2) {
        int cw = x.summands_at(D - 1)[u2];
        for (int r = 0; r < m.dim(cw); ++r) {
            std::vector<Rat> row(H.coord_dim, Rat(0));
            for (size_t u = 0; u < H.summand_vertices.size(); ++u) {
                const AlgElt& a = din.at(static_cast<int>(u), u2);
                if (vec_is_zero(a)) continue;
                Matrix act = entry_action(a, H.summand_vertices[u], cw);
                for (int j = 0; j < m.dim(H.summand_vertices[u]); ++j)
                    row[H.offsets[u] + j] = f.add(row[H.offsets[u] + j], act.at(r, j));
            }
            if (!vec_is_zero(row)) rows.push_back(std::move(row));
        }
    }
    Matrix sys(f, static_cast<int>(rows.size()), H.coord_dim);
    for (size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < H.coord_dim; ++j) sys.at(static_cast<int>(i), j) = rows[i][j];
    H.chain_basis = kernel_basis(sys);

    // null maps: h o d^D for h: X^{D+1} -> M
    AlgMat dout = x.diff_from(D);
    SpanBuilder nullspan(f, H.coord_dim);
    const auto& up = x.summands_at(D + 1);
    for (size_t w = 0; w < up.size(); ++w)
        for (int r = 0; r < m.dim(up[w]); ++r) {
            std::vector<Rat> img(H.coord_dim, Rat(0));
            for (size_t u = 0; u < H.summand_vertices.size(); ++u) {
                const AlgElt& a = dout.at(static_cast<int>(w), static_cast<int>(u));
                if (vec_is_zero(a)) continue;
                Matrix act = entry_action(a, up[w], H.summand_vertices[u]);
                // h_w has coordinates over M e_{up[w]}; standard vector r
                for (int j = 0; j < m.dim(H.summand_vertices[u]); ++j)
                    img[H.offsets[u] + j] = f.add(img[H.offsets[u] + j], act.at(j, r));
            }
            if (nullspan.insert(img)) H.null_basis.push_back(std::move(img));
        }
    SpanBuilder reps(f, H.coord_dim);
    for (const auto& nb : H.null_basis) reps.insert(nb);
    for (const auto& cb : H.chain_basis)
        if (reps.insert(cb)) H.quot_reps.push_back(cb);
    return H;
}

std::vector<Rat> ModuleHomSpace::class_coords(const std::vector<Rat>& chain_vec) const {
    std::vector<std::vector<Rat>> span = quot_reps;
    span.insert(span.end(), null_basis.begin(), null_basis.end());
    auto expr = express_in_span(src.owner()->field(), span, chain_vec);
    if (!expr) throw ComputeError("module hom class outside span");
    return std::vector<Rat>(expr->begin(), expr->begin() + quot_reps.size());
}

AlgMat module_map_to_algmat(const ModuleMap& f, const std::vector<int>& src_vertices,
                            const std::vector<int>& tgt_vertices) {
    const AlgebraPtr A = f.src.owner();
    const int n1 = static_cast<int>(src_vertices.size());
    const int n0 = static_cast<int>(tgt_vertices.size());
    AlgMat d(A, n0, n1);
    for (int u = 0; u < n1; ++u) {
        const int iu = src_vertices[u];
        // coordinates of the generator e_{iu} inside the source block iu
        std::vector<Rat> xi(f.src.dim(iu), Rat(0));
        int off = 0;
        for (int s = 0; s < n1; ++s) {
            const auto& blk = A->peirce(src_vertices[s], iu);
            if (s == u)
                for (size_t cq = 0; cq < blk.size(); ++cq)
                    xi[off + static_cast<int>(cq)] = A->idempotent(iu)[blk[cq]];
            off += static_cast<int>(blk.size());
        }
        std::vector<Rat> img = f.blocks[iu].apply(xi); // target block iu coordinates
        off = 0;
        for (int w = 0; w < n0; ++w) {
            const auto& blk = A->peirce(tgt_vertices[w], iu);
            AlgElt entry = A->zero();
            for (size_t cq = 0; cq < blk.size(); ++cq) entry[blk[cq]] = img[off + static_cast<int>(cq)];
            d.at(w, u) = std::move(entry);
            off += static_cast<int>(blk.size());
        }
    }
    return d;
}

Presentation projective_presentation(const FdModule& m) {
    const AlgebraPtr A = m.owner();
    Presentation pres;
    ProjectiveCover c0 = projective_cover(m);
    if (m.total_dim() == 0) {
        pres.complex = ProjComplex::zero_complex(A);
        pres.cover = std::move(c0);
        return pres;
    }
    Submodule K = kernel_submodule(c0.onto);
    ProjectiveCover c1 = projective_cover(K.sub);
    ModuleMap psi = K.inclusion().compose(c1.onto); // P1 -> P0
    AlgMat d = module_map_to_algmat(psi, c1.cover_vertices, c0.cover_vertices);
    pres.complex = ProjComplex::build(A, -1, {c1.cover_vertices, c0.cover_vertices}, {d}, true);
    pres.cover = std::move(c0);
    return pres;
}

namespace {

// ---- dense polynomials over the field, lowest degree first ----
using Poly = std::vector<Rat>;

Poly poly_trim(const Field& f, Poly p) {
    while (!p.empty() && f.is_zero(p.back())) p.pop_back();
    return p;
}

Poly poly_mul(const Field& f, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
    return poly_trim(f, r);
}

Poly poly_add_scaled(const Field& f, Poly a, const Rat& c, const Poly& b, size_t shift = 0) {
    if (a.size() < b.size() + shift) a.resize(b.size() + shift, Rat(0));
    for (size_t i = 0; i < b.size(); ++i) a[i + shift] = f.add(a[i + shift], f.mul(c, b[i]));
    return poly_trim(f, a);
}

std::pair<Poly, Poly> poly_divmod(const Field& f, Poly a, const Poly& b) {
    Poly q;
    if (b.empty()) throw ComputeError("polynomial division by zero");
    while (a.size() >= b.size()) {
        Rat c = f.div(a.back(), b.back());
        size_t sh = a.size() - b.size();
        if (q.size() < sh + 1) q.resize(sh + 1, Rat(0));
        q[sh] = f.add(q[sh], c);
        a = poly_add_scaled(f, a, f.neg(c), b, sh);
        if (!a.empty() && a.size() >= b.size() + sh + 1) throw ComputeError("polynomial division stalled");
        if (a.size() == b.size() + sh) {
            // leading term did not cancel exactly; cannot happen over a field
            throw ComputeError("polynomial division inconsistency");
        }
    }
    return {poly_trim(f, q), a};
}

Rat poly_eval(const Field& f, const Poly& p, const Rat& x) {
    Rat r(0);
    for (size_t i = p.size(); i-- > 0;) r = f.add(f.mul(r, x), p[i]);
    return r;
}

// extended euclid: returns (g, u, v) with u a + v b = g, g monic
struct PolyEea {
    Poly g, u, v;
};
PolyEea poly_eea(const Field& f, Poly a, Poly b) {
    Poly u0 = {Rat(1)}, v0 = {}, u1 = {}, v1 = {Rat(1)};
    while (!b.empty()) {
        auto [q, r] = poly_divmod(f, a, b);
        Poly nu = u0, nv = v0;
        Poly qu = poly_mul(f, q, u1), qv = poly_mul(f, q, v1);
        nu = poly_add_scaled(f, nu, f.from_long(-1), qu);
        nv = poly_add_scaled(f, nv, f.from_long(-1), qv);
        a = std::move(b);
        b = std::move(r);
        u0 = std::move(u1);
        v0 = std::move(v1);
        u1 = std::move(nu);
        v1 = std::move(nv);
    }
    if (a.empty()) throw ComputeError("gcd of zero polynomials");
    Rat inv = f.inv(a.back());
    for (auto& c : a) c = f.mul(c, inv);
    for (auto& c : u0) c = f.mul(c, inv);
    for (auto& c : v0) c = f.mul(c, inv);
    return {a, u0, v0};
}

// distinct roots of p in the field: rational-root candidates over Q, the
// whole field over F_p
std::vector<Rat> poly_roots(const Field& f, const Poly& p) {
    std::vector<Rat> roots;
    auto is_root = [&](const Rat& r) { return f.is_zero(poly_eval(f, p, r)); };
    if (f.kind == FieldKind::PrimeField) {
        for (long v = 0; v < f.p; ++v)
            if (is_root(f.from_long(v))) roots.push_back(f.from_long(v));
        return roots;
    }
    // clear denominators
    mpz_class lcm(1);
    for (const auto& c : p) {
        mpz_class den = c.get_den();
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
        lcm = lcm / g * den;
    }
    std::vector<mpz_class> ip;
    for (const auto& c : p) ip.push_back(mpz_class(c * lcm));
    size_t lo = 0;
    while (lo < ip.size() && ip[lo] == 0) ++lo;
    if (lo > 0) roots.push_back(Rat(0));
    if (lo >= ip.size()) return roots;
    mpz_class a0 = abs(ip[lo]), an = abs(ip.back());
    auto divisors = [](mpz_class n) {
        std::vector<mpz_class> ds;
        if (n == 0) return ds;
        for (mpz_class d = 1; d * d <= n && d < 100000; ++d)
            if (n % d == 0) {
                ds.push_back(d);
                ds.push_back(n / d);
            }
        return ds;
    };
    for (const auto& pnum : divisors(a0))
        for (const auto& qden : divisors(an)) {
            Rat cand(pnum, qden);
            cand.canonicalize();
            for (int s : {1, -1}) {
                Rat r = s == 1 ? cand : Rat(-cand);
                if (is_root(r)) {
                    bool seen = false;
                    for (const auto& x : roots)
                        if (x == r) seen = true;
                    if (!seen) roots.push_back(r);
                }
            }
        }
    return roots;
}

// ---- abstract algebra from a multiplication table ----
struct TableAlg {
    Field f;
    int n = 0;
    std::vector<std::vector<std::vector<Rat>>> c;
    std::vector<Rat> unit;

    std::vector<Rat> mul(const std::vector<Rat>& a, const std::vector<Rat>& b) const {
        std::vector<Rat> r(n, Rat(0));
        for (int u = 0; u < n; ++u) {
            if (sgn(a[u]) == 0) continue;
            for (int v = 0; v < n; ++v) {
                if (sgn(b[v]) == 0) continue;
                for (int w = 0; w < n; ++w) r[w] += a[u] * b[v] * c[u][v][w];
            }
        }
        for (auto& x : r) x = f.canon(x);
        return r;
    }

    std::vector<Rat> eval_poly(const Poly& p, const std::vector<Rat>& x) const {
        std::vector<Rat> r(n, Rat(0));
        std::vector<Rat> pw = unit;
        for (size_t i = 0; i < p.size(); ++i) {
            if (sgn(p[i]) != 0)
                for (int w = 0; w < n; ++w) r[w] = f.add(r[w], f.mul(p[i], pw[w]));
            if (i + 1 < p.size()) pw = mul(pw, x);
        }
        return r;
    }
};

Poly table_minimal_poly(const TableAlg& R, const std::vector<Rat>& x) {
    std::vector<std::vector<Rat>> powers = {R.unit};
    SpanBuilder sb(R.f, R.n);
    sb.insert(R.unit);
    std::vector<Rat> cur = R.unit;
    for (int k = 1; k <= R.n + 1; ++k) {
        cur = R.mul(cur, x);
        if (!sb.insert(cur)) {
            auto coeffs = express_in_span(R.f, powers, cur);
            if (!coeffs) throw ComputeError("minimal polynomial: dependence not expressible");
            Poly mu(k + 1, Rat(0));
            mu[k] = 1;
            for (int i = 0; i < k; ++i) mu[i] = R.f.neg((*coeffs)[i]);
            return mu;
        }
        powers.push_back(cur);
    }
    throw ComputeError("minimal polynomial: no dependence found");
}

// strict idempotent different from 0 and 1, found through the semisimple
// quotient and lifted along the nilpotent radical (Newton iteration)
std::optional<std::vector<Rat>> find_split_idempotent(const TableAlg& R, unsigned long seed) {
    const Field& f = R.f;
    auto rad = table_radical_basis(f, R.c);
    const int m = R.n - static_cast<int>(rad.size());
    if (m <= 1) return std::nullopt;
    // quotient coordinates: free coordinates after reducing by the radical rows
    std::vector<int> pivot;
    for (const auto& row : rad) {
        int p = 0;
        while (f.is_zero(row[p])) ++p;
        pivot.push_back(p);
    }
    std::vector<bool> is_pivot(R.n, false);
    for (int p : pivot) is_pivot[p] = true;
    std::vector<int> free_coords;
    for (int i = 0; i < R.n; ++i)
        if (!is_pivot[i]) free_coords.push_back(i);
    auto project = [&](std::vector<Rat> v) {
        for (size_t r = 0; r < rad.size(); ++r)
            if (!f.is_zero(v[pivot[r]])) vec_add_scaled(f, v, f.neg(v[pivot[r]]), rad[r]);
        std::vector<Rat> out(m);
        for (int i = 0; i < m; ++i) out[i] = v[free_coords[i]];
        return out;
    };
    auto lift = [&](const std::vector<Rat>& q) {
        std::vector<Rat> v(R.n, Rat(0));
        for (int i = 0; i < m; ++i) v[free_coords[i]] = q[i];
        return v;
    };
    TableAlg Q;
    Q.f = f;
    Q.n = m;
    Q.unit = project(R.unit);
    Q.c.assign(m, std::vector<std::vector<Rat>>(m));
    for (int u = 0; u < m; ++u) {
        std::vector<Rat> bu(m, Rat(0));
        bu[u] = 1;
        for (int v = 0; v < m; ++v) {
            std::vector<Rat> bv(m, Rat(0));
            bv[v] = 1;
            Q.c[u][v] = project(R.mul(lift(bu), lift(bv)));
        }
    }
    // candidates in the quotient
    std::vector<std::vector<Rat>> cands;
    for (int u = 0; u < m; ++u) {
        std::vector<Rat> e(m, Rat(0));
        e[u] = 1;
        cands.push_back(e);
    }
    for (int u = 0; u < m; ++u)
        for (int v = u + 1; v < m; ++v) {
            std::vector<Rat> s(m, Rat(0)), d(m, Rat(0));
            s[u] = s[v] = 1;
            d[u] = 1;
            d[v] = -1;
            cands.push_back(s);
            cands.push_back(d);
            cands.push_back(Q.mul(cands[u], cands[v]));
        }
    std::mt19937_64 rng(seed);
    for (int t = 0; t < 25; ++t) {
        std::vector<Rat> x(m);
        for (int i = 0; i < m; ++i) x[i] = f.from_long(static_cast<long>(rng() % 9) - 4);
        cands.push_back(std::move(x));
    }
    for (const auto& x : cands) {
        // skip scalars
        auto expr = express_in_span(f, {Q.unit}, x);
        if (expr) continue;
        Poly mu = table_minimal_poly(Q, x);
        if (mu.size() < 3) continue;
        for (const Rat& r : poly_roots(f, mu)) {
            Poly lin = {f.neg(r), Rat(1)};
            auto [quot, rem] = poly_divmod(f, mu, lin);
            if (!rem.empty()) continue;
            if (f.is_zero(poly_eval(f, quot, r))) continue; // repeated root
            PolyEea eea = poly_eea(f, lin, quot);
            if (eea.g.size() != 1) continue; // not coprime
            Poly proj = poly_mul(f, eea.v, quot); // = 1 at r-eigenspace
            std::vector<Rat> eq = Q.eval_poly(proj, x);
            if (vec_is_zero(eq)) continue;
            if (Q.mul(eq, eq) != eq) continue;
            bool is_unit = true;
            {
                std::vector<Rat> diff = eq;
                for (int i = 0; i < m; ++i) diff[i] = f.sub(diff[i], Q.unit[i]);
                is_unit = vec_is_zero(diff);
            }
            if (is_unit) continue;
            // Newton lifting along the radical
            std::vector<Rat> e = lift(eq);
            bool ok = false;
            for (int it = 0; it < 4 * R.n + 8; ++it) {
                std::vector<Rat> e2 = R.mul(e, e);
                if (e2 == e) {
                    ok = true;
                    break;
                }
                // e <- 3e^2 - 2e^3
                std::vector<Rat> e3 = R.mul(e2, e);
                for (int i = 0; i < R.n; ++i)
                    e[i] = f.sub(f.mul(f.from_long(3), e2[i]), f.mul(f.from_long(2), e3[i]));
            }
            if (!ok) continue;
            if (vec_is_zero(e)) continue;
            std::vector<Rat> diff = e;
            for (int i = 0; i < R.n; ++i) diff[i] = f.sub(diff[i], R.unit[i]);
            if (vec_is_zero(diff)) continue;
            return e;
        }
    }
    return std::nullopt;
}

// blockwise inverse of a bijective module map
ModuleMap invert_module_map(const ModuleMap& phi) {
    ModuleMap inv{phi.tgt, phi.src, {}};
    const Field& f = phi.src.owner()->field();
    for (const auto& blk : phi.blocks) {
        if (blk.rows() != blk.cols()) throw ComputeError("invert_module_map: non-square block");
        Matrix aug = blk.hstack(Matrix::identity(f, blk.rows()));
        Rref e = rref(std::move(aug));
        if (e.rank != blk.rows()) throw ComputeError("invert_module_map: singular block");
        Matrix r(f, blk.rows(), blk.rows());
        for (int i = 0; i < blk.rows(); ++i)
            for (int j = 0; j < blk.rows(); ++j) r.at(i, j) = e.r.at(i, blk.rows() + j);
        inv.blocks.push_back(std::move(r));
    }
    return inv;
}

struct SplitPart {
    ProjComplex part;
    ChainMap incl; // part -> X
    ChainMap proj; // X -> part
};

// split a minimal complex along a strict idempotent chain endomorphism
std::vector<SplitPart> idempotent_split(const ProjComplex& X, const IsoPolicy& policy) {
    const AlgebraPtr A = X.owner();
    const Field& f = A->field();
    HomSpace E = hom_complexes(X, X, 0);
    const int nb = E.chain_dim();
    TableAlg R;
    R.f = f;
    R.n = nb;
    R.c.assign(nb, std::vector<std::vector<Rat>>(nb));
    for (int u = 0; u < nb; ++u)
        for (int v = 0; v < nb; ++v) {
            ChainMap comp = E.materialize(E.chain_basis[u]).compose(E.materialize(E.chain_basis[v]));
            auto coords = express_in_span(f, E.chain_basis, E.flatten(comp));
            if (!coords) throw ComputeError("chain endomorphisms do not close");
            R.c[u][v] = *coords;
        }
    {
        auto idc = express_in_span(f, E.chain_basis, E.flatten(ChainMap::identity(X)));
        if (!idc) throw ComputeError("identity missing from chain endomorphisms");
        R.unit = *idc;
    }
    auto eps_coords = find_split_idempotent(R, policy.seed);
    if (!eps_coords)
        throw ComputeError("decompose: non-local component admits no computable idempotent (" +
                           X.shape_str() + ")");
    std::vector<Rat> flat(E.slots.size(), Rat(0));
    for (int u = 0; u < nb; ++u) vec_add_scaled(f, flat, (*eps_coords)[u], E.chain_basis[u]);
    ChainMap eps = E.materialize(flat);

    auto one_piece = [&](const ChainMap& e) -> SplitPart {
        SplitPart sp;
        int lo = X.lo(), hi = X.hi();
        std::vector<std::vector<int>> summands;
        std::vector<std::vector<int>> xs_verts;
        std::vector<AlgMat> iotas, rhos;
        for (int d = lo; d <= hi; ++d) {
            const auto& xs = X.summands_at(d);
            if (xs.empty()) {
                summands.push_back({});
                iotas.emplace_back(A, 0, 0);
                rhos.emplace_back(A, 0, 0);
                xs_verts.push_back({});
                continue;
            }
            std::vector<FdModule> projs;
            for (int v : xs) projs.push_back(FdModule::projective(A, v));
            FdModule xmod = FdModule::direct_sum(projs);
            ModuleMap ed{xmod, xmod, {}};
            for (int k = 0; k < A->n_vertices(); ++k)
                ed.blocks.push_back(evaluate_algmat(e.comp(d), xs, xs, k));
            Submodule im = image_submodule(ed);
            ProjectiveCover cov = projective_cover(im.sub);
            if (kernel_submodule(cov.onto).sub.total_dim() != 0)
                throw ComputeError("idempotent image is not projective");
            ModuleMap iota_mod = im.inclusion().compose(cov.onto);
            AlgMat iota = module_map_to_algmat(iota_mod, cov.cover_vertices, xs);
            // projection: express e(x) in the image basis, then undo the cover
            ModuleMap to_im{xmod, im.sub, {}};
            for (int k = 0; k < A->n_vertices(); ++k) {
                Matrix blk(f, im.sub.dim(k), xmod.dim(k));
                std::vector<std::vector<Rat>> span;
                for (int c2 = 0; c2 < im.incl[k].cols(); ++c2) span.push_back(im.incl[k].col(c2));
                for (int c2 = 0; c2 < xmod.dim(k); ++c2) {
                    auto coords = express_in_span(f, span, ed.blocks[k].col(c2));
                    if (!coords) throw ComputeError("idempotent image coordinates failed");
                    for (int r2 = 0; r2 < im.sub.dim(k); ++r2) blk.at(r2, c2) = (*coords)[r2];
                }
                to_im.blocks.push_back(std::move(blk));
            }
            ModuleMap rho_mod = invert_module_map(cov.onto).compose(to_im);
            AlgMat rho = module_map_to_algmat(rho_mod, xs, cov.cover_vertices);
            summands.push_back(cov.cover_vertices);
            iotas.push_back(std::move(iota));
            rhos.push_back(std::move(rho));
            xs_verts.push_back(xs);
        }
        std::vector<AlgMat> diffs;
        for (int d = lo; d < hi; ++d)
            diffs.push_back(rhos[d - lo + 1].mul(X.diff_from(d).mul(iotas[d - lo])));
        sp.part = ProjComplex::build(A, lo, summands, diffs, true);
        sp.incl = ChainMap::zero(sp.part, X);
        sp.proj = ChainMap::zero(X, sp.part);
        for (int d = lo; d <= hi; ++d) {
            if (!iotas[d - lo].is_zero()) sp.incl.comps[d] = iotas[d - lo];
            if (!rhos[d - lo].is_zero()) sp.proj.comps[d] = rhos[d - lo];
        }
        // rebuild against the normalized part
        ProjComplex norm = sp.part.normalized();
        ChainMap incl2 = ChainMap::zero(norm, X), proj2 = ChainMap::zero(X, norm);
        for (const auto& [dd, mm2] : sp.incl.comps)
            if (norm.n_summands(dd) > 0) incl2.comps[dd] = mm2;
        for (const auto& [dd, mm2] : sp.proj.comps)
            if (norm.n_summands(dd) > 0) proj2.comps[dd] = mm2;
        sp.part = norm;
        sp.incl = std::move(incl2);
        sp.proj = std::move(proj2);
        if (!sp.incl.commutes() || !sp.proj.commutes())
            throw ComputeError("idempotent split witnesses do not commute");
        ChainMap pi = sp.proj.compose(sp.incl);
        ChainMap idp = ChainMap::identity(sp.part);
        for (int d = sp.part.lo(); d <= sp.part.hi(); ++d)
            if (!pi.comp(d).sub(idp.comp(d)).is_zero())
                throw ComputeError("idempotent split retraction is not the identity");
        return sp;
    };

    ChainMap one_minus = ChainMap::identity(X).add(eps.scale(Rat(-1)));
    std::vector<SplitPart> out;
    out.push_back(one_piece(eps));
    out.push_back(one_piece(one_minus));
    // the two inclusions compose to the identity of X
    ChainMap total = out[0].incl.compose(out[0].proj).add(out[1].incl.compose(out[1].proj));
    ChainMap idx = ChainMap::identity(X);
    for (int d = X.lo(); d <= X.hi(); ++d)
        if (!total.comp(d).sub(idx.comp(d)).is_zero())
            throw ComputeError("idempotent split does not reassemble the identity");
    return out;
}

} // namespace

ComplexDecomposition decompose_complex_with_witness(const ProjComplex& x, const IsoPolicy& policy) {
    ComplexDecomposition out;
    out.mm = minimal_model(x);
    out.model = out.mm.model;
    const ProjComplex& m = out.model;
    const AlgebraPtr A = x.owner();
    if (m.is_zero_complex()) {
        out.assemble = ChainMap::zero(ProjComplex::zero_complex(A), m);
        out.split = ChainMap::zero(m, ProjComplex::zero_complex(A));
        return out;
    }
    // union-find on summand instances linked by nonzero differential entries
    std::vector<std::pair<int, int>> nodes;
    std::map<std::pair<int, int>, int> node_id;
    for (int d = m.lo(); d <= m.hi(); ++d)
        for (int i = 0; i < m.n_summands(d); ++i) {
            node_id[{d, i}] = static_cast<int>(nodes.size());
            nodes.push_back({d, i});
        }
    std::vector<int> uf(nodes.size());
    for (size_t i = 0; i < uf.size(); ++i) uf[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int a) { return uf[a] == a ? a : uf[a] = find(uf[a]); };
    for (int d = m.lo(); d < m.hi(); ++d) {
        AlgMat dm = m.diff_from(d);
        for (int r = 0; r < dm.rows; ++r)
            for (int c = 0; c < dm.cols; ++c)
                if (!vec_is_zero(dm.at(r, c))) uf[find(node_id[{d, c}])] = find(node_id[{d + 1, r}]);
    }
    std::map<int, std::vector<std::pair<int, int>>> groups;
    for (size_t i = 0; i < nodes.size(); ++i) groups[find(static_cast<int>(i))].push_back(nodes[i]);

    struct PartRec {
        ProjComplex cx;
        ChainMap incl; // cx -> model
        ChainMap proj; // model -> cx
        std::string key;
    };
    std::vector<PartRec> work, final_parts;
    for (const auto& [root, members0] : groups) {
        (void)root;
        auto members = members0;
        std::sort(members.begin(), members.end());
        int lo = members.front().first, hi = members.back().first;
        std::vector<std::vector<int>> summands(hi - lo + 1);
        std::map<std::pair<int, int>, int> newpos;
        for (const auto& [d, i] : members) {
            newpos[{d, i}] = static_cast<int>(summands[d - lo].size());
            summands[d - lo].push_back(m.summands_at(d)[i]);
        }
        std::vector<AlgMat> diffs;
        for (int d = lo; d < hi; ++d) {
            AlgMat old = m.diff_from(d);
            AlgMat nm(A, static_cast<int>(summands[d - lo + 1].size()),
                      static_cast<int>(summands[d - lo].size()));
            for (int r = 0; r < old.rows; ++r)
                for (int c = 0; c < old.cols; ++c) {
                    auto itr = newpos.find({d + 1, r});
                    auto itc = newpos.find({d, c});
                    if (itr == newpos.end() || itc == newpos.end()) continue;
                    nm.at(itr->second, itc->second) = old.at(r, c);
                }
            diffs.push_back(std::move(nm));
        }
        PartRec p;
        p.cx = ProjComplex::build(A, lo, std::move(summands), std::move(diffs), false);
        p.incl = ChainMap::zero(p.cx, m);
        p.proj = ChainMap::zero(m, p.cx);
        for (int d = lo; d <= hi; ++d) {
            int nloc = p.cx.n_summands(d);
            if (nloc == 0) continue;
            AlgMat am(A, m.n_summands(d), nloc);
            AlgMat sm(A, nloc, m.n_summands(d));
            for (const auto& [dd, i] : members) {
                if (dd != d) continue;
                int local = newpos[{dd, i}];
                const AlgElt& e = A->idempotent(m.summands_at(d)[i]);
                am.at(i, local) = e;
                sm.at(local, i) = e;
            }
            p.incl.comps[d] = std::move(am);
            p.proj.comps[d] = std::move(sm);
        }
        work.push_back(std::move(p));
    }
    // refine non-local components by strict idempotent splitting
    int guard = 0;
    while (!work.empty()) {
        if (++guard > 4 * static_cast<int>(nodes.size()) + 16)
            throw ComputeError("decompose: splitting did not terminate");
        PartRec p = std::move(work.back());
        work.pop_back();
        if (end_residue_dim_kb(p.cx) == 1) {
            final_parts.push_back(std::move(p));
            continue;
        }
        for (auto& sp : idempotent_split(p.cx, policy)) {
            PartRec np;
            np.cx = sp.part;
            np.incl = p.incl.compose(sp.incl);
            np.proj = sp.proj.compose(p.proj);
            work.push_back(std::move(np));
        }
    }
    for (auto& p : final_parts) {
        std::ostringstream os;
        os << p.cx.shape_str() << "#";
        for (int d = p.cx.lo(); d < p.cx.hi(); ++d)
            for (const auto& e : p.cx.diff_from(d).e)
                for (const auto& cc : e) os << cc.get_str() << ",";
        p.key = os.str();
    }
    std::sort(final_parts.begin(), final_parts.end(),
              [](const PartRec& a, const PartRec& b) { return a.key < b.key; });

    std::vector<ProjComplex> list;
    for (const auto& p : final_parts) list.push_back(p.cx);
    ProjComplex sum = ProjComplex::direct_sum(list);
    ChainMap assemble = ChainMap::zero(sum, m);
    ChainMap split = ChainMap::zero(m, sum);
    for (int d = sum.lo(); d <= sum.hi(); ++d) {
        if (sum.n_summands(d) == 0 || m.n_summands(d) == 0) continue;
        AlgMat am(A, m.n_summands(d), sum.n_summands(d));
        AlgMat sm(A, sum.n_summands(d), m.n_summands(d));
        int off = 0;
        for (const auto& p : final_parts) {
            AlgMat ic = p.incl.comp(d);
            AlgMat pc = p.proj.comp(d);
            for (int r = 0; r < ic.rows; ++r)
                for (int c = 0; c < ic.cols; ++c) am.at(r, off + c) = ic.at(r, c);
            for (int r = 0; r < pc.rows; ++r)
                for (int c = 0; c < pc.cols; ++c) sm.at(off + r, c) = pc.at(r, c);
            off += p.cx.n_summands(d);
        }
        if (!am.is_zero()) assemble.comps[d] = std::move(am);
        if (!sm.is_zero()) split.comps[d] = std::move(sm);
    }
    if (!assemble.commutes() || !split.commutes())
        throw ComputeError("decompose: witnesses do not commute");
    // split o assemble = id exactly; assemble o split = id exactly
    {
        ChainMap sa = split.compose(assemble);
        ChainMap ids = ChainMap::identity(sum);
        for (int d = sum.lo(); d <= sum.hi(); ++d)
            if (!sa.comp(d).sub(ids.comp(d)).is_zero())
                throw ComputeError("decompose: split o assemble is not the identity");
        ChainMap as = assemble.compose(split);
        ChainMap idm = ChainMap::identity(m);
        for (int d = m.lo(); d <= m.hi(); ++d)
            if (!as.comp(d).sub(idm.comp(d)).is_zero())
                throw ComputeError("decompose: assemble o split is not the identity");
    }
    out.parts = std::move(list);
    out.assemble = std::move(assemble);
    out.split = std::move(split);
    return out;
}

} // namespace silt
