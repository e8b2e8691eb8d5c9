#include "silt/path_algebra.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace silt {

namespace {

constexpr size_t kPathCap = 100000;

struct FreePath {
    std::vector<int> arrows; // application order
    int src = 0, tgt = 0;
};

using PathKey = std::pair<int, std::vector<int>>; // (src, arrows)

} // namespace

std::shared_ptr<const PathAlgebra> PathAlgebra::build(Field f, Quiver q,
                                                      std::vector<Relation> relations,
                                                      int max_path_length) {
    q.validate();
    if (max_path_length < 2) throw InputError("max_path_length must be at least 2");
    const int nv = q.n_vertices();
    const int L = max_path_length;

    // Validate admissibility and normalize the relations.
    std::vector<Relation> rels;
    for (auto& r : relations) {
        Relation rr;
        int rsrc = -1, rtgt = -1;
        for (auto& t : r) {
            if (sgn(t.coef) == 0) continue;
            if (t.arrows.size() < 2)
                throw InputError("non-admissible relation: term of length " + std::to_string(t.arrows.size()));
            int src = q.arrows[t.arrows.front()].src;
            int cur = src;
            for (int a : t.arrows) {
                if (q.arrows[a].src != cur) throw InputError("relation term is not a composable path");
                cur = q.arrows[a].tgt;
            }
            if (rsrc < 0) { rsrc = src; rtgt = cur; }
            else if (rsrc != src || rtgt != cur)
                throw InputError("relation mixes non-parallel paths");
            rr.push_back({f.canon(t.coef), t.arrows});
        }
        if (!rr.empty()) rels.push_back(std::move(rr));
    }

    // Enumerate free paths of length <= L, shortest first.
    std::vector<FreePath> paths;
    std::map<PathKey, int> path_id;
    std::vector<std::vector<int>> by_len(L + 1);
    for (int i = 0; i < nv; ++i) {
        path_id[{i, {}}] = static_cast<int>(paths.size());
        by_len[0].push_back(static_cast<int>(paths.size()));
        paths.push_back({{}, i, i});
    }
    bool extendable_beyond = false;
    for (int len = 1; len <= L; ++len) {
        for (int pid : by_len[len - 1]) {
            FreePath base = paths[pid];
            for (size_t a = 0; a < q.arrows.size(); ++a) {
                if (q.arrows[a].src != base.tgt) continue;
                FreePath ext = base;
                ext.arrows.push_back(static_cast<int>(a));
                ext.tgt = q.arrows[a].tgt;
                if (paths.size() >= kPathCap)
                    throw InputError("path explosion: not finite-dimensional within max_path_length?");
                path_id[{ext.src, ext.arrows}] = static_cast<int>(paths.size());
                by_len[len].push_back(static_cast<int>(paths.size()));
                paths.push_back(std::move(ext));
            }
        }
    }
    for (int pid : by_len[L])
        for (const auto& a : q.arrows)
            if (a.src == paths[pid].tgt) extendable_beyond = true;

    const int npaths = static_cast<int>(paths.size());
    auto lookup = [&](int src, const std::vector<int>& arrows) {
        auto it = path_id.find({src, arrows});
        return it == path_id.end() ? -1 : it->second;
    };

    // Two-sided saturation p*r*q, restricted to products whose every term
    // still fits below the length cap.
    SpanBuilder J(f, npaths);
    for (const auto& r : rels) {
        size_t maxlen = 0;
        for (const auto& t : r) maxlen = std::max(maxlen, t.arrows.size());
        int rsrc = q.arrows[r.front().arrows.front()].src;
        int rtgt = q.arrows[r.front().arrows.back()].tgt;
        for (int qi = 0; qi < npaths; ++qi) {
            if (paths[qi].tgt != rsrc) continue;
            for (int pi = 0; pi < npaths; ++pi) {
                if (paths[pi].src != rtgt) continue;
                if (paths[qi].arrows.size() + maxlen + paths[pi].arrows.size() > static_cast<size_t>(L)) continue;
                std::vector<Rat> v(npaths, Rat(0));
                for (const auto& t : r) {
                    std::vector<int> w = paths[qi].arrows;
                    w.insert(w.end(), t.arrows.begin(), t.arrows.end());
                    w.insert(w.end(), paths[pi].arrows.begin(), paths[pi].arrows.end());
                    int id = lookup(paths[qi].src, w);
                    if (id < 0) throw ComputeError("saturation product escaped the enumeration");
                    v[id] = f.add(v[id], t.coef);
                }
                J.insert(std::move(v));
            }
        }
    }

    // Deadness per length; N = 1 + longest surviving length.
    std::vector<bool> alive(L + 1, false);
    for (int len = 0; len <= L; ++len)
        for (int pid : by_len[len]) {
            std::vector<Rat> v(npaths, Rat(0));
            v[pid] = 1;
            if (!J.contains(v)) { alive[len] = true; break; }
        }
    int N = 1;
    for (int len = 0; len <= L; ++len)
        if (alive[len]) N = len + 1;
    if (alive[L] && extendable_beyond)
        throw InputError("not finite-dimensional within max_path_length " + std::to_string(L) +
                         ": a path of maximal length survives");

    // The ideal inside span(paths of length < N): truncations of products
    // whose shortest term has length < N.
    int nshort = 0;
    for (int len = 0; len < N && len <= L; ++len) nshort += static_cast<int>(by_len[len].size());
    // enumeration is shortest-first, so short paths are exactly indices 0..nshort-1
    SpanBuilder I(f, nshort);
    for (const auto& r : rels) {
        size_t minlen = r.front().arrows.size();
        for (const auto& t : r) minlen = std::min(minlen, t.arrows.size());
        int rsrc = q.arrows[r.front().arrows.front()].src;
        int rtgt = q.arrows[r.front().arrows.back()].tgt;
        for (int qi = 0; qi < nshort; ++qi) {
            if (paths[qi].tgt != rsrc) continue;
            for (int pi = 0; pi < nshort; ++pi) {
                if (paths[pi].src != rtgt) continue;
                if (paths[qi].arrows.size() + minlen + paths[pi].arrows.size() >= static_cast<size_t>(N)) continue;
                std::vector<Rat> v(nshort, Rat(0));
                for (const auto& t : r) {
                    size_t tot = paths[qi].arrows.size() + t.arrows.size() + paths[pi].arrows.size();
                    if (tot >= static_cast<size_t>(N)) continue; // truncated away
                    std::vector<int> w = paths[qi].arrows;
                    w.insert(w.end(), t.arrows.begin(), t.arrows.end());
                    w.insert(w.end(), paths[pi].arrows.begin(), paths[pi].arrows.end());
                    int id = lookup(paths[qi].src, w);
                    if (id < 0 || id >= nshort) throw ComputeError("truncated product escaped the short span");
                    v[id] = f.add(v[id], t.coef);
                }
                I.insert(std::move(v));
            }
        }
    }

    auto A = std::shared_ptr<PathAlgebra>(new PathAlgebra());
    A->field_ = f;
    A->quiver_ = q;
    A->n_idem_ = nv;
    A->vertex_labels_ = q.vertices;
    A->nilp_ = N;
    A->ideal_dim_ = J.dim(); // full reduced ideal within the length cap
    {
        // oriented cycle <=> some vertex reaches itself through >= 1 arrow
        for (int len = 1; len <= L && !A->has_cycle_; ++len)
            for (int pid : by_len[len])
                if (paths[pid].src == paths[pid].tgt) { A->has_cycle_ = true; break; }
    }

    A->ideal_rows_ = I.basis();
    A->ideal_pivots_.clear();
    for (const auto& row : A->ideal_rows_) {
        int piv = 0;
        while (f.is_zero(row[piv])) ++piv;
        A->ideal_pivots_.push_back(piv);
    }
    std::vector<bool> is_pivot(nshort, false);
    for (int p : A->ideal_pivots_) is_pivot[p] = true;

    A->short_paths_.resize(nshort);
    A->short_src_.resize(nshort);
    A->short_to_basis_.assign(nshort, -1);
    A->trivial_.assign(nv, -1);
    for (int pid = 0; pid < nshort; ++pid) {
        A->short_paths_[pid] = paths[pid].arrows;
        A->short_src_[pid] = paths[pid].src;
        if (is_pivot[pid]) continue;
        int b = static_cast<int>(A->basis_.size());
        A->short_to_basis_[pid] = b;
        A->basis_paths_.push_back(paths[pid].arrows);
        std::string label;
        if (paths[pid].arrows.empty()) {
            label = "e" + q.vertices[paths[pid].src];
            A->trivial_[paths[pid].src] = b;
        } else {
            for (auto it = paths[pid].arrows.rbegin(); it != paths[pid].arrows.rend(); ++it) {
                if (!label.empty()) label += "*";
                label += q.arrows[*it].name;
            }
        }
        A->basis_.push_back({label, paths[pid].src, paths[pid].tgt});
    }
    for (int i = 0; i < nv; ++i)
        if (A->trivial_[i] < 0) throw ComputeError("trivial path died in the ideal; ideal not admissible");

    const int d = A->dim();
    A->idem_.resize(nv);
    for (int i = 0; i < nv; ++i) {
        AlgElt e(d, Rat(0));
        e[A->trivial_[i]] = 1;
        A->idem_[i] = std::move(e);
    }

    // Multiplication table on the quotient basis.
    A->products_.assign(static_cast<size_t>(d) * d, {});
    for (int u = 0; u < d; ++u)
        for (int v = 0; v < d; ++v) {
            if (A->basis_[u].src != A->basis_[v].tgt) continue;
            std::vector<int> w = A->basis_paths_[v];
            w.insert(w.end(), A->basis_paths_[u].begin(), A->basis_paths_[u].end());
            if (w.size() >= static_cast<size_t>(N)) continue; // dies
            int id = lookup(A->basis_[v].src, w);
            if (id < 0 || id >= nshort) throw ComputeError("basis product escaped the short span");
            std::vector<Rat> vec(nshort, Rat(0));
            vec[id] = 1;
            AlgElt r = A->reduce_short(std::move(vec));
            auto& slot = A->products_[static_cast<size_t>(u) * d + v];
            for (int t = 0; t < d; ++t)
                if (sgn(r[t]) != 0) slot.emplace_back(t, r[t]);
        }

    A->finalize();
    return A;
}

AlgElt PathAlgebra::reduce_short(std::vector<Rat> v) const {
    for (size_t r = 0; r < ideal_rows_.size(); ++r) {
        const Rat& c = v[ideal_pivots_[r]];
        if (!field_.is_zero(c)) vec_add_scaled(field_, v, field_.neg(c), ideal_rows_[r]);
    }
    AlgElt out(dim(), Rat(0));
    for (size_t i = 0; i < v.size(); ++i) {
        if (sgn(v[i]) == 0) continue;
        int b = short_to_basis_[i];
        if (b < 0) throw ComputeError("reduction left a pivot coordinate");
        out[b] = v[i];
    }
    return out;
}

AlgElt PathAlgebra::path_elt(int src_vertex, const std::vector<int>& arrows_app_order) const {
    if (arrows_app_order.size() >= static_cast<size_t>(nilp_)) return zero();
    int cur = src_vertex;
    for (int a : arrows_app_order) {
        if (quiver_.arrows[a].src != cur) throw InputError("non-composable arrow sequence");
        cur = quiver_.arrows[a].tgt;
    }
    for (size_t i = 0; i < short_paths_.size(); ++i)
        if (short_src_[i] == src_vertex && short_paths_[i] == arrows_app_order) {
            std::vector<Rat> v(short_paths_.size(), Rat(0));
            v[i] = 1;
            return reduce_short(std::move(v));
        }
    throw ComputeError("path not found in enumeration");
}

int PathAlgebra::arrow_basis_index(int a) const {
    for (int b = 0; b < dim(); ++b)
        if (basis_paths_[b].size() == 1 && basis_paths_[b][0] == a) return b;
    return -1; // arrow dies in the ideal (cannot happen for admissible ideals)
}

std::vector<AlgElt> PathAlgebra::compute_radical() const {
    // Arrow ideal: the non-trivial normal-form paths.
    std::vector<AlgElt> rad;
    for (int b = 0; b < dim(); ++b)
        if (!basis_paths_[b].empty()) rad.push_back(basis_elt(b));
    return rad;
}

std::string PathAlgebra::hereditary_diagnostic() const {
    if (ideal_dim_ == 0) return "hereditary: acyclic quiver with zero relation ideal";
    if (has_cycle_) return "not hereditary: quiver has an oriented cycle, so relations are forced";
    return "not hereditary: nonzero admissible relation ideal";
}

std::string PathAlgebra::describe() const {
    std::ostringstream os;
    os << "path algebra over " << field_.describe() << ": " << quiver_.n_vertices() << " vertices, "
       << quiver_.arrows.size() << " arrows, dim " << dim() << ", nilpotency bound " << nilp_;
    return os.str();
}

} // namespace silt
