#include "silt/silting.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace silt {

namespace {

std::string complex_key(const ProjComplex& x) {
    std::ostringstream os;
    os << x.shape_str() << " #";
    for (int d = x.lo(); d < x.hi(); ++d) {
        AlgMat m = x.diff_from(d);
        for (const auto& e : m.e)
            for (const auto& c : e) os << c.get_str() << ",";
    }
    return os.str();
}

void sort_canonically(std::vector<ProjComplex>& parts) {
    std::sort(parts.begin(), parts.end(), [](const ProjComplex& a, const ProjComplex& b) {
        return complex_key(a) < complex_key(b);
    });
}

int width_of(const std::vector<ProjComplex>& parts) {
    int lo = 0, hi = 0;
    bool any = false;
    for (const auto& p : parts) {
        if (p.is_zero_complex()) continue;
        if (!any) { lo = p.lo(); hi = p.hi(); any = true; }
        lo = std::min(lo, p.lo());
        hi = std::max(hi, p.hi());
    }
    return any ? hi - lo : 0;
}

// Surjectivity of Hom(target, T_j) -o f -> Hom(x, T_j) on homotopy classes,
// for every summand T_j: the certificate that f is a left approximation.
bool left_approx_certificate(const ProjComplex& x, const std::vector<ProjComplex>& summands,
                             const std::vector<std::pair<int, ChainMap>>& chosen) {
    for (const auto& tj : summands) {
        HomSpace hx = hom_complexes(x, tj, 0);
        if (hx.quotient_dim() == 0) continue;
        SpanBuilder reach(x.owner()->field(), hx.quotient_dim());
        int got = 0;
        for (const auto& [idx, g] : chosen) {
            HomSpace hij = hom_complexes(g.tgt, tj, 0);
            for (int r = 0; r < hij.quotient_dim(); ++r)
                if (reach.insert(hx.class_coords(hij.rep(r).compose(g)))) ++got;
        }
        if (got < hx.quotient_dim()) return false;
    }
    return true;
}

bool right_approx_certificate(const ProjComplex& x, const std::vector<ProjComplex>& summands,
                              const std::vector<std::pair<int, ChainMap>>& chosen) {
    for (const auto& tj : summands) {
        HomSpace hx = hom_complexes(tj, x, 0);
        if (hx.quotient_dim() == 0) continue;
        SpanBuilder reach(x.owner()->field(), hx.quotient_dim());
        int got = 0;
        for (const auto& [idx, g] : chosen) {
            HomSpace hji = hom_complexes(tj, g.src, 0);
            for (int r = 0; r < hji.quotient_dim(); ++r)
                if (reach.insert(hx.class_coords(g.compose(hji.rep(r))))) ++got;
        }
        if (got < hx.quotient_dim()) return false;
    }
    return true;
}

ChainMap stack_into_sum(const ProjComplex& x, const std::vector<std::pair<int, ChainMap>>& chosen,
                        const ProjComplex& target) {
    // components of each chosen map, stacked as block rows of target
    ChainMap f = ChainMap::zero(x, target);
    for (int d = x.lo(); d <= x.hi(); ++d) {
        if (target.n_summands(d) == 0 || x.n_summands(d) == 0) continue;
        AlgMat m(x.owner(), target.n_summands(d), x.n_summands(d));
        int ro = 0;
        for (const auto& [idx, g] : chosen) {
            AlgMat gc = g.comp(d);
            for (int r = 0; r < gc.rows; ++r)
                for (int c = 0; c < gc.cols; ++c) m.at(ro + r, c) = gc.at(r, c);
            ro += g.tgt.n_summands(d);
        }
        if (!m.is_zero()) f.comps[d] = std::move(m);
    }
    return f;
}

ChainMap stack_from_sum(const ProjComplex& x, const std::vector<std::pair<int, ChainMap>>& chosen,
                        const ProjComplex& source) {
    ChainMap f = ChainMap::zero(source, x);
    for (int d = source.lo(); d <= source.hi(); ++d) {
        if (source.n_summands(d) == 0 || x.n_summands(d) == 0) continue;
        AlgMat m(x.owner(), x.n_summands(d), source.n_summands(d));
        int co = 0;
        for (const auto& [idx, g] : chosen) {
            AlgMat gc = g.comp(d);
            for (int r = 0; r < gc.rows; ++r)
                for (int c = 0; c < gc.cols; ++c) m.at(r, co + c) = gc.at(r, c);
            co += g.src.n_summands(d);
        }
        if (!m.is_zero()) f.comps[d] = std::move(m);
    }
    return f;
}

} // namespace

ProjComplex SiltingObject::sum() const {
    if (summands.empty()) return ProjComplex::zero_complex(owner);
    return ProjComplex::direct_sum(summands);
}

bool SiltingObject::two_term() const {
    for (const auto& s : summands)
        if (!s.is_zero_complex() && (s.lo() < -1 || s.hi() > 0)) return false;
    return true;
}

std::string SiltingObject::shape_str() const {
    std::ostringstream os;
    for (size_t i = 0; i < summands.size(); ++i) os << (i ? "  (+)  " : "") << summands[i].shape_str();
    return os.str();
}

bool is_presilting(const std::vector<ProjComplex>& parts, std::string* why) {
    const int width = width_of(parts);
    for (size_t a = 0; a < parts.size(); ++a)
        for (size_t b = 0; b < parts.size(); ++b)
            for (int i = 1; i <= width; ++i) {
                int d = hom_complexes(parts[a], parts[b], i).quotient_dim();
                if (d != 0) {
                    if (why) {
                        std::ostringstream os;
                        os << "Hom(T_" << a + 1 << ", Sigma^" << i << " T_" << b + 1 << ") has dimension " << d;
                        *why = os.str();
                    }
                    return false;
                }
            }
    return true;
}

LeftApproximation left_approximation(const ProjComplex& x, const std::vector<ProjComplex>& summands) {
    std::vector<std::pair<int, ChainMap>> chosen;
    for (size_t i = 0; i < summands.size(); ++i) {
        HomSpace h = hom_complexes(x, summands[i], 0);
        for (int r = 0; r < h.quotient_dim(); ++r) chosen.emplace_back(static_cast<int>(i), h.rep(r));
    }
    if (!left_approx_certificate(x, summands, chosen))
        throw ComputeError("universal map failed the approximation certificate");
    // greedy trim, re-certifying after each removal
    bool removed = true;
    while (removed) {
        removed = false;
        for (size_t c = 0; c < chosen.size(); ++c) {
            std::vector<std::pair<int, ChainMap>> trial = chosen;
            trial.erase(trial.begin() + static_cast<long>(c));
            if (left_approx_certificate(x, summands, trial)) {
                chosen = std::move(trial);
                removed = true;
                break;
            }
        }
    }
    LeftApproximation out;
    std::vector<ProjComplex> parts;
    for (const auto& [idx, g] : chosen) {
        out.used.push_back(idx);
        parts.push_back(summands[idx]);
    }
    out.target = parts.empty() ? ProjComplex::zero_complex(x.owner()) : ProjComplex::direct_sum(parts);
    out.map = stack_into_sum(x, chosen, out.target);
    if (!out.map.commutes()) throw ComputeError("approximation map does not commute");
    return out;
}

RightApproximation right_approximation(const std::vector<ProjComplex>& summands, const ProjComplex& x) {
    std::vector<std::pair<int, ChainMap>> chosen;
    for (size_t i = 0; i < summands.size(); ++i) {
        HomSpace h = hom_complexes(summands[i], x, 0);
        for (int r = 0; r < h.quotient_dim(); ++r) chosen.emplace_back(static_cast<int>(i), h.rep(r));
    }
    if (!right_approx_certificate(x, summands, chosen))
        throw ComputeError("universal map failed the coapproximation certificate");
    bool removed = true;
    while (removed) {
        removed = false;
        for (size_t c = 0; c < chosen.size(); ++c) {
            std::vector<std::pair<int, ChainMap>> trial = chosen;
            trial.erase(trial.begin() + static_cast<long>(c));
            if (right_approx_certificate(x, summands, trial)) {
                chosen = std::move(trial);
                removed = true;
                break;
            }
        }
    }
    RightApproximation out;
    std::vector<ProjComplex> parts;
    for (const auto& [idx, g] : chosen) {
        out.used.push_back(idx);
        parts.push_back(summands[idx]);
    }
    out.source = parts.empty() ? ProjComplex::zero_complex(x.owner()) : ProjComplex::direct_sum(parts);
    out.map = stack_from_sum(x, chosen, out.source);
    if (!out.map.commutes()) throw ComputeError("coapproximation map does not commute");
    return out;
}

std::optional<ApproxTriangle> approximation_triangle(const AlgebraPtr& A,
                                                     const std::vector<ProjComplex>& summands,
                                                     const IsoPolicy& policy) {
    ProjComplex stalk = ProjComplex::algebra_stalk(A);
    LeftApproximation la = left_approximation(stalk, summands);
    Triangle tri = cone(la.map);
    MinimalModel mm = minimal_model(tri.z);
    AddMembership memb = add_membership(mm.model, summands, policy);
    if (!memb.member) return std::nullopt;
    ApproxTriangle out;
    out.tprime = la.target;
    out.tprime_index = la.used;
    out.tsecond = mm.model;
    out.tsecond_mult = memb.mult;
    out.unit = la.map;
    out.f = mm.to_min.compose(tri.v);
    out.conn = tri.w.compose(mm.from_min);
    if (!out.f.commutes() || !out.conn.commutes())
        throw ComputeError("approximation triangle maps do not commute");
    return out;
}

SiltingObject verify_silting(AlgebraPtr owner, std::vector<ProjComplex> parts, const IsoPolicy& policy) {
    SiltingObject t;
    t.owner = owner;
    for (auto& p : parts) {
        MinimalModel mm = minimal_model(p);
        if (!mm.model.is_zero_complex()) t.summands.push_back(mm.model);
    }
    sort_canonically(t.summands);
    for (const auto& s : t.summands)
        if (end_residue_dim_kb(s) != 1)
            throw ComputeError("silting candidate summand is not indecomposable with split ends: " +
                               s.shape_str());
    for (size_t i = 0; i < t.summands.size(); ++i)
        for (size_t j = i + 1; j < t.summands.size(); ++j)
            if (is_isomorphic_kb(t.summands[i], t.summands[j], policy).iso)
                throw ComputeError("silting candidate has isomorphic repeated summands");
    t.verification.shift_range = width_of(t.summands);
    t.verification.presilting = is_presilting(t.summands, &t.verification.failure);
    if (t.verification.presilting) {
        auto tri = approximation_triangle(owner, t.summands, policy);
        t.verification.generation = tri.has_value();
        if (!t.verification.generation)
            t.verification.failure = "cone of the left approximation of A is not in add(T)";
    }
    t.verification.silting = t.verification.presilting && t.verification.generation;
    if (t.verification.silting) {
        // negative scan: Hom(T, Sigma^{-i} T) = 0 for 1 <= i <= width
        bool neg = true;
        const int width = t.verification.shift_range;
        for (size_t a = 0; a < t.summands.size() && neg; ++a)
            for (size_t b = 0; b < t.summands.size() && neg; ++b)
                for (int i = 1; i <= width && neg; ++i)
                    if (hom_complexes(t.summands[a], t.summands[b], -i).quotient_dim() != 0) {
                        neg = false;
                        std::ostringstream os;
                        os << "Hom(T_" << a + 1 << ", Sigma^-" << i << " T_" << b + 1 << ") is nonzero";
                        t.verification.failure = os.str();
                    }
        t.verification.tilting = neg;
    }
    return t;
}

SiltingObject silting_free_module(AlgebraPtr owner, const IsoPolicy& policy) {
    std::vector<ProjComplex> parts;
    for (int i = 0; i < owner->n_vertices(); ++i) parts.push_back(ProjComplex::stalk(owner, i));
    return verify_silting(owner, parts, policy);
}

SiltingObject silting_shifted_free(AlgebraPtr owner, const IsoPolicy& policy) {
    std::vector<ProjComplex> parts;
    for (int i = 0; i < owner->n_vertices(); ++i)
        parts.push_back(ProjComplex::stalk(owner, i).shifted(1));
    return verify_silting(owner, parts, policy);
}

MutationResult mutate(const SiltingObject& t, int k, bool left, const IsoPolicy& policy) {
    if (k < 0 || k >= static_cast<int>(t.summands.size())) throw ComputeError("mutation index out of range");
    std::vector<ProjComplex> rest;
    for (size_t i = 0; i < t.summands.size(); ++i)
        if (static_cast<int>(i) != k) rest.push_back(t.summands[i]);
    const ProjComplex& tk = t.summands[k];
    MutationResult out;
    out.index = k;
    out.left = left;
    ProjComplex star;
    if (left) {
        LeftApproximation la =
            rest.empty() ? LeftApproximation{ChainMap::zero(tk, ProjComplex::zero_complex(t.owner)),
                                             {},
                                             ProjComplex::zero_complex(t.owner)}
                         : left_approximation(tk, rest);
        Triangle tri = cone(la.map);
        MinimalModel mm = minimal_model(tri.z);
        star = mm.model;
        out.exchange =
            Triangle{tk, la.target, star, la.map, mm.to_min.compose(tri.v), tri.w.compose(mm.from_min)};
    } else {
        RightApproximation ra =
            rest.empty() ? RightApproximation{ChainMap::zero(ProjComplex::zero_complex(t.owner), tk),
                                              {},
                                              ProjComplex::zero_complex(t.owner)}
                         : right_approximation(rest, tk);
        Triangle tri = cone(ra.map); // E -> T_k -> Cone -> Sigma E
        MinimalModel mm = minimal_model(tri.z);
        star = mm.model.shifted(-1); // co-cone
        // rotated triangle: Sigma^{-1}Cone -> E -> T_k -> Cone
        out.exchange = Triangle{star, ra.source, tk, tri.w.compose(mm.from_min).shifted(-1), ra.map,
                                mm.to_min.compose(tri.v)};
    }
    if (star.is_zero_complex()) throw ComputeError("mutation degenerated: exchanged summand vanished");
    if (star.lo() < -1 || star.hi() > 0)
        throw ComputeError("mutation leaves the 2-term window at summand " + std::to_string(k));
    if (end_residue_dim_kb(star) != 1)
        throw ComputeError("mutation produced a decomposable exchanged summand");
    std::vector<ProjComplex> parts = rest;
    parts.push_back(star);
    out.object = verify_silting(t.owner, parts, policy);
    return out;
}

bool equivalent_silting(const SiltingObject& a, const SiltingObject& b, const IsoPolicy& policy) {
    if (a.summands.size() != b.summands.size()) return false;
    std::vector<bool> usedb(b.summands.size(), false);
    for (const auto& sa : a.summands) {
        bool found = false;
        for (size_t j = 0; j < b.summands.size() && !found; ++j) {
            if (usedb[j]) continue;
            if (is_isomorphic_kb(sa, b.summands[j], policy).iso) {
                usedb[j] = true;
                found = true;
            }
        }
        if (!found) return false;
    }
    return true;
}

Enumeration enumerate_2silt(AlgebraPtr owner, int max_nodes, const IsoPolicy& policy) {
    Enumeration en;
    SiltingObject root = silting_free_module(owner, policy);
    if (!root.verification.silting) throw ComputeError("the free module failed its own silting check");
    en.objects.push_back(root);
    std::deque<int> frontier = {0};
    while (!frontier.empty()) {
        if (en.nodes_expanded >= max_nodes) {
            en.complete = false;
            return en;
        }
        int cur = frontier.front();
        frontier.pop_front();
        ++en.nodes_expanded;
        SiltingObject t = en.objects[cur];
        for (int k = 0; k < static_cast<int>(t.summands.size()); ++k)
            for (bool left : {true, false}) {
                SiltingObject next;
                try {
                    MutationResult mr = mutate(t, k, left, policy);
                    next = std::move(mr.object);
                } catch (const ComputeError&) {
                    continue; // mutation not defined inside the window
                }
                if (!next.verification.silting) continue;
                bool known = false;
                for (const auto& o : en.objects)
                    if (equivalent_silting(next, o, policy)) {
                        known = true;
                        break;
                    }
                if (!known) {
                    en.objects.push_back(next);
                    frontier.push_back(static_cast<int>(en.objects.size()) - 1);
                }
            }
    }
    en.complete = true;
    return en;
}

FdModule h0_of(const SiltingObject& t) {
    std::vector<FdModule> parts;
    for (const auto& s : t.summands) parts.push_back(homology_of_complex(s, 0));
    if (parts.empty()) return FdModule::zero_module(t.owner);
    return FdModule::direct_sum(parts);
}

} // namespace silt
