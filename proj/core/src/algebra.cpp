#include "silt/algebra.hpp"

#include <sstream>

namespace silt {

AlgElt Algebra::basis_elt(int b) const {
    AlgElt a(dim(), Rat(0));
    a[b] = 1;
    return a;
}

AlgElt Algebra::mul(const AlgElt& a, const AlgElt& b) const {
    AlgElt r(dim(), Rat(0));
    const int d = dim();
    for (int u = 0; u < d; ++u) {
        if (sgn(a[u]) == 0) continue;
        for (int v = 0; v < d; ++v) {
            if (sgn(b[v]) == 0) continue;
            const Rat c = a[u] * b[v];
            for (const auto& [w, s] : products_[static_cast<size_t>(u) * d + v]) r[w] += c * s;
        }
    }
    for (auto& x : r) x = field_.canon(x);
    return r;
}

AlgElt Algebra::add(const AlgElt& a, const AlgElt& b) const {
    AlgElt r(a);
    for (size_t i = 0; i < r.size(); ++i) r[i] = field_.add(r[i], b[i]);
    return r;
}

AlgElt Algebra::sub(const AlgElt& a, const AlgElt& b) const {
    AlgElt r(a);
    for (size_t i = 0; i < r.size(); ++i) r[i] = field_.sub(r[i], b[i]);
    return r;
}

AlgElt Algebra::scale(const Rat& c, const AlgElt& a) const {
    AlgElt r(a);
    for (auto& x : r) x = field_.mul(c, x);
    return r;
}

bool Algebra::in_block(const AlgElt& a, int tgt, int src) const {
    for (int b = 0; b < dim(); ++b)
        if (sgn(a[b]) != 0 && (basis_[b].src != src || basis_[b].tgt != tgt)) return false;
    return true;
}

Matrix Algebra::left_mul_matrix(const AlgElt& a) const {
    const int d = dim();
    Matrix m(field_, d, d);
    for (int v = 0; v < d; ++v) {
        // column v = a * b_v
        for (int u = 0; u < d; ++u) {
            if (sgn(a[u]) == 0) continue;
            for (const auto& [w, s] : products_[static_cast<size_t>(u) * d + v])
                m.at(w, v) = field_.add(m.at(w, v), field_.mul(a[u], s));
        }
    }
    return m;
}

bool Algebra::in_radical(const AlgElt& a) const {
    SpanBuilder sb(field_, dim());
    for (const auto& r : radical_) sb.insert(r);
    return sb.contains(a);
}

std::optional<AlgElt> Algebra::block_inverse(const AlgElt& a, int tgt, int src) const {
    // Solve a * x = e_tgt with x supported in e_src A e_tgt, then check x * a = e_src.
    const auto& xblock = peirce(src, tgt);
    if (xblock.empty()) return std::nullopt;
    Matrix m(field_, dim(), static_cast<int>(xblock.size()));
    for (size_t j = 0; j < xblock.size(); ++j) {
        AlgElt col = mul(a, basis_elt(xblock[j]));
        for (int i = 0; i < dim(); ++i) m.at(i, static_cast<int>(j)) = col[i];
    }
    auto sol = solve(m, idem_[tgt]);
    if (!sol) return std::nullopt;
    AlgElt x = zero();
    for (size_t j = 0; j < xblock.size(); ++j) x[xblock[j]] = (*sol)[j];
    if (mul(x, a) != idem_[src]) return std::nullopt;
    return x;
}

std::string Algebra::elt_str(const AlgElt& a) const {
    std::ostringstream os;
    bool first = true;
    for (int b = 0; b < dim(); ++b) {
        if (sgn(a[b]) == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (a[b] != 1) os << a[b].get_str() << "*";
        os << basis_[b].label;
    }
    if (first) os << "0";
    return os.str();
}

void Algebra::finalize() {
    const int d = dim();
    if (n_idem_ <= 0) throw ComputeError("algebra needs at least one idempotent");
    peirce_.assign(n_idem_, std::vector<std::vector<int>>(n_idem_));
    block_pos_.assign(d, -1);
    for (int b = 0; b < d; ++b) {
        auto& blk = peirce_[basis_[b].tgt][basis_[b].src];
        block_pos_[b] = static_cast<int>(blk.size());
        blk.push_back(b);
    }
    unit_ = zero();
    for (int i = 0; i < n_idem_; ++i) unit_ = add(unit_, idem_[i]);

    // Structure constants stay inside the right Peirce blocks.
    for (int u = 0; u < d; ++u)
        for (int v = 0; v < d; ++v) {
            const auto& prod = products_[static_cast<size_t>(u) * d + v];
            if (basis_[u].src != basis_[v].tgt) {
                if (!prod.empty()) throw ComputeError("non-composable basis product is nonzero");
                continue;
            }
            for (const auto& [w, s] : prod) {
                (void)s;
                if (basis_[w].src != basis_[v].src || basis_[w].tgt != basis_[u].tgt)
                    throw ComputeError("basis product leaves its Peirce block");
            }
        }

    // Idempotents: orthogonal, complete, and compatible with the grading.
    for (int i = 0; i < n_idem_; ++i) {
        if (!in_block(idem_[i], i, i)) throw ComputeError("idempotent not supported in its diagonal block");
        for (int j = 0; j < n_idem_; ++j) {
            AlgElt p = mul(idem_[i], idem_[j]);
            if (i == j ? p != idem_[i] : !is_zero(p)) throw ComputeError("idempotents not orthogonal");
        }
    }
    for (int b = 0; b < d; ++b) {
        AlgElt x = basis_elt(b);
        if (mul(unit_, x) != x || mul(x, unit_) != x) throw ComputeError("unit law fails on basis");
    }

    // Associativity on all basis triples.
    for (int u = 0; u < d; ++u)
        for (int v = 0; v < d; ++v) {
            if (basis_[u].src != basis_[v].tgt) continue;
            AlgElt uv = mul(basis_elt(u), basis_elt(v));
            for (int w = 0; w < d; ++w) {
                if (basis_[v].src != basis_[w].tgt) continue;
                AlgElt vw = mul(basis_elt(v), basis_elt(w));
                if (mul(uv, basis_elt(w)) != mul(basis_elt(u), vw))
                    throw ComputeError("associativity fails on basis triple");
            }
        }

    radical_ = compute_radical();

    // Certify the radical: a two-sided nilpotent ideal.
    SpanBuilder rb(field_, d);
    for (const auto& r : radical_) rb.insert(r);
    for (const auto& r : radical_)
        for (int b = 0; b < d; ++b) {
            if (!rb.contains(mul(r, basis_elt(b))) || !rb.contains(mul(basis_elt(b), r)))
                throw ComputeError("radical candidate is not an ideal");
        }
    std::vector<AlgElt> power = radical_;
    for (int step = 0; step <= d && !power.empty(); ++step) {
        SpanBuilder nxt(field_, d);
        std::vector<AlgElt> nv;
        for (const auto& a : power)
            for (const auto& r : radical_) {
                AlgElt p = mul(a, r);
                if (nxt.insert(p)) nv.push_back(p);
            }
        power = std::move(nv);
        if (power.empty()) break;
        if (step == d) throw ComputeError("radical candidate is not nilpotent (wrong characteristic?)");
    }
}

std::vector<AlgElt> Algebra::compute_radical() const {
    // Trace-form radical: x with tr(L_{x b}) = 0 for all basis b. It always
    // contains the Jacobson radical; finalize() certifies nilpotency, which
    // forces equality.
    const int d = dim();
    std::vector<Matrix> lm;
    lm.reserve(d);
    for (int b = 0; b < d; ++b) lm.push_back(left_mul_matrix(basis_elt(b)));
    Matrix gram(field_, d, d);
    for (int u = 0; u < d; ++u)
        for (int v = 0; v < d; ++v) {
            Rat t(0);
            // tr(L_u L_v) without forming the product
            for (int i = 0; i < d; ++i)
                for (int k = 0; k < d; ++k) t += lm[u].at(i, k) * lm[v].at(k, i);
            gram.at(u, v) = field_.canon(t);
        }
    auto ker = kernel_basis(gram);
    SpanBuilder sb(field_, d);
    for (auto& v : ker) sb.insert(v);
    return sb.basis();
}

std::vector<std::vector<Rat>> table_radical_basis(const Field& f,
                                                  const std::vector<std::vector<std::vector<Rat>>>& c) {
    const int h = static_cast<int>(c.size());
    if (h == 0) return {};
    std::vector<Matrix> L(h, Matrix(f, h, h));
    for (int u = 0; u < h; ++u)
        for (int v = 0; v < h; ++v)
            for (int w = 0; w < h; ++w) L[u].at(w, v) = c[u][v][w];
    Matrix gram(f, h, h);
    for (int u = 0; u < h; ++u)
        for (int v = 0; v < h; ++v) {
            Rat t(0);
            for (int i = 0; i < h; ++i)
                for (int k = 0; k < h; ++k) t += L[u].at(i, k) * L[v].at(k, i);
            gram.at(u, v) = f.canon(t);
        }
    auto rad = kernel_basis(gram);
    auto mulc = [&](const std::vector<Rat>& a, const std::vector<Rat>& b) {
        std::vector<Rat> r(h, Rat(0));
        for (int u = 0; u < h; ++u) {
            if (sgn(a[u]) == 0) continue;
            for (int v = 0; v < h; ++v) {
                if (sgn(b[v]) == 0) continue;
                for (int w = 0; w < h; ++w) r[w] += a[u] * b[v] * c[u][v][w];
            }
        }
        for (auto& x : r) x = f.canon(x);
        return r;
    };
    std::vector<std::vector<Rat>> power = rad;
    for (int step = 0; step <= h && !power.empty(); ++step) {
        SpanBuilder nxt(f, h);
        std::vector<std::vector<Rat>> nv;
        for (const auto& a : power)
            for (const auto& r : rad) {
                auto p = mulc(a, r);
                if (nxt.insert(p)) nv.push_back(p);
            }
        power = std::move(nv);
        if (power.empty()) break;
        if (step == h) throw ComputeError("trace radical not nilpotent (wrong characteristic?)");
    }
    SpanBuilder sb(f, h);
    for (const auto& r : rad) sb.insert(r);
    return sb.basis();
}

int residue_dim_of_table(const Field& f, const std::vector<std::vector<std::vector<Rat>>>& c) {
    if (c.empty()) return 0;
    return static_cast<int>(c.size()) - static_cast<int>(table_radical_basis(f, c).size());
}

std::shared_ptr<const FdAlgebra> FdAlgebra::build(
    Field f,
    std::vector<BasisInfo> basis,
    std::vector<std::string> vertex_labels,
    const std::function<AlgElt(int, int)>& product,
    std::vector<AlgElt> idempotents,
    std::string description) {
    auto A = std::shared_ptr<FdAlgebra>(new FdAlgebra());
    A->field_ = f;
    A->n_idem_ = static_cast<int>(idempotents.size());
    A->vertex_labels_ = std::move(vertex_labels);
    A->basis_ = std::move(basis);
    A->idem_ = std::move(idempotents);
    A->description_ = std::move(description);
    const int d = A->dim();
    A->products_.assign(static_cast<size_t>(d) * d, {});
    for (int u = 0; u < d; ++u)
        for (int v = 0; v < d; ++v) {
            if (A->basis_[u].src != A->basis_[v].tgt) continue;
            AlgElt p = product(u, v);
            auto& slot = A->products_[static_cast<size_t>(u) * d + v];
            for (int w = 0; w < d; ++w)
                if (sgn(p[w]) != 0) slot.emplace_back(w, f.canon(p[w]));
        }
    A->finalize();

    // Certify that every diagonal block is local with one-dimensional
    // residue, i.e. the chosen idempotents are primitive.
    for (int i = 0; i < A->n_idem_; ++i) {
        const auto& blk = A->peirce(i, i);
        // rad decomposes over the Peirce blocks since it is an ideal.
        SpanBuilder radblk(f, d);
        for (const auto& r : A->radical_basis())
            radblk.insert(A->mul(A->idempotent(i), A->mul(r, A->idempotent(i))));
        if (static_cast<int>(blk.size()) - radblk.dim() != 1)
            throw ComputeError("idempotent " + std::to_string(i) +
                               " is not primitive with split residue field (block dim " +
                               std::to_string(blk.size()) + ", radical part " + std::to_string(radblk.dim()) + ")");
    }
    return A;
}

AlgMat::AlgMat(AlgebraPtr a, int r, int c)
    : owner(std::move(a)), rows(r), cols(c), e(static_cast<size_t>(r) * c, AlgElt(owner->dim(), Rat(0))) {}

AlgMat AlgMat::mul(const AlgMat& o) const {
    if (cols != o.rows) throw ComputeError("AlgMat product dimension mismatch");
    AlgMat r(owner, rows, o.cols);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k) {
            if (owner->is_zero(at(i, k))) continue;
            for (int j = 0; j < o.cols; ++j) {
                if (owner->is_zero(o.at(k, j))) continue;
                r.at(i, j) = owner->add(r.at(i, j), owner->mul(at(i, k), o.at(k, j)));
            }
        }
    return r;
}

AlgMat AlgMat::add(const AlgMat& o) const {
    AlgMat r = *this;
    for (size_t i = 0; i < e.size(); ++i) r.e[i] = owner->add(r.e[i], o.e[i]);
    return r;
}

AlgMat AlgMat::sub(const AlgMat& o) const {
    AlgMat r = *this;
    for (size_t i = 0; i < e.size(); ++i) r.e[i] = owner->sub(r.e[i], o.e[i]);
    return r;
}

AlgMat AlgMat::neg() const {
    AlgMat r = *this;
    for (auto& x : r.e) x = owner->scale(Rat(-1), x);
    return r;
}

bool AlgMat::is_zero() const {
    for (const auto& x : e)
        if (!vec_is_zero(x)) return false;
    return true;
}

} // namespace silt
