#include "silt/matrix.hpp"

#include <sstream>

namespace silt {

Matrix Matrix::identity(Field f, int n) {
    Matrix m(f, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw ComputeError("matrix product dimension mismatch");
    Matrix r(f_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Rat& a = at(i, k);
            if (sgn(a) == 0) continue;
            for (int j = 0; j < o.cols_; ++j) r.at(i, j) += a * o.at(k, j);
        }
    for (auto& x : r.e_) x = f_.canon(x);
    return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ComputeError("matrix sum dimension mismatch");
    Matrix r = *this;
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = f_.add(r.e_[i], o.e_[i]);
    return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ComputeError("matrix difference dimension mismatch");
    Matrix r = *this;
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = f_.sub(r.e_[i], o.e_[i]);
    return r;
}

Matrix Matrix::scaled(const Rat& c) const {
    Matrix r = *this;
    for (auto& x : r.e_) x = f_.mul(x, c);
    return r;
}

Matrix Matrix::transposed() const {
    Matrix r(f_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

Matrix Matrix::hstack(const Matrix& o) const {
    if (rows_ != o.rows_) throw ComputeError("hstack row mismatch");
    Matrix r(f_, rows_, cols_ + o.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
        for (int j = 0; j < o.cols_; ++j) r.at(i, cols_ + j) = o.at(i, j);
    }
    return r;
}

Matrix Matrix::vstack(const Matrix& o) const {
    if (cols_ != o.cols_) throw ComputeError("vstack column mismatch");
    Matrix r(f_, rows_ + o.rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
    for (int i = 0; i < o.rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(rows_ + i, j) = o.at(i, j);
    return r;
}

std::vector<Rat> Matrix::row(int i) const {
    std::vector<Rat> v(cols_);
    for (int j = 0; j < cols_; ++j) v[j] = at(i, j);
    return v;
}

std::vector<Rat> Matrix::col(int j) const {
    std::vector<Rat> v(rows_);
    for (int i = 0; i < rows_; ++i) v[i] = at(i, j);
    return v;
}

std::vector<Rat> Matrix::apply(const std::vector<Rat>& v) const {
    if (static_cast<int>(v.size()) != cols_) throw ComputeError("apply dimension mismatch");
    std::vector<Rat> r(rows_, Rat(0));
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j)
            if (sgn(at(i, j)) != 0 && sgn(v[j]) != 0) r[i] += at(i, j) * v[j];
        r[i] = f_.canon(r[i]);
    }
    return r;
}

bool Matrix::is_zero() const {
    for (const auto& x : e_)
        if (sgn(x) != 0) return false;
    return true;
}

std::string Matrix::str() const {
    std::ostringstream os;
    for (int i = 0; i < rows_; ++i) {
        os << (i == 0 ? "[" : " ");
        for (int j = 0; j < cols_; ++j) os << (j ? " " : "[") << at(i, j).get_str();
        os << "]" << (i + 1 == rows_ ? "]" : "\n");
    }
    return os.str();
}

Rref rref(Matrix m) {
    const Field f = m.field();
    Rref out;
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int p = -1;
        for (int i = r; i < m.rows(); ++i)
            if (!f.is_zero(m.at(i, c))) { p = i; break; }
        if (p < 0) continue;
        if (p != r)
            for (int j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(r, j));
        Rat inv = f.inv(m.at(r, c));
        for (int j = c; j < m.cols(); ++j) m.at(r, j) = f.mul(m.at(r, j), inv);
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r || f.is_zero(m.at(i, c))) continue;
            Rat t = m.at(i, c);
            for (int j = c; j < m.cols(); ++j) m.at(i, j) = f.sub(m.at(i, j), f.mul(t, m.at(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    out.r = std::move(m);
    out.pivots = std::move(pivots);
    out.rank = r;
    return out;
}

int rank(const Matrix& m) { return rref(m).rank; }

std::vector<std::vector<Rat>> kernel_basis(const Matrix& m) {
    const Field f = m.field();
    Rref e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : e.pivots) is_pivot[c] = true;
    std::vector<std::vector<Rat>> basis;
    for (int c = 0; c < m.cols(); ++c) {
        if (is_pivot[c]) continue;
        std::vector<Rat> v(m.cols(), Rat(0));
        v[c] = 1;
        for (int i = 0; i < e.rank; ++i) v[e.pivots[i]] = f.neg(e.r.at(i, c));
        basis.push_back(std::move(v));
    }
    return basis;
}

SolveResult solve_and_kernel(const Matrix& m, const std::optional<std::vector<Rat>>& rhs) {
    SolveResult out;
    const Field f = m.field();
    if (!rhs) {
        Rref e = rref(m);
        out.rank = e.rank;
        out.kernel = kernel_basis(m);
        return out;
    }
    if (static_cast<int>(rhs->size()) != m.rows()) throw ComputeError("rhs dimension mismatch");
    Matrix aug(f, m.rows(), m.cols() + 1);
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols()) = f.canon((*rhs)[i]);
    }
    Rref e = rref(std::move(aug));
    bool consistent = true;
    int rk = 0;
    for (size_t i = 0; i < e.pivots.size(); ++i) {
        if (e.pivots[i] == m.cols()) consistent = false;
        else ++rk;
    }
    out.rank = rk;
    out.kernel = kernel_basis(m);
    if (consistent) {
        std::vector<Rat> x(m.cols(), Rat(0));
        for (int i = 0; i < e.rank; ++i)
            if (e.pivots[i] < m.cols()) x[e.pivots[i]] = e.r.at(i, m.cols());
        out.particular = std::move(x);
    }
    return out;
}

std::optional<std::vector<Rat>> solve(const Matrix& m, const std::vector<Rat>& rhs) {
    return solve_and_kernel(m, rhs).particular;
}

std::optional<std::vector<Rat>> express_in_span(const Field& f,
                                                const std::vector<std::vector<Rat>>& span,
                                                const std::vector<Rat>& v) {
    if (span.empty()) {
        if (vec_is_zero(v)) return std::vector<Rat>{};
        return std::nullopt;
    }
    const int n = static_cast<int>(span.front().size());
    Matrix m(f, n, static_cast<int>(span.size()));
    for (size_t j = 0; j < span.size(); ++j)
        for (int i = 0; i < n; ++i) m.at(i, static_cast<int>(j)) = f.canon(span[j][i]);
    return solve(m, v);
}

bool SpanBuilder::insert(std::vector<Rat> v) {
    if (static_cast<int>(v.size()) != dim_) throw ComputeError("SpanBuilder dimension mismatch");
    for (auto& x : v) x = f_.canon(x);
    reduce(v);
    int piv = -1;
    for (int i = 0; i < dim_; ++i)
        if (!f_.is_zero(v[i])) { piv = i; break; }
    if (piv < 0) return false;
    Rat inv = f_.inv(v[piv]);
    for (auto& x : v) x = f_.mul(x, inv);
    // Keep existing rows reduced against the new one.
    for (size_t r = 0; r < rows_.size(); ++r) {
        Rat c = rows_[r][piv];
        if (!f_.is_zero(c)) vec_add_scaled(f_, rows_[r], f_.neg(c), v);
    }
    rows_.push_back(std::move(v));
    pivot_.push_back(piv);
    return true;
}

bool SpanBuilder::contains(std::vector<Rat> v) const {
    for (auto& x : v) x = f_.canon(x);
    reduce(v);
    return vec_is_zero(v);
}

std::vector<std::vector<Rat>> SpanBuilder::basis() const {
    std::vector<size_t> order(rows_.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return pivot_[a] < pivot_[b]; });
    std::vector<std::vector<Rat>> out;
    out.reserve(rows_.size());
    for (size_t i : order) out.push_back(rows_[i]);
    return out;
}

void SpanBuilder::reduce(std::vector<Rat>& v) const {
    for (size_t r = 0; r < rows_.size(); ++r) {
        const Rat& c = v[pivot_[r]];
        if (!f_.is_zero(c)) vec_add_scaled(f_, v, f_.neg(c), rows_[r]);
    }
}

std::vector<Rat> vec_zero(int n) { return std::vector<Rat>(n, Rat(0)); }

void vec_add_scaled(const Field& f, std::vector<Rat>& a, const Rat& c, const std::vector<Rat>& b) {
    for (size_t i = 0; i < a.size(); ++i) a[i] = f.add(a[i], f.mul(c, b[i]));
}

bool vec_is_zero(const std::vector<Rat>& a) {
    for (const auto& x : a)
        if (sgn(x) != 0) return false;
    return true;
}

} // namespace silt
