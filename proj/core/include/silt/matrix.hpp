#pragma once

#include <optional>
#include <string>
#include <vector>

#include "silt/field.hpp"

namespace silt {

/// Dense matrix over an exact field. Entries are always canonical
/// (lowest-terms rationals, least residues mod p).
class Matrix {
public:
    Matrix() : f_(Field::rationals()) {}
    Matrix(Field f, int rows, int cols)
        : f_(f), rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * cols, Rat(0)) {}

    static Matrix identity(Field f, int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Field& field() const { return f_; }

    Rat& at(int i, int j) { return e_[static_cast<size_t>(i) * cols_ + j]; }
    const Rat& at(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }
    void set(int i, int j, const Rat& v) { at(i, j) = f_.canon(v); }

    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix scaled(const Rat& c) const;
    Matrix transposed() const;

    /// [this | o] side by side.
    Matrix hstack(const Matrix& o) const;
    /// [this; o] stacked.
    Matrix vstack(const Matrix& o) const;

    std::vector<Rat> row(int i) const;
    std::vector<Rat> col(int j) const;
    std::vector<Rat> apply(const std::vector<Rat>& v) const; // this * v

    bool is_zero() const;
    bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_; }

    std::string str() const;

private:
    Field f_;
    int rows_ = 0, cols_ = 0;
    std::vector<Rat> e_;
};

struct Rref {
    Matrix r;
    std::vector<int> pivots; // pivot column of each pivot row
    int rank = 0;
};

/// Canonical reduced row-echelon form. Fixes every downstream basis choice.
Rref rref(Matrix m);

int rank(const Matrix& m);

/// Canonical basis of {v : m v = 0}; each free column contributes the vector
/// with 1 there and the negated pivot-row entries above.
std::vector<std::vector<Rat>> kernel_basis(const Matrix& m);

struct SolveResult {
    int rank = 0;
    std::vector<std::vector<Rat>> kernel;
    std::optional<std::vector<Rat>> particular; // present iff rhs given and consistent
};

/// Solves m x = rhs (if given) and returns rank + kernel basis.
SolveResult solve_and_kernel(const Matrix& m, const std::optional<std::vector<Rat>>& rhs);

/// Solves m x = rhs; nullopt when inconsistent.
std::optional<std::vector<Rat>> solve(const Matrix& m, const std::vector<Rat>& rhs);

/// Writes v as a combination of the given vectors; nullopt if outside the span.
std::optional<std::vector<Rat>> express_in_span(const Field& f,
                                                const std::vector<std::vector<Rat>>& span,
                                                const std::vector<Rat>& v);

/// Incrementally built subspace of k^dim kept in reduced echelon form,
/// so the resulting basis is canonical regardless of insertion order.
class SpanBuilder {
public:
    SpanBuilder(Field f, int dim) : f_(f), dim_(dim) {}

    /// Returns true when v enlarged the span.
    bool insert(std::vector<Rat> v);
    bool contains(std::vector<Rat> v) const;
    int dim() const { return static_cast<int>(rows_.size()); }
    int ambient_dim() const { return dim_; }
    /// Rows sorted by pivot column: the canonical RREF basis of the span.
    std::vector<std::vector<Rat>> basis() const;

private:
    void reduce(std::vector<Rat>& v) const;
    Field f_;
    int dim_;
    std::vector<std::vector<Rat>> rows_; // reduced, one pivot each
    std::vector<int> pivot_;             // pivot column per row
};

// Small vector helpers shared across modules.
std::vector<Rat> vec_zero(int n);
void vec_add_scaled(const Field& f, std::vector<Rat>& a, const Rat& c, const std::vector<Rat>& b);
bool vec_is_zero(const std::vector<Rat>& a);

} // namespace silt
