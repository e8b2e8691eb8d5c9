#pragma once

// Test-only oracles, deliberately built along different routes than the
// library paths they check.

#include <map>
#include <tuple>

#include "silt/complex.hpp"

namespace silt::testing {

// dim Hom_{K^b}(X, Sigma^shift Y) through the total Hom complex:
// C^n = sum_d Hom_A(X^d, W^{d+n}) with D(f) = d_W f - (-1)^n f d_X, and
// dim H^0 = dim C^0 - rank D^0 - rank D^{-1}. Only rank computations are
// shared with the library; the chain-map/homotopy solver is not used.
inline int oracle_hom_dim(const ProjComplex& x, const ProjComplex& y, int shift) {
    const AlgebraPtr A = x.owner();
    const Field& f = A->field();
    ProjComplex w = y.shifted(shift);

    struct Layout {
        std::map<std::tuple<int, int, int, int>, int> id;
        int dim = 0;
    };
    auto layout_of = [&](int n) {
        Layout L;
        for (int d = x.lo(); d <= x.hi(); ++d) {
            if (w.n_summands(d + n) == 0) continue;
            for (int v = 0; v < w.n_summands(d + n); ++v)
                for (int u = 0; u < x.n_summands(d); ++u)
                    for (int b : A->peirce(w.summands_at(d + n)[v], x.summands_at(d)[u]))
                        L.id[{d, v, u, b}] = L.dim++;
        }
        return L;
    };
    auto dmatrix = [&](int n, const Layout& from, const Layout& to) {
        Matrix D(f, to.dim, from.dim);
        for (const auto& [key, col] : from.id) {
            auto [d, v, u, b] = key;
            AlgElt beta = A->basis_elt(b);
            AlgMat dw = w.diff_from(d + n);
            for (int r = 0; r < dw.rows; ++r) {
                AlgElt prod = A->mul(dw.at(r, v), beta);
                for (int bb = 0; bb < A->dim(); ++bb) {
                    if (sgn(prod[bb]) == 0) continue;
                    auto it = to.id.find({d, r, u, bb});
                    if (it != to.id.end()) D.at(it->second, col) = f.add(D.at(it->second, col), prod[bb]);
                }
            }
            AlgMat dx = x.diff_from(d - 1);
            const Rat sign = f.from_long(n % 2 == 0 ? -1 : 1); // -(-1)^n
            for (int u2 = 0; u2 < dx.cols; ++u2) {
                AlgElt prod = A->mul(beta, dx.at(u, u2));
                for (int bb = 0; bb < A->dim(); ++bb) {
                    if (sgn(prod[bb]) == 0) continue;
                    auto it = to.id.find({d - 1, v, u2, bb});
                    if (it != to.id.end())
                        D.at(it->second, col) = f.add(D.at(it->second, col), f.mul(sign, prod[bb]));
                }
            }
        }
        return D;
    };
    Layout Cm1 = layout_of(-1), C0 = layout_of(0), C1 = layout_of(1);
    int rk0 = rank(dmatrix(0, C0, C1));
    int rkm1 = rank(dmatrix(-1, Cm1, C0));
    return C0.dim - rk0 - rkm1;
}

} // namespace silt::testing
