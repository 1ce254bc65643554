#include "dsg/snf.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace dsg {

namespace {

using boost::multiprecision::abs;

// True if every entry outside row/column t of the trailing block is handled:
// the pivot is alone in its row and column.
bool pivot_isolated(const IntMatrix& d, int t) {
    for (int i = t + 1; i < d.rows(); ++i)
        if (d.at(i, t) != 0) return false;
    for (int j = t + 1; j < d.cols(); ++j)
        if (d.at(t, j) != 0) return false;
    return true;
}

bool find_min_nonzero(const IntMatrix& d, int t, int& bi, int& bj) {
    BigInt best(-1);
    for (int i = t; i < d.rows(); ++i)
        for (int j = t; j < d.cols(); ++j) {
            if (d.at(i, j) == 0) continue;
            BigInt v = abs(d.at(i, j));
            if (best < 0 || v < best) {
                best = v;
                bi = i;
                bj = j;
            }
        }
    return best >= 0;
}

}  // namespace

SmithNormalForm smith_normal_form(const IntMatrix& m) {
    SmithNormalForm r{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols())};
    IntMatrix& d = r.d;
    int nmin = std::min(m.rows(), m.cols());

    for (int t = 0; t < nmin; ++t) {
        for (;;) {
            int bi, bj;
            if (!find_min_nonzero(d, t, bi, bj)) break;  // trailing block is zero
            d.swap_rows(t, bi);
            r.u.swap_rows(t, bi);
            d.swap_cols(t, bj);
            r.v.swap_cols(t, bj);

            for (int i = t + 1; i < d.rows(); ++i)
                if (d.at(i, t) != 0) {
                    BigInt q = d.at(i, t) / d.at(t, t);
                    d.add_row_multiple(i, t, -q);
                    r.u.add_row_multiple(i, t, -q);
                }
            for (int j = t + 1; j < d.cols(); ++j)
                if (d.at(t, j) != 0) {
                    BigInt q = d.at(t, j) / d.at(t, t);
                    d.add_col_multiple(j, t, -q);
                    r.v.add_col_multiple(j, t, -q);
                }
            if (!pivot_isolated(d, t)) continue;

            // Divisibility fold: pull a non-divisible entry into the pivot row.
            int fi = -1, fj = -1;
            for (int i = t + 1; i < d.rows() && fi < 0; ++i)
                for (int j = t + 1; j < d.cols(); ++j)
                    if (d.at(i, j) % d.at(t, t) != 0) {
                        fi = i;
                        fj = j;
                        break;
                    }
            if (fi < 0) break;
            d.add_row_multiple(t, fi, 1);
            r.u.add_row_multiple(t, fi, 1);
        }
        if (d.at(t, t) < 0) {
            d.negate_row(t);
            r.u.negate_row(t);
        }
    }
    return r;
}

std::vector<BigInt> smith_diagonal(const IntMatrix& m) {
    SmithNormalForm s = smith_normal_form(m);
    int nmin = std::min(m.rows(), m.cols());
    std::vector<BigInt> diag(nmin);
    for (int i = 0; i < nmin; ++i) diag[i] = s.d.at(i, i);
    return diag;
}

}  // namespace dsg
