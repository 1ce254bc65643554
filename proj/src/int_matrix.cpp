#include "dsg/int_matrix.hpp"

namespace dsg {

BigInt determinant(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    int n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    BigInt prev(1);
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a.at(k, k) == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (a.at(i, k) != 0) { piv = i; break; }
            if (piv < 0) return 0;
            a.swap_rows(k, piv);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                a.at(i, j) = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
            }
            a.at(i, k) = 0;
        }
        prev = a.at(k, k);
    }
    return sign > 0 ? a.at(n - 1, n - 1) : -a.at(n - 1, n - 1);
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
    int n = m.rows();
    BigInt det = determinant(m);
    if (det != 1 && det != -1) throw std::invalid_argument("matrix is not unimodular");

    // Rational Gauss-Jordan; the result is integral because |det| = 1.
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n)),
        inv(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i) {
        inv[i][i] = Rational(1);
        for (int j = 0; j < n; ++j) a[i][j] = Rational(m.at(i, j));
    }
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i)
            if (a[i][col].sign() != 0) { piv = i; break; }
        if (piv < 0) throw std::logic_error("unimodular matrix singular in elimination");
        std::swap(a[col], a[piv]);
        std::swap(inv[col], inv[piv]);
        Rational d = a[col][col];
        for (int j = 0; j < n; ++j) {
            a[col][j] = a[col][j] / d;
            inv[col][j] = inv[col][j] / d;
        }
        for (int i = 0; i < n; ++i) {
            if (i == col || a[i][col].sign() == 0) continue;
            Rational f = a[i][col];
            for (int j = 0; j < n; ++j) {
                a[i][j] -= f * a[col][j];
                inv[i][j] -= f * inv[col][j];
            }
        }
    }
    IntMatrix out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (!inv[i][j].is_integer())
                throw std::logic_error("unimodular inverse produced non-integer entry");
            out.at(i, j) = inv[i][j].num();
        }
    return out;
}

}  // namespace dsg
