#pragma once

#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "dsg/rational.hpp"

namespace dsg {

/// Dense integer matrix with unbounded-precision entries, row major.
/// Zero-row and zero-column shapes are legal and arise as empty relation
/// sets or empty ambients; every operation must tolerate them.
class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), e_(size_t(rows) * cols, BigInt(0)) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
    }
    IntMatrix(std::initializer_list<std::initializer_list<long long>> init) {
        rows_ = int(init.size());
        cols_ = rows_ ? int(init.begin()->size()) : 0;
        e_.reserve(size_t(rows_) * cols_);
        for (const auto& row : init) {
            if (int(row.size()) != cols_) throw std::invalid_argument("ragged matrix literal");
            for (long long v : row) e_.emplace_back(v);
        }
    }

    static IntMatrix identity(int n) {
        IntMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    BigInt& at(int i, int j) { return e_[size_t(i) * cols_ + j]; }
    const BigInt& at(int i, int j) const { return e_[size_t(i) * cols_ + j]; }

    bool operator==(const IntMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }

    IntMatrix transpose() const {
        IntMatrix t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    IntMatrix operator*(const IntMatrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
        IntMatrix r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const BigInt& v = at(i, k);
                if (v == 0) continue;
                for (int j = 0; j < o.cols_; ++j) r.at(i, j) += v * o.at(k, j);
            }
        return r;
    }

    void swap_rows(int a, int b) {
        for (int j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
    }
    void swap_cols(int a, int b) {
        for (int i = 0; i < rows_; ++i) std::swap(at(i, a), at(i, b));
    }
    void add_row_multiple(int dst, int src, const BigInt& k) {
        for (int j = 0; j < cols_; ++j) at(dst, j) += k * at(src, j);
    }
    void add_col_multiple(int dst, int src, const BigInt& k) {
        for (int i = 0; i < rows_; ++i) at(i, dst) += k * at(i, src);
    }
    void negate_row(int i) {
        for (int j = 0; j < cols_; ++j) at(i, j) = -at(i, j);
    }

    std::vector<BigInt> row(int i) const {
        return std::vector<BigInt>(e_.begin() + size_t(i) * cols_,
                                   e_.begin() + size_t(i + 1) * cols_);
    }

    std::string to_string() const {
        std::string s = "[";
        for (int i = 0; i < rows_; ++i) {
            s += i ? ",[" : "[";
            for (int j = 0; j < cols_; ++j) s += (j ? "," : "") + at(i, j).str();
            s += "]";
        }
        return s + "]";
    }

private:
    int rows_, cols_;
    std::vector<BigInt> e_;
};

/// Exact determinant by fraction-free (Bareiss) elimination. Empty matrix -> 1.
BigInt determinant(const IntMatrix& m);

/// Inverse of a matrix with determinant +-1; throws if not unimodular.
IntMatrix unimodular_inverse(const IntMatrix& m);

}  // namespace dsg
