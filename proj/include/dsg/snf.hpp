#pragma once

#include "dsg/int_matrix.hpp"

namespace dsg {

/// Smith normal form decomposition d = u * m * v with u, v unimodular,
/// d diagonal, diagonal entries nonnegative and forming a divisibility chain.
struct SmithNormalForm {
    IntMatrix d, u, v;
};

SmithNormalForm smith_normal_form(const IntMatrix& m);

/// Diagonal of the Smith form only (cheaper bookkeeping, same algorithm).
std::vector<BigInt> smith_diagonal(const IntMatrix& m);

}  // namespace dsg
