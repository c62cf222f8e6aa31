#pragma once

#include <vector>

#include "branched/rational.hpp"

namespace branched {

/// Dense rational matrix in row-major order.
struct RationalMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<Rational> data;

    RationalMatrix() = default;
    RationalMatrix(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * c, Rational(0)) {}

    Rational& at(int r, int c) { return data[static_cast<size_t>(r) * cols + c]; }
    const Rational& at(int r, int c) const { return data[static_cast<size_t>(r) * cols + c]; }
};

struct NullSpace {
    int rank = 0;
    /// Basis of the right null space; each entry has matrix.cols components.
    std::vector<std::vector<Rational>> basis;
};

/// Exact rank and null-space basis of a rational matrix.
///
/// Rows are scaled to integers and reduced by fraction-free (Bareiss)
/// Gaussian elimination; pivot columns are back-substituted in rational
/// arithmetic to produce one basis vector per free column.
NullSpace rational_null_space(const RationalMatrix& m);

int rational_rank(const RationalMatrix& m);

}  // namespace branched
