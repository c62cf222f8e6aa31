#include "branched/exact_linalg.hpp"

#include <numeric>

namespace branched {

namespace {

/// Clears denominators row by row, returning an integer matrix with the
/// same row space and null space.
std::vector<std::vector<BigInt>> to_integer_rows(const RationalMatrix& m) {
    std::vector<std::vector<BigInt>> rows(m.rows, std::vector<BigInt>(m.cols));
    for (int r = 0; r < m.rows; ++r) {
        BigInt scale(1);
        for (int c = 0; c < m.cols; ++c) {
            const BigInt den = denominator(m.at(r, c));
            scale = lcm(scale, den);
        }
        for (int c = 0; c < m.cols; ++c) {
            const Rational& q = m.at(r, c);
            rows[r][c] = numerator(q) * (scale / denominator(q));
        }
    }
    return rows;
}

struct Echelon {
    std::vector<std::vector<BigInt>> rows;  // upper echelon, integer entries
    std::vector<int> pivot_cols;            // pivot column of row k
};

/// Bareiss fraction-free elimination. All divisions are exact.
Echelon bareiss(std::vector<std::vector<BigInt>> a, int nrows, int ncols) {
    Echelon e;
    BigInt prev_pivot(1);
    int row = 0;
    for (int col = 0; col < ncols && row < nrows; ++col) {
        int pivot_row = -1;
        for (int r = row; r < nrows; ++r) {
            if (a[r][col] != 0) {
                pivot_row = r;
                break;
            }
        }
        if (pivot_row < 0) continue;
        std::swap(a[row], a[pivot_row]);
        for (int r = row + 1; r < nrows; ++r) {
            for (int c = col + 1; c < ncols; ++c) {
                a[r][c] = (a[r][c] * a[row][col] - a[r][col] * a[row][c]) / prev_pivot;
            }
            a[r][col] = 0;
        }
        prev_pivot = a[row][col];
        e.pivot_cols.push_back(col);
        ++row;
    }
    a.resize(row);
    e.rows = std::move(a);
    return e;
}

}  // namespace

NullSpace rational_null_space(const RationalMatrix& m) {
    NullSpace out;
    if (m.cols == 0) return out;
    Echelon ech = bareiss(to_integer_rows(m), m.rows, m.cols);
    out.rank = static_cast<int>(ech.pivot_cols.size());

    std::vector<bool> is_pivot(m.cols, false);
    for (int c : ech.pivot_cols) is_pivot[c] = true;

    for (int free_col = 0; free_col < m.cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<Rational> x(m.cols, Rational(0));
        x[free_col] = 1;
        for (int k = out.rank - 1; k >= 0; --k) {
            const int p = ech.pivot_cols[k];
            Rational s(0);
            for (int c = p + 1; c < m.cols; ++c) {
                if (ech.rows[k][c] != 0 && x[c] != 0) s += Rational(ech.rows[k][c]) * x[c];
            }
            x[p] = -s / Rational(ech.rows[k][p]);
        }
        out.basis.push_back(std::move(x));
    }
    return out;
}

int rational_rank(const RationalMatrix& m) {
    if (m.cols == 0 || m.rows == 0) return 0;
    return static_cast<int>(bareiss(to_integer_rows(m), m.rows, m.cols).pivot_cols.size());
}

}  // namespace branched
