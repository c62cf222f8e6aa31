#include "branched/bspline.hpp"

#include <cmath>
#include <stdexcept>

namespace branched {

// Recursion over piece polynomials of the cardinal B-spline on integer
// knots 0..d+1:
//   B_d piece k (u) = (u/d) * B_{d-1} piece k (u)
//                   + ((d+1-u)/d) * B_{d-1} piece k-1 (u - 1)
// with B_0 = 1 on its single piece. Evaluating a piece outside [k, k+1]
// extends its polynomial, which is what one-sided limits need.
double bspline_piece_eval(int degree, int piece, double u) {
    if (degree < 0) throw std::invalid_argument("bspline_piece_eval: negative degree");
    if (piece < 0 || piece > degree) return 0.0;
    if (degree == 0) return 1.0;
    const double d = static_cast<double>(degree);
    return (u / d) * bspline_piece_eval(degree - 1, piece, u) +
           ((degree + 1 - u) / d) * bspline_piece_eval(degree - 1, piece - 1, u - 1.0);
}

double bspline_piece_derivative(int degree, int piece, double u) {
    if (degree < 0) throw std::invalid_argument("bspline_piece_derivative: negative degree");
    if (piece < 0 || piece > degree) return 0.0;
    if (degree == 0) return 0.0;
    // d/du B_d = B_{d-1}(u) - B_{d-1}(u - 1), restricted to the piece.
    return bspline_piece_eval(degree - 1, piece, u) -
           bspline_piece_eval(degree - 1, piece - 1, u - 1.0);
}

double bspline_eval_1d(int degree, double u) {
    if (degree < 0) throw std::invalid_argument("bspline_eval_1d: negative degree");
    if (u < 0.0 || u > degree + 1) throw std::domain_error("bspline_eval_1d: u outside [0, d+1]");
    int piece = static_cast<int>(std::floor(u));
    if (piece > degree) piece = degree;  // u == d+1 evaluates the last piece (gives 0)
    return bspline_piece_eval(degree, piece, u);
}

std::vector<GridIndex> support_cells(const TorusGrid& grid, const BaseBasis& b) {
    std::vector<GridIndex> out;
    out.reserve(static_cast<size_t>(b.degree + 1) * (b.degree + 1));
    for (int dy = 0; dy <= b.degree; ++dy)
        for (int dx = 0; dx <= b.degree; ++dx)
            out.push_back(grid.wrap({b.anchor.i + dx, b.anchor.j + dy}));
    return out;
}

bool support_offset(const TorusGrid& grid, const BaseBasis& b, GridIndex cell, int& dx, int& dy) {
    dx = grid.wrap_x(cell.i - b.anchor.i);
    dy = grid.wrap_y(cell.j - b.anchor.j);
    return dx <= b.degree && dy <= b.degree;
}

double base_basis_eval(const TorusGrid& grid, const BaseBasis& b, const BasePoint& p) {
    int dx = 0, dy = 0;
    if (!support_offset(grid, b, p.cell, dx, dy)) return 0.0;
    return bspline_piece_eval(b.degree, dx, dx + p.x) *
           bspline_piece_eval(b.degree, dy, dy + p.y);
}

std::array<double, 2> greville_point(const BaseBasis& b) {
    const double half = (b.degree + 1) / 2.0;
    return {b.anchor.i + half, b.anchor.j + half};
}

GridIndex greville_cell(const TorusGrid& grid, const BaseBasis& b) {
    return grid.wrap({b.anchor.i + b.degree / 2, b.anchor.j + b.degree / 2});
}

}  // namespace branched
