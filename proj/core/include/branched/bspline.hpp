#pragma once

#include <array>
#include <vector>

#include "branched/grid.hpp"

namespace branched {

/// Biperiodic tensor-product B-spline basis function on a TorusGrid.
///
/// The support is the (d+1)x(d+1) block of cells whose lower-left cell is
/// the anchor, wrapped periodically.
struct BaseBasis {
    int degree = 1;
    GridIndex anchor;
};

/// Cardinal uniform B-spline of degree d on [0, d+1].
/// Throws std::domain_error outside the support interval.
double bspline_eval_1d(int degree, double u);

/// Polynomial piece of the cardinal B-spline on [piece, piece+1], evaluated
/// at arbitrary u (the piece polynomial extends beyond its own interval;
/// one-sided limits at cell boundaries are taken this way). Zero polynomial
/// for piece outside [0, d].
double bspline_piece_eval(int degree, int piece, double u);

/// Derivative of the piece polynomial.
double bspline_piece_derivative(int degree, int piece, double u);

/// Support cells in row-major order from the anchor.
std::vector<GridIndex> support_cells(const TorusGrid& grid, const BaseBasis& b);

/// True iff cell lies in the basis support; when it does, writes the
/// (dx,dy) offset of the cell within the support block.
bool support_offset(const TorusGrid& grid, const BaseBasis& b, GridIndex cell, int& dx, int& dy);

/// Tensor-product evaluation with periodic wrapping; 0 outside the support.
double base_basis_eval(const TorusGrid& grid, const BaseBasis& b, const BasePoint& p);

/// Greville point (i + (d+1)/2, j + (d+1)/2), unwrapped.
std::array<double, 2> greville_point(const BaseBasis& b);

/// Support cell containing the Greville point (ties resolved toward the
/// anchor), unwrapped offset (floor(d/2), floor(d/2)) from the anchor.
GridIndex greville_cell(const TorusGrid& grid, const BaseBasis& b);

}  // namespace branched
