#pragma once

#include <array>
#include <vector>

#include "branched/cover.hpp"
#include "branched/geometry.hpp"
#include "branched/smoothness_scan.hpp"
#include "branched/vec3.hpp"

namespace branched {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

/// The 16 degrees of freedom of one quadrilateral macro-element: corner
/// values and gradients plus outward normal derivatives at edge midpoints.
/// Corners are counterclockwise; edge t runs from corner t to corner t+1.
struct FvsDofs {
    std::array<double, 4> value{};
    std::array<double, 4> grad_x{};
    std::array<double, 4> grad_y{};
    std::array<double, 4> edge_normal{};
};

/// C1 macro-element on a strictly convex quad split by its diagonals into
/// four cubic Bernstein-Bezier triangles (corner t, corner t+1, center).
/// The 40 coefficients are determined by the 16 DOFs together with the C0
/// and C1 junction conditions across the interior edges.
class FvsElement {
public:
    const std::array<Point2, 4>& corners() const { return corners_; }
    Point2 diagonal_point() const { return q_; }
    /// BB coefficients per sub-triangle, index order (3,0,0), (2,1,0),
    /// (2,0,1), (1,2,0), (1,1,1), (1,0,2), (0,3,0), (0,2,1), (0,1,2),
    /// (0,0,3) for barycentric weights (corner t, corner t+1, center).
    const std::array<std::array<double, 10>, 4>& coefficients() const { return bb_; }
    /// Max-norm residual of the interpolation + junction system.
    double residual() const { return residual_; }

    /// Value/gradient at a point of the quad; throws std::domain_error
    /// outside it.
    double value(Point2 p) const;
    std::array<double, 2> gradient(Point2 p) const;

    /// Polynomial extension: the sub-triangle is located by the diagonal
    /// sector containing p, so points slightly outside the quad evaluate
    /// the nearest patch's polynomial. Used for one-sided edge limits.
    double value_extended(Point2 p) const;
    std::array<double, 2> gradient_extended(Point2 p) const;

    /// Reads the 16 DOFs back off the solved patches (round-trip check).
    FvsDofs extract_dofs() const;

private:
    friend FvsElement fvs_solve_element(const std::array<Point2, 4>& corners,
                                        const FvsDofs& dofs);
    std::array<Point2, 4> corners_{};
    Point2 q_{};
    std::array<std::array<double, 10>, 4> bb_{};
    double residual_ = 0.0;
};

/// Solves the 56-equation, 40-unknown coefficient system. Throws
/// std::invalid_argument for nonconvex or degenerate quads and
/// std::runtime_error when the residual exceeds the solvable tolerance
/// (which does not occur for strictly convex quads).
FvsElement fvs_solve_element(const std::array<Point2, 4>& corners, const FvsDofs& dofs);

/// Branched FVS surface: one macro-element per cover cell on the unit
/// square base chart, with a global DOF table shared across elements
/// (corner DOFs per cover vertex, midpoint normal DOFs per cover edge).
/// Vertex DOFs above ramification points are averaged over the identified
/// sheets.
class FvsSurface {
public:
    FvsSurface(CoverIndex cover, const EmbeddingConfig& cfg);

    const CoverIndex& cover() const { return cover_; }
    /// Patch value at local (x, y) of cover cell (cell, sheet); outside
    /// [0,1]^2 the located patch's polynomial extension.
    Vec3 value(GridIndex cell, int sheet, double x, double y) const;
    std::array<Vec3, 2> gradient(GridIndex cell, int sheet, double x, double y) const;
    /// Adapter for the scanner/tessellator; the surface must outlive it.
    SurfaceFn surface_fn() const;
    double max_residual() const { return max_residual_; }

private:
    CoverIndex cover_;
    std::vector<std::array<std::array<Vec3, 10>, 4>> patches_;  // cell index * sheets + sheet
    double max_residual_ = 0.0;
};

/// Full pipeline: DOF sampling from the per-sheet tori, per-cell element
/// solves, tessellation and welding at cfg.density.
QuadMesh build_fvs_surface(const BranchedCoverSpec& spec, const EmbeddingConfig& cfg);

}  // namespace branched
