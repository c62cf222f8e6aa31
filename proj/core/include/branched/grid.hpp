#pragma once

#include <cmath>
#include <compare>
#include <stdexcept>

namespace branched {

/// Integer lattice coordinate; used for both cells (lower-left vertex) and
/// grid vertices.
struct GridIndex {
    int i = 0;
    int j = 0;
    friend auto operator<=>(const GridIndex&, const GridIndex&) = default;
};

/// Uniform unit-spaced grid on the torus [0,W) x [0,H).
///
/// Cell (i,j) spans [i,i+1] x [j,j+1]; everything wraps modulo (W,H).
struct TorusGrid {
    int width = 0;
    int height = 0;

    TorusGrid() = default;
    TorusGrid(int w, int h) : width(w), height(h) {
        if (w < 4 || h < 4) throw std::invalid_argument("TorusGrid: requires W >= 4 and H >= 4");
    }

    int wrap_x(int i) const { return ((i % width) + width) % width; }
    int wrap_y(int j) const { return ((j % height) + height) % height; }
    GridIndex wrap(GridIndex g) const { return {wrap_x(g.i), wrap_y(g.j)}; }

    int cell_count() const { return width * height; }
    long long vertex_count() const { return static_cast<long long>(width) * height; }
    long long edge_count() const { return 2LL * width * height; }
    long long face_count() const { return static_cast<long long>(width) * height; }

    int cell_index(GridIndex c) const { return c.j * width + c.i; }
    GridIndex cell_from_index(int idx) const { return {idx % width, idx / width}; }

    /// Shortest distance between two points of the flat torus.
    double torus_distance(double u1, double v1, double u2, double v2) const {
        double du = std::fabs(u1 - u2);
        du = std::fmod(du, static_cast<double>(width));
        du = std::min(du, width - du);
        double dv = std::fabs(v1 - v2);
        dv = std::fmod(dv, static_cast<double>(height));
        dv = std::min(dv, height - dv);
        return std::hypot(du, dv);
    }
};

/// Point of the base torus: owning cell plus local coordinates in [0,1)^2.
struct BasePoint {
    GridIndex cell;
    double x = 0.0;
    double y = 0.0;
};

/// Builds a BasePoint from global torus coordinates.
inline BasePoint base_point(const TorusGrid& grid, double u, double v) {
    u = std::fmod(u, static_cast<double>(grid.width));
    if (u < 0) u += grid.width;
    v = std::fmod(v, static_cast<double>(grid.height));
    if (v < 0) v += grid.height;
    int ci = std::min(static_cast<int>(std::floor(u)), grid.width - 1);
    int cj = std::min(static_cast<int>(std::floor(v)), grid.height - 1);
    return BasePoint{{ci, cj}, u - ci, v - cj};
}

}  // namespace branched
