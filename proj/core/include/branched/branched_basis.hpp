#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "branched/bspline.hpp"
#include "branched/cover.hpp"
#include "branched/grid.hpp"

namespace branched {

/// Point on the cover: a base point plus the sheet label local to its cell.
struct CoverPoint {
    BasePoint base;
    int sheet = 0;
};

enum class ComponentClass { Regular, Ramified, Irregular };

std::string to_string(ComponentClass c);

/// Connected component of one base basis's lifted support: (support cell,
/// sheet) nodes glued by cover adjacency. Each component carries a single
/// control value; a ramified component wraps its e sheets with that value.
struct LiftComponent {
    BaseBasis base;
    std::vector<std::pair<GridIndex, int>> nodes;  // (cell, sheet), sorted
    /// Sheets per support cell. Uniform for regular/ramified components;
    /// for irregular ones this records the count at the Greville cell,
    /// which is what the sampling rule divides by.
    int multiplicity = 1;
    ComponentClass cls = ComponentClass::Regular;
    std::vector<int> greville_sheets;  // component's sheets at the Greville support cell
};

struct CensusCounts {
    long long total = 0;
    long long regular = 0;
    long long ramified = 0;
    long long irregular = 0;
};

/// All lift components of the degree-d biperiodic basis over a branched
/// cover, with (anchor, support cell, sheet) -> component lookup.
/// Immutable after construction; evaluation is pure and thread-safe.
class BranchedBasis {
public:
    /// Enumerates components by union-find on each anchor's support graph.
    /// Support adjacency never wraps across the support's own boundary,
    /// which requires grid width and height > degree + 1.
    BranchedBasis(CoverIndex cover, int degree);

    const CoverIndex& cover() const { return cover_; }
    const TorusGrid& grid() const { return cover_.grid(); }
    int degree() const { return degree_; }
    const std::vector<LiftComponent>& components() const { return components_; }

    /// Index of the component containing node (cell, sheet) of the base
    /// basis anchored at `anchor`; -1 when cell is outside that support.
    int component_index(GridIndex anchor, GridIndex cell, int sheet) const;

    /// Branched spline value at p: sum over the (d+1)^2 base bases active
    /// at p.base of the component coefficient times the base basis value.
    /// T is double for scalar splines or Vec3 for surfaces.
    template <typename T>
    T eval(const std::vector<T>& coefs, const CoverPoint& p) const {
        return eval_on_cell(coefs, p.base.cell, p.sheet, p.base.x, p.base.y);
    }

    /// Same sum using the piece polynomials of cell (cell, sheet), valid
    /// for any local (x, y): outside [0,1)^2 this is the polynomial
    /// extension of the cell's piece, used for one-sided edge limits.
    template <typename T>
    T eval_on_cell(const std::vector<T>& coefs, GridIndex cell, int sheet, double x,
                   double y) const {
        if (coefs.size() != components_.size()) {
            throw std::invalid_argument("coefficient vector does not match component count");
        }
        if (sheet < 0 || sheet >= cover_.sheets()) {
            throw std::invalid_argument("sheet out of range");
        }
        const GridIndex c = grid().wrap(cell);
        const int d = degree_;
        T acc{};
        for (int dy = 0; dy <= d; ++dy) {
            for (int dx = 0; dx <= d; ++dx) {
                const GridIndex anchor = grid().wrap({c.i - dx, c.j - dy});
                const int idx = lookup_entry(anchor, dx, dy, sheet);
                const double w = bspline_piece_eval(d, dx, dx + x) *
                                 bspline_piece_eval(d, dy, dy + y);
                acc += coefs[idx] * w;
            }
        }
        return acc;
    }

private:
    CoverIndex cover_;
    int degree_;
    std::vector<LiftComponent> components_;
    std::vector<int> lookup_;  // anchor * span + (dy*(d+1)+dx) * n + sheet

    int lookup_entry(GridIndex anchor, int dx, int dy, int sheet) const;
    void enumerate();
};

BranchedBasis enumerate_components(const BranchedCoverSpec& spec, int degree);

CensusCounts census(const BranchedBasis& basis);

/// Per-anchor census rows:
/// anchor_i,anchor_j,components,regular,ramified,irregular
void write_census_csv(std::ostream& out, const BranchedBasis& basis);

}  // namespace branched
