#include "branched/fvs.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace branched {

namespace {

Point2 sub(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
double cross2(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }

struct Bary {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
};

Bary barycentric(Point2 A, Point2 B, Point2 C, Point2 p) {
    const double det = cross2(sub(B, A), sub(C, A));
    const double l0 = cross2(sub(B, p), sub(C, p)) / det;
    const double l1 = cross2(sub(C, p), sub(A, p)) / det;
    return {l0, l1, 1.0 - l0 - l1};
}

// Barycentric coordinates of a direction vector (components sum to zero):
// the gradients of the barycentric coordinate functions dotted with d.
Bary direction_coords(Point2 A, Point2 B, Point2 C, Point2 d) {
    const double det = cross2(sub(B, A), sub(C, A));
    return {((B.y - C.y) * d.x + (C.x - B.x) * d.y) / det,
            ((C.y - A.y) * d.x + (A.x - C.x) * d.y) / det,
            ((A.y - B.y) * d.x + (B.x - A.x) * d.y) / det};
}

// Flat index of the BB coefficient (i, j, k), i + j + k = 3, in the order
// documented on FvsElement::coefficients().
int bb_index(int i, int j, int k) {
    (void)j;
    static constexpr int off[4] = {6, 3, 1, 0};
    return off[i] + k;
}

double ipow(double x, int e) {
    double r = 1.0;
    while (e-- > 0) r *= x;
    return r;
}

double eval_bb3(const std::array<double, 10>& c, Bary l) {
    static constexpr int fact[4] = {1, 1, 2, 6};
    double out = 0.0;
    for (int i = 0; i <= 3; ++i) {
        for (int j = 0; i + j <= 3; ++j) {
            const int k = 3 - i - j;
            const double w = 6.0 / (fact[i] * fact[j] * fact[k]);
            out += c[bb_index(i, j, k)] * w * ipow(l.a, i) * ipow(l.b, j) * ipow(l.c, k);
        }
    }
    return out;
}

// Directional derivative of the cubic patch, direction in barycentric form.
double eval_bb3_deriv(const std::array<double, 10>& c, Bary l, Bary dir) {
    static constexpr int fact[3] = {1, 1, 2};
    double out = 0.0;
    for (int i = 0; i <= 2; ++i) {
        for (int j = 0; i + j <= 2; ++j) {
            const int k = 2 - i - j;
            const double w = 2.0 / (fact[i] * fact[j] * fact[k]);
            const double blend = dir.a * c[bb_index(i + 1, j, k)] +
                                 dir.b * c[bb_index(i, j + 1, k)] +
                                 dir.c * c[bb_index(i, j, k + 1)];
            out += 3.0 * w * ipow(l.a, i) * ipow(l.b, j) * ipow(l.c, k) * blend;
        }
    }
    return out;
}

struct QuadGeometry {
    std::array<Point2, 4> P;
    Point2 Q;  // diagonal intersection
};

QuadGeometry make_geometry(const std::array<Point2, 4>& corners) {
    for (int t = 0; t < 4; ++t) {
        const Point2 e0 = sub(corners[(t + 1) % 4], corners[t]);
        const Point2 e1 = sub(corners[(t + 2) % 4], corners[(t + 1) % 4]);
        if (!(cross2(e0, e1) > 0.0)) {
            throw std::invalid_argument(
                "macro-element quad must be strictly convex and counterclockwise");
        }
    }
    const Point2 d0 = sub(corners[2], corners[0]);
    const Point2 d1 = sub(corners[3], corners[1]);
    const double det = cross2(d0, d1);
    if (det == 0.0) throw std::invalid_argument("macro-element quad has parallel diagonals");
    const double s = cross2(sub(corners[1], corners[0]), d1) / det;
    return {corners, {corners[0].x + s * d0.x, corners[0].y + s * d0.y}};
}

// Sub-triangle whose diagonal sector contains p; total on the plane, so
// points outside the quad land on the nearest patch's extension.
int locate_sector(const QuadGeometry& g, Point2 p) {
    const double s1 = cross2(sub(g.P[2], g.P[0]), sub(p, g.P[0]));
    const double s2 = cross2(sub(g.P[3], g.P[1]), sub(p, g.P[1]));
    if (s1 <= 0.0) return s2 >= 0.0 ? 0 : 1;
    return s2 <= 0.0 ? 2 : 3;
}

Point2 outward_normal(const QuadGeometry& g, int t) {
    const Point2 e = sub(g.P[(t + 1) % 4], g.P[t]);
    const double len = std::hypot(e.x, e.y);
    return {e.y / len, -e.x / len};
}

// Rows 0..7: corner values per triangle; 8..23: corner directional
// derivatives along the outer edge and the diagonal; 24..27: midpoint
// outward normal derivatives; 28..43: C0 and 44..55: C1 junctions across
// the four interior edges.
Eigen::MatrixXd assemble_matrix(const QuadGeometry& g) {
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(56, 40);
    auto idx = [](int t, int i, int j, int k) { return t * 10 + bb_index(i, j, k); };
    int r = 0;
    for (int t = 0; t < 4; ++t) {
        A(r++, idx(t, 3, 0, 0)) = 1.0;
        A(r++, idx(t, 0, 3, 0)) = 1.0;
    }
    for (int t = 0; t < 4; ++t) {
        A(r, idx(t, 2, 1, 0)) = 3.0;
        A(r++, idx(t, 3, 0, 0)) = -3.0;
        A(r, idx(t, 2, 0, 1)) = 3.0;
        A(r++, idx(t, 3, 0, 0)) = -3.0;
        A(r, idx(t, 1, 2, 0)) = 3.0;
        A(r++, idx(t, 0, 3, 0)) = -3.0;
        A(r, idx(t, 0, 2, 1)) = 3.0;
        A(r++, idx(t, 0, 3, 0)) = -3.0;
    }
    for (int t = 0; t < 4; ++t) {
        const Bary d = direction_coords(g.P[t], g.P[(t + 1) % 4], g.Q, outward_normal(g, t));
        static constexpr int q[3][3] = {{2, 0, 0}, {1, 1, 0}, {0, 2, 0}};
        static constexpr double w[3] = {0.25, 0.5, 0.25};
        for (int m = 0; m < 3; ++m) {
            A(r, idx(t, q[m][0] + 1, q[m][1], q[m][2])) += 3.0 * w[m] * d.a;
            A(r, idx(t, q[m][0], q[m][1] + 1, q[m][2])) += 3.0 * w[m] * d.b;
            A(r, idx(t, q[m][0], q[m][1], q[m][2] + 1)) += 3.0 * w[m] * d.c;
        }
        ++r;
    }
    for (int t = 0; t < 4; ++t) {
        const int tp = (t + 3) % 4;
        for (int m = 0; m <= 3; ++m) {
            A(r, idx(t, m, 0, 3 - m)) += 1.0;
            A(r, idx(tp, 0, m, 3 - m)) -= 1.0;
            ++r;
        }
    }
    for (int t = 0; t < 4; ++t) {
        const int tp = (t + 3) % 4;
        // Off-edge vertex of the t-side triangle in the coordinates of the
        // (t-1)-side triangle (P[t-1], P[t], Q).
        const Bary f = barycentric(g.P[tp], g.P[t], g.Q, g.P[(t + 1) % 4]);
        for (int j = 0; j <= 2; ++j) {
            const int k = 2 - j;
            A(r, idx(t, j, 1, k)) += 1.0;
            A(r, idx(tp, 1, j, k)) -= f.a;
            A(r, idx(tp, 0, j + 1, k)) -= f.b;
            A(r, idx(tp, 0, j, k + 1)) -= f.c;
            ++r;
        }
    }
    return A;
}

Eigen::VectorXd assemble_rhs(const QuadGeometry& g, const FvsDofs& dofs) {
    Eigen::VectorXd b = Eigen::VectorXd::Zero(56);
    int r = 0;
    for (int t = 0; t < 4; ++t) {
        b(r++) = dofs.value[t];
        b(r++) = dofs.value[(t + 1) % 4];
    }
    for (int t = 0; t < 4; ++t) {
        const int u = (t + 1) % 4;
        const Point2 A = g.P[t];
        const Point2 B = g.P[u];
        b(r++) = dofs.grad_x[t] * (B.x - A.x) + dofs.grad_y[t] * (B.y - A.y);
        b(r++) = dofs.grad_x[t] * (g.Q.x - A.x) + dofs.grad_y[t] * (g.Q.y - A.y);
        b(r++) = dofs.grad_x[u] * (A.x - B.x) + dofs.grad_y[u] * (A.y - B.y);
        b(r++) = dofs.grad_x[u] * (g.Q.x - B.x) + dofs.grad_y[u] * (g.Q.y - B.y);
    }
    for (int t = 0; t < 4; ++t) b(r++) = dofs.edge_normal[t];
    return b;
}

// The 56x40 system is consistent for arbitrary DOFs and has full column
// rank on strictly convex quads, so the least-squares solution is exact up
// to round-off.
class ElementSolver {
public:
    explicit ElementSolver(const std::array<Point2, 4>& corners)
        : geom_(make_geometry(corners)), A_(assemble_matrix(geom_)), cod_(A_) {}

    const QuadGeometry& geometry() const { return geom_; }

    std::array<std::array<double, 10>, 4> solve(const FvsDofs& dofs, double& residual) const {
        const Eigen::VectorXd b = assemble_rhs(geom_, dofs);
        const Eigen::VectorXd x = cod_.solve(b);
        residual = (A_ * x - b).lpNorm<Eigen::Infinity>();
        if (residual > 1e-9 * (1.0 + b.lpNorm<Eigen::Infinity>())) {
            throw std::runtime_error("macro-element system not solvable to tolerance");
        }
        std::array<std::array<double, 10>, 4> bb{};
        for (int t = 0; t < 4; ++t) {
            for (int m = 0; m < 10; ++m) bb[t][m] = x(t * 10 + m);
        }
        return bb;
    }

private:
    QuadGeometry geom_;
    Eigen::MatrixXd A_;
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod_;
};

const QuadGeometry& unit_square_geometry() {
    static const QuadGeometry g =
        make_geometry({Point2{0.0, 0.0}, Point2{1.0, 0.0}, Point2{1.0, 1.0}, Point2{0.0, 1.0}});
    return g;
}

}  // namespace

FvsElement fvs_solve_element(const std::array<Point2, 4>& corners, const FvsDofs& dofs) {
    const ElementSolver solver(corners);
    FvsElement elem;
    elem.corners_ = corners;
    elem.q_ = solver.geometry().Q;
    elem.bb_ = solver.solve(dofs, elem.residual_);
    return elem;
}

double FvsElement::value_extended(Point2 p) const {
    const QuadGeometry g{corners_, q_};
    const int t = locate_sector(g, p);
    const Bary l = barycentric(g.P[t], g.P[(t + 1) % 4], g.Q, p);
    return eval_bb3(bb_[t], l);
}

std::array<double, 2> FvsElement::gradient_extended(Point2 p) const {
    const QuadGeometry g{corners_, q_};
    const int t = locate_sector(g, p);
    const Point2 A = g.P[t];
    const Point2 B = g.P[(t + 1) % 4];
    const Bary l = barycentric(A, B, g.Q, p);
    const Bary dx = direction_coords(A, B, g.Q, {1.0, 0.0});
    const Bary dy = direction_coords(A, B, g.Q, {0.0, 1.0});
    return {eval_bb3_deriv(bb_[t], l, dx), eval_bb3_deriv(bb_[t], l, dy)};
}

namespace {

void require_inside(const std::array<Point2, 4>& P, Point2 p) {
    double diameter = 0.0;
    for (int t = 0; t < 4; ++t) {
        diameter = std::max(diameter, std::hypot(P[t].x - P[(t + 1) % 4].x,
                                                 P[t].y - P[(t + 1) % 4].y));
    }
    const double eps = 1e-9 * (1.0 + diameter);
    for (int t = 0; t < 4; ++t) {
        if (cross2(sub(P[(t + 1) % 4], P[t]), sub(p, P[t])) < -eps) {
            throw std::domain_error("evaluation point outside the macro-element quad");
        }
    }
}

}  // namespace

double FvsElement::value(Point2 p) const {
    require_inside(corners_, p);
    return value_extended(p);
}

std::array<double, 2> FvsElement::gradient(Point2 p) const {
    require_inside(corners_, p);
    return gradient_extended(p);
}

FvsDofs FvsElement::extract_dofs() const {
    const QuadGeometry g{corners_, q_};
    FvsDofs dofs;
    for (int t = 0; t < 4; ++t) {
        dofs.value[t] = value_extended(corners_[t]);
        const auto grad = gradient_extended(corners_[t]);
        dofs.grad_x[t] = grad[0];
        dofs.grad_y[t] = grad[1];
        const Point2 mid{0.5 * (corners_[t].x + corners_[(t + 1) % 4].x),
                         0.5 * (corners_[t].y + corners_[(t + 1) % 4].y)};
        const auto gm = gradient_extended(mid);
        const Point2 n = outward_normal(g, t);
        dofs.edge_normal[t] = gm[0] * n.x + gm[1] * n.y;
    }
    return dofs;
}

FvsSurface::FvsSurface(CoverIndex cover, const EmbeddingConfig& cfg) : cover_(std::move(cover)) {
    auto errors = validate_embedding(cfg, cover_);
    if (!errors.empty()) throw std::invalid_argument(errors.front());

    const TorusGrid& g = cover_.grid();
    const int n = cover_.sheets();

    // Global DOF tables: one entry per cover vertex (value, d/du, d/dv) and
    // one per cover edge (derivative along the canonical +x/+y normal).
    // Sheets identified at a vertex share the averaged entry.
    std::map<CoverVertexKey, std::array<Vec3, 3>> vertex_dofs;
    for (int j = 0; j < g.height; ++j) {
        for (int i = 0; i < g.width; ++i) {
            const GridIndex v{i, j};
            for (const auto& cycle : permutation_cycles(cover_.vertex_monodromy(v))) {
                Vec3 val{}, du{}, dv{};
                for (int s : cycle) {
                    val += torus_embed(s, i, j, g, cfg);
                    du += torus_embed_du(s, i, j, g, cfg);
                    dv += torus_embed_dv(s, i, j, g, cfg);
                }
                const double inv = 1.0 / static_cast<double>(cycle.size());
                const int rep = *std::min_element(cycle.begin(), cycle.end());
                vertex_dofs[CoverVertexKey{v, rep}] = {val * inv, du * inv, dv * inv};
            }
        }
    }

    std::map<CoverEdgeKey, Vec3> edge_dofs;
    for (int j = 0; j < g.height; ++j) {
        for (int i = 0; i < g.width; ++i) {
            const GridIndex cell{i, j};
            for (int s = 0; s < n; ++s) {
                auto [cx, sx] = cover_.neighbor(cell, s, 1, 0);
                (void)cx;
                edge_dofs[CoverEdgeKey{cell, Direction::PlusX, s}] =
                    0.5 * (torus_embed_du(s, i + 1.0, j + 0.5, g, cfg) +
                           torus_embed_du(sx, i + 1.0, j + 0.5, g, cfg));
                auto [cy, sy] = cover_.neighbor(cell, s, 0, 1);
                (void)cy;
                edge_dofs[CoverEdgeKey{cell, Direction::PlusY, s}] =
                    0.5 * (torus_embed_dv(s, i + 0.5, j + 1.0, g, cfg) +
                           torus_embed_dv(sy, i + 0.5, j + 1.0, g, cfg));
            }
        }
    }

    // Every cover cell is the unit square in its base chart, so a single
    // factorization serves all elements.
    const ElementSolver solver(unit_square_geometry().P);

    patches_.resize(static_cast<size_t>(g.cell_count()) * n);
    for (int j = 0; j < g.height; ++j) {
        for (int i = 0; i < g.width; ++i) {
            const GridIndex cell{i, j};
            for (int s = 0; s < n; ++s) {
                std::array<const std::array<Vec3, 3>*, 4> corner{};
                for (int t = 0; t < 4; ++t) {
                    corner[t] = &vertex_dofs.at(cover_.corner_vertex(cell, s, t));
                }
                // Edge t runs corner t -> t+1; sign relates the element's
                // outward normal to the canonical edge normal.
                const std::array<std::pair<CoverEdgeKey, double>, 4> edge{
                    std::pair{cover_.edge_key(cell, s, 0, -1), -1.0},
                    std::pair{cover_.edge_key(cell, s, 1, 0), 1.0},
                    std::pair{cover_.edge_key(cell, s, 0, 1), 1.0},
                    std::pair{cover_.edge_key(cell, s, -1, 0), -1.0}};

                auto& patch = patches_[static_cast<size_t>(g.cell_index(cell)) * n + s];
                for (int comp = 0; comp < 3; ++comp) {
                    auto pick = [comp](const Vec3& v) {
                        return comp == 0 ? v.x : comp == 1 ? v.y : v.z;
                    };
                    FvsDofs dofs;
                    for (int t = 0; t < 4; ++t) {
                        dofs.value[t] = pick((*corner[t])[0]);
                        dofs.grad_x[t] = pick((*corner[t])[1]);
                        dofs.grad_y[t] = pick((*corner[t])[2]);
                        dofs.edge_normal[t] =
                            edge[t].second * pick(edge_dofs.at(edge[t].first));
                    }
                    double residual = 0.0;
                    const auto bb = solver.solve(dofs, residual);
                    max_residual_ = std::max(max_residual_, residual);
                    for (int t = 0; t < 4; ++t) {
                        for (int m = 0; m < 10; ++m) {
                            if (comp == 0) patch[t][m].x = bb[t][m];
                            else if (comp == 1) patch[t][m].y = bb[t][m];
                            else patch[t][m].z = bb[t][m];
                        }
                    }
                }
            }
        }
    }
}

Vec3 FvsSurface::value(GridIndex cell, int sheet, double x, double y) const {
    const QuadGeometry& g = unit_square_geometry();
    const int t = locate_sector(g, {x, y});
    const Bary l = barycentric(g.P[t], g.P[(t + 1) % 4], g.Q, {x, y});
    const TorusGrid& grid = cover_.grid();
    const auto& patch =
        patches_[static_cast<size_t>(grid.cell_index(grid.wrap(cell))) * cover_.sheets() +
                 sheet];
    static constexpr int fact[4] = {1, 1, 2, 6};
    Vec3 out{};
    for (int i = 0; i <= 3; ++i) {
        for (int jj = 0; i + jj <= 3; ++jj) {
            const int k = 3 - i - jj;
            const double w = 6.0 / (fact[i] * fact[jj] * fact[k]) * ipow(l.a, i) *
                             ipow(l.b, jj) * ipow(l.c, k);
            out += patch[t][bb_index(i, jj, k)] * w;
        }
    }
    return out;
}

std::array<Vec3, 2> FvsSurface::gradient(GridIndex cell, int sheet, double x, double y) const {
    const QuadGeometry& g = unit_square_geometry();
    const int t = locate_sector(g, {x, y});
    const Point2 A = g.P[t];
    const Point2 B = g.P[(t + 1) % 4];
    const Bary l = barycentric(A, B, g.Q, {x, y});
    const Bary dx = direction_coords(A, B, g.Q, {1.0, 0.0});
    const Bary dy = direction_coords(A, B, g.Q, {0.0, 1.0});
    const TorusGrid& grid = cover_.grid();
    const auto& patch =
        patches_[static_cast<size_t>(grid.cell_index(grid.wrap(cell))) * cover_.sheets() +
                 sheet];
    std::array<std::array<double, 10>, 3> comp{};
    for (int m = 0; m < 10; ++m) {
        comp[0][m] = patch[t][m].x;
        comp[1][m] = patch[t][m].y;
        comp[2][m] = patch[t][m].z;
    }
    return {Vec3{eval_bb3_deriv(comp[0], l, dx), eval_bb3_deriv(comp[1], l, dx),
                 eval_bb3_deriv(comp[2], l, dx)},
            Vec3{eval_bb3_deriv(comp[0], l, dy), eval_bb3_deriv(comp[1], l, dy),
                 eval_bb3_deriv(comp[2], l, dy)}};
}

SurfaceFn FvsSurface::surface_fn() const {
    return [this](GridIndex cell, int sheet, double x, double y) {
        return value(cell, sheet, x, y);
    };
}

QuadMesh build_fvs_surface(const BranchedCoverSpec& spec, const EmbeddingConfig& cfg) {
    auto errors = validate_cover(spec);
    if (!errors.empty()) throw std::invalid_argument(errors.front());
    const FvsSurface surface(CoverIndex(spec), cfg);
    return tessellate_surface(surface.cover(), surface.surface_fn(), cfg.density);
}

}  // namespace branched
