#include "branched/smoothness_scan.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace branched {

namespace {

double max_abs_diff(const Vec3& a, const Vec3& b) {
    return std::max({std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z)});
}

// Base-chart gradient of the (cell, sheet) piece at local (x, y) by central
// differences; the evaluator's polynomial extension keeps the stencil on one
// piece even at the boundary.
std::array<Vec3, 2> numeric_gradient(const SurfaceFn& f, GridIndex cell, int sheet, double x,
                                     double y, double h) {
    const Vec3 gx = (f(cell, sheet, x + h, y) - f(cell, sheet, x - h, y)) * (0.5 / h);
    const Vec3 gy = (f(cell, sheet, x, y + h) - f(cell, sheet, x, y - h)) * (0.5 / h);
    return {gx, gy};
}

}  // namespace

SmoothnessReport numeric_smoothness_scan(const CoverIndex& cover, const SurfaceFn& surface,
                                         int order, const EdgeSamplePlan& plan) {
    if (order < 0) throw std::invalid_argument("smoothness order must be nonnegative");
    if (plan.samples_per_edge < 1) {
        throw std::invalid_argument("edge sample plan needs at least one interior sample");
    }
    if (plan.derivative_step <= 0.0) {
        throw std::invalid_argument("derivative step must be positive");
    }

    const TorusGrid& g = cover.grid();
    SmoothnessReport report;
    report.order = order;

    const int K = plan.samples_per_edge;
    for (int j = 0; j < g.height; ++j) {
        for (int i = 0; i < g.width; ++i) {
            const GridIndex cell{i, j};
            for (int s = 0; s < cover.sheets(); ++s) {
                // Canonical edges leaving this cover cell: +x and +y. Every
                // cover edge is visited exactly once this way.
                for (int dir = 0; dir < 2; ++dir) {
                    const int dx = dir == 0 ? 1 : 0;
                    const int dy = dir == 0 ? 0 : 1;
                    auto [ncell, nsheet] = cover.neighbor(cell, s, dx, dy);

                    EdgeScan scan;
                    scan.key = cover.edge_key(cell, s, dx, dy);
                    // Endpoints of a +x edge are the SE and NE corners of
                    // the left cell; of a +y edge, the NW and NE corners.
                    const int c0 = dir == 0 ? 1 : 3;
                    const CoverVertexKey v0 = cover.corner_vertex(cell, s, c0);
                    const CoverVertexKey v1 = cover.corner_vertex(cell, s, 2);
                    scan.ramification_incident = cover.ramification_index(v0) > 1 ||
                                                 cover.ramification_index(v1) > 1;

                    for (int k = 1; k <= K; ++k) {
                        const double t = static_cast<double>(k) / (K + 1);
                        // Local coordinates of the same edge point on the
                        // two sides.
                        const double ax = dir == 0 ? 1.0 : t;
                        const double ay = dir == 0 ? t : 1.0;
                        const double bx = dir == 0 ? 0.0 : t;
                        const double by = dir == 0 ? t : 0.0;

                        const Vec3 va = surface(cell, s, ax, ay);
                        const Vec3 vb = surface(ncell, nsheet, bx, by);
                        scan.value_gap = std::max(scan.value_gap, max_abs_diff(va, vb));

                        if (order >= 1) {
                            const auto ga = numeric_gradient(surface, cell, s, ax, ay,
                                                             plan.derivative_step);
                            const auto gb = numeric_gradient(surface, ncell, nsheet, bx, by,
                                                             plan.derivative_step);
                            const double gap = std::max(max_abs_diff(ga[0], gb[0]),
                                                        max_abs_diff(ga[1], gb[1]));
                            scan.gradient_gap = std::max(scan.gradient_gap, gap);
                        }
                    }

                    ++report.edges;
                    if (scan.ramification_incident) ++report.ramification_incident_edges;
                    report.max_value_gap = std::max(report.max_value_gap, scan.value_gap);
                    if (order >= 1) {
                        if (scan.ramification_incident) {
                            report.max_gradient_gap_ramified =
                                std::max(report.max_gradient_gap_ramified, scan.gradient_gap);
                        } else {
                            report.max_gradient_gap =
                                std::max(report.max_gradient_gap, scan.gradient_gap);
                        }
                    }

                    const bool value_bad = scan.value_gap > plan.value_tolerance;
                    const bool gradient_bad = order >= 1 && !scan.ramification_incident &&
                                              scan.gradient_gap > plan.gradient_tolerance;
                    if (value_bad || gradient_bad) report.failures.push_back(scan);
                }
            }
        }
    }

    report.value_pass = report.max_value_gap <= plan.value_tolerance;
    report.gradient_pass = order < 1 || report.max_gradient_gap <= plan.gradient_tolerance;
    return report;
}

}  // namespace branched
