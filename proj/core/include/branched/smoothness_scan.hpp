#pragma once

#include <functional>
#include <vector>

#include "branched/cover.hpp"
#include "branched/grid.hpp"
#include "branched/vec3.hpp"

namespace branched {

/// Patchwise surface evaluator: the value of the piece attached to cover
/// cell (cell, sheet) at local coordinates (x, y). Outside [0,1]^2 the
/// piece's polynomial extension must be returned; the scanner relies on
/// this for one-sided limits and derivatives at cell boundaries.
using SurfaceFn = std::function<Vec3(GridIndex cell, int sheet, double x, double y)>;

struct EdgeSamplePlan {
    int samples_per_edge = 5;        // interior samples, at t = k/(K+1)
    double derivative_step = 1e-5;   // central-difference step in grid units
    double value_tolerance = 1e-10;
    double gradient_tolerance = 1e-8;
};

struct EdgeScan {
    CoverEdgeKey key;
    bool ramification_incident = false;
    double value_gap = 0.0;     // max one-sided value mismatch over samples
    double gradient_gap = 0.0;  // max one-sided gradient mismatch (order >= 1)
};

struct SmoothnessReport {
    int order = 0;
    long long edges = 0;
    long long ramification_incident_edges = 0;
    double max_value_gap = 0.0;           // over all edges
    double max_gradient_gap = 0.0;        // edges away from ramification vertices
    double max_gradient_gap_ramified = 0.0;  // ramification-incident edges, reported only
    bool value_pass = false;
    bool gradient_pass = false;  // vacuously true when order == 0
    std::vector<EdgeScan> failures;
    bool pass() const { return value_pass && gradient_pass; }
};

/// Compares one-sided values (order >= 0) and base-chart gradients
/// (order >= 1, central differences) across every cover edge, matching
/// sheets through the cover's crossing permutations. Gradient mismatches
/// on edges incident to a ramification vertex are reported separately and
/// never fail the scan.
SmoothnessReport numeric_smoothness_scan(const CoverIndex& cover, const SurfaceFn& surface,
                                         int order, const EdgeSamplePlan& plan = {});

}  // namespace branched
