// Microbenchmarks for the hot paths: base spline evaluation, cover
// indexing, component enumeration, spline and macro-element surface
// construction, tessellation, and the exact conformality oracle.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "branched/analyzer.hpp"
#include "branched/branched_basis.hpp"
#include "branched/bspline.hpp"
#include "branched/cover.hpp"
#include "branched/fvs.hpp"
#include "branched/geometry.hpp"
#include "branched/grid.hpp"
#include "branched/vec3.hpp"

namespace {

using namespace branched;

BranchedCoverSpec triple_cover() {
    BranchedCoverSpec spec;
    spec.grid = TorusGrid(20, 20);
    spec.sheets = 3;
    for (int j = 8; j <= 11; ++j) {
        spec.crossings.push_back({{9, j}, Direction::PlusX, {1, 2, 0}});
    }
    return spec;
}

EmbeddingConfig example_embedding(int sheets) {
    EmbeddingConfig cfg;
    cfg.major_radius = 8.0;
    cfg.minor_radius = 2.0;
    for (int s = 0; s < sheets; ++s) cfg.offsets.push_back(5.0 * s);
    cfg.blend_radius = 2.0;
    return cfg;
}

void bm_bspline_eval_1d(benchmark::State& state) {
    const int degree = static_cast<int>(state.range(0));
    double u = 0.0;
    for (auto _ : state) {
        u += 1e-3;
        if (u > degree) u = 0.0;
        benchmark::DoNotOptimize(bspline_eval_1d(degree, u));
    }
}
BENCHMARK(bm_bspline_eval_1d)->Arg(1)->Arg(2)->Arg(3);

void bm_cover_index_build(benchmark::State& state) {
    const BranchedCoverSpec spec = triple_cover();
    for (auto _ : state) {
        CoverIndex index(spec);
        benchmark::DoNotOptimize(index.cover_vertex_count());
    }
}
BENCHMARK(bm_cover_index_build);

void bm_cover_topology(benchmark::State& state) {
    const CoverIndex index(triple_cover());
    for (auto _ : state) {
        benchmark::DoNotOptimize(cover_topology(index).genus);
    }
}
BENCHMARK(bm_cover_topology);

void bm_enumerate_components(benchmark::State& state) {
    const BranchedCoverSpec spec = triple_cover();
    const int degree = static_cast<int>(state.range(0));
    for (auto _ : state) {
        const BranchedBasis basis = enumerate_components(spec, degree);
        benchmark::DoNotOptimize(basis.components().size());
    }
}
BENCHMARK(bm_enumerate_components)->Arg(1)->Arg(2);

void bm_spline_eval(benchmark::State& state) {
    const BranchedBasis basis = enumerate_components(triple_cover(), 2);
    const std::vector<double> ones(basis.components().size(), 1.0);
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> du(0.0, 20.0);
    std::uniform_int_distribution<int> ds(0, 2);
    std::vector<CoverPoint> points;
    for (int k = 0; k < 1024; ++k) {
        points.push_back({base_point(basis.grid(), du(rng), du(rng)), ds(rng)});
    }
    size_t k = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(basis.eval(ones, points[k++ & 1023]));
    }
}
BENCHMARK(bm_spline_eval);

void bm_control_net(benchmark::State& state) {
    const BranchedBasis basis = enumerate_components(triple_cover(), 2);
    const EmbeddingConfig cfg = example_embedding(3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_control_net(basis, cfg).size());
    }
}
BENCHMARK(bm_control_net);

void bm_tessellate(benchmark::State& state) {
    const BranchedBasis basis = enumerate_components(triple_cover(), 2);
    EmbeddingConfig cfg = example_embedding(3);
    cfg.density = static_cast<int>(state.range(0));
    const std::vector<Vec3> net = sample_control_net(basis, cfg);
    for (auto _ : state) {
        benchmark::DoNotOptimize(tessellate(basis, net, cfg).faces.size());
    }
}
BENCHMARK(bm_tessellate)->Arg(1)->Arg(2);

void bm_fvs_solve_element(benchmark::State& state) {
    const std::array<Point2, 4> quad = {{{0.0, 0.0}, {1.1, -0.1}, {1.2, 1.3}, {-0.2, 0.9}}};
    FvsDofs dofs;
    std::mt19937 rng(2);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int t = 0; t < 4; ++t) {
        dofs.value[t] = unit(rng);
        dofs.grad_x[t] = unit(rng);
        dofs.grad_y[t] = unit(rng);
        dofs.edge_normal[t] = unit(rng);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(fvs_solve_element(quad, dofs).residual());
    }
}
BENCHMARK(bm_fvs_solve_element);

void bm_fvs_surface_build(benchmark::State& state) {
    BranchedCoverSpec spec = triple_cover();
    spec.sheets = 2;
    for (CutCrossing& c : spec.crossings) c.sigma = {1, 0};
    const CoverIndex cover(spec);
    const EmbeddingConfig cfg = example_embedding(2);
    for (auto _ : state) {
        FvsSurface surface(cover, cfg);
        benchmark::DoNotOptimize(surface.max_residual());
    }
}
BENCHMARK(bm_fvs_surface_build);

void bm_conformality_nullity(benchmark::State& state) {
    ConformalityProblem prob;
    prob.forms = default_slopes(static_cast<int>(state.range(0)));
    prob.degree = static_cast<int>(state.range(1));
    prob.smoothness = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(conformality_nullity(prob).dimension);
    }
}
BENCHMARK(bm_conformality_nullity)->Args({3, 3})->Args({4, 5});

}  // namespace

BENCHMARK_MAIN();
