// Command-line pipeline over branched covers of the torus grid:
//   analyze  - cover validation, topology, basis census (JSON)
//   build    - surface construction and OBJ export with mesh/scan report
//   confdim  - conformality dimension oracle vs. closed-form variants (CSV)
//   check    - verification suite with itemized pass/fail report
//
// Exit codes: 0 ok, 1 malformed config/arguments, 2 validation failure,
// 3 failed checks, 4 internal pipeline error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "branched/analyzer.hpp"
#include "branched/branched_basis.hpp"
#include "branched/config.hpp"
#include "branched/cover.hpp"
#include "branched/fvs.hpp"
#include "branched/geometry.hpp"
#include "branched/smoothness_scan.hpp"

namespace {

using nlohmann::json;
using namespace branched;

constexpr int kExitConfig = 1;
constexpr int kExitValidation = 2;
constexpr int kExitCheck = 3;
constexpr int kExitPipeline = 4;

json topology_json(const CoverTopology& topo) {
    json ram = json::array();
    for (const RamificationPoint& rp : topo.ramification) {
        ram.push_back({{"vertex", {rp.vertex.i, rp.vertex.j}}, {"indices", rp.indices}});
    }
    return {{"V", topo.vertices},       {"E", topo.edges},
            {"F", topo.faces},          {"euler", topo.euler},
            {"genus", topo.genus},      {"ramification", ram},
            {"total_ramification", topo.total_ramification()}};
}

json census_json(const CensusCounts& c) {
    return {{"components", c.total},
            {"regular", c.regular},
            {"ramified", c.ramified},
            {"irregular", c.irregular}};
}

json mesh_json(const MeshReport& m) {
    return {{"V", m.vertices}, {"E", m.edges},       {"F", m.faces},      {"euler", m.euler},
            {"closed", m.closed}, {"oriented", m.oriented}, {"genus", m.genus}};
}

json scan_json(const SmoothnessReport& r) {
    return {{"order", r.order},
            {"edges", r.edges},
            {"ramification_incident_edges", r.ramification_incident_edges},
            {"max_value_gap", r.max_value_gap},
            {"max_gradient_gap", r.max_gradient_gap},
            {"max_gradient_gap_ramified", r.max_gradient_gap_ramified},
            {"value_pass", r.value_pass},
            {"gradient_pass", r.gradient_pass}};
}

int report_violations(const std::vector<std::string>& violations) {
    json out;
    out["violations"] = violations;
    std::cout << out.dump(2) << "\n";
    return kExitValidation;
}

struct PipelineOptions {
    std::string config_path;
    std::optional<int> degree;
    std::optional<int> density;
    std::string out_path;
};

// Builds the configured surface: its evaluator (for scans), the scan order
// the construction claims, and the tessellated mesh.
struct BuiltSurface {
    SurfaceFn surface;
    int scan_order = 0;
    QuadMesh mesh;
    // Keep the owning objects alive for the surface closure.
    std::shared_ptr<BranchedBasis> basis;
    std::shared_ptr<std::vector<Vec3>> net;
    std::shared_ptr<FvsSurface> fvs;
};

BuiltSurface build_surface(const RunConfig& cfg, const CoverIndex& cover,
                           const PipelineOptions& opts, bool perturb_control) {
    EmbeddingConfig emb = cfg.embedding;
    if (opts.density) emb.density = *opts.density;

    BuiltSurface built;
    if (cfg.spline.kind == "fvs") {
        built.fvs = std::make_shared<FvsSurface>(cover, emb);
        auto fvs = built.fvs;
        built.surface = [fvs](GridIndex cell, int sheet, double x, double y) {
            return fvs->value(cell, sheet, x, y);
        };
        built.scan_order = 1;
    } else {
        const int degree = opts.degree.value_or(cfg.spline.degree);
        built.basis = std::make_shared<BranchedBasis>(cover, degree);
        built.net = std::make_shared<std::vector<Vec3>>(sample_control_net(*built.basis, emb));
        if (perturb_control && !built.net->empty()) {
            (*built.net)[0] += Vec3{10.0, 0.0, 0.0};
        }
        auto basis = built.basis;
        auto net = built.net;
        built.surface = [basis, net](GridIndex cell, int sheet, double x, double y) {
            return basis->eval_on_cell(*net, cell, sheet, x, y);
        };
        built.scan_order = degree >= 2 ? 1 : 0;
    }
    built.mesh = tessellate_surface(cover, built.surface, emb.density);
    return built;
}

int run_analyze(const PipelineOptions& opts) {
    const RunConfig cfg = load_run_config(opts.config_path);
    const auto violations = validate_cover(cfg.cover_spec());
    if (!violations.empty()) return report_violations(violations);

    const CoverIndex cover(cfg.cover_spec());
    const CoverTopology topo = cover_topology(cover);

    json out;
    out["grid"] = {{"W", cfg.grid.width}, {"H", cfg.grid.height}};
    out["sheets"] = cfg.sheets;
    out["topology"] = topology_json(topo);
    for (int d : {1, 2}) {
        const BranchedBasis basis(cover, d);
        out["basis"]["degree_" + std::to_string(d)] = census_json(census(basis));
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

int run_build(const PipelineOptions& opts) {
    const RunConfig cfg = load_run_config(opts.config_path);
    const auto violations = validate_cover(cfg.cover_spec());
    if (!violations.empty()) return report_violations(violations);

    const std::string out_path = !opts.out_path.empty() ? opts.out_path : cfg.output;
    if (out_path.empty()) {
        throw ConfigError("no output path: set \"output\" in the config or pass --out");
    }

    const CoverIndex cover(cfg.cover_spec());
    {
        EmbeddingConfig emb = cfg.embedding;
        if (opts.density) emb.density = *opts.density;
        const auto emb_errors = validate_embedding(emb, cover);
        if (!emb_errors.empty()) return report_violations(emb_errors);
    }

    const BuiltSurface built = build_surface(cfg, cover, opts, false);
    const SmoothnessReport scan = numeric_smoothness_scan(cover, built.surface,
                                                          built.scan_order);

    std::ofstream obj(out_path, std::ios::binary);
    if (!obj) throw std::runtime_error("cannot open output file: " + out_path);
    export_obj(obj, built.mesh);
    obj.close();

    json out;
    out["output"] = out_path;
    out["topology"] = topology_json(cover_topology(cover));
    out["mesh"] = mesh_json(mesh_report(built.mesh));
    out["scan"] = scan_json(scan);
    std::cout << out.dump(2) << "\n";
    return 0;
}

struct ConfdimOptions {
    bool sweep = false;
    int N = 3, n = 3, r = 1;
    std::vector<int> range_N{2, 4};
    std::vector<int> range_n{0, 5};
    std::vector<int> range_r{0, 3};
    std::string out_path;
};

int run_confdim(const ConfdimOptions& opts) {
    int N_lo, N_hi, n_lo, n_hi, r_lo, r_hi;
    if (opts.sweep) {
        N_lo = opts.range_N[0];
        N_hi = opts.range_N[1];
        n_lo = opts.range_n[0];
        n_hi = opts.range_n[1];
        r_lo = opts.range_r[0];
        r_hi = opts.range_r[1];
    } else {
        N_lo = N_hi = opts.N;
        n_lo = n_hi = opts.n;
        r_lo = r_hi = opts.r;
    }
    if (N_lo < 2 || N_lo > N_hi || n_lo < 0 || n_lo > n_hi || r_lo < 0 || r_lo > r_hi) {
        throw ConfigError("invalid conformality ranges: need 2 <= N, 0 <= n, 0 <= r, lo <= hi");
    }

    const auto rows = conformality_sweep(N_lo, N_hi, n_lo, n_hi, r_lo, r_hi);
    if (!opts.out_path.empty()) {
        std::ofstream out(opts.out_path);
        if (!out) throw std::runtime_error("cannot open output file: " + opts.out_path);
        write_sweep_csv(out, rows);
    } else {
        write_sweep_csv(std::cout, rows);
    }
    return 0;
}

struct CheckOptions : PipelineOptions {
    double tolerance = 1e-8;  // gradient (C1) tolerance
    bool inject_weld_defect = false;
    bool perturb_control = false;
};

int run_check(const CheckOptions& opts) {
    const RunConfig cfg = load_run_config(opts.config_path);
    const auto violations = validate_cover(cfg.cover_spec());
    if (!violations.empty()) return report_violations(violations);

    const CoverIndex cover(cfg.cover_spec());
    const CoverTopology topo = cover_topology(cover);

    json checks = json::array();
    bool all_pass = true;
    auto record = [&](const std::string& name, bool pass, const json& detail) {
        checks.push_back({{"name", name}, {"pass", pass}, {"detail", detail}});
        all_pass = all_pass && pass;
    };

    BuiltSurface built = build_surface(cfg, cover, opts, opts.perturb_control);

    if (cfg.spline.kind != "fvs") {
        // Partition of unity at random cover points, all coefficients 1.
        const int degree = opts.degree.value_or(cfg.spline.degree);
        const BranchedBasis& basis = *built.basis;
        std::vector<double> ones(basis.components().size(), 1.0);
        std::mt19937 rng(12345);
        std::uniform_int_distribution<int> cell_i(0, cfg.grid.width - 1);
        std::uniform_int_distribution<int> cell_j(0, cfg.grid.height - 1);
        std::uniform_int_distribution<int> sheet(0, cfg.sheets - 1);
        std::uniform_real_distribution<double> local(0.0, 1.0);
        double max_dev = 0.0;
        for (int k = 0; k < 10000; ++k) {
            const CoverPoint p{{{cell_i(rng), cell_j(rng)}, local(rng), local(rng)}, sheet(rng)};
            max_dev = std::max(max_dev, std::abs(basis.eval(ones, p) - 1.0));
        }
        record("partition_of_unity", max_dev <= 1e-12,
               {{"degree", degree}, {"max_deviation", max_dev}, {"tolerance", 1e-12}});
    }

    EdgeSamplePlan plan;
    plan.gradient_tolerance = opts.tolerance;
    const SmoothnessReport scan =
        numeric_smoothness_scan(cover, built.surface, built.scan_order, plan);
    record("continuity_c0", scan.value_pass,
           {{"max_value_gap", scan.max_value_gap}, {"tolerance", plan.value_tolerance}});
    if (built.scan_order >= 1) {
        record("smoothness_c1", scan.gradient_pass,
               {{"max_gradient_gap", scan.max_gradient_gap},
                {"tolerance", plan.gradient_tolerance},
                {"ramification_incident_max", scan.max_gradient_gap_ramified}});
    }

    QuadMesh mesh = std::move(built.mesh);
    if (opts.inject_weld_defect && !mesh.faces.empty()) {
        // Detach the first face: give it private copies of its vertices so
        // its edges become boundary edges.
        auto& face = mesh.faces.front();
        for (int e = 0; e < 4; ++e) {
            mesh.positions.push_back(mesh.positions[face[e]]);
            face[e] = static_cast<int>(mesh.positions.size()) - 1;
        }
    }
    const MeshReport report = mesh_report(mesh);
    record("mesh_closed", report.closed, mesh_json(report));
    record("mesh_oriented", report.oriented, mesh_json(report));
    record("euler_matches_cover", report.euler == topo.euler,
           {{"mesh_euler", report.euler}, {"cover_euler", topo.euler}});
    record("genus_matches_cover", report.genus == topo.genus,
           {{"mesh_genus", report.genus}, {"cover_genus", topo.genus}});

    json out;
    out["checks"] = checks;
    out["pass"] = all_pass;
    std::cout << out.dump(2) << "\n";
    return all_pass ? 0 : kExitCheck;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Branched splines on covers of the torus grid"};
    app.require_subcommand(1);

    PipelineOptions analyze_opts;
    CLI::App* analyze = app.add_subcommand("analyze", "Cover topology and basis census");
    analyze->add_option("--config", analyze_opts.config_path, "Config JSON path")->required();

    PipelineOptions build_opts;
    CLI::App* build = app.add_subcommand("build", "Build the surface and export OBJ");
    build->add_option("--config", build_opts.config_path, "Config JSON path")->required();
    build->add_option("--degree", build_opts.degree, "Override spline degree")
        ->check(CLI::IsMember({1, 2}));
    build->add_option("--density", build_opts.density, "Override tessellation density")
        ->check(CLI::PositiveNumber);
    build->add_option("--out", build_opts.out_path, "Output OBJ path");

    ConfdimOptions confdim_opts;
    CLI::App* confdim =
        app.add_subcommand("confdim", "Conformality dimension: oracle vs. formula variants");
    confdim->add_flag("--sweep", confdim_opts.sweep, "Run the full range sweep");
    confdim->add_option("--N", confdim_opts.N, "Number of distinct slopes (single run)");
    confdim->add_option("--n", confdim_opts.n, "Polynomial degree (single run)");
    confdim->add_option("--r", confdim_opts.r, "Smoothness order (single run)");
    confdim->add_option("--N-range", confdim_opts.range_N, "Sweep N range LO HI")
        ->expected(2);
    confdim->add_option("--n-range", confdim_opts.range_n, "Sweep n range LO HI")->expected(2);
    confdim->add_option("--r-range", confdim_opts.range_r, "Sweep r range LO HI")->expected(2);
    confdim->add_option("--out", confdim_opts.out_path, "Output CSV path (default stdout)");

    CheckOptions check_opts;
    CLI::App* check = app.add_subcommand("check", "Run the verification suite");
    check->add_option("--config", check_opts.config_path, "Config JSON path")->required();
    check->add_option("--degree", check_opts.degree, "Override spline degree")
        ->check(CLI::IsMember({1, 2}));
    check->add_option("--density", check_opts.density, "Override tessellation density")
        ->check(CLI::PositiveNumber);
    check->add_option("--tolerance", check_opts.tolerance, "Gradient (C1) tolerance");
    check->add_flag("--inject-weld-defect", check_opts.inject_weld_defect,
                    "Fault injection: detach one face before mesh checks")
        ->group("");  // hidden
    check->add_flag("--perturb-control", check_opts.perturb_control,
                    "Fault injection: move one control point by 10 units")
        ->group("");  // hidden

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (analyze->parsed()) return run_analyze(analyze_opts);
        if (build->parsed()) return run_build(build_opts);
        if (confdim->parsed()) return run_confdim(confdim_opts);
        if (check->parsed()) return run_check(check_opts);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const WeldError& e) {
        std::cerr << "internal consistency error: " << e.what() << "\n";
        return kExitPipeline;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPipeline;
    }
    return 0;
}
