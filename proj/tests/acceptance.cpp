// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line;
// the process exits nonzero when any criterion fails. Tolerances and time
// budgets are pinned here, independent of the library defaults.

#include <array>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "branched/analyzer.hpp"
#include "branched/branched_basis.hpp"
#include "branched/config.hpp"
#include "branched/cover.hpp"
#include "branched/fvs.hpp"
#include "branched/geometry.hpp"
#include "branched/grid.hpp"
#include "branched/smoothness_scan.hpp"
#include "branched/vec3.hpp"
#include "support/fixtures.hpp"

namespace {

using namespace branched;

std::string config_path(const std::string& name) {
    return std::string(BRANCHED_CONFIG_DIR) + "/" + name;
}

std::string tmp_path(const std::string& stem) {
    return std::string(BRANCHED_TEST_TMPDIR) + "/" + stem;
}

// Criterion body: writes informational notes, returns "" on pass or a
// description of the first failure.
using Body = std::function<std::string(std::ostream& notes)>;

bool run_criterion(int number, const std::string& label, double budget_ms, const Body& body) {
    std::ostringstream notes;
    std::string failure;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        failure = body(notes);
    } catch (const std::exception& e) {
        failure = std::string("exception: ") + e.what();
    }
    const auto t1 = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    if (failure.empty() && budget_ms > 0 && ms > budget_ms) {
        std::ostringstream os;
        os << "exceeded time budget: " << ms << " ms > " << budget_ms << " ms";
        failure = os.str();
    }

    std::cout << (failure.empty() ? "[PASS] " : "[FAIL] ") << number << ". " << label << "  ("
              << static_cast<long long>(ms + 0.5) << " ms)\n";
    std::istringstream note_lines(notes.str());
    for (std::string line; std::getline(note_lines, line);) {
        std::cout << "       " << line << "\n";
    }
    if (!failure.empty()) std::cout << "       failure: " << failure << "\n";
    return failure.empty();
}

SurfaceFn spline_surface(const BranchedBasis& basis, const std::vector<Vec3>& net) {
    return [&basis, &net](GridIndex cell, int sheet, double x, double y) {
        return basis.eval_on_cell(net, cell, sheet, x, y);
    };
}

// ---------------------------------------------------------------------------
// Criterion 1 and 2: cover topology of the bundled examples.

std::string check_topology(const RunConfig& cfg, long long vertices, long long edges,
                           long long faces, long long euler, long long genus, int ram_points,
                           int ram_index, std::ostream& notes) {
    const CoverTopology t = cover_topology(cfg.cover_spec());
    std::ostringstream os;
    os << "V'=" << t.vertices << " E'=" << t.edges << " F'=" << t.faces << " chi=" << t.euler
       << " genus=" << t.genus << " ramification points=" << t.ramification.size();
    notes << os.str() << "\n";
    if (vertices >= 0 && t.vertices != vertices) return "V' mismatch";
    if (edges >= 0 && t.edges != edges) return "E' mismatch";
    if (faces >= 0 && t.faces != faces) return "F' mismatch";
    if (t.euler != euler) return "Euler characteristic mismatch";
    if (t.genus != genus) return "genus mismatch";
    if (static_cast<int>(t.ramification.size()) != ram_points) {
        return "ramification point count mismatch";
    }
    for (const RamificationPoint& p : t.ramification) {
        if (p.indices != std::vector<int>{ram_index}) return "ramification index mismatch";
    }
    return "";
}

// ---------------------------------------------------------------------------
// Criterion 8 helpers: random cubics and convex quads for the macro-element.

struct Cubic {
    std::array<std::array<double, 4>, 4> c{};

    double value(double x, double y) const {
        double acc = 0.0;
        for (int i = 0; i <= 3; ++i) {
            for (int j = 0; i + j <= 3; ++j) {
                acc += c[i][j] * std::pow(x, i) * std::pow(y, j);
            }
        }
        return acc;
    }
    std::array<double, 2> gradient(double x, double y) const {
        std::array<double, 2> g{0.0, 0.0};
        for (int i = 0; i <= 3; ++i) {
            for (int j = 0; i + j <= 3; ++j) {
                if (i > 0) g[0] += i * c[i][j] * std::pow(x, i - 1) * std::pow(y, j);
                if (j > 0) g[1] += j * c[i][j] * std::pow(x, i) * std::pow(y, j - 1);
            }
        }
        return g;
    }
};

Cubic random_cubic(std::mt19937& rng) {
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    Cubic f;
    for (int i = 0; i <= 3; ++i) {
        for (int j = 0; i + j <= 3; ++j) f.c[i][j] = coef(rng);
    }
    return f;
}

double cross2(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }

bool strictly_convex_ccw(const std::array<Point2, 4>& q) {
    for (int t = 0; t < 4; ++t) {
        const Point2 a = q[t];
        const Point2 b = q[(t + 1) % 4];
        const Point2 c = q[(t + 2) % 4];
        const Point2 e0{b.x - a.x, b.y - a.y};
        const Point2 e1{c.x - b.x, c.y - b.y};
        if (cross2(e0, e1) <= 0.05) return false;
    }
    return true;
}

std::array<Point2, 4> random_convex_quad(std::mt19937& rng) {
    std::uniform_real_distribution<double> jitter(0.0, 0.35);
    std::uniform_real_distribution<double> radius(0.6, 1.6);
    std::uniform_real_distribution<double> center(-1.0, 1.0);
    for (;;) {
        const double cx = center(rng);
        const double cy = center(rng);
        std::array<Point2, 4> q;
        for (int t = 0; t < 4; ++t) {
            const double angle = t * (std::numbers::pi / 2.0) + jitter(rng);
            const double r = radius(rng);
            q[t] = {cx + r * std::cos(angle), cy + r * std::sin(angle)};
        }
        if (strictly_convex_ccw(q)) return q;
    }
}

FvsDofs sample_dofs(const std::array<Point2, 4>& corners, const Cubic& f) {
    FvsDofs d;
    for (int t = 0; t < 4; ++t) {
        d.value[t] = f.value(corners[t].x, corners[t].y);
        const std::array<double, 2> g = f.gradient(corners[t].x, corners[t].y);
        d.grad_x[t] = g[0];
        d.grad_y[t] = g[1];
    }
    for (int t = 0; t < 4; ++t) {
        const Point2 a = corners[t];
        const Point2 b = corners[(t + 1) % 4];
        const Point2 mid{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
        const Point2 e{b.x - a.x, b.y - a.y};
        const double len = std::hypot(e.x, e.y);
        const Point2 outward{e.y / len, -e.x / len};
        const std::array<double, 2> g = f.gradient(mid.x, mid.y);
        d.edge_normal[t] = g[0] * outward.x + g[1] * outward.y;
    }
    return d;
}

Point2 interior_point(const std::array<Point2, 4>& q, std::mt19937& rng) {
    std::uniform_real_distribution<double> unit(0.05, 0.95);
    const double s = unit(rng);
    const double t = unit(rng);
    const Point2 bottom{q[0].x + s * (q[1].x - q[0].x), q[0].y + s * (q[1].y - q[0].y)};
    const Point2 top{q[3].x + s * (q[2].x - q[3].x), q[3].y + s * (q[2].y - q[3].y)};
    return {bottom.x + t * (top.x - bottom.x), bottom.y + t * (top.y - bottom.y)};
}

}  // namespace

int main() {
    const RunConfig ex3 = load_run_config(config_path("example3.json"));
    const RunConfig ex2 = load_run_config(config_path("example2.json"));
    int failures = 0;
    auto criterion = [&](int number, const std::string& label, double budget_ms,
                         const Body& body) {
        if (!run_criterion(number, label, budget_ms, body)) ++failures;
    };

    criterion(1, "triple-cover topology: V'=1196 E'=2400 F'=1200 chi=-4 genus 3", 1000.0,
              [&](std::ostream& notes) {
                  return check_topology(ex3, 1196, 2400, 1200, -4, 3, 2, 3, notes);
              });

    criterion(2, "double-cover topology: chi=-2 genus 2", 1000.0, [&](std::ostream& notes) {
        return check_topology(ex2, -1, -1, -1, -2, 2, 2, 2, notes);
    });

    criterion(3, "basis census 1196 / 1184 vs. independent enumeration oracle", 0.0,
              [&](std::ostream& notes) {
                  const BranchedCoverSpec spec = ex3.cover_spec();
                  const long long expect[3] = {0, 1196, 1184};
                  for (int degree = 1; degree <= 2; ++degree) {
                      const BranchedBasis basis = enumerate_components(spec, degree);
                      const long long count = static_cast<long long>(basis.components().size());
                      const long long oracle = fixtures::count_lift_components(spec, degree);
                      notes << "degree " << degree << ": components=" << count
                            << " oracle=" << oracle << "\n";
                      if (count != expect[degree]) return std::string("component count mismatch");
                      if (oracle != count) return std::string("oracle disagrees");
                  }
                  const long long v = cover_topology(spec).vertices;
                  if (v != 1196) return std::string("degree-1 count must equal V'");
                  return std::string{};
              });

    criterion(4, "partition of unity <= 1e-12 at 1e4 random cover points", 0.0,
              [&](std::ostream& notes) {
                  std::mt19937 rng(2024);
                  double worst = 0.0;
                  for (const RunConfig* cfg : {&ex3, &ex2}) {
                      const BranchedCoverSpec spec = cfg->cover_spec();
                      std::uniform_real_distribution<double> du(0.0, spec.grid.width);
                      std::uniform_real_distribution<double> dv(0.0, spec.grid.height);
                      std::uniform_int_distribution<int> ds(0, spec.sheets - 1);
                      for (int degree = 1; degree <= 2; ++degree) {
                          const BranchedBasis basis = enumerate_components(spec, degree);
                          const std::vector<double> ones(basis.components().size(), 1.0);
                          for (int k = 0; k < 10000; ++k) {
                              const CoverPoint p{base_point(spec.grid, du(rng), dv(rng)),
                                                 ds(rng)};
                              worst = std::max(worst, std::fabs(basis.eval(ones, p) - 1.0));
                          }
                      }
                  }
                  notes << "max |sum - 1| = " << worst << "\n";
                  return worst <= 1e-12 ? std::string{}
                                        : std::string("partition of unity exceeded 1e-12");
              });

    criterion(5, "smoothness scans: C0 <= 1e-10, C1 <= 1e-8 away from ramification", 0.0,
              [&](std::ostream& notes) {
                  std::string failure;
                  auto scan_one = [&](const std::string& tag, const CoverIndex& cover,
                                      const SurfaceFn& fn, int order) {
                      const SmoothnessReport rep = numeric_smoothness_scan(cover, fn, order);
                      notes << tag << ": value gap " << rep.max_value_gap;
                      if (order >= 1) {
                          notes << ", gradient gap " << rep.max_gradient_gap << " ("
                                << rep.ramification_incident_edges
                                << " ramification-incident edges, gap "
                                << rep.max_gradient_gap_ramified << " reported only)";
                      }
                      notes << "\n";
                      if (failure.empty() && rep.max_value_gap > 1e-10) {
                          failure = tag + ": C0 gap exceeded 1e-10";
                      }
                      if (failure.empty() && order >= 1 && rep.max_gradient_gap > 1e-8) {
                          failure = tag + ": C1 gap exceeded 1e-8";
                      }
                  };
                  const std::array<std::pair<const RunConfig*, const char*>, 2> cases = {
                      {{&ex3, "triple"}, {&ex2, "double"}}};
                  for (const auto& [cfg, name] : cases) {
                      const CoverIndex cover(cfg->cover_spec());
                      for (int degree = 1; degree <= 2; ++degree) {
                          const BranchedBasis basis = enumerate_components(cfg->cover_spec(),
                                                                           degree);
                          const std::vector<Vec3> net = sample_control_net(basis, cfg->embedding);
                          const SurfaceFn fn = spline_surface(basis, net);
                          scan_one(std::string(name) + " bspline d" + std::to_string(degree),
                                   cover, fn, degree >= 2 ? 1 : 0);
                      }
                      const FvsSurface fvs(cover, cfg->embedding);
                      scan_one(std::string(name) + " fvs", cover, fvs.surface_fn(), 1);
                  }
                  return failure;
              });

    criterion(6, "mesh validity: closed, oriented, genus 3 / 2 at densities 1, 2, 4", 0.0,
              [&](std::ostream& notes) {
                  const std::array<std::pair<const RunConfig*, long long>, 2> cases = {
                      {{&ex3, 3}, {&ex2, 2}}};
                  for (const auto& [cfg, expected_genus] : cases) {
                      for (int density : {1, 2, 4}) {
                          const auto t0 = std::chrono::steady_clock::now();
                          EmbeddingConfig emb = cfg->embedding;
                          emb.density = density;
                          QuadMesh mesh;
                          if (cfg->spline.kind == "fvs") {
                              mesh = build_fvs_surface(cfg->cover_spec(), emb);
                          } else {
                              const BranchedBasis basis =
                                  enumerate_components(cfg->cover_spec(), cfg->spline.degree);
                              mesh = tessellate(basis, sample_control_net(basis, emb), emb);
                          }
                          std::ostringstream obj;
                          export_obj(obj, mesh);
                          std::istringstream in(obj.str());
                          const MeshReport rep = mesh_report(parse_obj(in));
                          const auto t1 = std::chrono::steady_clock::now();
                          const double ms =
                              std::chrono::duration<double, std::milli>(t1 - t0).count();
                          notes << cfg->spline.kind << " genus " << expected_genus << " density "
                                << density << ": V=" << rep.vertices << " F=" << rep.faces
                                << " genus=" << rep.genus << " (" << static_cast<long long>(ms)
                                << " ms)\n";
                          if (!rep.closed) return std::string("mesh not closed");
                          if (!rep.oriented) return std::string("mesh not oriented");
                          if (rep.genus != expected_genus) return std::string("genus mismatch");
                          if (ms > 30000.0) return std::string("exceeded 30 s budget");
                      }
                  }
                  return std::string{};
              });

    criterion(7, "conformality oracle vs. both formula variants over the filtered sweep", 0.0,
              [&](std::ostream& notes) {
                  std::vector<SweepRow> rows;
                  for (int N = 2; N <= 4; ++N) {
                      for (int n = 1; n <= 6; ++n) {
                          for (int r = 0; r < n; ++r) {
                              ConformalityProblem prob;
                              prob.forms = default_slopes(N);
                              prob.degree = n;
                              prob.smoothness = r;
                              SweepRow row;
                              row.N = N;
                              row.n = n;
                              row.r = r;
                              row.oracle_dim = conformality_nullity(prob).dimension;
                              row.formula_a =
                                  conformality_dimension_formula(N, n, r, FormulaVariant::A);
                              row.formula_b =
                                  conformality_dimension_formula(N, n, r, FormulaVariant::B);
                              row.agree_a = row.formula_a == row.oracle_dim;
                              row.agree_b = row.formula_b == row.oracle_dim;
                              rows.push_back(row);
                          }
                      }
                  }
                  const std::string csv = tmp_path("acceptance_sweep.csv");
                  {
                      std::ofstream out(csv);
                      if (!out) return std::string("cannot open CSV output");
                      write_sweep_csv(out, rows);
                  }
                  int agree_a = 0;
                  int agree_b = 0;
                  int anchor_210 = -1;
                  int anchor_331 = -1;
                  for (const SweepRow& row : rows) {
                      agree_a += row.agree_a ? 1 : 0;
                      agree_b += row.agree_b ? 1 : 0;
                      if (row.N == 2 && row.n == 1 && row.r == 0) anchor_210 = row.oracle_dim;
                      if (row.N == 3 && row.n == 3 && row.r == 1) anchor_331 = row.oracle_dim;
                  }
                  notes << rows.size() << " rows written to " << csv << "\n";
                  notes << "variant A agrees on " << agree_a << "/" << rows.size()
                        << ", variant B on " << agree_b << "/" << rows.size()
                        << " (reported, not asserted)\n";
                  notes << "anchors: (N=2,n=1,r=0) -> " << anchor_210
                        << ", (N=3,n=3,r=1) -> " << anchor_331 << "\n";
                  if (anchor_210 != 0) return std::string("anchor (2,1,0) must be 0");
                  if (anchor_331 != 2) return std::string("anchor (3,3,1) must be 2");
                  std::ifstream back(csv);
                  std::string header;
                  if (!std::getline(back, header) ||
                      header != "N,n,r,oracle_dim,formula_A,formula_B,agree_A,agree_B") {
                      return std::string("CSV header mismatch");
                  }
                  return std::string{};
              });

    criterion(8, "macro-element: cubic reproduction and DOF round-trip to 1e-10", 0.0,
              [&](std::ostream& notes) {
                  std::mt19937 rng(99);
                  double worst_value = 0.0;
                  for (int trial = 0; trial < 100; ++trial) {
                      const std::array<Point2, 4> quad = random_convex_quad(rng);
                      const Cubic f = random_cubic(rng);
                      const FvsElement elem = fvs_solve_element(quad, sample_dofs(quad, f));
                      for (int k = 0; k < 50; ++k) {
                          const Point2 p = interior_point(quad, rng);
                          worst_value = std::max(
                              worst_value, std::fabs(elem.value(p) - f.value(p.x, p.y)));
                      }
                  }
                  double worst_dof = 0.0;
                  std::uniform_real_distribution<double> unit(-1.0, 1.0);
                  for (int trial = 0; trial < 100; ++trial) {
                      const std::array<Point2, 4> quad = random_convex_quad(rng);
                      FvsDofs dofs;
                      for (int t = 0; t < 4; ++t) {
                          dofs.value[t] = unit(rng);
                          dofs.grad_x[t] = unit(rng);
                          dofs.grad_y[t] = unit(rng);
                          dofs.edge_normal[t] = unit(rng);
                      }
                      const FvsDofs back = fvs_solve_element(quad, dofs).extract_dofs();
                      for (int t = 0; t < 4; ++t) {
                          worst_dof = std::max({worst_dof, std::fabs(back.value[t] - dofs.value[t]),
                                                std::fabs(back.grad_x[t] - dofs.grad_x[t]),
                                                std::fabs(back.grad_y[t] - dofs.grad_y[t]),
                                                std::fabs(back.edge_normal[t] -
                                                          dofs.edge_normal[t])});
                      }
                  }
                  notes << "cubic reproduction max error " << worst_value
                        << ", DOF round-trip max error " << worst_dof << "\n";
                  if (worst_value > 1e-10) return std::string("cubic reproduction exceeded 1e-10");
                  if (worst_dof > 1e-10) return std::string("DOF round-trip exceeded 1e-10");
                  return std::string{};
              });

    criterion(9, "Riemann-Hurwitz on 200 random cut systems: 2g - 2 == sum(e_p - 1)", 0.0,
              [&](std::ostream& notes) {
                  std::mt19937 rng(7);
                  long long ramified_samples = 0;
                  for (int trial = 0; trial < 200; ++trial) {
                      const BranchedCoverSpec spec = fixtures::random_cut_system(rng, 4);
                      const CoverTopology t = cover_topology(spec);
                      const long long ram = t.total_ramification();
                      if (ram > 0) ++ramified_samples;
                      if (2 * t.genus - 2 != ram) return std::string("2g - 2 != total ramification");
                      if (t.euler != -ram) return std::string("chi != -total ramification");
                      if (t.euler != t.vertices - t.edges + t.faces) {
                          return std::string("Euler relation violated");
                      }
                      const long long n = spec.sheets;
                      if (t.edges != n * spec.grid.edge_count()) return std::string("E' != nE");
                      if (t.faces != n * spec.grid.face_count()) return std::string("F' != nF");
                  }
                  notes << ramified_samples << "/200 sampled systems were ramified\n";
                  return std::string{};
              });

    std::cout << (failures == 0 ? "ACCEPTANCE: all criteria passed\n"
                                : "ACCEPTANCE: " + std::to_string(failures) +
                                      " criterion(s) failed\n");
    return failures == 0 ? 0 : 1;
}
