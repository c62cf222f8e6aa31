#include "branched/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

namespace branched {

double EmbeddingConfig::offset(int sheet) const {
    if (offsets.empty()) return sheet * 2.5 * minor_radius;
    return offsets.at(sheet);
}

std::vector<std::string> validate_embedding(const EmbeddingConfig& cfg, const CoverIndex& cover) {
    std::vector<std::string> errors;
    if (!(cfg.major_radius > 0.0) || !(cfg.minor_radius > 0.0)) {
        errors.push_back("torus radii must be positive");
    }
    if (!cfg.offsets.empty() && static_cast<int>(cfg.offsets.size()) != cover.sheets()) {
        errors.push_back("offset list length must equal the sheet count");
    }
    if (cover.sheets() > 1 && !cfg.offsets.empty()) {
        std::vector<double> sorted = cfg.offsets;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            errors.push_back("sheet offsets must be pairwise distinct");
        }
    }
    if (cfg.blend_radius < 0.0) errors.push_back("blend radius must be nonnegative");
    if (cfg.density < 1) errors.push_back("tessellation density must be at least 1");

    const CoverTopology topo = cover_topology(cover);
    double min_sep = std::numeric_limits<double>::infinity();
    for (size_t a = 0; a < topo.ramification.size(); ++a) {
        for (size_t b = a + 1; b < topo.ramification.size(); ++b) {
            const GridIndex va = topo.ramification[a].vertex;
            const GridIndex vb = topo.ramification[b].vertex;
            min_sep = std::min(min_sep, cover.grid().torus_distance(va.i, va.j, vb.i, vb.j));
        }
    }
    if (cfg.blend_radius >= min_sep) {
        errors.push_back("blend radius must be smaller than the ramification point separation");
    }
    return errors;
}

Vec3 torus_embed(int sheet, double u, double v, const TorusGrid& grid,
                 const EmbeddingConfig& cfg) {
    const double theta = 2.0 * std::numbers::pi * u / grid.width;
    const double phi = 2.0 * std::numbers::pi * v / grid.height;
    const double ring = cfg.major_radius + cfg.minor_radius * std::cos(phi);
    return {ring * std::cos(theta), ring * std::sin(theta),
            cfg.minor_radius * std::sin(phi) + cfg.offset(sheet)};
}

Vec3 torus_embed_du(int sheet, double u, double v, const TorusGrid& grid,
                    const EmbeddingConfig& cfg) {
    (void)sheet;
    const double theta = 2.0 * std::numbers::pi * u / grid.width;
    const double phi = 2.0 * std::numbers::pi * v / grid.height;
    const double dtheta = 2.0 * std::numbers::pi / grid.width;
    const double ring = cfg.major_radius + cfg.minor_radius * std::cos(phi);
    return {-ring * std::sin(theta) * dtheta, ring * std::cos(theta) * dtheta, 0.0};
}

Vec3 torus_embed_dv(int sheet, double u, double v, const TorusGrid& grid,
                    const EmbeddingConfig& cfg) {
    (void)sheet;
    const double theta = 2.0 * std::numbers::pi * u / grid.width;
    const double phi = 2.0 * std::numbers::pi * v / grid.height;
    const double dphi = 2.0 * std::numbers::pi / grid.height;
    return {-cfg.minor_radius * std::sin(phi) * std::cos(theta) * dphi,
            -cfg.minor_radius * std::sin(phi) * std::sin(theta) * dphi,
            cfg.minor_radius * std::cos(phi) * dphi};
}

std::vector<Vec3> sample_control_net(const BranchedBasis& basis, const EmbeddingConfig& cfg) {
    const CoverIndex& cover = basis.cover();
    auto errors = validate_embedding(cfg, cover);
    if (!errors.empty()) throw std::invalid_argument(errors.front());

    const TorusGrid& g = basis.grid();
    const CoverTopology topo = cover_topology(cover);
    const int n = cover.sheets();

    std::vector<Vec3> net;
    net.reserve(basis.components().size());
    for (const LiftComponent& lc : basis.components()) {
        const auto [gu, gv] = greville_point(lc.base);

        Vec3 own{};
        for (int s : lc.greville_sheets) own += torus_embed(s, gu, gv, g, cfg);
        own = own / static_cast<double>(lc.greville_sheets.size());

        if (cfg.blend_radius > 0.0) {
            double dist = std::numeric_limits<double>::infinity();
            for (const RamificationPoint& rp : topo.ramification) {
                dist = std::min(dist, g.torus_distance(gu, gv, rp.vertex.i, rp.vertex.j));
            }
            if (dist < cfg.blend_radius) {
                Vec3 mean{};
                for (int s = 0; s < n; ++s) mean += torus_embed(s, gu, gv, g, cfg);
                mean = mean / static_cast<double>(n);
                const double w = 1.0 - dist / cfg.blend_radius;
                own = (1.0 - w) * own + w * mean;
            }
        }
        net.push_back(own);
    }
    return net;
}

namespace {

constexpr double kWeldTolerance = 1e-9;

double max_component_gap(const Vec3& a, const Vec3& b) {
    return std::max({std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z)});
}

// Combinatorial weld key: {0, vertex index, cycle, 0, 0} for cover
// vertices, {1, canonical cell, direction, sheet, t} for cover edge
// samples, {2, cell, sheet, a, b} for interior samples.
using WeldKey = std::array<int, 5>;

WeldKey sample_key(const CoverIndex& cover, GridIndex cell, int sheet, int a, int b, int k) {
    const TorusGrid& g = cover.grid();
    const bool ax0 = a == 0, axk = a == k, by0 = b == 0, byk = b == k;
    if ((ax0 || axk) && (by0 || byk)) {
        const int corner = axk ? (byk ? 2 : 1) : (byk ? 3 : 0);
        const CoverVertexKey key = cover.corner_vertex(cell, sheet, corner);
        return {0, key.vertex.j * g.width + key.vertex.i, key.cycle, 0, 0};
    }
    if (ax0 || axk) {  // vertical edge, parameterized by b on both sides
        const CoverEdgeKey key = cover.edge_key(cell, sheet, axk ? 1 : -1, 0);
        return {1, g.cell_index(key.cell), key.direction == Direction::PlusX ? 0 : 1, key.sheet,
                b};
    }
    if (by0 || byk) {  // horizontal edge, parameterized by a
        const CoverEdgeKey key = cover.edge_key(cell, sheet, 0, byk ? 1 : -1);
        return {1, g.cell_index(key.cell), key.direction == Direction::PlusX ? 0 : 1, key.sheet,
                a};
    }
    return {2, g.cell_index(cell), sheet, a, b};
}

}  // namespace

QuadMesh tessellate_surface(const CoverIndex& cover, const SurfaceFn& surface, int density) {
    if (density < 1) throw std::invalid_argument("tessellation density must be at least 1");
    const TorusGrid& g = cover.grid();
    const int k = density;
    const int k1 = k + 1;

    QuadMesh mesh;
    std::map<WeldKey, int> weld;
    std::vector<int> corner_ids(k1 * k1);

    // Sheets outermost so OBJ groups come out contiguous.
    for (int s = 0; s < cover.sheets(); ++s) {
        for (int j = 0; j < g.height; ++j) {
            for (int i = 0; i < g.width; ++i) {
                const GridIndex cell{i, j};
                for (int b = 0; b < k1; ++b) {
                    for (int a = 0; a < k1; ++a) {
                        const WeldKey key = sample_key(cover, cell, s, a, b, k);
                        const Vec3 pos = surface(cell, s, static_cast<double>(a) / k,
                                                 static_cast<double>(b) / k);
                        auto [it, inserted] = weld.try_emplace(key, -1);
                        if (inserted) {
                            it->second = static_cast<int>(mesh.positions.size());
                            mesh.positions.push_back(pos);
                        } else if (max_component_gap(pos, mesh.positions[it->second]) >
                                   kWeldTolerance) {
                            std::ostringstream os;
                            os << "weld mismatch at cell (" << i << "," << j << ") sheet " << s
                               << " sample (" << a << "," << b << ")";
                            throw WeldError(os.str());
                        }
                        corner_ids[b * k1 + a] = it->second;
                    }
                }
                for (int b = 0; b < k; ++b) {
                    for (int a = 0; a < k; ++a) {
                        mesh.faces.push_back({corner_ids[b * k1 + a], corner_ids[b * k1 + a + 1],
                                              corner_ids[(b + 1) * k1 + a + 1],
                                              corner_ids[(b + 1) * k1 + a]});
                        mesh.face_sheet.push_back(s);
                    }
                }
            }
        }
    }
    return mesh;
}

QuadMesh tessellate(const BranchedBasis& basis, const std::vector<Vec3>& net,
                    const EmbeddingConfig& cfg) {
    SurfaceFn surface = [&](GridIndex cell, int sheet, double x, double y) {
        return basis.eval_on_cell(net, cell, sheet, x, y);
    };
    return tessellate_surface(basis.cover(), surface, cfg.density);
}

MeshReport mesh_report(const QuadMesh& mesh) {
    MeshReport report;
    report.vertices = static_cast<long long>(mesh.positions.size());
    report.faces = static_cast<long long>(mesh.faces.size());

    struct EdgeUse {
        int count = 0;
        int balance = 0;  // +1 when traversed low->high, -1 otherwise
    };
    std::map<std::pair<int, int>, EdgeUse> edges;
    for (const auto& f : mesh.faces) {
        for (int e = 0; e < 4; ++e) {
            const int a = f[e];
            const int b = f[(e + 1) % 4];
            EdgeUse& use = edges[{std::min(a, b), std::max(a, b)}];
            ++use.count;
            use.balance += a < b ? 1 : -1;
        }
    }
    report.edges = static_cast<long long>(edges.size());
    report.euler = report.vertices - report.edges + report.faces;
    report.closed = true;
    report.oriented = true;
    for (const auto& [key, use] : edges) {
        if (use.count != 2) report.closed = false;
        if (use.count > 2 || (use.count == 2 && use.balance != 0)) report.oriented = false;
    }
    if (report.closed && report.oriented && report.euler % 2 == 0) {
        report.genus = 1 - report.euler / 2;
    }
    return report;
}

void export_obj(std::ostream& out, const QuadMesh& mesh) {
    char buf[96];
    for (const Vec3& p : mesh.positions) {
        std::snprintf(buf, sizeof(buf), "v %.9g %.9g %.9g\n", p.x, p.y, p.z);
        out << buf;
    }
    const bool grouped = mesh.face_sheet.size() == mesh.faces.size() && !mesh.faces.empty();
    int current_sheet = -1;
    for (size_t f = 0; f < mesh.faces.size(); ++f) {
        if (grouped && mesh.face_sheet[f] != current_sheet) {
            current_sheet = mesh.face_sheet[f];
            out << "g sheet_" << current_sheet << '\n';
        }
        const auto& q = mesh.faces[f];
        out << "f " << q[0] + 1 << ' ' << q[1] + 1 << ' ' << q[2] + 1 << ' ' << q[3] + 1 << '\n';
    }
    if (!out) throw std::runtime_error("failed to write OBJ stream");
}

QuadMesh parse_obj(std::istream& in) {
    QuadMesh mesh;
    int current_sheet = -1;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag.empty() || tag[0] == '#') continue;
        if (tag == "v") {
            Vec3 p;
            ls >> p.x >> p.y >> p.z;
            mesh.positions.push_back(p);
        } else if (tag == "f") {
            std::array<int, 4> q{};
            for (int e = 0; e < 4; ++e) {
                std::string field;
                ls >> field;
                q[e] = std::stoi(field) - 1;  // ignores /texture/normal suffixes
            }
            mesh.faces.push_back(q);
            mesh.face_sheet.push_back(current_sheet);
        } else if (tag == "g") {
            std::string name;
            ls >> name;
            if (name.rfind("sheet_", 0) == 0) {
                current_sheet = std::stoi(name.substr(6));
            }
        }
    }
    return mesh;
}

}  // namespace branched
