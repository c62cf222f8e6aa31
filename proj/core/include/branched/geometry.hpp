#pragma once

#include <array>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "branched/branched_basis.hpp"
#include "branched/cover.hpp"
#include "branched/smoothness_scan.hpp"
#include "branched/vec3.hpp"

namespace branched {

/// Per-sheet tori of revolution stacked along the z axis, plus the
/// control-net blending and tessellation parameters.
struct EmbeddingConfig {
    double major_radius = 8.0;
    double minor_radius = 2.0;
    /// Per-sheet z offsets; empty means the default s * 2.5 * minor_radius.
    std::vector<double> offsets;
    double blend_radius = 2.0;  // grid units; 0 disables blending
    int density = 2;            // tessellation samples per cell edge

    double offset(int sheet) const;
};

/// Structural checks against a concrete cover: offset list length and
/// distinctness, nonnegative blend radius smaller than the separation of
/// ramification points, positive density. Empty result means valid.
std::vector<std::string> validate_embedding(const EmbeddingConfig& cfg, const CoverIndex& cover);

/// Point on sheet s of the embedding above global base coordinates (u, v):
/// torus of revolution at angles (2*pi*u/W, 2*pi*v/H), shifted by offset(s).
Vec3 torus_embed(int sheet, double u, double v, const TorusGrid& grid,
                 const EmbeddingConfig& cfg);
/// Analytic partials with respect to u and v in grid units.
Vec3 torus_embed_du(int sheet, double u, double v, const TorusGrid& grid,
                    const EmbeddingConfig& cfg);
Vec3 torus_embed_dv(int sheet, double u, double v, const TorusGrid& grid,
                    const EmbeddingConfig& cfg);

/// Control point per component: regular components take their sheet's torus
/// point at the Greville position, ramified and irregular ones the mean over
/// their sheets. Components with Greville point within blend_radius of a
/// ramification point are pulled toward the all-sheet mean by
/// w = 1 - dist/blend_radius.
std::vector<Vec3> sample_control_net(const BranchedBasis& basis, const EmbeddingConfig& cfg);

struct QuadMesh {
    std::vector<Vec3> positions;
    std::vector<std::array<int, 4>> faces;  // counterclockwise from outside
    std::vector<int> face_sheet;            // originating sheet per face
};

struct MeshReport {
    long long vertices = 0;
    long long edges = 0;
    long long faces = 0;
    long long euler = 0;
    bool closed = false;
    bool oriented = false;
    long long genus = -1;  // 1 - euler/2 when closed and oriented, else -1
};

/// Boundary samples of adjacent cover cells disagreed beyond tolerance
/// while welding; indicates an inconsistency in the surface or the cover.
class WeldError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Samples every cover cell on a (density+1)^2 grid and welds shared
/// boundary samples by exact combinatorial identity (cover vertex, cover
/// edge plus sample index). Positions of welded samples must agree within
/// 1e-9 or a WeldError is thrown. Emits density^2 quads per cover cell.
QuadMesh tessellate_surface(const CoverIndex& cover, const SurfaceFn& surface, int density);

/// Tessellation of the branched spline surface with the given control net.
QuadMesh tessellate(const BranchedBasis& basis, const std::vector<Vec3>& net,
                    const EmbeddingConfig& cfg);

/// V/E/F counts, closedness (every edge in exactly two faces), orientation
/// consistency (each undirected edge traversed once in each direction),
/// Euler characteristic and genus.
MeshReport mesh_report(const QuadMesh& mesh);

/// ASCII OBJ: "v x y z" with 9 significant digits, faces 1-indexed, with
/// "g sheet_<s>" groups when face sheets are recorded.
void export_obj(std::ostream& out, const QuadMesh& mesh);

/// Reads the subset of OBJ emitted by export_obj (v, f, g lines).
QuadMesh parse_obj(std::istream& in);

}  // namespace branched
