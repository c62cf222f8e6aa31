#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "branched/grid.hpp"

namespace branched {

/// Permutation of sheet labels, sigma[s] = image of s.
using Permutation = std::vector<int>;

bool is_permutation(const Permutation& p, int n);
Permutation identity_permutation(int n);
Permutation inverse_permutation(const Permutation& p);
/// Cycles sorted by their minimal element; each cycle starts at its minimum.
std::vector<std::vector<int>> permutation_cycles(const Permutation& p);

enum class Direction { PlusX, PlusY };

/// Sheet permutation attached to the dual crossing between a cell and its
/// neighbor in the given direction; crossing the shared edge positively
/// applies sigma, negatively sigma^-1.
struct CutCrossing {
    GridIndex cell;
    Direction direction = Direction::PlusX;
    Permutation sigma;
};

/// Combinatorial branched cover of the torus grid: n sheet labels per cell,
/// glued across dual edges by the crossing permutations.
struct BranchedCoverSpec {
    TorusGrid grid;
    int sheets = 1;
    std::vector<CutCrossing> crossings;
};

/// Structural check: permutation sizes, one crossing per undirected edge,
/// cells in range, and connectivity of the (cell, sheet) adjacency graph.
/// Returns all violations; empty means valid.
std::vector<std::string> validate_cover(const BranchedCoverSpec& spec);

struct RamificationPoint {
    GridIndex vertex;
    std::vector<int> indices;  // monodromy cycle lengths > 1 above this vertex
};

struct CoverTopology {
    long long vertices = 0;  // V'
    long long edges = 0;     // E' = n E
    long long faces = 0;     // F' = n F
    long long euler = 0;     // chi = V' - E' + F'
    long long genus = 0;     // 1 - chi/2
    std::vector<RamificationPoint> ramification;

    /// sum over cover points of (e_p - 1)
    long long total_ramification() const;
};

/// Cover vertex above a base vertex: one monodromy cycle, identified by its
/// minimal sheet label at the canonical corner cell.
struct CoverVertexKey {
    GridIndex vertex;
    int cycle = 0;
    friend auto operator<=>(const CoverVertexKey&, const CoverVertexKey&) = default;
};

/// Cover edge above a base dual edge, identified by the canonical
/// (cell, +x/+y) pair and the sheet label on the canonical cell's side.
struct CoverEdgeKey {
    GridIndex cell;
    Direction direction = Direction::PlusX;
    int sheet = 0;
    friend auto operator<=>(const CoverEdgeKey&, const CoverEdgeKey&) = default;
};

/// Validated cover with precomputed per-vertex monodromy. All queries are
/// pure; the index is immutable after construction.
class CoverIndex {
public:
    /// Throws std::invalid_argument when validate_cover reports violations.
    explicit CoverIndex(BranchedCoverSpec spec);

    const BranchedCoverSpec& spec() const { return spec_; }
    const TorusGrid& grid() const { return spec_.grid; }
    int sheets() const { return spec_.sheets; }

    /// Crossing permutation image when stepping from cell by (dx,dy) with
    /// |dx|+|dy| == 1; identity where no crossing is registered.
    std::pair<GridIndex, int> neighbor(GridIndex cell, int sheet, int dx, int dy) const;

    /// Monodromy of the counterclockwise loop around base vertex v,
    /// starting from the cell to the upper-right of v.
    const Permutation& vertex_monodromy(GridIndex v) const;

    /// Corner c of cell: 0=SW, 1=SE, 2=NE, 3=NW. Identifies the cover
    /// vertex the (cell, sheet) corner lies on.
    CoverVertexKey corner_vertex(GridIndex cell, int sheet, int corner) const;

    /// Ramification index of the cover vertex (its cycle length).
    int ramification_index(const CoverVertexKey& key) const;

    /// Canonical key of the cover edge leaving (cell, sheet) in one of the
    /// four directions (dx,dy), |dx|+|dy| == 1.
    CoverEdgeKey edge_key(GridIndex cell, int sheet, int dx, int dy) const;

    long long cover_vertex_count() const;

private:
    BranchedCoverSpec spec_;
    std::map<std::pair<int, int>, Permutation> crossing_;  // (cell index, dir) -> sigma
    std::vector<Permutation> monodromy_;                   // per base vertex
    std::vector<std::vector<int>> cycle_of_sheet_;         // min element of cycle
    std::vector<std::vector<int>> cycle_length_;

    const Permutation* find_crossing(GridIndex cell, Direction dir) const;
    void build();
};

/// Free-function forms operating on a freshly indexed spec.
Permutation vertex_monodromy(const BranchedCoverSpec& spec, GridIndex v);

/// V' from monodromy cycle counts, E' = nE, F' = nF, Euler characteristic,
/// genus, and the ramification table. Throws on invalid specs.
CoverTopology cover_topology(const BranchedCoverSpec& spec);
CoverTopology cover_topology(const CoverIndex& index);

/// Applies crossing permutations along a path of pairwise adjacent cells.
/// Throws std::invalid_argument for non-adjacent consecutive cells.
int transport_sheet(const BranchedCoverSpec& spec, const std::vector<GridIndex>& path,
                    int start_sheet);
int transport_sheet(const CoverIndex& index, const std::vector<GridIndex>& path, int start_sheet);

}  // namespace branched
