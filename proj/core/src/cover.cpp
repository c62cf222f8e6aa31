#include "branched/cover.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace branched {

bool is_permutation(const Permutation& p, int n) {
    if (static_cast<int>(p.size()) != n) return false;
    std::vector<char> seen(n, 0);
    for (int v : p) {
        if (v < 0 || v >= n || seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

Permutation identity_permutation(int n) {
    Permutation p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

Permutation inverse_permutation(const Permutation& p) {
    Permutation inv(p.size());
    for (int s = 0; s < static_cast<int>(p.size()); ++s) inv[p[s]] = s;
    return inv;
}

std::vector<std::vector<int>> permutation_cycles(const Permutation& p) {
    const int n = static_cast<int>(p.size());
    std::vector<char> seen(n, 0);
    std::vector<std::vector<int>> cycles;
    for (int s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::vector<int> cycle;
        int t = s;
        while (!seen[t]) {
            seen[t] = 1;
            cycle.push_back(t);
            t = p[t];
        }
        cycles.push_back(std::move(cycle));
    }
    return cycles;
}

namespace {

int direction_code(Direction d) { return d == Direction::PlusX ? 0 : 1; }

std::string cell_str(GridIndex c) {
    std::ostringstream os;
    os << "(" << c.i << "," << c.j << ")";
    return os.str();
}

// Union-find over (cell, sheet) nodes; used both for validation
// (connectivity) and by the basis module's component oracle.
struct DisjointSets {
    std::vector<int> parent;
    explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[a] = b;
    }
};

}  // namespace

std::vector<std::string> validate_cover(const BranchedCoverSpec& spec) {
    std::vector<std::string> errors;
    const int n = spec.sheets;
    if (n < 1) {
        errors.push_back("sheet count must be at least 1");
        return errors;
    }

    std::set<std::pair<int, int>> seen_edges;
    for (const CutCrossing& c : spec.crossings) {
        if (c.cell.i < 0 || c.cell.i >= spec.grid.width || c.cell.j < 0 ||
            c.cell.j >= spec.grid.height) {
            errors.push_back("crossing cell " + cell_str(c.cell) + " outside grid");
            continue;
        }
        if (!is_permutation(c.sigma, n)) {
            errors.push_back("crossing at " + cell_str(c.cell) +
                             " is not a bijection on " + std::to_string(n) + " sheets");
        }
        auto key = std::make_pair(spec.grid.cell_index(c.cell), direction_code(c.direction));
        if (!seen_edges.insert(key).second) {
            errors.push_back("duplicate crossing on the edge at " + cell_str(c.cell));
        }
    }
    if (!errors.empty()) return errors;

    // Connectivity of the (cell, sheet) graph; a disconnected cover is a
    // disjoint union, which every consumer here treats as a spec mistake.
    if (n > 1) {
        CoverIndex index(BranchedCoverSpec{spec.grid, spec.sheets, spec.crossings});
        const int cells = spec.grid.cell_count();
        DisjointSets ds(cells * n);
        for (int j = 0; j < spec.grid.height; ++j) {
            for (int i = 0; i < spec.grid.width; ++i) {
                const GridIndex cell{i, j};
                const int base = spec.grid.cell_index(cell) * n;
                for (int s = 0; s < n; ++s) {
                    for (auto [dx, dy] : {std::pair{1, 0}, std::pair{0, 1}}) {
                        auto [ncell, nsheet] = index.neighbor(cell, s, dx, dy);
                        ds.unite(base + s, spec.grid.cell_index(ncell) * n + nsheet);
                    }
                }
            }
        }
        const int root = ds.find(0);
        for (int node = 1; node < cells * n; ++node) {
            if (ds.find(node) != root) {
                errors.push_back("cover is disconnected: sheet permutations do not act "
                                 "transitively");
                break;
            }
        }
    }
    return errors;
}

CoverIndex::CoverIndex(BranchedCoverSpec spec) : spec_(std::move(spec)) {
    if (spec_.sheets < 1) throw std::invalid_argument("sheet count must be at least 1");
    for (const CutCrossing& c : spec_.crossings) {
        if (c.cell.i < 0 || c.cell.i >= spec_.grid.width || c.cell.j < 0 ||
            c.cell.j >= spec_.grid.height) {
            throw std::invalid_argument("crossing cell outside grid");
        }
        if (!is_permutation(c.sigma, spec_.sheets)) {
            throw std::invalid_argument("crossing permutation is not a bijection on the sheets");
        }
        auto key = std::make_pair(spec_.grid.cell_index(c.cell), direction_code(c.direction));
        if (!crossing_.emplace(key, c.sigma).second) {
            throw std::invalid_argument("duplicate crossing on one edge");
        }
    }
    build();
}

const Permutation* CoverIndex::find_crossing(GridIndex cell, Direction dir) const {
    auto it = crossing_.find({spec_.grid.cell_index(cell), direction_code(dir)});
    return it == crossing_.end() ? nullptr : &it->second;
}

std::pair<GridIndex, int> CoverIndex::neighbor(GridIndex cell, int sheet, int dx, int dy) const {
    if (std::abs(dx) + std::abs(dy) != 1) {
        throw std::invalid_argument("neighbor step must be one of the four axis directions");
    }
    const GridIndex target = spec_.grid.wrap({cell.i + dx, cell.j + dy});
    // A +x crossing is stored on the cell to the left of the shared edge,
    // a +y crossing on the cell below it.
    const GridIndex owner = (dx > 0 || dy > 0) ? cell : target;
    const Direction dir = (dx != 0) ? Direction::PlusX : Direction::PlusY;
    const Permutation* sigma = find_crossing(owner, dir);
    if (!sigma) return {target, sheet};
    if (dx > 0 || dy > 0) return {target, (*sigma)[sheet]};
    return {target, inverse_permutation(*sigma)[sheet]};
}

void CoverIndex::build() {
    const int n = spec_.sheets;
    const int vcount = static_cast<int>(spec_.grid.vertex_count());
    monodromy_.assign(vcount, Permutation());
    cycle_of_sheet_.assign(vcount, std::vector<int>());
    cycle_length_.assign(vcount, std::vector<int>());

    for (int j = 0; j < spec_.grid.height; ++j) {
        for (int i = 0; i < spec_.grid.width; ++i) {
            const GridIndex v{i, j};
            // Counterclockwise loop around v through the four incident
            // cells, starting upper-right: (i,j) -> (i-1,j) -> (i-1,j-1)
            // -> (i,j-1) -> (i,j).
            const GridIndex c0{i, j};
            const GridIndex c1 = spec_.grid.wrap({i - 1, j});
            const GridIndex c2 = spec_.grid.wrap({i - 1, j - 1});
            const GridIndex c3 = spec_.grid.wrap({i, j - 1});
            Permutation m(n);
            for (int s = 0; s < n; ++s) {
                auto [a_cell, a] = neighbor(c0, s, -1, 0);
                (void)a_cell;
                auto [b_cell, b] = neighbor(c1, a, 0, -1);
                (void)b_cell;
                auto [d_cell, d] = neighbor(c2, b, 1, 0);
                (void)d_cell;
                auto [e_cell, e] = neighbor(c3, d, 0, 1);
                (void)e_cell;
                m[s] = e;
            }
            const int vi = j * spec_.grid.width + i;
            auto cycles = permutation_cycles(m);
            cycle_of_sheet_[vi].assign(n, 0);
            cycle_length_[vi].assign(n, 1);
            for (const auto& cycle : cycles) {
                const int rep = *std::min_element(cycle.begin(), cycle.end());
                for (int s : cycle) {
                    cycle_of_sheet_[vi][s] = rep;
                    cycle_length_[vi][s] = static_cast<int>(cycle.size());
                }
            }
            monodromy_[vi] = std::move(m);
        }
    }
}

const Permutation& CoverIndex::vertex_monodromy(GridIndex v) const {
    const GridIndex w = spec_.grid.wrap(v);
    return monodromy_[w.j * spec_.grid.width + w.i];
}

CoverVertexKey CoverIndex::corner_vertex(GridIndex cell, int sheet, int corner) const {
    if (corner < 0 || corner > 3) throw std::invalid_argument("corner must be in 0..3");
    // Transport the sheet to the cell upper-right of the corner's vertex,
    // the canonical start cell of the monodromy loop.
    const GridIndex c = spec_.grid.wrap(cell);
    GridIndex vertex;
    GridIndex here = c;
    int s = sheet;
    switch (corner) {
        case 0:  // SW corner: vertex (i, j); cell is already upper-right.
            vertex = c;
            break;
        case 1: {  // SE corner: vertex (i+1, j); move +x.
            vertex = spec_.grid.wrap({c.i + 1, c.j});
            auto [nc, ns] = neighbor(here, s, 1, 0);
            here = nc;
            s = ns;
            break;
        }
        case 2: {  // NE corner: vertex (i+1, j+1); move +x then +y.
            vertex = spec_.grid.wrap({c.i + 1, c.j + 1});
            auto [nc1, ns1] = neighbor(here, s, 1, 0);
            auto [nc2, ns2] = neighbor(nc1, ns1, 0, 1);
            here = nc2;
            s = ns2;
            break;
        }
        case 3: {  // NW corner: vertex (i, j+1); move +y.
            vertex = spec_.grid.wrap({c.i, c.j + 1});
            auto [nc, ns] = neighbor(here, s, 0, 1);
            here = nc;
            s = ns;
            break;
        }
        default:
            break;
    }
    const int vi = vertex.j * spec_.grid.width + vertex.i;
    return CoverVertexKey{vertex, cycle_of_sheet_[vi][s]};
}

int CoverIndex::ramification_index(const CoverVertexKey& key) const {
    const GridIndex w = spec_.grid.wrap(key.vertex);
    const int vi = w.j * spec_.grid.width + w.i;
    return cycle_length_[vi][key.cycle];
}

CoverEdgeKey CoverIndex::edge_key(GridIndex cell, int sheet, int dx, int dy) const {
    if (std::abs(dx) + std::abs(dy) != 1) {
        throw std::invalid_argument("edge direction must be one of the four axis directions");
    }
    const GridIndex c = spec_.grid.wrap(cell);
    if (dx > 0) return {c, Direction::PlusX, sheet};
    if (dy > 0) return {c, Direction::PlusY, sheet};
    // Negative directions: canonical cell is the neighbor; use its sheet.
    auto [ncell, nsheet] = neighbor(c, sheet, dx, dy);
    return {ncell, dx < 0 ? Direction::PlusX : Direction::PlusY, nsheet};
}

long long CoverIndex::cover_vertex_count() const {
    long long total = 0;
    for (int vi = 0; vi < spec_.grid.vertex_count(); ++vi) {
        std::set<int> reps(cycle_of_sheet_[vi].begin(), cycle_of_sheet_[vi].end());
        total += static_cast<long long>(reps.size());
    }
    return total;
}

Permutation vertex_monodromy(const BranchedCoverSpec& spec, GridIndex v) {
    return CoverIndex(spec).vertex_monodromy(v);
}

long long CoverTopology::total_ramification() const {
    long long total = 0;
    for (const auto& rp : ramification) {
        for (int e : rp.indices) total += e - 1;
    }
    return total;
}

CoverTopology cover_topology(const CoverIndex& index) {
    const auto& grid = index.grid();
    const long long n = index.sheets();
    CoverTopology topo;
    topo.vertices = index.cover_vertex_count();
    topo.edges = n * grid.edge_count();
    topo.faces = n * grid.face_count();
    topo.euler = topo.vertices - topo.edges + topo.faces;
    if (topo.euler % 2 != 0) throw std::logic_error("Euler characteristic must be even");
    topo.genus = 1 - topo.euler / 2;
    for (int j = 0; j < grid.height; ++j) {
        for (int i = 0; i < grid.width; ++i) {
            const GridIndex v{i, j};
            auto cycles = permutation_cycles(index.vertex_monodromy(v));
            std::vector<int> long_cycles;
            for (const auto& c : cycles) {
                if (c.size() > 1) long_cycles.push_back(static_cast<int>(c.size()));
            }
            if (!long_cycles.empty()) {
                std::sort(long_cycles.begin(), long_cycles.end());
                topo.ramification.push_back({v, std::move(long_cycles)});
            }
        }
    }
    return topo;
}

CoverTopology cover_topology(const BranchedCoverSpec& spec) {
    auto errors = validate_cover(spec);
    if (!errors.empty()) throw std::invalid_argument(errors.front());
    return cover_topology(CoverIndex(spec));
}

int transport_sheet(const CoverIndex& index, const std::vector<GridIndex>& path,
                    int start_sheet) {
    if (path.empty()) throw std::invalid_argument("transport path must be nonempty");
    if (start_sheet < 0 || start_sheet >= index.sheets()) {
        throw std::invalid_argument("start sheet out of range");
    }
    const auto& grid = index.grid();
    int sheet = start_sheet;
    for (size_t k = 0; k + 1 < path.size(); ++k) {
        const GridIndex a = grid.wrap(path[k]);
        const GridIndex b = grid.wrap(path[k + 1]);
        int dx = 0, dy = 0;
        // Adjacent on the torus: exactly one coordinate differs by 1 mod size.
        const int fx = grid.wrap_x(b.i - a.i);
        const int fy = grid.wrap_y(b.j - a.j);
        if (fx == 1 && fy == 0) dx = 1;
        else if (fx == grid.width - 1 && fy == 0) dx = -1;
        else if (fx == 0 && fy == 1) dy = 1;
        else if (fx == 0 && fy == grid.height - 1) dy = -1;
        else throw std::invalid_argument("transport path cells must be adjacent");
        auto [ncell, nsheet] = index.neighbor(a, sheet, dx, dy);
        (void)ncell;
        sheet = nsheet;
    }
    return sheet;
}

int transport_sheet(const BranchedCoverSpec& spec, const std::vector<GridIndex>& path,
                    int start_sheet) {
    return transport_sheet(CoverIndex(spec), path, start_sheet);
}

}  // namespace branched
