#include "branched/branched_basis.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <set>

namespace branched {

std::string to_string(ComponentClass c) {
    switch (c) {
        case ComponentClass::Regular: return "regular";
        case ComponentClass::Ramified: return "ramified";
        case ComponentClass::Irregular: return "irregular";
    }
    return "unknown";
}

namespace {

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

BranchedBasis::BranchedBasis(CoverIndex cover, int degree)
    : cover_(std::move(cover)), degree_(degree) {
    if (degree_ < 1) throw std::invalid_argument("degree must be at least 1");
    if (grid().width <= degree_ + 1 || grid().height <= degree_ + 1) {
        throw std::invalid_argument("grid too small: supports must not self-wrap");
    }
    enumerate();
}

int BranchedBasis::lookup_entry(GridIndex anchor, int dx, int dy, int sheet) const {
    const int d1 = degree_ + 1;
    const int span = d1 * d1 * cover_.sheets();
    return lookup_[grid().cell_index(anchor) * span + (dy * d1 + dx) * cover_.sheets() + sheet];
}

int BranchedBasis::component_index(GridIndex anchor, GridIndex cell, int sheet) const {
    if (sheet < 0 || sheet >= cover_.sheets()) {
        throw std::invalid_argument("sheet out of range");
    }
    const BaseBasis base{degree_, grid().wrap(anchor)};
    int dx = 0, dy = 0;
    if (!support_offset(grid(), base, grid().wrap(cell), dx, dy)) return -1;
    return lookup_entry(base.anchor, dx, dy, sheet);
}

void BranchedBasis::enumerate() {
    const int d = degree_;
    const int d1 = d + 1;
    const int n = cover_.sheets();
    const int span = d1 * d1 * n;
    const TorusGrid& g = grid();
    lookup_.assign(static_cast<size_t>(g.cell_count()) * span, -1);
    const int gre_off = d / 2;  // Greville cell offset within the support

    for (int aj = 0; aj < g.height; ++aj) {
        for (int ai = 0; ai < g.width; ++ai) {
            const GridIndex anchor{ai, aj};
            const BaseBasis base{d, anchor};

            // Nodes (a, b, s) with support cell anchor + (a, b). Adjacency
            // within the support patch only: the patch is an embedded disk.
            auto node_id = [&](int a, int b, int s) { return (b * d1 + a) * n + s; };
            DisjointSets ds(span);
            for (int b = 0; b < d1; ++b) {
                for (int a = 0; a < d1; ++a) {
                    const GridIndex cell = g.wrap({ai + a, aj + b});
                    for (int s = 0; s < n; ++s) {
                        if (a + 1 < d1) {
                            auto [nc, ns] = cover_.neighbor(cell, s, 1, 0);
                            (void)nc;
                            ds.unite(node_id(a, b, s), node_id(a + 1, b, ns));
                        }
                        if (b + 1 < d1) {
                            auto [nc, ns] = cover_.neighbor(cell, s, 0, 1);
                            (void)nc;
                            ds.unite(node_id(a, b, s), node_id(a, b + 1, ns));
                        }
                    }
                }
            }

            // Group nodes per root, in node order for determinism.
            std::vector<int> root_component(span, -1);
            const int anchor_base = g.cell_index(anchor) * span;
            for (int b = 0; b < d1; ++b) {
                for (int a = 0; a < d1; ++a) {
                    for (int s = 0; s < n; ++s) {
                        const int id = node_id(a, b, s);
                        const int root = ds.find(id);
                        int comp = root_component[root];
                        if (comp < 0) {
                            comp = static_cast<int>(components_.size());
                            root_component[root] = comp;
                            components_.push_back(LiftComponent{base, {}, 1,
                                                               ComponentClass::Regular, {}});
                        }
                        lookup_[anchor_base + id] = comp;
                        components_[comp].nodes.emplace_back(g.wrap({ai + a, aj + b}), s);
                        if (a == gre_off && b == gre_off) {
                            components_[comp].greville_sheets.push_back(s);
                        }
                    }
                }
            }

            // Classify the components just added for this anchor.
            std::set<int> fresh;
            for (int id = 0; id < span; ++id) fresh.insert(lookup_[anchor_base + id]);
            for (int comp : fresh) {
                LiftComponent& lc = components_[comp];
                std::vector<int> per_cell(d1 * d1, 0);
                for (int b = 0; b < d1; ++b) {
                    for (int a = 0; a < d1; ++a) {
                        for (int s = 0; s < n; ++s) {
                            if (lookup_[anchor_base + node_id(a, b, s)] == comp) {
                                ++per_cell[b * d1 + a];
                            }
                        }
                    }
                }
                const bool uniform = std::all_of(per_cell.begin(), per_cell.end(),
                                                 [&](int c) { return c == per_cell[0]; });
                if (!uniform) {
                    lc.cls = ComponentClass::Irregular;
                    lc.multiplicity = static_cast<int>(lc.greville_sheets.size());
                    continue;
                }
                const int m = per_cell[0];
                lc.multiplicity = m;
                if (m == 1) {
                    lc.cls = ComponentClass::Regular;
                    continue;
                }
                // Ramified(e) requires a ramification point of index e = m
                // strictly inside the open support: base vertices
                // anchor + (a, b) with 1 <= a, b <= d, each the SW corner
                // of support cell (a, b).
                bool found = false;
                for (int b = 1; b <= d && !found; ++b) {
                    for (int a = 1; a <= d && !found; ++a) {
                        const GridIndex cell = g.wrap({ai + a, aj + b});
                        for (int s = 0; s < n; ++s) {
                            if (lookup_[anchor_base + node_id(a, b, s)] != comp) continue;
                            const CoverVertexKey key = cover_.corner_vertex(cell, s, 0);
                            if (cover_.ramification_index(key) == m) {
                                found = true;
                                break;
                            }
                        }
                    }
                }
                lc.cls = found ? ComponentClass::Ramified : ComponentClass::Irregular;
            }
        }
    }
}

BranchedBasis enumerate_components(const BranchedCoverSpec& spec, int degree) {
    auto errors = validate_cover(spec);
    if (!errors.empty()) throw std::invalid_argument(errors.front());
    return BranchedBasis(CoverIndex(spec), degree);
}

CensusCounts census(const BranchedBasis& basis) {
    CensusCounts c;
    for (const LiftComponent& lc : basis.components()) {
        ++c.total;
        switch (lc.cls) {
            case ComponentClass::Regular: ++c.regular; break;
            case ComponentClass::Ramified: ++c.ramified; break;
            case ComponentClass::Irregular: ++c.irregular; break;
        }
    }
    return c;
}

void write_census_csv(std::ostream& out, const BranchedBasis& basis) {
    const TorusGrid& g = basis.grid();
    struct Row {
        long long total = 0, regular = 0, ramified = 0, irregular = 0;
    };
    std::vector<Row> rows(g.cell_count());
    for (const LiftComponent& lc : basis.components()) {
        Row& r = rows[g.cell_index(lc.base.anchor)];
        ++r.total;
        switch (lc.cls) {
            case ComponentClass::Regular: ++r.regular; break;
            case ComponentClass::Ramified: ++r.ramified; break;
            case ComponentClass::Irregular: ++r.irregular; break;
        }
    }
    out << "anchor_i,anchor_j,components,regular,ramified,irregular\n";
    for (int j = 0; j < g.height; ++j) {
        for (int i = 0; i < g.width; ++i) {
            const Row& r = rows[g.cell_index({i, j})];
            out << i << ',' << j << ',' << r.total << ',' << r.regular << ',' << r.ramified
                << ',' << r.irregular << '\n';
        }
    }
}

}  // namespace branched
