#pragma once

// Shared fixtures: the two bundled example covers, an independent
// component-count oracle, and a randomized cut-system generator for
// property tests.

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "branched/cover.hpp"

namespace fixtures {

// 20x20 triple cover, vertical cut between cells (9,j) and (10,j) for
// j = 8..11; crossing +x applies the cyclic shift s -> s+1 (mod 3).
// Ramification points (10,8) and (10,12), both of index 3; V' = 1196,
// chi = -4, genus 3.
inline branched::BranchedCoverSpec triple_cover() {
    branched::BranchedCoverSpec spec;
    spec.grid = branched::TorusGrid(20, 20);
    spec.sheets = 3;
    for (int j = 8; j <= 11; ++j) {
        spec.crossings.push_back({{9, j}, branched::Direction::PlusX, {1, 2, 0}});
    }
    return spec;
}

// Same cut with two sheets and the transposition; ramification index 2 at
// both endpoints; V' = 798, chi = -2, genus 2.
inline branched::BranchedCoverSpec double_cover() {
    branched::BranchedCoverSpec spec;
    spec.grid = branched::TorusGrid(20, 20);
    spec.sheets = 2;
    for (int j = 8; j <= 11; ++j) {
        spec.crossings.push_back({{9, j}, branched::Direction::PlusX, {1, 0}});
    }
    return spec;
}

inline branched::BranchedCoverSpec trivial_cover(int w = 20, int h = 20) {
    branched::BranchedCoverSpec spec;
    spec.grid = branched::TorusGrid(w, h);
    spec.sheets = 1;
    return spec;
}

// Counts lift components of all degree-d bases by depth-first search on
// (support cell, sheet) nodes, reading crossing permutations straight off
// the spec. Deliberately independent of the library's enumeration: DFS on
// an explicit node labeling here versus union-find behind CoverIndex.
inline long long count_lift_components(const branched::BranchedCoverSpec& spec, int degree) {
    const int W = spec.grid.width;
    const int H = spec.grid.height;
    const int n = spec.sheets;
    const int d1 = degree + 1;

    // (cell index, 0 for +x / 1 for +y) -> permutation.
    std::map<std::pair<int, int>, const branched::Permutation*> cross;
    for (const branched::CutCrossing& c : spec.crossings) {
        const int dir = c.direction == branched::Direction::PlusX ? 0 : 1;
        cross[{c.cell.j * W + c.cell.i, dir}] = &c.sigma;
    }
    // Sheet after stepping from wrapped cell (ci,cj) in +x/+y (forward) or
    // arriving from the cell on the other side (backward: apply inverse).
    auto forward = [&](int ci, int cj, int dir, int s) {
        auto it = cross.find({cj * W + ci, dir});
        return it == cross.end() ? s : (*it->second)[s];
    };
    auto backward = [&](int ci, int cj, int dir, int s) {
        auto it = cross.find({cj * W + ci, dir});
        if (it == cross.end()) return s;
        for (int t = 0; t < n; ++t) {
            if ((*it->second)[t] == s) return t;
        }
        return s;
    };

    long long total = 0;
    std::vector<int> label(static_cast<size_t>(d1) * d1 * n);
    std::vector<int> stack;
    auto id = [&](int a, int b, int s) { return (b * d1 + a) * n + s; };
    for (int aj = 0; aj < H; ++aj) {
        for (int ai = 0; ai < W; ++ai) {
            std::fill(label.begin(), label.end(), -1);
            int comps = 0;
            for (int seed = 0; seed < d1 * d1 * n; ++seed) {
                if (label[seed] != -1) continue;
                ++comps;
                label[seed] = comps;
                stack.assign(1, seed);
                while (!stack.empty()) {
                    const int cur = stack.back();
                    stack.pop_back();
                    const int s = cur % n;
                    const int a = (cur / n) % d1;
                    const int b = cur / (n * d1);
                    const int ci = (ai + a) % W;
                    const int cj = (aj + b) % H;
                    auto visit = [&](int na, int nb, int ns) {
                        const int nid = id(na, nb, ns);
                        if (label[nid] == -1) {
                            label[nid] = comps;
                            stack.push_back(nid);
                        }
                    };
                    if (a + 1 < d1) visit(a + 1, b, forward(ci, cj, 0, s));
                    if (b + 1 < d1) visit(a, b + 1, forward(ci, cj, 1, s));
                    if (a > 0) visit(a - 1, b, backward((ci - 1 + W) % W, cj, 0, s));
                    if (b > 0) visit(a, b - 1, backward(ci, (cj - 1 + H) % H, 1, s));
                }
            }
            total += comps;
        }
    }
    return total;
}

// Random valid cut system: up to `max_sheets` sheets, one to three straight
// cut segments with uniformly shuffled permutations. Retries until
// validate_cover is clean (shuffles can fail transitivity).
inline branched::BranchedCoverSpec random_cut_system(std::mt19937& rng, int max_sheets = 4) {
    using branched::CutCrossing;
    using branched::Direction;
    using branched::GridIndex;
    using branched::Permutation;

    std::uniform_int_distribution<int> size_dist(6, 10);
    std::uniform_int_distribution<int> sheet_dist(1, max_sheets);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        branched::BranchedCoverSpec spec;
        spec.grid = branched::TorusGrid(size_dist(rng), size_dist(rng));
        spec.sheets = sheet_dist(rng);
        const int W = spec.grid.width;
        const int H = spec.grid.height;
        const int n = spec.sheets;

        std::set<std::pair<int, int>> used;
        const int segments = std::uniform_int_distribution<int>(n == 1 ? 0 : 1, 3)(rng);
        for (int k = 0; k < segments; ++k) {
            const bool vertical = std::uniform_int_distribution<int>(0, 1)(rng) == 1;
            Permutation sigma(n);
            std::iota(sigma.begin(), sigma.end(), 0);
            std::shuffle(sigma.begin(), sigma.end(), rng);
            const int run = vertical ? H : W;
            const int len = std::uniform_int_distribution<int>(1, std::min(4, run - 2))(rng);
            const int i0 = std::uniform_int_distribution<int>(0, W - 1)(rng);
            const int j0 = std::uniform_int_distribution<int>(0, H - 1)(rng);
            for (int t = 0; t < len; ++t) {
                CutCrossing c;
                c.cell = vertical ? GridIndex{i0, (j0 + t) % H} : GridIndex{(i0 + t) % W, j0};
                c.direction = vertical ? Direction::PlusX : Direction::PlusY;
                c.sigma = sigma;
                const int ci = c.cell.j * W + c.cell.i;
                if (used.insert({ci, vertical ? 0 : 1}).second) {
                    spec.crossings.push_back(std::move(c));
                }
            }
        }
        if (branched::validate_cover(spec).empty()) return spec;
    }
    throw std::runtime_error("random_cut_system: no valid sample in 1000 attempts");
}

}  // namespace fixtures
