#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "branched/branched_basis.hpp"
#include "branched/cover.hpp"
#include "branched/smoothness_scan.hpp"
#include "branched/vec3.hpp"
#include "support/fixtures.hpp"

using namespace branched;

namespace {

CensusCounts census_of(const BranchedCoverSpec& spec, int degree) {
    return census(enumerate_components(spec, degree));
}

}  // namespace

TEST_CASE("trivial cover lifts to one component per base basis") {
    for (int d = 1; d <= 2; ++d) {
        const BranchedBasis basis = enumerate_components(fixtures::trivial_cover(), d);
        const CensusCounts c = census(basis);
        CHECK(c.total == 400);
        CHECK(c.regular == 400);
        CHECK(c.ramified == 0);
        CHECK(c.irregular == 0);
        for (const LiftComponent& comp : basis.components()) {
            CHECK(comp.multiplicity == 1);
            CHECK(comp.nodes.size() == static_cast<size_t>((d + 1) * (d + 1)));
        }
    }
}

TEST_CASE("component census of the bundled examples") {
    SUBCASE("triple cover, degree 1: one component per cover vertex") {
        const CensusCounts c = census_of(fixtures::triple_cover(), 1);
        CHECK(c.total == 1196);
        CHECK(c.ramified == 2);
        CHECK(c.regular == 1194);
        CHECK(c.irregular == 0);
    }

    SUBCASE("triple cover, degree 2") {
        const CensusCounts c = census_of(fixtures::triple_cover(), 2);
        CHECK(c.total == 1184);
        // Each ramification point sits strictly inside the support of
        // exactly four biquadratics; each merges 3 sheets into 1.
        CHECK(c.ramified == 8);
        CHECK(c.regular == 1176);
        CHECK(c.irregular == 0);
    }

    SUBCASE("double cover") {
        CHECK(census_of(fixtures::double_cover(), 1).total == 798);
        CHECK(census_of(fixtures::double_cover(), 2).total == 792);
    }
}

TEST_CASE("census agrees with the independent search oracle") {
    for (int d = 1; d <= 2; ++d) {
        CHECK(census_of(fixtures::triple_cover(), d).total ==
              fixtures::count_lift_components(fixtures::triple_cover(), d));
        CHECK(census_of(fixtures::double_cover(), d).total ==
              fixtures::count_lift_components(fixtures::double_cover(), d));
    }

    std::mt19937 rng(7301);
    for (int k = 0; k < 25; ++k) {
        const BranchedCoverSpec spec = fixtures::random_cut_system(rng);
        for (int d = 1; d <= 2; ++d) {
            CHECK(census_of(spec, d).total == fixtures::count_lift_components(spec, d));
        }
    }
}

TEST_CASE("degree-1 component count equals the cover vertex count") {
    std::mt19937 rng(7302);
    for (int k = 0; k < 25; ++k) {
        const BranchedCoverSpec spec = fixtures::random_cut_system(rng);
        CHECK(census_of(spec, 1).total == cover_topology(spec).vertices);
    }
}

TEST_CASE("node conservation across components") {
    std::mt19937 rng(7303);
    std::vector<BranchedCoverSpec> specs{fixtures::triple_cover(), fixtures::double_cover()};
    for (int k = 0; k < 10; ++k) specs.push_back(fixtures::random_cut_system(rng));

    for (const auto& spec : specs) {
        for (int d = 1; d <= 2; ++d) {
            const BranchedBasis basis = enumerate_components(spec, d);
            const long long expected = static_cast<long long>(spec.sheets) *
                                       spec.grid.cell_count() * (d + 1) * (d + 1);
            long long nodes = 0;
            for (const LiftComponent& comp : basis.components()) {
                nodes += static_cast<long long>(comp.nodes.size());
                if (comp.cls != ComponentClass::Irregular) {
                    // Uniform components cover each support cell with
                    // exactly `multiplicity` sheets.
                    CHECK(comp.nodes.size() ==
                          static_cast<size_t>(comp.multiplicity) * (d + 1) * (d + 1));
                }
            }
            CHECK(nodes == expected);
        }
    }
}

TEST_CASE("component classification around a ramification point") {
    const BranchedBasis basis = enumerate_components(fixtures::triple_cover(), 2);
    const TorusGrid& g = basis.grid();

    auto components_at = [&](GridIndex anchor) {
        std::vector<const LiftComponent*> out;
        for (const LiftComponent& c : basis.components()) {
            if (g.wrap(c.base.anchor) == g.wrap(anchor)) out.push_back(&c);
        }
        return out;
    };

    SUBCASE("anchor far from the cut: one regular component per sheet") {
        const auto comps = components_at({0, 0});
        REQUIRE(comps.size() == 3);
        for (const LiftComponent* c : comps) {
            CHECK(c->cls == ComponentClass::Regular);
            CHECK(c->multiplicity == 1);
            CHECK(c->greville_sheets.size() == 1);
        }
    }

    SUBCASE("ramification point strictly interior merges all sheets") {
        // (10,8) is strictly inside the support of the biquadratics
        // anchored at (8,6), (9,6), (8,7), (9,7); same for (10,12) two
        // rows up. Each yields a single ramified component of index 3.
        for (const GridIndex anchor :
             {GridIndex{8, 6}, GridIndex{9, 6}, GridIndex{8, 7}, GridIndex{9, 7},
              GridIndex{8, 10}, GridIndex{9, 10}, GridIndex{8, 11}, GridIndex{9, 11}}) {
            const auto comps = components_at(anchor);
            REQUIRE(comps.size() == 1);
            CHECK(comps[0]->cls == ComponentClass::Ramified);
            CHECK(comps[0]->multiplicity == 3);
            CHECK(comps[0]->nodes.size() == 27);
            CHECK(comps[0]->greville_sheets.size() == 3);
        }
    }

    SUBCASE("ramification point on the support boundary stays regular") {
        // Anchor (8,8): the cut crosses the support interior but both
        // ramification points lie on the boundary; the lift splits into
        // sheet-count many regular components.
        for (const GridIndex anchor : {GridIndex{8, 8}, GridIndex{10, 7}}) {
            const auto comps = components_at(anchor);
            REQUIRE(comps.size() == 3);
            for (const LiftComponent* c : comps) {
                CHECK(c->cls == ComponentClass::Regular);
                CHECK(c->multiplicity == 1);
            }
        }
    }
}

TEST_CASE("component_index lookup is consistent with the component list") {
    const BranchedBasis basis = enumerate_components(fixtures::triple_cover(), 2);
    for (size_t idx = 0; idx < basis.components().size(); ++idx) {
        const LiftComponent& comp = basis.components()[idx];
        for (const auto& [cell, sheet] : comp.nodes) {
            CHECK(basis.component_index(comp.base.anchor, cell, sheet) ==
                  static_cast<int>(idx));
        }
    }
    // Outside the support.
    CHECK(basis.component_index({0, 0}, {10, 10}, 0) == -1);
    CHECK_THROWS_AS(basis.component_index({0, 0}, {0, 0}, 5), std::invalid_argument);
}

TEST_CASE("evaluation: partition of unity and single components") {
    const BranchedBasis basis = enumerate_components(fixtures::triple_cover(), 2);
    const std::vector<double> ones(basis.components().size(), 1.0);

    SUBCASE("all coefficients one gives the constant one") {
        std::mt19937 rng(7304);
        std::uniform_int_distribution<int> coord(0, 19);
        std::uniform_int_distribution<int> sheet(0, 2);
        std::uniform_real_distribution<double> local(0.0, 1.0);
        double max_dev = 0.0;
        for (int k = 0; k < 2000; ++k) {
            const CoverPoint p{{{coord(rng), coord(rng)}, local(rng), local(rng)}, sheet(rng)};
            max_dev = std::max(max_dev, std::abs(basis.eval(ones, p) - 1.0));
        }
        CHECK(max_dev <= 1e-12);
    }

    SUBCASE("one ramified component evaluated at the ramification vertex") {
        // The component anchored at (8,6) has (10,8) as the interior
        // support vertex at offset (2,2); the base biquadratic's 1-D value
        // at offset 2 is 0.5, so the lift evaluates to 0.25 there from
        // every sheet.
        const int idx = basis.component_index({8, 6}, {10, 8}, 0);
        REQUIRE(idx >= 0);
        CHECK(basis.components()[idx].cls == ComponentClass::Ramified);
        std::vector<double> coefs(basis.components().size(), 0.0);
        coefs[idx] = 1.0;
        for (int s = 0; s < 3; ++s) {
            const CoverPoint p{{{10, 8}, 0.0, 0.0}, s};
            CHECK(basis.eval(coefs, p) == doctest::Approx(0.25).epsilon(1e-12));
        }
        // Far away the component vanishes.
        const CoverPoint far{{{0, 0}, 0.5, 0.5}, 0};
        CHECK(basis.eval(coefs, far) == 0.0);
    }

    SUBCASE("coefficient vector size is checked") {
        const std::vector<double> short_vec(3, 1.0);
        const CoverPoint p{{{0, 0}, 0.5, 0.5}, 0};
        CHECK_THROWS_AS(basis.eval(short_vec, p), std::invalid_argument);
        CHECK_THROWS_AS(basis.eval(ones, CoverPoint{{{0, 0}, 0.5, 0.5}, 7}),
                        std::invalid_argument);
    }
}

TEST_CASE("random-coefficient branched splines are smooth across all edges") {
    std::mt19937 rng(7305);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    for (const auto& spec : {fixtures::triple_cover(), fixtures::double_cover()}) {
        const CoverIndex cover(spec);
        for (int d = 1; d <= 2; ++d) {
            const BranchedBasis basis(cover, d);
            std::vector<Vec3> net(basis.components().size());
            for (Vec3& v : net) v = {coef(rng), coef(rng), coef(rng)};

            const SurfaceFn surface = [&](GridIndex cell, int sheet, double x, double y) {
                return basis.eval_on_cell(net, cell, sheet, x, y);
            };
            const auto report = numeric_smoothness_scan(cover, surface, d >= 2 ? 1 : 0);
            CHECK(report.value_pass);
            CHECK(report.max_value_gap <= 1e-10);
            if (d == 2) {
                CHECK(report.gradient_pass);
                // Biquadratic lifts are C1: gradients agree to rounding
                // noise even at the tighter bar used by the analyzer.
                CHECK(report.max_gradient_gap <= 1e-9);
            }
        }
    }
}

TEST_CASE("greville sheets belong to the component at its Greville cell") {
    for (int d = 1; d <= 2; ++d) {
        const BranchedBasis basis = enumerate_components(fixtures::triple_cover(), d);
        for (const LiftComponent& comp : basis.components()) {
            REQUIRE(!comp.greville_sheets.empty());
            const GridIndex gcell = greville_cell(basis.grid(), comp.base);
            for (int s : comp.greville_sheets) {
                const auto node = std::make_pair(basis.grid().wrap(gcell), s);
                CHECK(std::find(comp.nodes.begin(), comp.nodes.end(), node) != comp.nodes.end());
            }
        }
    }
}

TEST_CASE("census CSV lists one row per anchor") {
    const BranchedBasis basis = enumerate_components(fixtures::triple_cover(), 2);
    std::ostringstream os;
    write_census_csv(os, basis);
    std::istringstream is(os.str());
    std::string line;
    REQUIRE(std::getline(is, line));
    CHECK(line == "anchor_i,anchor_j,components,regular,ramified,irregular");
    int rows = 0;
    bool saw_ramified_anchor = false;
    while (std::getline(is, line)) {
        ++rows;
        if (line == "8,6,1,0,1,0") saw_ramified_anchor = true;
    }
    CHECK(rows == 400);
    CHECK(saw_ramified_anchor);
}

TEST_CASE("component class labels render") {
    CHECK(to_string(ComponentClass::Regular) == "regular");
    CHECK(to_string(ComponentClass::Ramified) == "ramified");
    CHECK(to_string(ComponentClass::Irregular) == "irregular");
}

TEST_CASE("grids too small for the degree are rejected") {
    // Degree d needs W, H > d + 1 so supports never self-wrap.
    CHECK_THROWS_AS(enumerate_components(fixtures::trivial_cover(4, 4), 3),
                    std::invalid_argument);
    CHECK_THROWS_AS(enumerate_components(fixtures::trivial_cover(), 0), std::invalid_argument);
    CHECK_NOTHROW(enumerate_components(fixtures::trivial_cover(4, 4), 2));
}
