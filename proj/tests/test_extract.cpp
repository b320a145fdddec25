#include "doctest.h"
#include "ndp/extract.hpp"
#include "ndp/game3col.hpp"
#include "ndp/route_yes.hpp"
#include "support.hpp"

#include <cmath>

using namespace ndp;

namespace {

Drawing strip_isolated(const Drawing& d) {
    Drawing s = d;
    std::vector<int> deg = d.degrees(), id(d.points.size(), -1);
    s.points.clear();
    for (std::size_t v = 0; v < d.points.size(); ++v)
        if (deg[v] > 0) {
            id[v] = static_cast<int>(s.points.size());
            s.points.push_back(d.points[v]);
        }
    for (auto& e : s.edges) {
        e.u = id[e.u];
        e.v = id[e.v];
    }
    return s;
}

struct YesCase {
    GpwbInstance I;
    NdpInstance inst;
    RoutableSubset rs;
    PathSet routing;
};

// Perfect K55 instance routed on the first seeds with the distance property.
std::vector<YesCase> yes_cases(int wanted) {
    auto [g, chi] = complete_bipartite_55();
    const ConstraintGraph H = build_constraint_graph(g, 1);
    const LevelGraph L = build_level_graph(H, 1);
    const GpwbSolution S = perfect_gpwb_solution(g, chi, H, L);
    std::vector<YesCase> out;
    for (u64 seed = 0; seed < 40 && static_cast<int>(out.size()) < wanted; ++seed) {
        YesCase c{L.instance, build_ndp_instance(L.instance, seed, ConstantProfile::desk()), {}, {}};
        c.rs = select_routable_subset(L.instance, S, c.inst);
        if (!c.rs.audit.distance.ok) continue;
        c.routing = route_spaced_out(c.inst, c.rs);
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace

TEST_CASE("two triangles joined by a bridge are cut at the bridge") {
    const Drawing d = straight_line_drawing({{0, 0, 1}, {10, 0, 1}, {5, 8, 1}, {30, 8, 1}, {40, 0, 1}, {35, 16, 1}},
                                            {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {4, 5}, {3, 5}});
    const Cut c = balanced_cut(d, ConstantProfile::stress(), 1.0);
    CHECK(c.value() == 1);
    CHECK(c.cut_edges == std::vector<int>{3});
    CHECK(c.edges_a == 3);
    CHECK(c.edges_b == 3);
    CHECK(brute_force_balanced_cut(d, 1.0 / 32) == 1);
    CHECK(check_cut(d, c, 1.0 / 32, c.value_bound).ok);
}

TEST_CASE("cut preconditions raise threshold errors") {
    const Drawing tri = straight_line_drawing({{0, 0, 1}, {10, 0, 1}, {0, 10, 1}}, {{0, 1}, {1, 2}, {0, 2}});
    try {
        balanced_cut(tri, ConstantProfile::desk(), 1.0);
        FAIL("expected a threshold error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Threshold);
    }
    // With alpha = 0 any crossing exceeds m d alpha.
    ConstantProfile p = ConstantProfile::stress();
    p.c_block = 0;
    const Drawing k4 = straight_line_drawing({{0, 0, 1}, {10, 0, 1}, {10, 10, 1}, {0, 10, 1}},
                                             {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}, {1, 3}});
    try {
        balanced_cut(k4, p, 1.0);
        FAIL("expected a threshold error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Threshold);
    }
}

TEST_CASE("random geometric drawings: balanced cuts within the bound and near the optimum") {
    Rng rng(77, "cut-tests");
    int compared = 0;
    for (int t = 0; t < 60; ++t) {
        const int n = 6 + static_cast<int>(rng.below(t < 40 ? 8 : 60));
        const Drawing d = strip_isolated(testing::random_geometric_drawing(n, 3, 5, rng));
        if (d.edges.size() < 2) continue;
        const Cut c = balanced_cut(d, ConstantProfile::stress(), 1.0);
        const Report rep = check_cut(d, c, 1.0 / 32, c.value_bound);
        CHECK_MESSAGE(rep.ok, (rep.violations.empty() ? "" : rep.violations[0]));
        CHECK(c.planar_vertices >= static_cast<i64>(d.points.size()));
        if (d.edges.size() <= 12 && d.points.size() <= 20) {
            const i64 best = brute_force_balanced_cut(d, 1.0 / 32);
            REQUIRE(best >= 0);
            CHECK(c.value() <= 4 * std::max<i64>(best, 1));
            ++compared;
        }
    }
    CHECK(compared > 5);
}

TEST_CASE("routed drawings of YES instances admit balanced cuts") {
    for (const YesCase& c : yes_cases(2)) {
        const Drawing d = draw_routing(c.I, c.inst, c.routing, c.rs.pairs);
        const Cut cut = balanced_cut(d, ConstantProfile::stress(), c.inst.log_m);
        CHECK(check_cut(d, cut, 1.0 / 32, cut.value_bound).ok);
        CHECK(cut.value_after_step2 <= cut.value_after_separator + static_cast<i64>(cut.separator_size) * 4);
    }
}

TEST_CASE("base case: one cluster with the prescribed edge count") {
    const auto cases = yes_cases(3);
    REQUIRE(!cases.empty());
    for (const YesCase& c : cases) {
        const Extraction ex = extract_gpwb_solution(c.I, c.inst, c.routing, ConstantProfile::desk());
        const ExtractionAudit& a = ex.audit;
        CHECK(a.base_case);
        CHECK(a.routed == static_cast<i64>(c.rs.pairs.size()));
        const double lg3 = std::pow(c.inst.log_m, 3);
        const i64 expect = static_cast<i64>(std::ceil(static_cast<double>(a.routed) / (2.0 * lg3)));
        CHECK(a.value == expect);
        CHECK(static_cast<double>(a.value) >= a.value_target / 2.0 - 1e-9);
        CHECK(validate_solution(c.I, ex.solution).ok);
    }
}

TEST_CASE("partitioning loop under tiny thresholds") {
    const auto cases = yes_cases(3);
    REQUIRE(!cases.empty());
    for (const YesCase& c : cases) {
        const Extraction ex = extract_gpwb_solution(c.I, c.inst, c.routing, ConstantProfile::stress());
        const ExtractionAudit& a = ex.audit;
        CHECK_FALSE(a.base_case);
        CHECK(a.depth >= 1);
        CHECK(static_cast<double>(a.depth) <= a.depth_bound);
        CHECK(2 * a.retained >= a.m0);
        CHECK(static_cast<i64>(ex.solution.clusters.size()) == c.I.r);
        CHECK(a.value >= 1);
        CHECK(validate_solution(c.I, ex.solution).ok);
        for (std::size_t i = 1; i < a.levels.size(); ++i)
            CHECK(a.levels[i].edges == a.levels[i - 1].edges - a.levels[i - 1].cut_value);
        CHECK(a.levels.back().cuts == 0);
    }
}

TEST_CASE("invalid routings are contract errors") {
    const auto cases = yes_cases(1);
    REQUIRE(!cases.empty());
    const YesCase& c = cases.front();
    REQUIRE(c.routing.size() >= 2);
    PathSet dup = c.routing;
    dup.paths.push_back(dup.paths[0]);
    dup.pairing.push_back(dup.pairing[0]);
    CHECK_THROWS_AS(extract_gpwb_solution(c.I, c.inst, dup, ConstantProfile::desk()), Error);
    PathSet bad = c.routing;
    bad.pairing[0] = bad.pairing[1];
    bad.pairing[1] = c.routing.pairing[0];
    CHECK_THROWS_AS(extract_gpwb_solution(c.I, c.inst, bad, ConstantProfile::desk()), Error);
    PathSet none;
    const Extraction ex = extract_gpwb_solution(c.I, c.inst, none, ConstantProfile::desk());
    CHECK(ex.audit.value == 0);
}
