#include "doctest.h"
#include "ndp/drawing.hpp"
#include "ndp/game3col.hpp"
#include "ndp/planar.hpp"
#include "ndp/route_yes.hpp"

#include <algorithm>

using namespace ndp;

namespace {

// Two left vertices (blocks on row 10) and two right vertices (blocks on
// row 30) of a 60x60 grid, with edges e0=(L0,R0), e1=(L0,R1), e2=(L1,R0),
// e3=(L1,R1). Only the fields used by the drawing are filled in.
struct Fixture {
    GpwbInstance I;
    NdpInstance inst;
};

Fixture fixture() {
    Fixture f;
    f.I.left_ids = {"L0", "L1"};
    f.I.right_ids = {"R0", "R1"};
    f.I.edges = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    NdpInstance& n = f.inst;
    n.grid = {60, 60};
    n.source_row = 10;
    n.dest_row = 30;
    n.middle_row = 20;
    n.profile = ConstantProfile::desk();
    n.source_blocks = {{5, 20, 0, {0, 1}}, {30, 45, 1, {2, 3}}};
    n.dest_blocks = {{5, 20, 0, {0, 1}}, {30, 45, 1, {2, 3}}};
    n.left_block_of = {0, 1};
    n.right_block_of = {0, 1};
    n.sources = {{{10, 8}, 0, 0, 0}, {{10, 14}, 0, 1, 0}, {{10, 33}, 1, 2, 1}, {{10, 40}, 1, 3, 1}};
    n.destinations = {{{30, 6}, 0, 0, 0}, {{30, 12}, 0, 1, 0}, {{30, 34}, 1, 2, 1}, {{30, 42}, 1, 3, 1}};
    // pair e: source index, destination index
    const int src[4] = {0, 1, 2, 3}, dst[4] = {0, 2, 1, 3};
    for (int e = 0; e < 4; ++e) n.pairs.push_back({"e" + std::to_string(e), e, src[e], dst[e]});
    return f;
}

GridPath poly(std::vector<GridCoord> pts) { return GridPath{pts}; }

}  // namespace

TEST_CASE("exact geometry primitives") {
    const QPoint a{0, 0, 1}, b{4, 4, 1}, c{0, 4, 1}, d{4, 0, 1};
    QPoint at;
    CHECK(segment_intersection(a, b, c, d, &at) == 1);
    CHECK(same_point(at, {2, 2, 1}));
    CHECK(segment_intersection(a, {2, 2, 1}, {1, 1, 1}, b, &at) == 2);
    CHECK(segment_intersection(a, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}, &at) == 0);
    CHECK(segment_intersection(a, c, c, b, &at) == 1);  // touching at an endpoint
    CHECK(same_point(at, c));
    CHECK(same_point({1, 2, 3}, {2, 4, 6}));
    CHECK(orientation(a, d, b) > 0);
    CHECK(before_on_segment(a, b, {1, 1, 1}, {3, 3, 1}));
    // rational intersection
    CHECK(segment_intersection({0, 0, 1}, {3, 1, 1}, {1, 0, 1}, {1, 5, 1}, &at) == 1);
    CHECK(same_point(at, {3, 1, 3}));
}

TEST_CASE("routed drawing of a single edge has no crossings") {
    Fixture f = fixture();
    PathSet ps;
    ps.paths.push_back(poly({{10, 8}, {30, 8}, {30, 6}}));
    ps.pairing.push_back("e0");
    const Drawing d = draw_routing(f.I, f.inst, ps, {0});
    CHECK(d.num_vertices() == 2);
    CHECK(d.crossings.empty());
    CHECK(recount_crossings(d).empty());
    CHECK(validate_drawing(d).ok);
}

TEST_CASE("hand routing with two crossings on the straight pieces") {
    Fixture f = fixture();
    PathSet ps;
    // e2 comes over the top of block L0, down column 7 through the source band
    // and reaches its destination from the left along row 29.
    ps.paths.push_back(poly({{10, 33}, {5, 33}, {5, 7}, {29, 7}, {29, 12}, {30, 12}}));
    ps.pairing.push_back("e2");
    // e0 goes around below and enters its destination from below through
    // the destination band of R0, crossing the straight piece of e2.
    ps.paths.push_back(poly({{10, 8}, {11, 8}, {11, 13}, {31, 13}, {31, 6}, {30, 6}}));
    ps.pairing.push_back("e0");
    REQUIRE(verify_node_disjoint(ps));
    const Drawing d = draw_routing(f.I, f.inst, ps, {0, 2});
    CHECK(d.crossings.size() == 2);
    CHECK(recount_crossings(d).size() == 2);
    CHECK(validate_drawing(d).ok);
    const PlanarizedGraph pg = expand_to_planar(d);
    CHECK(pg.crossing_vertices == 2);
    CHECK(is_planar(pg.graph));
}

TEST_CASE("self-loops through the own straight piece are trimmed") {
    Fixture f = fixture();
    PathSet ps;
    // e1 leaves its source upwards, comes back down through column 10 of its
    // own source band and crosses the straight piece from the vertex image.
    ps.paths.push_back(poly({{10, 14}, {7, 14}, {7, 10}, {25, 10}, {25, 34}, {30, 34}}));
    ps.pairing.push_back("e1");
    const Drawing d = draw_routing(f.I, f.inst, ps, {1});
    REQUIRE(d.edges.size() == 1);
    const auto& curve = d.edges[0].curve;
    CHECK(curve[1].x == 20 * curve[1].den);   // the curve leaves the line at column 10
    CHECK(curve[1].den > 1);
    CHECK(validate_drawing(d).ok);
    // without trimming the curve would cross itself
    Drawing raw = d;
    raw.edges[0].curve = {d.points[0], {28, 20, 1}, {28, 14, 1}, {20, 14, 1}, {20, 50, 1}, {68, 50, 1}, {68, 60, 1},
                          d.points[1]};
    CHECK_FALSE(validate_drawing(raw).ok);
}

TEST_CASE("unrouted edges are a contract error") {
    Fixture f = fixture();
    PathSet ps;
    ps.paths.push_back(poly({{10, 8}, {30, 8}, {30, 6}}));
    ps.pairing.push_back("e0");
    CHECK_THROWS_AS(draw_routing(f.I, f.inst, ps, {0, 3}), Error);
    ps.paths[0] = poly({{10, 8}, {30, 8}, {30, 7}});
    CHECK_THROWS_AS(draw_routing(f.I, f.inst, ps, {0}), Error);
}

TEST_CASE("YES routings: band count equals the geometric recount and obeys the bound") {
    auto [g, chi] = complete_bipartite_55();
    const ConstraintGraph H = build_constraint_graph(g, 1);
    const LevelGraph L = build_level_graph(H, 1);
    const GpwbSolution S = perfect_gpwb_solution(g, chi, H, L);
    int drawn = 0;
    for (u64 seed = 0; seed < 8; ++seed) {
        const NdpInstance inst = build_ndp_instance(L.instance, seed, ConstantProfile::desk());
        const RoutableSubset rs = select_routable_subset(L.instance, S, inst);
        if (!rs.audit.distance.ok) continue;
        const PathSet ps = route_spaced_out(inst, rs);
        const Drawing d = draw_routing(L.instance, inst, ps, rs.pairs);
        ++drawn;
        CHECK(d.crossings.size() == recount_crossings(d).size());
        CHECK(validate_drawing(d).ok);
        CHECK(static_cast<i64>(d.crossings.size()) <=
              routed_crossing_bound_per_edge(inst) * static_cast<i64>(d.num_edges()));
        CHECK(is_planar(expand_to_planar(d).graph));
    }
    CHECK(drawn > 0);
}
