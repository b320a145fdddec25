#include "doctest.h"
#include "ndp/game3col.hpp"
#include "ndp/reduce_ndp.hpp"

using namespace ndp;

namespace {

// One group of 4 left vertices, four groups of 4 right vertices; each left
// vertex is joined to one vertex of every right group. M = 16, r = 4,
// beta* = 16, h = 4; every right vertex has beta = 1.
GpwbInstance sixteen_edges() {
    GpwbInstance I;
    for (int i = 0; i < 4; ++i) I.left_ids.push_back("a" + std::to_string(i));
    for (int i = 0; i < 16; ++i) I.right_ids.push_back("b" + std::to_string(i));
    I.groups_left = {{0, 1, 2, 3}};
    for (int g = 0; g < 4; ++g) I.groups_right.push_back({4 * g, 4 * g + 1, 4 * g + 2, 4 * g + 3});
    for (int u = 0; u < 4; ++u)
        for (int g = 0; g < 4; ++g) I.edges.push_back({u, 4 * g + u});
    I.r = 4;
    I.h = 4;
    return I;
}

GpwbInstance level_instance(int strings, u64 seed) {
    auto [g, chi] = complete_bipartite_55();
    return gpwb_of(constraint_graph_from_strings(g, 1, sample_random_strings(g, 1, strings, seed)), 1);
}

}  // namespace

TEST_CASE("grid side and block length follow the construction formulas") {
    const GpwbInstance I = sixteen_edges();
    REQUIRE(validate_instance(I).ok);
    const NdpInstance inst = build_ndp_instance(I, 1, ConstantProfile::paper());
    CHECK(inst.M == 16);
    CHECK(inst.log_m == 4.0);
    CHECK(inst.grid.height == 2048 * 16 * 16 * 4);
    CHECK(inst.grid.length == inst.grid.height);
    CHECK(inst.block_length() == 16384);
    for (const Block& b : inst.dest_blocks) {
        CHECK(b.terminals.size() == 1);
        CHECK(b.col_hi - b.col_lo + 1 == 16384);
    }
    CHECK(audit_instance(I, inst).ok);
}

TEST_CASE("desk instances pass the structural audit") {
    for (u64 seed = 0; seed < 6; ++seed) {
        const GpwbInstance I = level_instance(3 + static_cast<int>(seed), seed);
        const NdpInstance inst = build_ndp_instance(I, seed, ConstantProfile::desk());
        const Report rep = audit_instance(I, inst);
        CHECK(rep.ok);
        CHECK(inst.pairs.size() == I.edges.size());
        // Pairs sharing a source are exactly the edges of one left bundle.
        const BundleIndex bi = compute_bundles(I);
        for (const Bundle& b : bi.bundles) {
            if (b.anchor.side != Part::Left) continue;
            for (int e : b.edges) CHECK(inst.pairs[e].source == inst.pairs[b.edges[0]].source);
        }
        for (std::size_t e = 0; e + 1 < inst.pairs.size(); ++e)
            if (bi.left_bundle_of_edge[e] != bi.left_bundle_of_edge[e + 1])
                CHECK(inst.pairs[e].source != inst.pairs[e + 1].source);
        // R' and R'' margins
        CHECK(inst.source_row - 1 >= inst.grid.height / 4);
        CHECK(inst.dest_row - inst.source_row >= inst.grid.height / 4);
        CHECK(inst.grid.height - inst.dest_row >= inst.grid.height / 4);
    }
}

TEST_CASE("only the destination side depends on the seed") {
    const GpwbInstance I = level_instance(6, 3);
    const NdpInstance a = build_ndp_instance(I, 11, ConstantProfile::desk());
    const NdpInstance a2 = build_ndp_instance(I, 11, ConstantProfile::desk());
    const NdpInstance b = build_ndp_instance(I, 12, ConstantProfile::desk());
    for (std::size_t p = 0; p < a.pairs.size(); ++p) {
        CHECK(a.sources[a.pairs[p].source].block == b.sources[b.pairs[p].source].block);
        CHECK(a.source_of(static_cast<int>(p)) == a2.source_of(static_cast<int>(p)));
        CHECK(a.dest_of(static_cast<int>(p)) == a2.dest_of(static_cast<int>(p)));
    }
    bool dest_differs = false;
    for (std::size_t p = 0; p < a.pairs.size(); ++p)
        dest_differs = dest_differs || !(a.dest_of(static_cast<int>(p)) == b.dest_of(static_cast<int>(p)));
    CHECK(dest_differs);
    // Source blocks hold the same vertices; terminal order inside a block
    // follows rho' and may change.
    REQUIRE(a.source_blocks.size() == b.source_blocks.size());
    for (std::size_t k = 0; k < a.source_blocks.size(); ++k) {
        CHECK(a.source_blocks[k].vertex == b.source_blocks[k].vertex);
        CHECK(a.source_blocks[k].col_lo == b.source_blocks[k].col_lo);
    }
}

TEST_CASE("sources and destinations of a block appear in the same order") {
    for (u64 seed = 0; seed < 10; ++seed) {
        const GpwbInstance I = level_instance(8, seed);
        const NdpInstance inst = build_ndp_instance(I, seed, ConstantProfile::desk());
        const BundleIndex bi = compute_bundles(I);
        // One pair per source of the block (any edge of each bundle).
        for (const Block& blk : inst.source_blocks) {
            std::vector<int> chosen;
            for (int t : blk.terminals) chosen.push_back(bi.bundles[inst.sources[t].bundle].edges[seed % 2 == 0 ? 0 : 1]);
            CHECK(ordering_consistency_check(inst, chosen));
        }
    }
    const GpwbInstance I = level_instance(40, 1);
    NdpInstance inst = build_ndp_instance(I, 1, ConstantProfile::desk());
    const Block* pick = nullptr;
    for (const Block& b : inst.source_blocks)
        if (b.terminals.size() >= 2) pick = &b;
    REQUIRE(pick != nullptr);
    const Block& blk = *pick;
    const BundleIndex bi = compute_bundles(I);
    const int p0 = bi.bundles[inst.sources[blk.terminals[0]].bundle].edges[0];
    const int p1 = bi.bundles[inst.sources[blk.terminals[1]].bundle].edges[0];
    CHECK(ordering_consistency_check(inst, {p0}));
    CHECK(ordering_consistency_check(inst, {p0, p1}));
    std::swap(inst.destinations[inst.pairs[p0].destination].at, inst.destinations[inst.pairs[p1].destination].at);
    CHECK_FALSE(ordering_consistency_check(inst, {p0, p1}));
    CHECK_THROWS_AS(ordering_consistency_check(inst, {p0, p0}), Error);
}

TEST_CASE("wall instance keeps every terminal") {
    const GpwbInstance I = level_instance(4, 2);
    const NdpInstance inst = build_ndp_instance(I, 2, ConstantProfile::desk());
    const NdpInstance w = build_wall_instance(inst);
    CHECK(w.wall);
    CHECK(w.pairs.size() == inst.pairs.size());
    CHECK(w.grid.length == inst.grid.length);
    const WallSpec ws{w.grid};
    for (std::size_t p = 0; p < w.pairs.size(); ++p) {
        CHECK(wall_contains_vertex(ws, w.source_of(static_cast<int>(p))));
        CHECK(wall_contains_vertex(ws, w.dest_of(static_cast<int>(p))));
    }
}

TEST_CASE("invalid inputs are rejected") {
    GpwbInstance I = sixteen_edges();
    I.h = 5;
    CHECK_THROWS_AS(build_ndp_instance(I, 0, ConstantProfile::desk()), Error);
    CHECK_THROWS_AS(ConstantProfile::by_name("huge"), Error);
}
