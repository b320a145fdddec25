#include "doctest.h"
#include "ndp/game3col.hpp"
#include "ndp/route_yes.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

using namespace ndp;

namespace {

// Hand-made instance: explicit terminal columns on rows 3L/8 and 5L/8, one
// block per listed block id. Pair i joins sources[i] to destinations[i].
NdpInstance hand_instance(i64 side, const std::vector<std::pair<i64, int>>& src, const std::vector<std::pair<i64, int>>& dst) {
    NdpInstance inst;
    inst.grid = {side, side};
    inst.source_row = 3 * side / 8;
    inst.dest_row = 5 * side / 8;
    inst.middle_row = side / 2;
    inst.profile = ConstantProfile::desk();
    for (std::size_t i = 0; i < src.size(); ++i) {
        inst.sources.push_back({{inst.source_row, src[i].first}, 0, static_cast<int>(i), src[i].second});
        inst.destinations.push_back({{inst.dest_row, dst[i].first}, 0, static_cast<int>(i), dst[i].second});
        inst.pairs.push_back({"p" + std::to_string(i), static_cast<int>(i), static_cast<int>(i), static_cast<int>(i)});
    }
    inst.M = static_cast<i64>(src.size());
    return inst;
}

i64 expanded_min_distance(const PathSet& ps) {
    std::vector<std::set<GridCoord>> v(ps.size());
    for (std::size_t i = 0; i < ps.size(); ++i)
        for (GridCoord c : expand(ps.paths[i])) v[i].insert(c);
    i64 best = INT64_MAX;
    for (std::size_t i = 0; i < ps.size(); ++i)
        for (std::size_t j = i + 1; j < ps.size(); ++j)
            for (GridCoord a : v[i])
                for (i64 dr = -1; dr <= 1; ++dr)
                    for (i64 dc = -1; dc <= 1; ++dc)
                        if (std::abs(dr) + std::abs(dc) <= 1 && v[j].count({a.row + dr, a.col + dc}))
                            best = std::min(best, std::abs(dr) + std::abs(dc));
    return best;
}

struct Perfect {
    LevelGraph L;
    GpwbSolution S;
};

Perfect perfect_k55(int strings, u64 seed) {
    auto [g, chi] = complete_bipartite_55();
    const ConstraintGraph H = strings >= 50 ? build_constraint_graph(g, 1)
                                            : constraint_graph_from_strings(g, 1, sample_random_strings(g, 1, strings, seed));
    Perfect p{build_level_graph(H, 1), {}};
    p.S = perfect_gpwb_solution(g, chi, H, p.L);
    return p;
}

}  // namespace

TEST_CASE("run and window statistics") {
    CHECK(longest_yellow_run(std::vector<bool>(9, false)) == 9);
    CHECK(longest_yellow_run({true, false, false, true, false}) == 2);
    const std::vector<bool> alt = {true, false, true, false, true, false, true, false};
    CHECK(max_pink_in_window(alt, 4) == 2);
    CHECK(max_pink_in_window(alt, 1) == 1);
    CHECK_THROWS_AS(max_pink_in_window(alt, 9), Error);
    CHECK_THROWS_AS(longest_yellow_run({}), Error);
}

TEST_CASE("random-ordering tail bounds hold empirically") {
    const std::size_t n = 1000, P = 100;
    const double mu = std::log2(static_cast<double>(n));
    const std::size_t run_len = static_cast<std::size_t>(std::ceil(4.0 * n * mu / P));
    const std::size_t window = static_cast<std::size_t>(std::floor(n * mu / P));
    std::vector<bool> items(n, false);
    for (std::size_t i = 0; i < P; ++i) items[i] = true;
    Rng rng(77, "ordering");
    const int trials = 2000;
    int long_runs = 0, heavy_windows = 0;
    for (int t = 0; t < trials; ++t) {
        rng.shuffle(items);
        long_runs += longest_yellow_run(items) >= run_len;
        heavy_windows += static_cast<double>(max_pink_in_window(items, window)) > 4.0 * mu;
    }
    auto within = [&](int hits, double bound) {
        const double p = std::min(1.0, bound);
        const double sigma = std::sqrt(p * (1 - p) / trials);
        return static_cast<double>(hits) / trials <= p + 3 * sigma + 1e-12;
    };
    CHECK(within(long_runs, n / std::exp(mu)));
    CHECK(within(heavy_windows, n / std::pow(4.0, mu)));
}

TEST_CASE("distance property examples") {
    // Sources 0 and 1 are adjacent on R' (distance 2) but two destinations
    // separate them in sigma.
    const NdpInstance inst = hand_instance(400, {{100, 0}, {102, 0}, {200, 1}, {300, 2}}, {{100, 0}, {150, 1}, {250, 2}, {350, 3}});
    CHECK(check_distance_property(inst, {0}).ok);
    const DistanceCheck bad = check_distance_property(inst, {0, 2, 3, 1});
    CHECK_FALSE(bad.ok);
    CHECK(bad.between == 2);
    CHECK(bad.distance == 2);
    CHECK(std::set<int>{bad.witness_a, bad.witness_b} == std::set<int>{0, 1});
    // Pairs in blocks far apart.
    CHECK(check_distance_property(inst, {2, 3}).ok);
    CHECK_THROWS_AS(check_distance_property(inst, {2, 2}), Error);
    RoutableSubset rs;
    rs.pairs = {0, 2, 3, 1};
    CHECK_THROWS_AS(route_spaced_out(inst, rs), Error);
}

TEST_CASE("degenerate selection returns one pair") {
    const Perfect p = perfect_k55(3, 4);
    const NdpInstance inst = build_ndp_instance(p.L.instance, 1, ConstantProfile::paper());
    const RoutableSubset rs = select_routable_subset(p.L.instance, p.S, inst);
    CHECK(rs.audit.degenerate);
    REQUIRE(rs.pairs.size() == 1);
    const PathSet ps = route_spaced_out(inst, rs);
    CHECK(ps.size() == 1);
    CHECK(audit_yes_routing(inst, rs, ps).ok);
}

TEST_CASE("selection steps on desk instances") {
    const Perfect p = perfect_k55(50, 0);
    const i64 h = p.L.instance.h;
    int with_property = 0;
    for (u64 seed = 0; seed < 100; ++seed) {
        const NdpInstance inst = build_ndp_instance(p.L.instance, seed, ConstantProfile::desk());
        const RoutableSubset rs = select_routable_subset(p.L.instance, p.S, inst);
        const SelectionAudit& a = rs.audit;
        CHECK_FALSE(a.degenerate);
        CHECK(a.m0 == static_cast<std::size_t>(beta_star(p.L.instance)));
        CHECK(4 * h >= (i64{1} << (a.p + a.q)));
        CHECK(a.h_large);
        // Step sizes: each regularization keeps at least a 1/ceil(log M) share.
        const double lg = std::ceil(inst.log_m);
        CHECK(static_cast<double>(a.m1) * lg >= static_cast<double>(a.m0));
        CHECK(static_cast<double>(a.m2) * lg >= static_cast<double>(a.m1));
        CHECK(a.m3 == static_cast<std::size_t>(ceil_div(static_cast<i64>(a.m2), a.step3_modulus)));
        CHECK(a.m_final == static_cast<std::size_t>(ceil_div(static_cast<i64>(a.m3), a.step4_modulus)));
        if (!a.heavy_path && !a.n_bound_exceeded) CHECK(a.almost_distance_ok);
        with_property += a.distance.ok;
        // sigma groups destinations by cluster
        for (std::size_t i = 1; i < rs.cluster.size(); ++i) CHECK(rs.cluster[i - 1] <= rs.cluster[i]);
    }
    CHECK(with_property >= 50);
}

TEST_CASE("YES routing on desk instances") {
    for (int strings : {4, 12, 50}) {
        const Perfect p = perfect_k55(strings, 5);
        for (u64 seed = 0; seed < 6; ++seed) {
            const NdpInstance inst = build_ndp_instance(p.L.instance, seed, ConstantProfile::desk());
            const RoutableSubset rs = select_routable_subset(p.L.instance, p.S, inst);
            if (!rs.audit.distance.ok) continue;
            const PathSet ps = route_spaced_out(inst, rs);
            const Report rep = audit_yes_routing(inst, rs, ps);
            CHECK(rep.ok);
            CHECK(ps.size() == rs.pairs.size());
            // Order preservation inside every source block.
            std::map<int, std::vector<std::pair<i64, std::size_t>>> blocks;
            for (std::size_t i = 0; i < rs.pairs.size(); ++i)
                blocks[inst.sources[inst.pairs[rs.pairs[i]].source].block].push_back({inst.source_of(rs.pairs[i]).col, i});
            for (auto& [b, v] : blocks) {
                std::sort(v.begin(), v.end());
                for (std::size_t k = 1; k < v.size(); ++k) CHECK(v[k - 1].second < v[k].second);
            }
        }
    }
}

TEST_CASE("synthetic routings agree with an expansion oracle") {
    Rng rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(7));
        const int nblocks = 1 + static_cast<int>(rng.below(3));
        // Destination blocks hold consecutive strand ranges; source blocks
        // get strands in increasing index order with room for the strands
        // between them.
        std::vector<int> sblock(n), dblock(n);
        for (int i = 0; i < n; ++i) sblock[i] = static_cast<int>(rng.below(nblocks));
        std::vector<int> cuts = {0};
        for (int i = 1; i < n; ++i)
            if (rng.below(3) == 0) cuts.push_back(i);
        for (int i = 0, b = -1; i < n; ++i) {
            if (std::find(cuts.begin(), cuts.end(), i) != cuts.end()) ++b;
            dblock[i] = b;
        }
        const i64 side = 1200, gapb = 8 * n + 40;
        std::vector<std::pair<i64, int>> src(n), dst(n);
        for (int b = 0; b < nblocks; ++b) {
            i64 col = 3 * n + 20 + b * (gapb + 8 * n);
            int prev = -1;
            for (int i = 0; i < n; ++i) {
                if (sblock[i] != b) continue;
                if (prev >= 0) col += 4 * (i - prev) + 2 + static_cast<i64>(rng.below(3));
                src[i] = {col, b};
                prev = i;
            }
        }
        for (int i = 0; i < n; ++i) {
            const i64 base = 3 * n + 20 + dblock[i] * (gapb + 4 * n);
            dst[i] = {base + 3 * i, dblock[i]};
        }
        const NdpInstance inst = hand_instance(side, src, dst);
        RoutableSubset rs;
        for (int i = 0; i < n; ++i) rs.pairs.push_back(i);
        REQUIRE(check_distance_property(inst, rs.pairs).ok);
        const PathSet ps = route_spaced_out(inst, rs);
        CHECK(audit_yes_routing(inst, rs, ps).ok);
        CHECK(expanded_min_distance(ps) >= 2);
        for (const auto& path : ps.paths)
            for (GridCoord c : expand(path))
                if (!(c == path.front()) && !(c == path.back())) CHECK_FALSE(inst.grid.on_boundary(c));
    }
}
