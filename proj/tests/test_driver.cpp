#include "doctest.h"
#include "ndp/driver.hpp"
#include "ndp/route_yes.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <map>
#include <set>

using namespace ndp;

namespace {

// Hand-built NDP instance on a small grid: one terminal per endpoint.
NdpInstance small_instance(i64 height, i64 length, const std::vector<std::pair<GridCoord, GridCoord>>& pairs,
                           const std::vector<std::string>& ids) {
    NdpInstance inst;
    inst.grid = {height, length};
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        inst.sources.push_back({pairs[p].first, static_cast<int>(p), static_cast<int>(p), 0});
        inst.destinations.push_back({pairs[p].second, static_cast<int>(p), static_cast<int>(p), 0});
        inst.pairs.push_back({ids[p], static_cast<int>(p), static_cast<int>(p), static_cast<int>(p)});
    }
    return inst;
}

using Cells = std::set<std::pair<i64, i64>>;

Cells cells_of(const GridPath& p) {
    Cells out;
    const auto& w = p.waypoints;
    out.insert({w[0].row, w[0].col});
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        GridCoord a = w[i];
        const GridCoord b = w[i + 1];
        while (!(a == b)) {
            a.row += (b.row > a.row) - (b.row < a.row);
            a.col += (b.col > a.col) - (b.col < a.col);
            out.insert({a.row, a.col});
        }
    }
    return out;
}

// Plain BFS distance inside a window avoiding blocked cells; -1 if unreachable.
i64 bfs_distance(GridCoord s, GridCoord t, i64 r1, i64 r2, i64 c1, i64 c2, const Cells& blocked) {
    if (blocked.count({s.row, s.col}) || blocked.count({t.row, t.col})) return -1;
    std::map<std::pair<i64, i64>, i64> dist;
    std::deque<std::pair<i64, i64>> q;
    dist[{s.row, s.col}] = 0;
    q.push_back({s.row, s.col});
    while (!q.empty()) {
        const auto [r, c] = q.front();
        q.pop_front();
        if (r == t.row && c == t.col) return dist[{r, c}];
        const std::pair<i64, i64> nb[4] = {{r - 1, c}, {r + 1, c}, {r, c - 1}, {r, c + 1}};
        for (auto v : nb) {
            if (v.first < r1 || v.first > r2 || v.second < c1 || v.second > c2) continue;
            if (blocked.count(v) || dist.count(v)) continue;
            dist[v] = dist[{r, c}] + 1;
            q.push_back(v);
        }
    }
    return -1;
}

// Reference greedy by cell BFS: (pair id, length) in routing order.
std::vector<std::pair<std::string, i64>> reference_greedy_lengths(const NdpInstance& inst, const PathSet& produced) {
    const i64 pad = 2 * static_cast<i64>(inst.pairs.size());
    std::vector<std::pair<std::string, i64>> out;
    Cells blocked;
    std::set<std::size_t> done;
    std::map<std::string, std::size_t> by_id;
    for (std::size_t p = 0; p < inst.pairs.size(); ++p) by_id[inst.pairs[p].id] = p;
    for (std::size_t step = 0;; ++step) {
        i64 best = -1;
        std::string best_id;
        for (std::size_t p = 0; p < inst.pairs.size(); ++p) {
            if (done.count(p)) continue;
            const GridCoord s = inst.source_of(static_cast<int>(p)), t = inst.dest_of(static_cast<int>(p));
            const i64 d = bfs_distance(s, t, std::max<i64>(1, std::min(s.row, t.row) - pad),
                                       std::min(inst.grid.height, std::max(s.row, t.row) + pad),
                                       std::max<i64>(1, std::min(s.col, t.col) - pad),
                                       std::min(inst.grid.length, std::max(s.col, t.col) + pad), blocked);
            if (d < 0) continue;
            if (best < 0 || d < best || (d == best && inst.pairs[p].id < best_id)) {
                best = d;
                best_id = inst.pairs[p].id;
            }
        }
        if (best < 0) break;
        out.push_back({best_id, best});
        done.insert(by_id[best_id]);
        // follow the produced routing for the chosen pair's cells
        REQUIRE(step < produced.size());
        const Cells c = cells_of(produced.paths[step]);
        blocked.insert(c.begin(), c.end());
    }
    return out;
}

// Maximum number of pairs routable node-disjointly (exhaustive; tiny grids).
int brute_force_ndp(const NdpInstance& inst) {
    const std::size_t np = inst.pairs.size();
    int best = 0;
    Cells used;
    std::function<void(std::size_t, int)> rec;
    std::function<bool(std::pair<i64, i64>, GridCoord, std::size_t, int)> walk;
    walk = [&](std::pair<i64, i64> at, GridCoord t, std::size_t p, int routed) -> bool {
        if (at.first == t.row && at.second == t.col) {
            rec(p + 1, routed + 1);
            return false;
        }
        const std::pair<i64, i64> nb[4] = {{at.first - 1, at.second}, {at.first + 1, at.second},
                                           {at.first, at.second - 1}, {at.first, at.second + 1}};
        for (auto v : nb) {
            if (!inst.grid.contains({v.first, v.second}) || used.count(v)) continue;
            used.insert(v);
            walk(v, t, p, routed);
            used.erase(v);
        }
        return false;
    };
    rec = [&](std::size_t p, int routed) {
        best = std::max(best, routed);
        if (p == np || routed + static_cast<int>(np - p) <= best) return;
        rec(p + 1, routed);  // skip pair p
        const GridCoord s = inst.source_of(static_cast<int>(p)), t = inst.dest_of(static_cast<int>(p));
        if (used.count({s.row, s.col}) || used.count({t.row, t.col})) return;
        used.insert({s.row, s.col});
        walk({s.row, s.col}, t, p, routed);
        used.erase({s.row, s.col});
    };
    rec(0, 0);
    return best;
}

struct Perfect {
    ColoringInstance G;
    Coloring chi;
    ConstraintGraph H;
    LevelGraph L;
    GpwbSolution S;
};

Perfect perfect_k55() {
    auto [g, chi] = complete_bipartite_55();
    Perfect p{g, chi, build_constraint_graph(g, 1), {}, {}};
    p.L = build_level_graph(p.H, 1);
    p.S = perfect_gpwb_solution(p.G, p.chi, p.H, p.L);
    return p;
}

// Merge perfect clusters into groups; cluster k of the result keeps the edges
// of its perfect clusters whose random string passes keep(k, arc).
GpwbSolution merged(const Perfect& p, const std::vector<std::vector<int>>& groups,
                    const std::function<bool(std::size_t, int)>& keep) {
    GpwbSolution s;
    s.clusters.assign(p.S.clusters.size(), {});
    s.selected.assign(p.S.clusters.size(), {});
    for (std::size_t k = 0; k < groups.size(); ++k)
        for (int c : groups[k]) {
            s.clusters[k].insert(s.clusters[k].end(), p.S.clusters[c].begin(), p.S.clusters[c].end());
            for (int e : p.S.selected[c])
                if (keep(k, p.L.edge_info[e].arc)) s.selected[k].push_back(e);
        }
    return s;
}

}  // namespace

TEST_CASE("greedy: single pair") {
    const NdpInstance inst = small_instance(10, 10, {{{2, 2}, {7, 8}}}, {"a"});
    const PathSet ps = greedy_ndp(inst);
    REQUIRE(ps.size() == 1);
    CHECK(ps.pairing[0] == "a");
    CHECK(ps.paths[0].length() == 11);
    CHECK(is_valid_path(ps.paths[0], inst.grid));
}

TEST_CASE("greedy: nested pairs route the inner one first and match the optimum") {
    // Outer pair spans the inner one on row 2 of a 3x6 grid.
    const NdpInstance inst = small_instance(3, 6, {{{2, 1}, {2, 6}}, {{2, 3}, {2, 4}}}, {"outer", "inner"});
    const PathSet ps = greedy_ndp(inst);
    REQUIRE(ps.size() == 2);
    CHECK(ps.pairing[0] == "inner");
    CHECK(verify_node_disjoint(ps));
    CHECK(static_cast<int>(ps.size()) == brute_force_ndp(inst));
    // Equal lengths competing for the same vertices: the smaller id wins.
    const NdpInstance tie = small_instance(1, 4, {{{1, 2}, {1, 4}}, {{1, 1}, {1, 3}}}, {"p1", "p0"});
    const PathSet pt = greedy_ndp(tie);
    REQUIRE(pt.size() == 1);
    CHECK(pt.pairing[0] == "p0");
    CHECK(brute_force_ndp(tie) == 1);
}

TEST_CASE("greedy agrees with a cell-BFS reference and stays node-disjoint") {
    Rng rng(11, "greedy-tests");
    int compared_opt = 0;
    for (int t = 0; t < 40; ++t) {
        const bool tiny = t < 15;
        const i64 H = tiny ? 3 + static_cast<i64>(rng.below(2)) : 8 + static_cast<i64>(rng.below(8));
        const i64 W = tiny ? 4 + static_cast<i64>(rng.below(2)) : 8 + static_cast<i64>(rng.below(8));
        const int np = tiny ? 3 : 4 + static_cast<int>(rng.below(6));
        std::set<std::pair<i64, i64>> taken;
        std::vector<std::pair<GridCoord, GridCoord>> pairs;
        std::vector<std::string> ids;
        auto fresh = [&]() {
            for (;;) {
                const GridCoord c{rng.uniform(1, H), rng.uniform(1, W)};
                if (taken.insert({c.row, c.col}).second) return c;
            }
        };
        for (int p = 0; p < np; ++p) {
            pairs.push_back({fresh(), fresh()});
            ids.push_back("d" + std::to_string(p));
        }
        const NdpInstance inst = small_instance(H, W, pairs, ids);
        const PathSet ps = greedy_ndp(inst);
        CHECK(verify_node_disjoint(ps));
        for (const GridPath& p : ps.paths) CHECK(is_valid_path(p, inst.grid));
        const auto ref = reference_greedy_lengths(inst, ps);
        REQUIRE(ref.size() == ps.size());
        for (std::size_t i = 0; i < ps.size(); ++i) {
            CHECK(ref[i].first == ps.pairing[i]);
            CHECK(ref[i].second == ps.paths[i].length());
        }
        if (tiny) {
            CHECK(static_cast<int>(ps.size()) <= brute_force_ndp(inst));
            ++compared_opt;
        }
    }
    CHECK(compared_opt == 15);
}

TEST_CASE("greedy on a desk NDP instance") {
    const Perfect p = perfect_k55();
    const NdpInstance inst = build_ndp_instance(p.L.instance, 3, ConstantProfile::desk());
    GreedyStats stats;
    const PathSet ps = greedy_ndp(inst, &stats);
    CHECK(verify_node_disjoint(ps));
    for (const GridPath& path : ps.paths) CHECK(is_valid_path(path, inst.grid));
    CHECK(ps.size() >= 1);
    CHECK(stats.searches >= inst.pairs.size());
    MESSAGE("greedy routed " << ps.size() << " of " << inst.pairs.size() << " pairs; max search graph "
                             << stats.max_nodes << ", skipped " << stats.skipped);
}

TEST_CASE("Case 1 on perfect and merged light solutions") {
    const Perfect p = perfect_k55();
    DichotomyParams params;
    params.alpha = 1;
    params.gamma = 400;
    const Dichotomy d = strategy_or_partition(p.H, p.L, p.S, params, 1);
    REQUIRE(d.is_strategy);
    CHECK(d.audit.good == p.H.arcs.size());
    CHECK(d.audit.terrible_edges == 0);
    CHECK(d.strategy.exact_fraction(p.H) == doctest::Approx(1.0));
    const ProverStrategy& st = d.strategy;
    const double mc = evaluate_strategy(p.H, [&](Rng& r) { return st.sample(r); }, 10000, 5);
    CHECK(mc > std::pow(2.0, -params.gamma / 2));
    CHECK(mc == doctest::Approx(1.0));

    // Two merged clusters: the strategy is genuinely randomized.
    const GpwbSolution m = merged(p, {{0, 1, 2}, {3, 4, 5}}, [](std::size_t k, int arc) {
        return (k == 0 && arc < 16) || (k == 1 && arc >= 16 && arc < 32);
    });
    DichotomyParams light = params;
    light.alpha = 4;
    const Dichotomy dm = strategy_or_partition(p.H, p.L, m, light, 2);
    REQUIRE(dm.is_strategy);
    const double exact = dm.strategy.exact_fraction(p.H);
    const double est = evaluate_strategy(p.H, [&](Rng& r) { return dm.strategy.sample(r); }, 10000, 9);
    // Monte Carlo over 10^4 samples agrees with the exact expectation.
    CHECK(std::abs(est - exact) < 0.02);
    CHECK(exact > std::pow(2.0, -light.gamma / 2));
    CHECK(exact < 1.0);
}

TEST_CASE("Case 2 on a heavy solution") {
    const Perfect p = perfect_k55();
    const GpwbSolution m = merged(p, {{0, 1, 2}, {3, 4, 5}}, [](std::size_t k, int arc) {
        return (k == 0 && arc < 16) || (k == 1 && arc >= 16 && arc < 32);
    });
    REQUIRE(validate_solution(p.L.instance, m).ok);
    DichotomyParams params;
    params.alpha = 4;
    params.gamma = 8;  // z = 2 < 3 vertices per group in each merged cluster
    const Dichotomy d = strategy_or_partition(p.H, p.L, m, params, 7);
    REQUIRE_FALSE(d.is_strategy);
    const DichotomyAudit& a = d.audit;
    CHECK(a.good == 32);
    CHECK(a.heavy == 32);
    CHECK(a.j_star == 2);
    CHECK(a.r_star == 32);
    CHECK(a.not_terrible_ok);
    CHECK(a.terrible_bound_ok);
    CHECK_FALSE(a.alpha_condition);  // 4 >= 2^{8/32}: reported, not assumed
    CHECK(a.mass == 16);
    CHECK(static_cast<double>(a.mass) >= a.mass_target);
    REQUIRE(d.parts.size() == 1);
    CHECK(a.part_bound_ok);
    for (const auto& part : d.parts) CHECK(static_cast<double>(part.size()) <= a.part_bound);
    // parts are vertex-disjoint subgraphs
    std::set<int> eq, vq;
    for (const auto& part : d.parts) {
        std::set<int> e, v;
        for (int k : part) {
            e.insert(p.H.arcs[k].edge_query);
            v.insert(p.H.arcs[k].vertex_query);
        }
        for (int q : e) CHECK(eq.insert(q).second);
        for (int q : v) CHECK(vq.insert(q).second);
    }
    // The precondition on the solution value is enforced.
    params.alpha = 1;
    CHECK_THROWS_AS(strategy_or_partition(p.H, p.L, m, params, 7), Error);
}

TEST_CASE("decide: oracle solver says YES, empty solver says NO at step 3") {
    const Perfect p = perfect_k55();
    DriverParams params;
    const auto t0 = std::chrono::steady_clock::now();
    const Decision yes = decide(p.G, 1, oracle_solver(p.G, p.chi), params, 42);
    REQUIRE(yes.outcome == Outcome::Yes);
    CHECK_FALSE(yes.certificate.empty());
    for (const auto& c : yes.certificate) CHECK(c.fraction > yes.strategy_threshold);
    CHECK(yes.global_fraction > yes.global_threshold);
    const Report rep = verify_certificate(p.H, yes, params.gamma);
    CHECK_MESSAGE(rep.ok, (rep.violations.empty() ? "" : rep.violations[0]));
    CHECK(static_cast<double>(yes.phases) <= yes.phase_bound);

    const Decision again = decide(p.G, 1, oracle_solver(p.G, p.chi), params, 42);
    REQUIRE(again.certificate.size() == yes.certificate.size());
    for (std::size_t i = 0; i < yes.certificate.size(); ++i) {
        CHECK(again.certificate[i].arcs == yes.certificate[i].arcs);
        CHECK(again.certificate[i].fraction == yes.certificate[i].fraction);
    }

    const Decision no = decide(p.G, 1, empty_solver(), params, 42);
    CHECK(no.outcome == Outcome::No);
    CHECK(no.step == 3);
    CHECK(no.cluster_log.back().instances_tried == params.retries);
    CHECK_FALSE(verify_certificate(p.H, no, params.gamma).ok);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(secs < 300);
}

TEST_CASE("decide rejects solvers returning overlapping paths") {
    const Perfect p = perfect_k55();
    const NdpSolver inner = oracle_solver(p.G, p.chi);
    const NdpSolver bad = [&](const NdpInstance& inst, const SolverHint& hint) {
        PathSet ps = inner(inst, hint);
        if (!ps.paths.empty()) {
            ps.paths.push_back(ps.paths[0]);
            ps.pairing.push_back(ps.pairing[0]);
        }
        return ps;
    };
    CHECK_THROWS_AS(decide(p.G, 1, bad, DriverParams{}, 1), Error);
}

TEST_CASE("retry budget override") {
    DriverParams params;
    params.retries = 8;
    unsetenv("NDPLAB_TRIALS");
    CHECK(effective_retries(params) == 8);
    setenv("NDPLAB_TRIALS", "3", 1);
    CHECK(effective_retries(params) == 3);
    const Perfect p = perfect_k55();
    const Decision no = decide(p.G, 1, empty_solver(), params, 1);
    CHECK(no.cluster_log.back().instances_tried == 3);
    setenv("NDPLAB_TRIALS", "zero", 1);
    CHECK_THROWS_AS(effective_retries(params), Error);
    unsetenv("NDPLAB_TRIALS");
}
