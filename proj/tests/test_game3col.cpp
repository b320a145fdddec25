#include "doctest.h"
#include "ndp/game3col.hpp"

#include <map>
#include <set>

using namespace ndp;

namespace {

// Petersen-like small 5-regular graphs come from the planted generator; the
// complete graph K_6 is the smallest 5-regular graph and is not 3-colorable.
ColoringInstance k6() {
    std::vector<std::pair<int, int>> e;
    for (int u = 0; u < 6; ++u)
        for (int v = u + 1; v < 6; ++v) e.push_back({u, v});
    return make_coloring_instance(6, e);
}

std::vector<std::pair<ColoringInstance, Coloring>> yes_graphs() {
    std::vector<std::pair<ColoringInstance, Coloring>> out;
    out.push_back(complete_bipartite_55());
    out.push_back(planted_5regular(12, 1));
    out.push_back(planted_5regular(12, 9));
    return out;
}

}  // namespace

TEST_CASE("verify_coloring examples") {
    auto [g, chi] = complete_bipartite_55();
    CHECK(g.n == 10);
    CHECK(g.m() == 25);
    CHECK(verify_coloring(g, chi) == 25);
    CHECK(verify_coloring(g, Coloring(10, 0)) == 0);
    const ColoringInstance tri = make_coloring_instance(3, {{0, 1}, {1, 2}, {0, 2}}, false);
    CHECK(verify_coloring(tri, {0, 1, 2}) == 3);
    CHECK_THROWS_AS(verify_coloring(tri, {0, 1}), Error);
    CHECK_THROWS_AS(make_coloring_instance(3, {{0, 1}, {1, 2}, {0, 2}}), Error);
}

TEST_CASE("planted generator yields 5-regular 3-colorable graphs") {
    for (u64 seed = 0; seed < 5; ++seed) {
        auto [g, chi] = planted_5regular(18, seed);
        CHECK(g.regular);
        CHECK(g.m() == 45);
        CHECK(verify_coloring(g, chi) == g.m());
    }
    CHECK_FALSE(is_3_colorable(k6()));
    CHECK(is_3_colorable(complete_bipartite_55().first));
}

TEST_CASE("constraint graph sizes and degree identities") {
    for (const auto& [g, chi] : yes_graphs()) {
        for (int ell : {1, 2}) {
            const ConstraintGraph H = build_constraint_graph(g, ell);
            const i64 m = static_cast<i64>(g.m());
            CHECK(static_cast<i64>(H.num_strings()) == ipow(2 * m, ell));
            CHECK(static_cast<i64>(H.edge_queries.size()) == ipow(m, ell));
            CHECK(static_cast<i64>(H.vertex_queries.size()) == ipow(g.n, ell));
            std::vector<int> de(H.edge_queries.size(), 0), dv(H.vertex_queries.size(), 0);
            for (const auto& a : H.arcs) ++de[a.edge_query], ++dv[a.vertex_query];
            for (int d : de) CHECK(d == ipow(2, ell));
            for (int d : dv) CHECK(d == ipow(5, ell));
        }
    }
    const ConstraintGraph K = build_constraint_graph(complete_bipartite_55().first, 1);
    CHECK(K.edge_queries.size() == 25);
    CHECK(K.vertex_queries.size() == 10);
    CHECK(K.num_strings() == 50);
    CHECK_THROWS_AS(build_constraint_graph(complete_bipartite_55().first, 3, 1000), Error);
}

TEST_CASE("level graph identities") {
    auto [g, chi] = complete_bipartite_55();
    for (int ell : {1, 2}) {
        const auto strings = sample_random_strings(g, ell, 7, 42);
        const ConstraintGraph H = constraint_graph_from_strings(g, ell, strings);
        const LevelGraph L = build_level_graph(H, ell);
        const GpwbInstance& I = L.instance;
        for (const auto& grp : I.groups_left) CHECK(static_cast<i64>(grp.size()) == ipow(6, ell));
        for (const auto& grp : I.groups_right) CHECK(static_cast<i64>(grp.size()) == ipow(6, ell));
        for (const auto& er : L.edges_of_arc) CHECK(static_cast<i64>(er.size()) == ipow(12, ell));
        const BundleIndex bi = compute_bundles(I);
        for (const auto& b : bi.bundles) CHECK(static_cast<i64>(b.edges.size()) == ipow(2, ell));
        CHECK(I.r == ipow(6, ell));
        CHECK(I.h == 7);
        CHECK(beta_star(I) == 7 * ipow(6, ell));
        const Report rep = validate_instance(I);
        CHECK(rep.ok);
        // every level-graph edge joins a consistent answer pair
        for (const auto& info : L.edge_info)
            CHECK(consistent(H.arcs[info.arc].string, info.edge_answer, info.vertex_answer));
    }
    CHECK_THROWS_AS(build_level_graph(constraint_graph_from_strings(g, 1, {}), 1), Error);
    CHECK_THROWS_AS(build_level_graph(constraint_graph_from_strings(g, 1, sample_random_strings(g, 1, 2, 1)), 2), Error);
}

TEST_CASE("perfect assignments partition the answers") {
    for (const auto& [g, chi] : yes_graphs()) {
        for (int ell : {1, 2}) {
            const ConstraintGraph H = build_constraint_graph(g, ell);
            const PerfectFamily fam = perfect_assignments(g, chi, ell);
            CHECK(fam.size() == ipow(6, ell));
            for (const auto& q : H.edge_queries) {
                std::vector<int> hits(ipow(6, ell), 0);
                for (i64 b = 0; b < fam.size(); ++b) ++hits[fam.edge_answer(b, q)];
                for (int h : hits) CHECK(h == 1);
            }
            for (const auto& q : H.vertex_queries) {
                std::vector<int> hits(ipow(3, ell), 0);
                for (i64 b = 0; b < fam.size(); ++b) ++hits[fam.vertex_answer(b, q)];
                for (int h : hits) CHECK(h == ipow(2, ell));
            }
            for (i64 b = 0; b < fam.size(); ++b) CHECK(evaluate_strategy(H, fam.assignment(b, H)) == 1.0);
        }
    }
    auto [g, chi] = complete_bipartite_55();
    CHECK_THROWS_AS(perfect_assignments(g, Coloring(10, 0), 1), Error);
}

TEST_CASE("perfect GPwB solution round trip") {
    for (const auto& [g, chi] : yes_graphs()) {
        for (u64 seed : {1u, 2u, 3u}) {
            const ConstraintGraph H = constraint_graph_from_strings(g, 1, sample_random_strings(g, 1, 9, seed));
            const LevelGraph L = build_level_graph(H, 1);
            const GpwbSolution S = perfect_gpwb_solution(g, chi, H, L);
            REQUIRE(validate_solution(L.instance, S).ok);
            CHECK(is_perfect(L.instance, S));
            for (const auto& e : S.selected) CHECK(static_cast<i64>(e.size()) == L.instance.h);
            CHECK(solution_value(S) == L.instance.h * L.instance.r);
            CHECK(solution_value(S) == beta_star(L.instance));
        }
    }
}

TEST_CASE("strategy evaluation against exhaustive enumeration") {
    auto [g, chi] = complete_bipartite_55();
    Coloring rgb(10);
    for (int v = 0; v < 10; ++v) rgb[v] = v < 5 ? 0 : 1;
    const ConstraintGraph H = build_constraint_graph(g, 1);
    // Edge prover answers with the side coloring; vertex prover always says r.
    GlobalAssignment f;
    for (const auto& q : H.edge_queries) f.edge_answer.push_back(edge_answer_code(rgb[g.edges[q[0]].first], rgb[g.edges[q[0]].second]));
    f.vertex_answer.assign(H.vertex_queries.size(), 0);
    std::size_t ok = 0;
    for (const auto& arc : H.arcs) {
        const auto [u, v] = g.edges[arc.string.edges[0]];
        const int picked = arc.string.ends[0] == 0 ? u : v;
        ok += rgb[picked] == 0;
    }
    CHECK(evaluate_strategy(H, f) == doctest::Approx(static_cast<double>(ok) / H.arcs.size()));
    CHECK(evaluate_strategy(H, f) == doctest::Approx(0.5));

    // A randomized strategy mixing the perfect one with the constant one.
    const PerfectFamily fam = perfect_assignments(g, chi, 1);
    const GlobalAssignment perfect = fam.assignment(0, H);
    auto sampler = [&](Rng& rng) { return rng.below(2) ? perfect : f; };
    CHECK(evaluate_strategy(H, sampler, 4000, 5) == doctest::Approx(0.75).epsilon(0.05));
    CHECK_THROWS_AS(evaluate_strategy(restrict_constraint_graph(H, {}), f), Error);
}
