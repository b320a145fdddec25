#include "doctest.h"
#include "ndp/planar.hpp"
#include "support.hpp"

#include <cmath>

using namespace ndp;

namespace {

SimpleGraph path_graph(int n) {
    SimpleGraph g;
    g.n = n;
    for (int i = 0; i + 1 < n; ++i) g.edges.push_back({i, i + 1});
    return g;
}

SimpleGraph cycle_graph(int n) {
    SimpleGraph g = path_graph(n);
    g.edges.push_back({n - 1, 0});
    return g;
}

// Smallest separator size by exhaustive search (oracle for tiny graphs).
std::size_t brute_min_separator(const SimpleGraph& g, const std::vector<i64>& w) {
    const auto adj = g.adjacency();
    i64 W = 0;
    for (i64 x : w) W += x;
    for (int k = 0; k <= g.n; ++k) {
        for (u64 mask = 0; mask < (u64{1} << g.n); ++mask) {
            if (__builtin_popcountll(mask) != k) continue;
            // components of G - X must be groupable: each <= 2W/3 suffices
            std::vector<int> comp(g.n, -1);
            bool ok = true;
            for (int s = 0; s < g.n && ok; ++s) {
                if ((mask >> s & 1) || comp[s] >= 0) continue;
                std::vector<int> st = {s};
                comp[s] = s;
                i64 cw = 0;
                while (!st.empty()) {
                    const int v = st.back();
                    st.pop_back();
                    cw += w[v];
                    for (int x : adj[v])
                        if (!(mask >> x & 1) && comp[x] < 0) {
                            comp[x] = s;
                            st.push_back(x);
                        }
                }
                if (3 * cw > 2 * W) ok = false;
            }
            if (ok) return static_cast<std::size_t>(k);
        }
    }
    return static_cast<std::size_t>(g.n);
}

}  // namespace

TEST_CASE("separator on a path") {
    const SimpleGraph g = path_graph(9);
    const std::vector<i64> w(9, 1);
    const Separator s = planar_separator(g, w);
    CHECK(check_separator(g, w, s).ok);
    CHECK(static_cast<double>(s.separator_size()) <= 2 * std::sqrt(18.0));
}

TEST_CASE("separator on a cycle matches the brute-force size bound") {
    const SimpleGraph g = cycle_graph(16);
    const std::vector<i64> w(16, 1);
    const Separator s = planar_separator(g, w);
    CHECK(check_separator(g, w, s).ok);
    CHECK(brute_min_separator(g, w) == 2);
    CHECK(static_cast<double>(s.separator_size()) <= 2 * std::sqrt(32.0));
}

TEST_CASE("separator balances corner weights of a 4x4 grid") {
    const SimpleGraph g = testing::grid_graph(4, 4);
    std::vector<i64> w(16, 0);
    for (int v : {0, 3, 12, 15}) w[v] = 1;
    const Separator s = planar_separator(g, w);
    REQUIRE(check_separator(g, w, s).ok);
    int a = 0, b = 0;
    for (int v : {0, 3, 12, 15}) {
        a += s.side[v] == 0;
        b += s.side[v] == 2;
    }
    CHECK(a <= 2);
    CHECK(b <= 2);
}

TEST_CASE("a vertex heavier than 2W/3 ends in the separator") {
    const SimpleGraph g = testing::grid_graph(5, 5);
    std::vector<i64> w(25, 0);
    w[12] = 10;
    w[0] = 1;
    const Separator s = planar_separator(g, w);
    CHECK(check_separator(g, w, s).ok);
    CHECK(s.side[12] == 1);
}

TEST_CASE("non-planar input is rejected") {
    SimpleGraph k5;
    k5.n = 5;
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) k5.edges.push_back({i, j});
    CHECK_FALSE(is_planar(k5));
    CHECK_THROWS_AS(planar_separator(k5, std::vector<i64>(5, 1)), Error);
    CHECK(is_planar(testing::grid_graph(6, 7)));
}

TEST_CASE("random planar graphs: separator contract on every call") {
    Rng rng(2024, "planar-tests");
    for (int t = 0; t < 200; ++t) {
        const int n = 1 + static_cast<int>(rng.below(300));
        const SimpleGraph g = testing::random_planar_graph(n, 0.3 + 0.7 * rng.unit(), rng);
        std::vector<i64> w(n);
        for (auto& x : w) x = static_cast<i64>(rng.below(4));
        const Separator s = planar_separator(g, w);
        const Report rep = check_separator(g, w, s);
        CHECK_MESSAGE(rep.ok, (rep.violations.empty() ? "" : rep.violations[0]));
    }
    // Long thin grids stress the BFS-level choice.
    for (auto [r, c] : std::vector<std::pair<int, int>>{{1, 200}, {3, 150}, {20, 20}, {2, 2}}) {
        const SimpleGraph g = testing::grid_graph(r, c);
        const std::vector<i64> w(g.n, 1);
        CHECK(check_separator(g, w, planar_separator(g, w)).ok);
    }
}

TEST_CASE("planarization of small drawings") {
    // Triangle: three 2x2 grids and three special edges.
    const Drawing tri = straight_line_drawing({{0, 0, 1}, {10, 0, 1}, {0, 10, 1}}, {{0, 1}, {1, 2}, {0, 2}});
    CHECK(tri.crossings.empty());
    const PlanarizedGraph pt = expand_to_planar(tri);
    CHECK(pt.graph.n == 12);
    CHECK(pt.graph.edges.size() == 3 * 4 + 3);
    CHECK(is_planar(pt.graph));

    // Star K_{1,4}: 16 + 4 vertices, within (2m + d) d.
    const Drawing star =
        straight_line_drawing({{0, 0, 1}, {5, 1, 1}, {-5, 2, 1}, {1, 5, 1}, {2, -5, 1}}, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    const PlanarizedGraph ps = expand_to_planar(star);
    CHECK(ps.graph.n == 20);
    CHECK(ps.graph.n <= (2 * 4 + 4) * 4);
    i64 W = 0;
    for (i64 x : ps.weight) W += x;
    CHECK(W == 2 * 4);

    // K4 drawn on a convex quadrilateral has one crossing, which becomes a vertex.
    const Drawing k4 = straight_line_drawing({{0, 0, 1}, {10, 0, 1}, {10, 10, 1}, {0, 10, 1}},
                                             {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}, {1, 3}});
    REQUIRE(k4.crossings.size() == 1);
    const PlanarizedGraph pk = expand_to_planar(k4);
    CHECK(pk.crossing_vertices == 1);
    CHECK(pk.graph.n == 4 * 9 + 1);
    CHECK(pk.graph.max_degree() <= 4);
    CHECK(is_planar(pk.graph));

    // Isolated vertices must be stripped first.
    CHECK_THROWS_AS(expand_to_planar(straight_line_drawing({{0, 0, 1}, {1, 0, 1}, {5, 5, 1}}, {{0, 1}})), Error);
}

TEST_CASE("planarization of random geometric drawings is planar") {
    Rng rng(5, "geo");
    for (int t = 0; t < 30; ++t) {
        const Drawing d = testing::random_geometric_drawing(10 + static_cast<int>(rng.below(30)), 3, 6, rng);
        Drawing stripped = d;
        // keep only vertices with an edge
        std::vector<int> deg = d.degrees(), id(d.points.size(), -1);
        stripped.points.clear();
        for (std::size_t v = 0; v < d.points.size(); ++v)
            if (deg[v] > 0) {
                id[v] = static_cast<int>(stripped.points.size());
                stripped.points.push_back(d.points[v]);
            }
        for (auto& e : stripped.edges) {
            e.u = id[e.u];
            e.v = id[e.v];
        }
        CHECK(validate_drawing(stripped).ok);
        const PlanarizedGraph pg = expand_to_planar(stripped);
        CHECK(pg.graph.max_degree() <= 4);
        CHECK(pg.crossing_vertices == stripped.crossings.size());
    }
}
