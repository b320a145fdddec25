#pragma once
// Generators shared by the unit tests and the acceptance binary.

#include <algorithm>
#include <array>
#include <set>
#include <vector>

#include "ndp/common.hpp"
#include "ndp/drawing.hpp"
#include "ndp/planar.hpp"

namespace ndp::testing {

/// Random planar graph: a stacked triangulation on n vertices (each new
/// vertex lands in a random face) with every edge kept with probability keep.
inline SimpleGraph random_planar_graph(int n, double keep, Rng& rng) {
    SimpleGraph g;
    g.n = n;
    if (n <= 1) return g;
    std::set<std::pair<int, int>> edges;
    auto add = [&](int a, int b) { edges.insert({std::min(a, b), std::max(a, b)}); };
    if (n == 2) {
        add(0, 1);
    } else {
        std::vector<std::array<int, 3>> faces = {{0, 1, 2}, {0, 1, 2}};
        add(0, 1);
        add(1, 2);
        add(0, 2);
        for (int v = 3; v < n; ++v) {
            const std::size_t f = rng.below(faces.size());
            const auto [a, b, c] = faces[f];
            add(v, a);
            add(v, b);
            add(v, c);
            faces[f] = {a, b, v};
            faces.push_back({b, c, v});
            faces.push_back({a, c, v});
        }
    }
    for (auto e : edges)
        if (rng.unit() < keep) g.edges.push_back(e);
    return g;
}

/// Grid graph rows x cols with vertex (r, c) = r * cols + c.
inline SimpleGraph grid_graph(int rows, int cols) {
    SimpleGraph g;
    g.n = rows * cols;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) g.edges.push_back({r * cols + c, r * cols + c + 1});
            if (r + 1 < rows) g.edges.push_back({r * cols + c, (r + 1) * cols + c});
        }
    return g;
}

/// Random geometric drawing: n points in a square of the given side, each
/// joined by straight lines to up to k nearest neighbours; few crossings.
/// Degrees are capped at max_deg. Points are in general position with
/// probability one (large coordinates).
inline Drawing random_geometric_drawing(int n, int k, int max_deg, Rng& rng, i64 side = 1'000'000) {
    std::vector<QPoint> pts;
    for (int i = 0; i < n; ++i) pts.push_back({rng.uniform(0, side), rng.uniform(0, side), 1});
    std::set<std::pair<int, int>> edges;
    std::vector<int> deg(n, 0);
    for (int i = 0; i < n; ++i) {
        std::vector<std::pair<double, int>> by_dist;
        for (int j = 0; j < n; ++j)
            if (j != i) {
                const double dx = static_cast<double>(pts[i].x - pts[j].x), dy = static_cast<double>(pts[i].y - pts[j].y);
                by_dist.push_back({dx * dx + dy * dy, j});
            }
        std::sort(by_dist.begin(), by_dist.end());
        for (int t = 0; t < k && t < static_cast<int>(by_dist.size()); ++t) {
            const int j = by_dist[t].second;
            const std::pair<int, int> e{std::min(i, j), std::max(i, j)};
            if (edges.count(e) || deg[i] >= max_deg || deg[j] >= max_deg) continue;
            edges.insert(e);
            ++deg[i];
            ++deg[j];
        }
    }
    return straight_line_drawing(pts, {edges.begin(), edges.end()});
}

}  // namespace ndp::testing
