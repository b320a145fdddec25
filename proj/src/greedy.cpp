#include <algorithm>
#include <limits>
#include <queue>
#include <tuple>

#include "ndp/driver.hpp"

namespace ndp {

namespace {

struct Rect {
    i64 r1, r2, c1, c2;
};

struct Window {
    i64 r1, r2, c1, c2;
};

struct Route {
    bool found = false;
    i64 length = 0;
    GridPath path;
};

bool blocked_by(const std::vector<Rect>& obstacles, GridCoord v) {
    for (const Rect& o : obstacles)
        if (v.row >= o.r1 && v.row <= o.r2 && v.col >= o.c1 && v.col <= o.c2) return true;
    return false;
}

// Shortest s-t path avoiding the obstacles inside the window, computed by
// Dijkstra on the grid lines through all obstacle boundaries (and the lines
// next to them), the terminals and the window sides.
Route shortest_route(GridCoord s, GridCoord t, const Window& w, const std::vector<Rect>& obstacles,
                     std::size_t node_cap, GreedyStats* stats, bool* skipped) {
    Route out;
    *skipped = false;
    if (blocked_by(obstacles, s) || blocked_by(obstacles, t)) return out;
    std::vector<i64> rows = {w.r1, w.r2, s.row, t.row}, cols = {w.c1, w.c2, s.col, t.col};
    std::vector<Rect> local;
    for (const Rect& o : obstacles) {
        if (o.r2 < w.r1 - 1 || o.r1 > w.r2 + 1 || o.c2 < w.c1 - 1 || o.c1 > w.c2 + 1) continue;
        local.push_back(o);
        for (i64 r : {o.r1 - 1, o.r1, o.r2, o.r2 + 1})
            if (r >= w.r1 && r <= w.r2) rows.push_back(r);
        for (i64 c : {o.c1 - 1, o.c1, o.c2, o.c2 + 1})
            if (c >= w.c1 && c <= w.c2) cols.push_back(c);
    }
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    const std::size_t nr = rows.size(), nc = cols.size(), n = nr * nc;
    if (stats) {
        ++stats->searches;
        stats->max_nodes = std::max(stats->max_nodes, n);
    }
    if (n > node_cap) {
        *skipped = true;
        return out;
    }
    auto index_of = [](const std::vector<i64>& v, i64 x) {
        return static_cast<std::size_t>(std::lower_bound(v.begin(), v.end(), x) - v.begin());
    };
    std::vector<char> blocked(n, 0);
    for (const Rect& o : local) {
        const std::size_t ra = index_of(rows, std::max(o.r1, w.r1)), ca = index_of(cols, std::max(o.c1, w.c1));
        for (std::size_t i = ra; i < nr && rows[i] <= o.r2; ++i)
            for (std::size_t j = ca; j < nc && cols[j] <= o.c2; ++j) blocked[i * nc + j] = 1;
    }
    const std::size_t src = index_of(rows, s.row) * nc + index_of(cols, s.col);
    const std::size_t dst = index_of(rows, t.row) * nc + index_of(cols, t.col);
    constexpr i64 kInf = std::numeric_limits<i64>::max();
    std::vector<i64> dist(n, kInf);
    std::vector<std::size_t> pred(n, n);
    using Item = std::pair<i64, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[src] = 0;
    pq.push({0, src});
    while (!pq.empty()) {
        const auto [d, u] = pq.top();
        pq.pop();
        if (d != dist[u]) continue;
        if (u == dst) break;
        const std::size_t i = u / nc, j = u % nc;
        auto relax = [&](std::size_t v, i64 wgt) {
            if (blocked[v] || d + wgt >= dist[v]) return;
            dist[v] = d + wgt;
            pred[v] = u;
            pq.push({dist[v], v});
        };
        if (i > 0) relax(u - nc, rows[i] - rows[i - 1]);
        if (i + 1 < nr) relax(u + nc, rows[i + 1] - rows[i]);
        if (j > 0) relax(u - 1, cols[j] - cols[j - 1]);
        if (j + 1 < nc) relax(u + 1, cols[j + 1] - cols[j]);
    }
    if (dist[dst] == kInf) return out;
    out.found = true;
    out.length = dist[dst];
    std::vector<GridCoord> pts;
    for (std::size_t v = dst; v != n; v = pred[v]) pts.push_back({rows[v / nc], cols[v % nc]});
    std::reverse(pts.begin(), pts.end());
    // keep corners only
    std::vector<GridCoord> corners;
    for (const GridCoord& p : pts) {
        if (corners.size() >= 2) {
            const GridCoord& a = corners[corners.size() - 2];
            const GridCoord& b = corners.back();
            if ((a.row == b.row && b.row == p.row) || (a.col == b.col && b.col == p.col)) corners.pop_back();
        }
        corners.push_back(p);
    }
    out.path.waypoints = std::move(corners);
    return out;
}

}  // namespace

PathSet greedy_ndp(const NdpInstance& inst, GreedyStats* stats, std::size_t node_cap) {
    require(!inst.wall, ErrorKind::Parameter, "the greedy baseline searches grids, not walls");
    const std::size_t np = inst.pairs.size();
    const i64 pad = 2 * static_cast<i64>(np);
    std::vector<Window> window(np);
    for (std::size_t p = 0; p < np; ++p) {
        const GridCoord s = inst.source_of(static_cast<int>(p)), t = inst.dest_of(static_cast<int>(p));
        window[p] = {std::max<i64>(1, std::min(s.row, t.row) - pad),
                     std::min(inst.grid.height, std::max(s.row, t.row) + pad),
                     std::max<i64>(1, std::min(s.col, t.col) - pad),
                     std::min(inst.grid.length, std::max(s.col, t.col) + pad)};
    }
    std::vector<Rect> obstacles;
    PathSet out;
    // Lazy evaluation: keys are lower bounds because obstacles only grow.
    using Key = std::tuple<i64, std::string, std::size_t>;
    std::priority_queue<Key, std::vector<Key>, std::greater<>> pq;
    bool skipped = false;
    for (std::size_t p = 0; p < np; ++p) {
        const GridCoord s = inst.source_of(static_cast<int>(p)), t = inst.dest_of(static_cast<int>(p));
        const Route r = shortest_route(s, t, window[p], obstacles, node_cap, stats, &skipped);
        if (skipped && stats) ++stats->skipped;
        if (r.found) pq.push({r.length, inst.pairs[p].id, p});
    }
    while (!pq.empty()) {
        const auto [len, id, p] = pq.top();
        pq.pop();
        const GridCoord s = inst.source_of(static_cast<int>(p)), t = inst.dest_of(static_cast<int>(p));
        Route r = shortest_route(s, t, window[p], obstacles, node_cap, stats, &skipped);
        if (skipped && stats) ++stats->skipped;
        if (!r.found) continue;
        if (r.length > len) {
            pq.push({r.length, id, p});
            continue;
        }
        const auto& w = r.path.waypoints;
        if (w.size() == 1) obstacles.push_back({w[0].row, w[0].row, w[0].col, w[0].col});
        for (std::size_t i = 0; i + 1 < w.size(); ++i)
            obstacles.push_back({std::min(w[i].row, w[i + 1].row), std::max(w[i].row, w[i + 1].row),
                                 std::min(w[i].col, w[i + 1].col), std::max(w[i].col, w[i + 1].col)});
        out.paths.push_back(std::move(r.path));
        out.pairing.push_back(id);
    }
    std::string why;
    require(verify_node_disjoint(out, &why), ErrorKind::Contract, "greedy produced overlapping paths: " + why);
    return out;
}

NdpSolver greedy_solver() {
    return [](const NdpInstance& inst, const SolverHint&) { return greedy_ndp(inst); };
}

NdpSolver empty_solver() {
    return [](const NdpInstance&, const SolverHint&) { return PathSet{}; };
}

}  // namespace ndp
