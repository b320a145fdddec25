#include "ndp/planar.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <queue>
#include <set>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <boost/graph/make_biconnected_planar.hpp>
#include <boost/graph/make_connected.hpp>
#include <boost/graph/make_maximal_planar.hpp>

namespace ndp {

namespace {

using BGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                     boost::property<boost::vertex_index_t, int>,
                                     boost::property<boost::edge_index_t, int>>;
using BEdge = boost::graph_traits<BGraph>::edge_descriptor;
using Embedding = std::vector<std::vector<BEdge>>;

std::vector<std::pair<int, int>> simple_edges(const SimpleGraph& g) {
    std::set<std::pair<int, int>> seen;
    for (auto [u, v] : g.edges) {
        require(u >= 0 && v >= 0 && u < g.n && v < g.n, ErrorKind::OutOfBounds, "edge endpoint out of range");
        if (u != v) seen.insert({std::min(u, v), std::max(u, v)});
    }
    return {seen.begin(), seen.end()};
}

BGraph to_boost(int n, const std::vector<std::pair<int, int>>& edges) {
    BGraph bg(static_cast<std::size_t>(n));
    for (auto [u, v] : edges) boost::add_edge(u, v, bg);
    return bg;
}

void index_edges(BGraph& bg) {
    int k = 0;
    for (auto [it, end] = boost::edges(bg); it != end; ++it) boost::put(boost::edge_index, bg, *it, k++);
}

bool embed(BGraph& bg, Embedding& emb) {
    index_edges(bg);
    emb.assign(boost::num_vertices(bg), {});
    return boost::boyer_myrvold_planarity_test(boost::boyer_myrvold_params::graph = bg,
                                               boost::boyer_myrvold_params::embedding = &emb[0]);
}

// Adds edges to a planar graph until it is maximal planar; returns its edge list.
std::vector<std::pair<int, int>> triangulate(int n, const std::vector<std::pair<int, int>>& edges) {
    BGraph bg = to_boost(n, edges);
    Embedding emb;
    require(embed(bg, emb), ErrorKind::Contract, "graph is not planar");
    if (n >= 3) {
        boost::make_connected(bg);
        require(embed(bg, emb), ErrorKind::Contract, "graph is not planar");
        boost::make_biconnected_planar(bg, &emb[0]);
        require(embed(bg, emb), ErrorKind::Contract, "graph is not planar");
        boost::make_maximal_planar(bg, &emb[0]);
    }
    std::vector<std::pair<int, int>> out;
    for (auto [it, end] = boost::edges(bg); it != end; ++it) {
        const int u = static_cast<int>(boost::source(*it, bg)), v = static_cast<int>(boost::target(*it, bg));
        if (u != v) out.push_back({u, v});
    }
    return out;
}

std::vector<std::vector<int>> components(const std::vector<std::vector<int>>& adj, const std::vector<char>& removed) {
    const int n = static_cast<int>(adj.size());
    std::vector<int> comp(n, -1);
    std::vector<std::vector<int>> out;
    for (int s = 0; s < n; ++s) {
        if (removed[s] || comp[s] >= 0) continue;
        out.push_back({s});
        comp[s] = static_cast<int>(out.size()) - 1;
        for (std::size_t i = 0; i < out.back().size(); ++i)
            for (int w : adj[out.back()[i]])
                if (!removed[w] && comp[w] < 0) {
                    comp[w] = comp[s];
                    out.back().push_back(w);
                }
    }
    return out;
}

i64 weight_sum(const std::vector<int>& vs, const std::vector<i64>& w) {
    i64 s = 0;
    for (int v : vs) s += w[v];
    return s;
}

// Groups the components of G - X into two sides of weight <= 2W/3 each, if
// every component is light enough. Returns false otherwise.
bool group_sides(const std::vector<std::vector<int>>& adj, const std::vector<i64>& w, i64 W,
                 const std::vector<char>& in_x, Separator* out) {
    std::vector<std::vector<int>> comps = components(adj, in_x);
    std::vector<i64> cw;
    for (const auto& c : comps) {
        cw.push_back(weight_sum(c, w));
        if (3 * cw.back() > 2 * W) return false;
    }
    std::vector<std::size_t> order(comps.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return cw[a] > cw[b]; });
    out->side.assign(adj.size(), 1);
    i64 a = 0;
    bool a_closed = false;
    for (std::size_t idx : order) {
        const bool to_a = !a_closed && (3 * a < W || a == 0);
        for (int v : comps[idx]) out->side[v] = to_a ? 0 : 2;
        if (to_a) {
            a += cw[idx];
            if (3 * a >= W) a_closed = true;
        }
    }
    return true;
}

bool sqrt_bound_ok(std::size_t x, int n) { return static_cast<double>(x) <= 2.0 * std::sqrt(2.0 * n) + 1e-9; }

// Exhaustive search over separators by increasing size (small graphs only).
bool exhaustive_separator(const std::vector<std::vector<int>>& adj, const std::vector<i64>& w, i64 W,
                          Separator* out) {
    const int n = static_cast<int>(adj.size());
    const int kmax = static_cast<int>(std::floor(2.0 * std::sqrt(2.0 * n) + 1e-9));
    std::vector<char> in_x(n, 0);
    std::function<bool(int, int)> rec = [&](int start, int left) -> bool {
        if (left == 0) return group_sides(adj, w, W, in_x, out);
        for (int v = start; v < n; ++v) {
            in_x[v] = 1;
            if (rec(v + 1, left - 1)) return true;
            in_x[v] = 0;
        }
        return false;
    };
    for (int k = 0; k <= std::min(kmax, n); ++k)
        if (rec(0, k)) return true;
    return false;
}

}  // namespace

std::vector<std::vector<int>> SimpleGraph::adjacency() const {
    std::vector<std::vector<int>> adj(n);
    for (auto [u, v] : simple_edges(*this)) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    return adj;
}

int SimpleGraph::max_degree() const {
    int best = 0;
    for (const auto& a : adjacency()) best = std::max(best, static_cast<int>(a.size()));
    return best;
}

bool is_planar(const SimpleGraph& g) {
    BGraph bg = to_boost(g.n, simple_edges(g));
    Embedding emb;
    return embed(bg, emb);
}

std::size_t Separator::separator_size() const { return static_cast<std::size_t>(std::count(side.begin(), side.end(), 1)); }

i64 Separator::weight_of(const std::vector<i64>& w, int s) const {
    i64 total = 0;
    for (std::size_t v = 0; v < side.size(); ++v)
        if (side[v] == s) total += w[v];
    return total;
}

Report check_separator(const SimpleGraph& g, const std::vector<i64>& weight, const Separator& s) {
    Report rep;
    if (static_cast<int>(s.side.size()) != g.n || static_cast<int>(weight.size()) != g.n) {
        rep.fail("separator or weights have the wrong size");
        return rep;
    }
    for (auto [u, v] : g.edges)
        if ((s.side[u] == 0 && s.side[v] == 2) || (s.side[u] == 2 && s.side[v] == 0)) {
            rep.fail("edge joins A and B");
            break;
        }
    const i64 W = std::accumulate(weight.begin(), weight.end(), i64{0});
    if (3 * s.weight_of(weight, 0) > 2 * W) rep.fail("side A weighs more than 2W/3");
    if (3 * s.weight_of(weight, 2) > 2 * W) rep.fail("side B weighs more than 2W/3");
    if (!sqrt_bound_ok(s.separator_size(), g.n)) rep.fail("separator larger than 2 sqrt(2n)");
    return rep;
}

Separator planar_separator(const SimpleGraph& g, const std::vector<i64>& weight) {
    require(static_cast<int>(weight.size()) == g.n, ErrorKind::Parameter, "one weight per vertex required");
    for (i64 x : weight) require(x >= 0, ErrorKind::Parameter, "weights must be non-negative");
    require(is_planar(g), ErrorKind::Contract, "separator input is not planar");
    const auto adj = g.adjacency();
    const i64 W = std::accumulate(weight.begin(), weight.end(), i64{0});
    Separator out;
    std::vector<char> in_x(g.n, 0);
    if (group_sides(adj, weight, W, in_x, &out)) return out;

    // The heavy component: BFS levels from its smallest vertex.
    std::vector<std::vector<int>> comps = components(adj, in_x);
    const auto heavy = *std::find_if(comps.begin(), comps.end(),
                                     [&](const std::vector<int>& c) { return 3 * weight_sum(c, weight) > 2 * W; });
    const int root = *std::min_element(heavy.begin(), heavy.end());
    std::vector<int> level(g.n, -1), parent(g.n, -1);
    std::vector<std::vector<int>> levels;
    level[root] = 0;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
        const int v = q.front();
        q.pop();
        if (static_cast<int>(levels.size()) <= level[v]) levels.emplace_back();
        levels[level[v]].push_back(v);
        for (int w : adj[v])
            if (level[w] < 0) {
                level[w] = level[v] + 1;
                parent[w] = v;
                q.push(w);
            }
    }
    const int r = static_cast<int>(levels.size()) - 1;
    int l1 = 0;
    for (i64 cum = 0; l1 <= r; ++l1) {
        cum += weight_sum(levels[l1], weight);
        if (2 * cum >= W) break;
    }
    auto lsize = [&](int l) { return (l < 0 || l > r) ? i64{0} : static_cast<i64>(levels[l].size()); };
    int l0 = -1, l2 = r + 1;
    for (int l = -1; l <= l1; ++l)
        if (lsize(l) + 2 * (l1 - l) < lsize(l0) + 2 * (l1 - l0)) l0 = l;
    for (int l = r + 1; l >= l1 + 1; --l)
        if (lsize(l) + 2 * (l - l1 - 1) < lsize(l2) + 2 * (l2 - l1 - 1)) l2 = l;
    for (int l : {l0, l2})
        if (l >= 0 && l <= r)
            for (int v : levels[l]) in_x[v] = 1;
    if (group_sides(adj, weight, W, in_x, &out) && sqrt_bound_ok(out.separator_size(), g.n)) return out;

    // Middle levels are too heavy: contract levels <= l0 into the tree root
    // and search the fundamental cycles of a triangulation for one that splits
    // the middle evenly.
    std::vector<int> local(g.n, -1), global;
    const bool contracted = l0 >= 0;
    if (contracted) global.push_back(-1);  // local 0 = contracted root
    for (int l = l0 + 1; l <= l2 - 1 && l <= r; ++l)
        for (int v : levels[l]) {
            local[v] = static_cast<int>(global.size());
            global.push_back(v);
        }
    const int croot = contracted ? 0 : local[root];
    std::set<std::pair<int, int>> sub;
    std::vector<int> tparent(global.size(), -1), depth(global.size(), 0);
    for (std::size_t i = 0; i < global.size(); ++i) {
        const int v = global[i];
        if (v < 0) continue;
        for (int w : adj[v]) {
            if (local[w] >= 0) sub.insert({std::min<int>(i, local[w]), std::max<int>(i, local[w])});
            else if (contracted && level[w] == l0) sub.insert({0, static_cast<int>(i)});
        }
        if (v == root) continue;
        tparent[i] = level[v] == l0 + 1 ? croot : local[parent[v]];
    }
    // depths measured from the tree root
    for (std::size_t i = 0; i < global.size(); ++i)
        depth[i] = global[i] < 0 ? 0 : (contracted ? level[global[i]] - l0 : level[global[i]]);
    std::set<std::pair<int, int>> tree;
    for (std::size_t i = 0; i < global.size(); ++i)
        if (tparent[i] >= 0) tree.insert({std::min<int>(i, tparent[i]), std::max<int>(i, tparent[i])});
    const std::vector<std::pair<int, int>> tri =
        triangulate(static_cast<int>(global.size()), std::vector<std::pair<int, int>>(sub.begin(), sub.end()));
    for (auto [a, b] : tri) {
        if (tree.count({std::min(a, b), std::max(a, b)})) continue;
        std::vector<char> cand = in_x;
        int x = a, y = b;
        while (x != y) {
            if (depth[x] >= depth[y]) {
                if (global[x] >= 0) cand[global[x]] = 1;
                x = tparent[x];
            } else {
                if (global[y] >= 0) cand[global[y]] = 1;
                y = tparent[y];
            }
        }
        if (global[x] >= 0) cand[global[x]] = 1;
        Separator s;
        if (group_sides(adj, weight, W, cand, &s) && sqrt_bound_ok(s.separator_size(), g.n)) return s;
    }
    if (g.n <= 24 && exhaustive_separator(adj, weight, W, &out)) return out;
    throw Error(ErrorKind::Contract, "no separator within 2 sqrt(2n) found");
}

PlanarizedGraph expand_to_planar(const Drawing& d) {
    PlanarizedGraph pg;
    const std::vector<int> deg = d.degrees();
    const std::size_t nv = d.points.size();
    for (std::size_t v = 0; v < nv; ++v)
        require(deg[v] >= 1, ErrorKind::Contract, "isolated vertex " + std::to_string(v) + " must be stripped first");

    // Incident curves of every vertex in clockwise order (rows grow downwards):
    // by angle of the first curve segment, measured from +x towards +y.
    std::vector<std::vector<std::pair<int, bool>>> inc(nv);  // (edge, is_u_end)
    for (std::size_t e = 0; e < d.edges.size(); ++e) {
        inc[d.edges[e].u].push_back({static_cast<int>(e), true});
        inc[d.edges[e].v].push_back({static_cast<int>(e), false});
    }
    auto next_point = [&](std::pair<int, bool> ie) {
        const auto& c = d.edges[ie.first].curve;
        return ie.second ? c[1] : c[c.size() - 2];
    };
    auto half = [](const QPoint& o, const QPoint& p) {
        const __int128 dy = static_cast<__int128>(p.y) * o.den - static_cast<__int128>(o.y) * p.den;
        const __int128 dx = static_cast<__int128>(p.x) * o.den - static_cast<__int128>(o.x) * p.den;
        return (dy > 0 || (dy == 0 && dx > 0)) ? 0 : 1;
    };
    std::vector<std::vector<int>> position(d.edges.size(), std::vector<int>(2, -1));
    for (std::size_t v = 0; v < nv; ++v) {
        const QPoint o = d.points[v];
        auto& list = inc[v];
        std::sort(list.begin(), list.end(), [&](std::pair<int, bool> a, std::pair<int, bool> b) {
            const QPoint pa = next_point(a), pb = next_point(b);
            const int ha = half(o, pa), hb = half(o, pb);
            if (ha != hb) return ha < hb;
            return orientation(o, pa, pb) > 0;
        });
        for (std::size_t i = 1; i < list.size(); ++i)
            require(orientation(o, next_point(list[i - 1]), next_point(list[i])) != 0 ||
                        half(o, next_point(list[i - 1])) != half(o, next_point(list[i])),
                    ErrorKind::Contract, "two curves leave a vertex image in the same direction");
        for (std::size_t i = 0; i < list.size(); ++i) position[list[i].first][list[i].second ? 0 : 1] = static_cast<int>(i);
    }

    auto add_vertex = [&](int owner, i64 w) {
        pg.owner.push_back(owner);
        pg.weight.push_back(w);
        pg.portal_edge.push_back(-1);
        return pg.graph.n++;
    };
    pg.grid_vertices.resize(nv);
    pg.portals.resize(nv);
    for (std::size_t v = 0; v < nv; ++v) {
        const int dv = deg[v];
        for (int rr = 0; rr < dv; ++rr)
            for (int cc = 0; cc < dv; ++cc) pg.grid_vertices[v].push_back(add_vertex(static_cast<int>(v), rr == 0 ? 1 : 0));
        auto at = [&](int rr, int cc) { return pg.grid_vertices[v][rr * dv + cc]; };
        for (int rr = 0; rr < dv; ++rr)
            for (int cc = 0; cc < dv; ++cc) {
                if (cc + 1 < dv) pg.graph.edges.push_back({at(rr, cc), at(rr, cc + 1)});
                if (rr + 1 < dv) pg.graph.edges.push_back({at(rr, cc), at(rr + 1, cc)});
            }
        for (int cc = 0; cc < dv; ++cc) pg.portals[v].push_back(at(0, cc));
    }

    // One vertex per crossing; special edges subdivided in curve order.
    std::vector<std::vector<std::pair<std::size_t, int>>> on_edge(d.edges.size());  // (crossing, segment)
    std::vector<int> cross_vertex(d.crossings.size());
    for (std::size_t c = 0; c < d.crossings.size(); ++c) {
        cross_vertex[c] = add_vertex(-1, 0);
        on_edge[d.crossings[c].edge1].push_back({c, d.crossings[c].seg1});
        on_edge[d.crossings[c].edge2].push_back({c, d.crossings[c].seg2});
    }
    pg.crossing_vertices = d.crossings.size();
    pg.special_chain.resize(d.edges.size());
    for (std::size_t e = 0; e < d.edges.size(); ++e) {
        const auto& curve = d.edges[e].curve;
        auto& list = on_edge[e];
        std::sort(list.begin(), list.end(), [&](const auto& a, const auto& b) {
            if (a.second != b.second) return a.second < b.second;
            return before_on_segment(curve[a.second], curve[a.second + 1], d.crossings[a.first].at,
                                     d.crossings[b.first].at);
        });
        auto& chain = pg.special_chain[e];
        chain.push_back(pg.portals[d.edges[e].u][position[e][0]]);
        for (const auto& [c, seg] : list) chain.push_back(cross_vertex[c]);
        chain.push_back(pg.portals[d.edges[e].v][position[e][1]]);
        pg.portal_edge[chain.front()] = static_cast<int>(e);
        pg.portal_edge[chain.back()] = static_cast<int>(e);
        for (std::size_t i = 0; i + 1 < chain.size(); ++i) pg.graph.edges.push_back({chain[i], chain[i + 1]});
    }
    require(pg.graph.max_degree() <= 4, ErrorKind::Contract, "planarized graph has a vertex of degree above 4");
    require(is_planar(pg.graph), ErrorKind::Contract, "planarized graph is not planar");
    return pg;
}

}  // namespace ndp
