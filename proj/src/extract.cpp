#include "ndp/extract.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

namespace ndp {

namespace {

struct EdgeCounts {
    i64 a = 0, b = 0, cut = 0;
};

EdgeCounts count_edges(const Drawing& d, const std::vector<int>& side) {
    EdgeCounts c;
    for (const DrawnEdge& e : d.edges) {
        if (side[e.u] != side[e.v]) ++c.cut;
        else if (side[e.u] == 0) ++c.a;
        else ++c.b;
    }
    return c;
}

bool balanced(const EdgeCounts& c, i64 m, double rho) {
    return static_cast<double>(c.a) >= rho * static_cast<double>(m) - 1e-9 &&
           static_cast<double>(c.b) >= rho * static_cast<double>(m) - 1e-9;
}

// Local post-processing of a projected cut: restore balance by moving the
// vertex of the heavier side with most neighbours across, then move single
// vertices while that lowers the cut and keeps the balance.
void refine(const Drawing& d, std::vector<int>& side, double rho) {
    const std::size_t n = side.size();
    const i64 m = static_cast<i64>(d.edges.size());
    std::vector<std::vector<int>> adj(n);
    for (const DrawnEdge& e : d.edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    auto across = [&](int v) {
        int k = 0;
        for (int w : adj[v]) k += side[w] != side[v];
        return k;
    };
    for (std::size_t iter = 0; iter < n && !balanced(count_edges(d, side), m, rho); ++iter) {
        const EdgeCounts c = count_edges(d, side);
        const int heavy = c.a >= c.b ? 0 : 1;
        int best = -1, best_score = -1;
        for (std::size_t v = 0; v < n; ++v) {
            if (side[v] != heavy || adj[v].empty()) continue;
            if (across(static_cast<int>(v)) > best_score) {
                best_score = across(static_cast<int>(v));
                best = static_cast<int>(v);
            }
        }
        if (best < 0) break;
        side[best] = 1 - heavy;
    }
    if (!balanced(count_edges(d, side), m, rho)) return;
    for (int pass = 0; pass < 50; ++pass) {
        bool moved = false;
        for (std::size_t v = 0; v < n; ++v) {
            const int out = across(static_cast<int>(v)), in = static_cast<int>(adj[v].size()) - out;
            if (in >= out) continue;
            side[v] = 1 - side[v];
            if (balanced(count_edges(d, side), m, rho)) moved = true;
            else side[v] = 1 - side[v];
        }
        if (!moved) break;
    }
}

// Zero-value cut from connected components, when one is balanced.
bool component_cut(const Drawing& d, double rho, std::vector<int>* side) {
    const std::size_t n = d.points.size();
    std::vector<int> comp(n, -1);
    std::vector<std::vector<int>> adj(n);
    for (const DrawnEdge& e : d.edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    int nc = 0;
    for (std::size_t s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> st = {static_cast<int>(s)};
        comp[s] = nc;
        while (!st.empty()) {
            const int v = st.back();
            st.pop_back();
            for (int w : adj[v])
                if (comp[w] < 0) {
                    comp[w] = nc;
                    st.push_back(w);
                }
        }
        ++nc;
    }
    std::vector<i64> edges(nc, 0);
    for (const DrawnEdge& e : d.edges) ++edges[comp[e.u]];
    const int big = static_cast<int>(std::max_element(edges.begin(), edges.end()) - edges.begin());
    std::vector<int> s(n);
    for (std::size_t v = 0; v < n; ++v) s[v] = comp[v] == big ? 0 : 1;
    if (!balanced(count_edges(d, s), static_cast<i64>(d.edges.size()), rho)) return false;
    *side = s;
    return true;
}

constexpr double kRho = 1.0 / 32.0;

}  // namespace

double cut_lemma_threshold(const ConstantProfile& p, int d, double log_m) {
    return std::pow(2.0, p.c_lemma_exp) * d * p.alpha(log_m);
}

Cut balanced_cut(const Drawing& dr, const ConstantProfile& profile, double log_m) {
    Cut c;
    const std::size_t n = dr.points.size();
    c.m = static_cast<i64>(dr.edges.size());
    c.d = dr.max_degree();
    c.alpha = profile.alpha(log_m);
    c.crossings = static_cast<i64>(dr.crossings.size());
    const double md_alpha = static_cast<double>(c.m) * c.d * c.alpha;
    const double threshold = cut_lemma_threshold(profile, c.d, log_m);
    require(c.m > 0 && static_cast<double>(c.m) > threshold, ErrorKind::Threshold,
            "m = " + std::to_string(c.m) + " does not exceed 2^c_lemma_exp d alpha = " + std::to_string(threshold));
    require(static_cast<double>(c.crossings) <= md_alpha, ErrorKind::Threshold,
            "drawing has " + std::to_string(c.crossings) + " crossings, more than m d alpha = " + std::to_string(md_alpha));
    c.value_bound = profile.c_cut * std::sqrt(8.0 * md_alpha);

    // Strip isolated vertices; they rejoin side A at the end.
    const std::vector<int> deg = dr.degrees();
    std::vector<int> local(n, -1), global;
    Drawing sub;
    for (std::size_t v = 0; v < n; ++v)
        if (deg[v] > 0) {
            local[v] = static_cast<int>(global.size());
            global.push_back(static_cast<int>(v));
            sub.points.push_back(dr.points[v]);
        }
    sub.edges = dr.edges;
    for (DrawnEdge& e : sub.edges) {
        e.u = local[e.u];
        e.v = local[e.v];
    }
    sub.crossings = dr.crossings;

    const PlanarizedGraph pg = expand_to_planar(sub);
    c.planar_vertices = pg.graph.n;
    const Separator sep = planar_separator(pg.graph, pg.weight);
    c.separator_size = sep.separator_size();
    // X joins the side holding fewer portals.
    const i64 pa = sep.weight_of(pg.weight, 0), pb = sep.weight_of(pg.weight, 2);
    const int heavy_label = pa <= pb ? 2 : 0;
    std::vector<int> sp(pg.graph.n);
    for (int v = 0; v < pg.graph.n; ++v) sp[v] = sep.side[v] == heavy_label ? 1 : 0;
    auto planar_cut = [&]() {
        i64 k = 0;
        for (auto [u, v] : pg.graph.edges) k += sp[u] != sp[v];
        return k;
    };
    auto portal_load = [&](int s) {
        i64 k = 0;
        for (int v = 0; v < pg.graph.n; ++v) k += pg.weight[v] * (sp[v] == s);
        return k;
    };
    c.value_after_separator = planar_cut();

    const std::size_t nsub = sub.points.size();
    auto portals_on = [&](std::size_t v, int s) {
        i64 k = 0;
        for (int p : pg.portals[v]) k += sp[p] == s;
        return k;
    };
    auto is_split = [&](std::size_t v) {
        bool a = false, b = false;
        for (int x : pg.grid_vertices[v]) (sp[x] == 0 ? a : b) = true;
        return a && b;
    };
    auto move_all = [&](std::size_t v, int s) {
        for (int x : pg.grid_vertices[v]) sp[x] = s;
    };
    // Step 1: unevenly split vertices go to their majority portal side.
    std::vector<char> even(nsub, 0);
    for (std::size_t v = 0; v < nsub; ++v) {
        if (!is_split(v)) continue;
        const i64 dv = static_cast<i64>(pg.portals[v].size()), a = portals_on(v, 0), b = portals_on(v, 1);
        if (8 * a >= dv && 8 * b >= dv) {
            even[v] = 1;
            continue;
        }
        ++c.uneven_split;
        move_all(v, a > b ? 0 : 1);
    }
    c.value_after_step1 = planar_cut();
    c.portal_load_after_step1 = std::max(portal_load(0), portal_load(1));
    // Step 2: evenly split vertices go to the side currently holding fewer portals.
    for (std::size_t v = 0; v < nsub; ++v) {
        if (!even[v] || !is_split(v)) continue;
        ++c.even_split;
        move_all(v, portal_load(0) <= portal_load(1) ? 0 : 1);
    }
    c.value_after_step2 = planar_cut();

    c.side.assign(n, 0);
    for (std::size_t v = 0; v < nsub; ++v) c.side[global[v]] = sp[pg.grid_vertices[v][0]];
    const std::vector<int> projected = c.side;
    if (!balanced(count_edges(dr, c.side), c.m, kRho) || count_edges(dr, c.side).cut > 0) refine(dr, c.side, kRho);
    std::vector<int> by_comp;
    if (count_edges(dr, c.side).cut > 0 && component_cut(dr, kRho, &by_comp)) c.side = by_comp;
    c.refined = c.side != projected;

    const EdgeCounts ec = count_edges(dr, c.side);
    c.edges_a = ec.a;
    c.edges_b = ec.b;
    for (std::size_t e = 0; e < dr.edges.size(); ++e)
        if (c.side[dr.edges[e].u] != c.side[dr.edges[e].v]) c.cut_edges.push_back(static_cast<int>(e));
    require(balanced(ec, c.m, kRho), ErrorKind::Contract,
            "cut is not 1/32-edge-balanced (|E(A)| = " + std::to_string(ec.a) + ", |E(B)| = " + std::to_string(ec.b) +
                ", m = " + std::to_string(c.m) + ")");
    require(static_cast<double>(c.value()) <= c.value_bound + 1e-9, ErrorKind::Contract,
            "cut value " + std::to_string(c.value()) + " exceeds c_cut sqrt(8 m d alpha)");
    return c;
}

Report check_cut(const Drawing& d, const Cut& c, double rho, double value_bound) {
    Report rep;
    if (c.side.size() != d.points.size()) {
        rep.fail("cut does not label every vertex");
        return rep;
    }
    for (int s : c.side)
        if (s != 0 && s != 1) {
            rep.fail("side label outside {0, 1}");
            return rep;
        }
    const EdgeCounts ec = count_edges(d, c.side);
    if (ec.cut != c.value()) rep.fail("cut edge list disagrees with the sides");
    if (!balanced(ec, static_cast<i64>(d.edges.size()), rho)) rep.fail("cut is not edge-balanced");
    if (static_cast<double>(ec.cut) > value_bound + 1e-9) rep.fail("cut value above its bound");
    return rep;
}

i64 brute_force_balanced_cut(const Drawing& d, double rho) {
    const std::size_t n = d.points.size();
    require(n <= 20, ErrorKind::Parameter, "brute-force cut limited to 20 vertices");
    i64 best = -1;
    std::vector<int> side(n, 0);
    for (u64 mask = 0; mask < (u64{1} << n); ++mask) {
        if (n > 0 && (mask & 1)) continue;  // vertex 0 stays on side A
        for (std::size_t v = 0; v < n; ++v) side[v] = static_cast<int>(mask >> v & 1);
        const EdgeCounts ec = count_edges(d, side);
        if (balanced(ec, static_cast<i64>(d.edges.size()), rho) && (best < 0 || ec.cut < best)) best = ec.cut;
    }
    return best;
}

std::vector<int> routed_pairs(const NdpInstance& inst, const PathSet& routing) {
    require(routing.pairing.size() == routing.paths.size(), ErrorKind::Contract, "routing pairing has the wrong size");
    std::string why;
    require(verify_node_disjoint(routing, &why), ErrorKind::Contract, "routing is not node-disjoint: " + why);
    std::map<std::string, int> pair_of;
    for (std::size_t i = 0; i < inst.pairs.size(); ++i) pair_of[inst.pairs[i].id] = static_cast<int>(i);
    std::vector<int> out;
    std::set<int> seen;
    for (std::size_t i = 0; i < routing.size(); ++i) {
        const auto it = pair_of.find(routing.pairing[i]);
        require(it != pair_of.end(), ErrorKind::Contract, "routing names unknown pair " + routing.pairing[i]);
        const int p = it->second;
        require(seen.insert(p).second, ErrorKind::Contract, "pair " + routing.pairing[i] + " routed twice");
        const GridPath& path = routing.paths[i];
        const GridCoord s = inst.source_of(p), t = inst.dest_of(p);
        require((path.front() == s && path.back() == t) || (path.front() == t && path.back() == s),
                ErrorKind::Contract, "path of " + routing.pairing[i] + " does not join its terminals");
        require(is_valid_path(path, inst.grid, &why), ErrorKind::Contract, "invalid path: " + why);
        out.push_back(p);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Extraction extract_gpwb_solution(const GpwbInstance& I, const NdpInstance& inst, const PathSet& routing,
                                 const ConstantProfile& profile) {
    Extraction ex;
    ExtractionAudit& au = ex.audit;
    const std::vector<int> routed = routed_pairs(inst, routing);
    const double lg = inst.log_m, lg3 = lg * lg * lg;
    au.routed = au.m0 = static_cast<i64>(routed.size());
    au.base_threshold = std::pow(2.0, profile.c_base_exp) * static_cast<double>(I.h) * lg3;
    au.depth_bound = lg / std::log2(32.0 / 31.0);
    au.value_target = static_cast<double>(au.routed) / (profile.c_route * lg3);

    std::vector<VertexRef> all;
    for (std::size_t v = 0; v < I.left_ids.size(); ++v) all.push_back({Part::Left, static_cast<int>(v)});
    for (std::size_t v = 0; v < I.right_ids.size(); ++v) all.push_back({Part::Right, static_cast<int>(v)});
    GpwbSolution& S = ex.solution;
    S.clusters.assign(static_cast<std::size_t>(I.r), {});
    S.selected.assign(static_cast<std::size_t>(I.r), {});
    require(I.r >= 1, ErrorKind::Contract, "instance has no clusters");

    if (static_cast<double>(au.routed) <= au.base_threshold) {
        au.base_case = true;
        const i64 k = au.routed == 0
                          ? 0
                          : ceil_to_i64(static_cast<double>(au.routed) / (std::pow(2.0, profile.c_base_exp) * lg3));
        require(k <= I.h, ErrorKind::Contract, "base-case edge count exceeds h");
        S.clusters[0] = all;
        S.selected[0].assign(routed.begin(), routed.begin() + k);
        au.parts = 1;
        au.retained = au.routed;
        au.levels.push_back({0, 1, au.routed, 0, 0});
    } else {
        // Partitioning loop over vertex-induced subgraphs of the routed graph.
        std::vector<std::set<VertexRef>> parts(1);
        for (int e : routed) {
            parts[0].insert({Part::Left, I.edges[e].first});
            parts[0].insert({Part::Right, I.edges[e].second});
        }
        auto edges_in = [&](const std::set<VertexRef>& part) {
            std::vector<int> out;
            for (int e : routed)
                if (part.count({Part::Left, I.edges[e].first}) && part.count({Part::Right, I.edges[e].second}))
                    out.push_back(e);
            return out;
        };
        for (int level = 0;; ++level) {
            PartitionLevel pl;
            pl.level = level;
            pl.parts = parts.size();
            std::vector<std::set<VertexRef>> next;
            for (const auto& part : parts) {
                const std::vector<int> es = edges_in(part);
                pl.edges += static_cast<i64>(es.size());
                // A single edge has no 1/32-edge-balanced cut; such parts are leaves
                // whatever the threshold (only tiny-constant profiles reach them).
                if (es.size() < 2 || static_cast<double>(es.size()) <= au.base_threshold) {
                    next.push_back(part);
                    continue;
                }
                const Drawing d = draw_routing(I, inst, routing, es);
                const Cut cut = balanced_cut(d, profile, lg);
                ++pl.cuts;
                pl.cut_value += cut.value();
                std::set<VertexRef> a, b;
                for (std::size_t v = 0; v < d.points.size(); ++v) (cut.side[v] == 0 ? a : b).insert(d.vertex_ref[v]);
                // vertices of the part without edges in it follow side A
                for (const VertexRef& v : part)
                    if (!a.count(v) && !b.count(v)) a.insert(v);
                next.push_back(std::move(a));
                next.push_back(std::move(b));
            }
            au.levels.push_back(pl);
            if (pl.cuts == 0) break;
            parts = std::move(next);
            ++au.depth;
        }
        au.parts = parts.size();
        // Merge the smallest parts while there are more parts than clusters.
        std::vector<std::pair<std::set<VertexRef>, std::vector<int>>> leaves;
        for (const auto& part : parts) leaves.push_back({part, edges_in(part)});
        for (const auto& leaf : leaves) au.retained += static_cast<i64>(leaf.second.size());
        while (static_cast<i64>(leaves.size()) > I.r) {
            std::sort(leaves.begin(), leaves.end(),
                      [](const auto& x, const auto& y) { return x.second.size() > y.second.size(); });
            auto last = std::move(leaves.back());
            leaves.pop_back();
            leaves.back().first.insert(last.first.begin(), last.first.end());
            leaves.back().second.insert(leaves.back().second.end(), last.second.begin(), last.second.end());
            ++au.merged;
        }
        std::set<VertexRef> covered;
        for (std::size_t i = 0; i < leaves.size(); ++i) {
            S.clusters[i].assign(leaves[i].first.begin(), leaves[i].first.end());
            covered.insert(leaves[i].first.begin(), leaves[i].first.end());
            std::vector<int> es = leaves[i].second;
            std::sort(es.begin(), es.end());
            if (static_cast<i64>(es.size()) > I.h) es.resize(static_cast<std::size_t>(I.h));
            S.selected[i] = es;
        }
        for (const VertexRef& v : all)
            if (!covered.count(v)) S.clusters[0].push_back(v);
    }
    au.value = solution_value(S);
    const Report rep = validate_solution(I, S);
    require(rep.ok, ErrorKind::Contract,
            "extracted solution is infeasible: " + (rep.violations.empty() ? std::string() : rep.violations[0]));
    return ex;
}

}  // namespace ndp
