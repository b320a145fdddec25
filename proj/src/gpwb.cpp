#include "ndp/gpwb.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace ndp {

GroupIndex index_groups(const GpwbInstance& I) {
    GroupIndex gi;
    auto fill = [](const std::vector<std::vector<int>>& groups, std::size_t n, std::vector<int>& out, const char* side) {
        out.assign(n, -1);
        for (std::size_t g = 0; g < groups.size(); ++g) {
            for (int v : groups[g]) {
                require(v >= 0 && static_cast<std::size_t>(v) < n, ErrorKind::Partition,
                        std::string(side) + " group member out of range");
                require(out[v] == -1, ErrorKind::Partition, std::string(side) + " vertex in two groups");
                out[v] = static_cast<int>(g);
            }
        }
        for (std::size_t v = 0; v < n; ++v)
            require(out[v] != -1, ErrorKind::Partition, std::string(side) + " vertex " + std::to_string(v) + " in no group");
    };
    fill(I.groups_left, I.left_ids.size(), gi.left_group, "left");
    fill(I.groups_right, I.right_ids.size(), gi.right_group, "right");
    return gi;
}

BundleIndex compute_bundles(const GpwbInstance& I) {
    const GroupIndex gi = index_groups(I);
    BundleIndex bi;
    bi.of_left.assign(I.left_ids.size(), {});
    bi.of_right.assign(I.right_ids.size(), {});
    bi.left_bundle_of_edge.assign(I.edges.size(), -1);
    bi.right_bundle_of_edge.assign(I.edges.size(), -1);
    // For each anchor, bundles keyed by the opposite group in order of first
    // appearance; a small linear scan suffices because beta(v) is small.
    for (std::size_t e = 0; e < I.edges.size(); ++e) {
        const auto [u, v] = I.edges[e];
        require(u >= 0 && static_cast<std::size_t>(u) < I.left_ids.size() && v >= 0 &&
                    static_cast<std::size_t>(v) < I.right_ids.size(),
                ErrorKind::OutOfBounds, "edge endpoint out of range");
        auto place = [&](std::vector<int>& list, VertexRef anchor, int group, std::vector<int>& slot) {
            for (int b : list) {
                if (bi.bundles[b].opposite_group == group) {
                    bi.bundles[b].edges.push_back(static_cast<int>(e));
                    slot[e] = b;
                    return;
                }
            }
            bi.bundles.push_back({anchor, group, {static_cast<int>(e)}});
            list.push_back(static_cast<int>(bi.bundles.size() - 1));
            slot[e] = static_cast<int>(bi.bundles.size() - 1);
        };
        place(bi.of_left[u], {Part::Left, u}, gi.right_group[v], bi.left_bundle_of_edge);
        place(bi.of_right[v], {Part::Right, v}, gi.left_group[u], bi.right_bundle_of_edge);
    }
    return bi;
}

i64 beta_star(const GpwbInstance& I) {
    const BundleIndex bi = compute_bundles(I);
    i64 total = 0;
    for (const auto& l : bi.of_left) total += static_cast<i64>(l.size());
    return total;
}

Report validate_instance(const GpwbInstance& I) {
    Report rep;
    BundleIndex bi;
    try {
        bi = compute_bundles(I);
    } catch (const Error& e) {
        rep.fail(e.what());
        return rep;
    }
    if (I.r <= 0) rep.fail("r must be positive");
    if (I.h <= 0) rep.fail("h must be positive");
    for (const auto* groups : {&I.groups_left, &I.groups_right})
        for (const auto& g : *groups)
            if (static_cast<i64>(g.size()) != I.r) {
                rep.fail("group of size " + std::to_string(g.size()) + " != r = " + std::to_string(I.r));
                break;
            }
    std::set<std::pair<int, int>> seen;
    for (const auto& e : I.edges)
        if (!seen.insert(e).second) {
            rep.fail("parallel edge");
            break;
        }
    i64 bs = 0;
    for (const auto& l : bi.of_left) bs += static_cast<i64>(l.size());
    if (I.r > 0 && (bs % I.r != 0 || bs / I.r != I.h))
        rep.fail("h != beta*/r (beta* = " + std::to_string(bs) + ", r = " + std::to_string(I.r) + ", h = " + std::to_string(I.h) + ")");
    int max_beta = 0;
    for (const auto& l : bi.of_left) max_beta = std::max(max_beta, static_cast<int>(l.size()));
    for (const auto& l : bi.of_right) max_beta = std::max(max_beta, static_cast<int>(l.size()));
    if (I.h < max_beta) rep.fail("h < max beta(v) = " + std::to_string(max_beta));
    return rep;
}

Report validate_solution(const GpwbInstance& I, const GpwbSolution& S) {
    Report rep;
    if (static_cast<i64>(S.clusters.size()) != I.r || S.selected.size() != S.clusters.size()) {
        rep.fail("expected " + std::to_string(I.r) + " clusters and edge sets");
        return rep;
    }
    std::vector<int> left_of(I.left_ids.size(), -1), right_of(I.right_ids.size(), -1);
    for (std::size_t i = 0; i < S.clusters.size(); ++i) {
        for (const VertexRef& v : S.clusters[i]) {
            auto& slot = v.side == Part::Left ? left_of : right_of;
            if (v.index < 0 || static_cast<std::size_t>(v.index) >= slot.size()) {
                rep.fail("cluster vertex out of range");
                return rep;
            }
            if (slot[v.index] != -1) rep.fail("vertex in two clusters");
            slot[v.index] = static_cast<int>(i);
        }
    }
    for (int c : left_of)
        if (c == -1) { rep.fail("left vertex not covered by any cluster"); break; }
    for (int c : right_of)
        if (c == -1) { rep.fail("right vertex not covered by any cluster"); break; }
    BundleIndex bi = compute_bundles(I);
    std::vector<int> owner(I.edges.size(), -1);
    for (std::size_t i = 0; i < S.selected.size(); ++i) {
        if (static_cast<i64>(S.selected[i].size()) > I.h)
            rep.fail("|E_" + std::to_string(i + 1) + "| = " + std::to_string(S.selected[i].size()) + " > h");
        std::set<int> bundles_used;
        for (int e : S.selected[i]) {
            if (e < 0 || static_cast<std::size_t>(e) >= I.edges.size()) {
                rep.fail("selected edge out of range");
                continue;
            }
            if (owner[e] != -1) rep.fail("edge selected twice");
            owner[e] = static_cast<int>(i);
            const auto [u, v] = I.edges[e];
            if (left_of[u] != static_cast<int>(i) || right_of[v] != static_cast<int>(i))
                rep.fail("edge " + std::to_string(e) + " not inside cluster " + std::to_string(i + 1));
            for (int b : {bi.left_bundle_of_edge[e], bi.right_bundle_of_edge[e]})
                if (!bundles_used.insert(b).second)
                    rep.fail("cluster " + std::to_string(i + 1) + " uses two edges of one bundle");
        }
    }
    return rep;
}

i64 solution_value(const GpwbSolution& S) {
    i64 v = 0;
    for (const auto& e : S.selected) v += static_cast<i64>(e.size());
    return v;
}

bool is_perfect(const GpwbInstance& I, const GpwbSolution& S) {
    const Report rep = validate_solution(I, S);
    require(rep.ok, ErrorKind::Contract, "is_perfect on infeasible solution: " + (rep.violations.empty() ? "" : rep.violations[0]));
    const GroupIndex gi = index_groups(I);
    for (std::size_t i = 0; i < S.clusters.size(); ++i) {
        if (static_cast<i64>(S.selected[i].size()) != I.h) return false;
        std::vector<int> hit_left(I.groups_left.size(), 0), hit_right(I.groups_right.size(), 0);
        for (const VertexRef& v : S.clusters[i])
            (v.side == Part::Left ? hit_left[gi.left_group[v.index]] : hit_right[gi.right_group[v.index]])++;
        for (int c : hit_left) if (c != 1) return false;
        for (int c : hit_right) if (c != 1) return false;
    }
    return true;
}

i64 brute_force_optimum(const GpwbInstance& I) {
    const std::size_t n = I.num_vertices();
    require(n <= 10 && I.r <= 4, ErrorKind::Capacity, "brute force limited to 10 vertices and r <= 4");
    const BundleIndex bi = compute_bundles(I);
    const std::size_t nl = I.left_ids.size();
    std::vector<int> cluster(n, 0);
    i64 best = 0;
    // For a fixed vertex partition, the best edge selection of a cluster is a
    // maximum set of its internal edges using each bundle at most once, capped
    // at h; with <= 25 internal edges a subset search is cheap.
    std::function<void(std::size_t)> rec = [&](std::size_t idx) {
        if (idx == n) {
            i64 total = 0;
            for (i64 c = 0; c < I.r; ++c) {
                std::vector<int> inside;
                for (std::size_t e = 0; e < I.edges.size(); ++e)
                    if (cluster[I.edges[e].first] == c && cluster[nl + I.edges[e].second] == c) inside.push_back(static_cast<int>(e));
                i64 local = 0;
                const std::size_t m = inside.size();
                for (u64 mask = 0; mask < (u64{1} << m); ++mask) {
                    const i64 cnt = __builtin_popcountll(mask);
                    if (cnt <= local || cnt > I.h) continue;
                    std::set<int> used;
                    bool ok = true;
                    for (std::size_t t = 0; t < m && ok; ++t)
                        if (mask >> t & 1)
                            for (int b : {bi.left_bundle_of_edge[inside[t]], bi.right_bundle_of_edge[inside[t]]})
                                ok = ok && used.insert(b).second;
                    if (ok) local = cnt;
                }
                total += local;
            }
            best = std::max(best, total);
            return;
        }
        for (i64 c = 0; c < I.r; ++c) {
            cluster[idx] = static_cast<int>(c);
            rec(idx + 1);
        }
    };
    rec(0);
    return best;
}

}  // namespace ndp
