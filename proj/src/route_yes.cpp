#include "ndp/route_yes.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>

namespace ndp {

std::vector<int> right_clusters(const GpwbInstance& I, const GpwbSolution& S) {
    std::vector<int> out(I.right_ids.size(), -1);
    for (std::size_t c = 0; c < S.clusters.size(); ++c)
        for (const VertexRef& v : S.clusters[c])
            if (v.side == Part::Right) out[v.index] = static_cast<int>(c);
    return out;
}

std::vector<int> sigma_order(const NdpInstance& inst, const GpwbInstance& I, const std::vector<int>& cluster_of_right,
                             std::vector<int> pairs) {
    std::sort(pairs.begin(), pairs.end(), [&](int a, int b) {
        const int ca = cluster_of_right[I.edges[a].second], cb = cluster_of_right[I.edges[b].second];
        if (ca != cb) return ca < cb;
        return inst.dest_of(a).col < inst.dest_of(b).col;
    });
    return pairs;
}

DistanceCheck check_distance_property(const NdpInstance& inst, const std::vector<int>& sigma_ordered) {
    DistanceCheck out;
    std::set<int> srcs, dsts;
    for (int p : sigma_ordered) {
        require(p >= 0 && static_cast<std::size_t>(p) < inst.pairs.size(), ErrorKind::OutOfBounds, "pair index out of range");
        require(srcs.insert(inst.pairs[p].source).second, ErrorKind::Contract, "two selected pairs share a source");
        require(dsts.insert(inst.pairs[p].destination).second, ErrorKind::Contract, "two selected pairs share a destination");
    }
    std::vector<std::size_t> by_source(sigma_ordered.size());
    for (std::size_t i = 0; i < by_source.size(); ++i) by_source[i] = i;
    std::sort(by_source.begin(), by_source.end(), [&](std::size_t a, std::size_t b) {
        return inst.source_of(sigma_ordered[a]).col < inst.source_of(sigma_ordered[b]).col;
    });
    double worst = -1;
    for (std::size_t k = 1; k < by_source.size(); ++k) {
        const std::size_t i = by_source[k - 1], j = by_source[k];
        const i64 n = static_cast<i64>(i > j ? i - j : j - i) - 1;
        const i64 d = grid_distance(inst.grid, inst.source_of(sigma_ordered[i]), inst.source_of(sigma_ordered[j]));
        const double ratio = 4.0 * static_cast<double>(n) / static_cast<double>(d);
        if (4 * n >= d) out.ok = false;
        if (ratio > worst) {
            worst = ratio;
            out.witness_a = sigma_ordered[i];
            out.witness_b = sigma_ordered[j];
            out.between = n;
            out.distance = d;
        }
    }
    return out;
}

namespace {

int degree_class(std::size_t d) {
    int y = 0;
    while ((std::size_t{1} << y) <= d) ++y;
    return y;  // 2^{y-1} <= d < 2^y
}

// Keeps the edges of `edges` whose endpoint (chosen by `endpoint`) lies in
// the degree class holding the most edges; lowest class index on ties.
std::vector<int> regularize(const std::vector<int>& edges, const std::function<int(int)>& endpoint, int& chosen) {
    std::map<int, std::size_t> deg;
    for (int e : edges) ++deg[endpoint(e)];
    std::map<int, std::size_t> class_size;
    for (const auto& [v, d] : deg) class_size[degree_class(d)] += d;
    chosen = 0;
    std::size_t best = 0;
    for (const auto& [y, s] : class_size)
        if (s > best) best = s, chosen = y;
    std::vector<int> out;
    for (int e : edges)
        if (degree_class(deg[endpoint(e)]) == chosen) out.push_back(e);
    return out;
}

}  // namespace

RoutableSubset select_routable_subset(const GpwbInstance& I, const GpwbSolution& perfect, const NdpInstance& inst) {
    require(is_perfect(I, perfect), ErrorKind::Contract, "selection needs a perfect solution");
    const ConstantProfile& prof = inst.profile;
    const double lg = inst.log_m;
    const std::vector<int> cl = right_clusters(I, perfect);
    RoutableSubset rs;
    SelectionAudit& au = rs.audit;

    std::vector<int> e0;
    for (const auto& sel : perfect.selected) e0.insert(e0.end(), sel.begin(), sel.end());
    std::sort(e0.begin(), e0.end());
    au.m0 = e0.size();
    auto finish = [&](std::vector<int> chosen) {
        rs.pairs = sigma_order(inst, I, cl, std::move(chosen));
        for (int p : rs.pairs) rs.cluster.push_back(cl[I.edges[p].second]);
        au.m_final = rs.pairs.size();
        au.distance = check_distance_property(inst, rs.pairs);
        return rs;
    };
    if (static_cast<double>(au.m0) <= prof.c_degenerate * lg * lg * lg) {
        au.degenerate = true;
        return finish({sigma_order(inst, I, cl, e0).front()});
    }

    // Steps 1 and 2: regularize degrees on V2, then on V1.
    const std::vector<int> e1 = regularize(e0, [&](int e) { return I.edges[e].second; }, au.q);
    const std::vector<int> e2 = regularize(e1, [&](int e) { return I.edges[e].first; }, au.p);
    au.m1 = e1.size();
    au.m2 = e2.size();
    au.h_large = 4.0 * static_cast<double>(I.h) >= std::ldexp(1.0, au.p + au.q);

    // Diagnostics for the two bad events, measured on M^2.
    const std::vector<int> sigma2 = sigma_order(inst, I, cl, e2);
    std::map<int, std::size_t> pos2;
    for (std::size_t i = 0; i < sigma2.size(); ++i) pos2[sigma2[i]] = i;
    std::map<int, std::vector<int>> by_block;  // block -> pairs sorted by source column
    for (int e : e2) by_block[inst.sources[inst.pairs[e].source].block].push_back(e);
    const double two_p = std::ldexp(1.0, au.p);
    const i64 window = static_cast<i64>(std::floor(prof.c_space * static_cast<double>(I.h) * lg * lg / two_p));
    const double n_bound = 128.0 * static_cast<double>(I.h) * lg / two_p;
    for (auto& [blk, ps] : by_block) {
        std::sort(ps.begin(), ps.end(), [&](int a, int b) { return inst.source_of(a).col < inst.source_of(b).col; });
        std::size_t lo = 0;
        for (std::size_t hi = 0; hi < ps.size(); ++hi) {
            while (inst.source_of(ps[hi]).col - inst.source_of(ps[lo]).col >= window) ++lo;
            au.max_window_load = std::max<i64>(au.max_window_load, static_cast<i64>(hi - lo + 1));
        }
        for (std::size_t k = 1; k < ps.size(); ++k) {
            const std::size_t a = pos2[ps[k - 1]], b = pos2[ps[k]];
            if (static_cast<double>((a > b ? a - b : b - a) - 1) > n_bound) au.n_bound_exceeded = true;
        }
    }
    au.heavy_path = static_cast<double>(au.max_window_load) > 16.0 * lg;

    // Step 3: sparsify the sources in their order on R'.
    std::vector<int> by_source = e2;
    std::sort(by_source.begin(), by_source.end(),
              [&](int a, int b) { return inst.source_of(a).col < inst.source_of(b).col; });
    au.step3_modulus = std::max<i64>(1, ceil_to_i64(prof.c_sparsify * lg));
    std::vector<int> e3;
    for (std::size_t i = 0; i < by_source.size(); ++i)
        if (static_cast<i64>(i) % au.step3_modulus == 0) e3.push_back(by_source[i]);
    au.m3 = e3.size();

    const std::vector<int> sigma3 = sigma_order(inst, I, cl, e3);
    std::map<int, std::size_t> pos3;
    for (std::size_t i = 0; i < sigma3.size(); ++i) pos3[sigma3[i]] = i;
    std::map<int, std::vector<int>> block3;
    for (int e : e3) block3[inst.sources[inst.pairs[e].source].block].push_back(e);
    for (const auto& [blk, ps] : block3)
        for (std::size_t a = 0; a < ps.size(); ++a)
            for (std::size_t b = a + 1; b < ps.size(); ++b) {
                const std::size_t x = pos3[ps[a]], y = pos3[ps[b]];
                const i64 n = static_cast<i64>(x > y ? x - y : y - x) - 1;
                if (n > 128 * grid_distance(inst.grid, inst.source_of(ps[a]), inst.source_of(ps[b])))
                    au.almost_distance_ok = false;
            }

    // Step 4: sparsify in sigma order.
    au.step4_modulus = std::max<i64>(1, static_cast<i64>(std::llround(prof.c_step4)));
    std::vector<int> chosen;
    for (std::size_t i = 0; i < sigma3.size(); ++i)
        if (static_cast<i64>(i) % au.step4_modulus == 0) chosen.push_back(sigma3[i]);
    return finish(std::move(chosen));
}

namespace {

// Routes strands from (middle, 2(i+1)) to terminal (row, term_col[i]) for
// every i, visiting the blocks left to right. Inside a block every live
// strand turns toward the terminal row at its own slot column (increasing
// with the strand index, gaps >= 2); strands ending in the block stop at
// their terminal, the others overshoot the terminal row, jump east past the
// block along nested detours and return to their bus row.
std::vector<std::vector<GridCoord>> route_half(i64 middle, i64 row, const std::vector<i64>& term_col,
                                               const std::vector<int>& term_block) {
    const i64 n = static_cast<i64>(term_col.size());
    const i64 toward = middle > row ? 1 : -1;
    auto at = [&](i64 k) { return row + toward * k; };
    auto bus = [&](i64 i) { return at(2 + 2 * i); };
    auto detour = [&](i64 i) { return at(-2 - 2 * (n - 1 - i)); };
    require(std::abs(middle - row) > 2 * n + 2, ErrorKind::Capacity, "not enough rows between the terminal and middle rows");

    std::vector<std::vector<GridCoord>> pts(n);
    for (i64 i = 0; i < n; ++i) pts[i] = {{middle, 2 * (i + 1)}, {bus(i), 2 * (i + 1)}};
    std::map<int, std::vector<i64>> blocks;  // block -> strands ending there
    for (i64 i = 0; i < n; ++i) blocks[term_block[i]].push_back(i);
    std::vector<bool> alive(n, true);
    i64 frontier = 2 * n;
    for (const auto& [blk, ending] : blocks) {
        for (std::size_t k = 1; k < ending.size(); ++k)
            require(term_col[ending[k]] > term_col[ending[k - 1]], ErrorKind::Contract,
                    "terminals of a block are not in strand order");
        std::vector<i64> live;
        for (i64 i = 0; i < n; ++i)
            if (alive[i]) live.push_back(i);
        // Slot columns: terminal strands at their terminal, the rest packed
        // at distance 2 next to the terminals around them.
        std::vector<i64> slot(n, 0);
        std::size_t t = 0;  // next ending strand
        std::vector<i64> pending;
        for (i64 i : live) {
            if (t < ending.size() && i == ending[t]) {
                const i64 c = term_col[i];
                if (t == 0) {
                    for (std::size_t k = 0; k < pending.size(); ++k)
                        slot[pending[k]] = c - 2 * static_cast<i64>(pending.size() - k);
                } else {
                    const i64 prev = term_col[ending[t - 1]];
                    require(prev + 2 * static_cast<i64>(pending.size() + 1) <= c, ErrorKind::Capacity,
                            "too many strands between consecutive terminals (distance property fails)");
                    for (std::size_t k = 0; k < pending.size(); ++k) slot[pending[k]] = prev + 2 * static_cast<i64>(k + 1);
                }
                slot[i] = c;
                pending.clear();
                ++t;
            } else {
                pending.push_back(i);
            }
        }
        const i64 last = term_col[ending.back()];
        for (std::size_t k = 0; k < pending.size(); ++k) slot[pending[k]] = last + 2 * static_cast<i64>(k + 1);
        i64 lo = slot[live.front()], hi = slot[live.back()];
        require(lo >= frontier + 2, ErrorKind::Capacity, "blocks too close for the strands between them");
        const i64 g0 = hi + 2;
        std::set<i64> ends(ending.begin(), ending.end());
        for (i64 i : live) {
            pts[i].push_back({bus(i), slot[i]});
            if (ends.count(i)) {
                pts[i].push_back({row, slot[i]});
                alive[i] = false;
            } else {
                const i64 g = g0 + 2 * (n - 1 - i);
                pts[i].push_back({detour(i), slot[i]});
                pts[i].push_back({detour(i), g});
                pts[i].push_back({bus(i), g});
            }
        }
        frontier = g0 + 2 * (n - 1);
    }
    return pts;
}

}  // namespace

PathSet route_spaced_out(const NdpInstance& inst, const RoutableSubset& rs) {
    const DistanceCheck dc = check_distance_property(inst, rs.pairs);
    require(dc.ok, ErrorKind::Contract, "selected pairs lack the distance property");
    const std::size_t n = rs.pairs.size();
    std::vector<i64> src_col(n), dst_col(n);
    std::vector<int> src_blk(n), dst_blk(n);
    for (std::size_t i = 0; i < n; ++i) {
        const DemandPair& p = inst.pairs[rs.pairs[i]];
        src_col[i] = inst.sources[p.source].at.col;
        src_blk[i] = inst.sources[p.source].block;
        dst_col[i] = inst.destinations[p.destination].at.col;
        dst_blk[i] = inst.destinations[p.destination].block;
    }
    const auto top = route_half(inst.middle_row, inst.source_row, src_col, src_blk);
    const auto bottom = route_half(inst.middle_row, inst.dest_row, dst_col, dst_blk);
    PathSet ps;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<GridCoord> pts(top[i].rbegin(), top[i].rend());
        pts.insert(pts.end(), bottom[i].begin() + 1, bottom[i].end());
        ps.paths.push_back(compress(pts));
        ps.pairing.push_back(inst.pairs[rs.pairs[i]].id);
    }
    std::string why;
    require(verify_spaced_out(ps, inst.grid, &why), ErrorKind::Contract, "YES routing is not spaced-out: " + why);
    return ps;
}

Report audit_yes_routing(const NdpInstance& inst, const RoutableSubset& rs, const PathSet& ps) {
    Report rep;
    if (ps.size() != rs.pairs.size()) {
        rep.fail("routed " + std::to_string(ps.size()) + " of " + std::to_string(rs.pairs.size()) + " pairs");
        return rep;
    }
    std::string why;
    if (!verify_spaced_out(ps, inst.grid, &why)) rep.fail("not spaced-out: " + why);
    for (std::size_t i = 0; i < ps.size(); ++i) {
        const GridPath& p = ps.paths[i];
        if (!is_valid_path(p, inst.grid, &why)) rep.fail("invalid path: " + why);
        if (!(p.front() == inst.source_of(rs.pairs[i]) && p.back() == inst.dest_of(rs.pairs[i])))
            rep.fail("path " + std::to_string(i) + " does not connect its pair");
        // Crossings of the middle row: the path must meet it in exactly one
        // vertex, the assigned one.
        i64 hits = 0;
        bool at_x = false;
        const i64 rm = inst.middle_row, x = 2 * static_cast<i64>(i + 1);
        for (const Segment& s : segments_of(p)) {
            if (s.row_lo() <= rm && rm <= s.row_hi()) {
                hits += s.a.row == s.b.row ? s.col_hi() - s.col_lo() + 1 : 1;
                at_x = at_x || (s.a.row == s.b.row ? (s.col_lo() <= x && x <= s.col_hi()) : s.a.col == x);
            }
        }
        // Segments sharing a waypoint on the row count it twice.
        for (std::size_t k = 1; k + 1 < p.waypoints.size(); ++k)
            if (p.waypoints[k].row == rm) --hits;
        if (hits != 1 || !at_x) rep.fail("path " + std::to_string(i) + " does not cross the middle row once at x_i");
    }
    return rep;
}

std::size_t longest_yellow_run(const std::vector<bool>& pink) {
    require(!pink.empty(), ErrorKind::Parameter, "empty labelled sequence");
    std::size_t best = 0, run = 0;
    for (bool p : pink) {
        run = p ? 0 : run + 1;
        best = std::max(best, run);
    }
    return best;
}

std::size_t max_pink_in_window(const std::vector<bool>& pink, std::size_t window) {
    require(!pink.empty(), ErrorKind::Parameter, "empty labelled sequence");
    require(window >= 1 && window <= pink.size(), ErrorKind::Parameter, "window larger than the sequence");
    std::size_t cur = 0;
    for (std::size_t i = 0; i < window; ++i) cur += pink[i];
    std::size_t best = cur;
    for (std::size_t i = window; i < pink.size(); ++i) {
        cur += pink[i];
        cur -= pink[i - window];
        best = std::max(best, cur);
    }
    return best;
}

}  // namespace ndp
