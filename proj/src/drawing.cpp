#include "ndp/drawing.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <boost/multiprecision/cpp_int.hpp>

namespace ndp {

namespace {

using Big = boost::multiprecision::int256_t;

int sgn(const Big& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

Big gcd_big(Big a, Big b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Big t = a % b;
        a = b;
        b = t;
    }
    return a;
}

QPoint make_point(Big x, Big y, Big den) {
    if (den < 0) {
        x = -x;
        y = -y;
        den = -den;
    }
    Big g = gcd_big(gcd_big(x, y), den);
    if (g > 1) {
        x /= g;
        y /= g;
        den /= g;
    }
    const Big lim = Big(std::numeric_limits<i64>::max());
    require(den != 0 && den <= lim && x <= lim && -x <= lim && y <= lim && -y <= lim, ErrorKind::Capacity,
            "intersection point does not fit 64-bit rational coordinates");
    return {static_cast<i64>(x), static_cast<i64>(y), static_cast<i64>(den)};
}

// Compares p.coord and q.coord exactly: -1, 0, 1.
int cmp_coord(i64 pn, i64 pd, i64 qn, i64 qd) {
    const __int128 l = static_cast<__int128>(pn) * qd, r = static_cast<__int128>(qn) * pd;
    return (l > r) - (l < r);
}

bool on_segment(const QPoint& a, const QPoint& b, const QPoint& p) {
    if (orientation(a, b, p) != 0) return false;
    auto between = [](i64 an, i64 ad, i64 bn, i64 bd, i64 pn, i64 pd) {
        const int lo = cmp_coord(pn, pd, an, ad), hi = cmp_coord(pn, pd, bn, bd);
        return lo * hi <= 0;
    };
    return between(a.x, a.den, b.x, b.den, p.x, p.den) && between(a.y, a.den, b.y, b.den, p.y, p.den);
}

}  // namespace

bool same_point(const QPoint& a, const QPoint& b) {
    return cmp_coord(a.x, a.den, b.x, b.den) == 0 && cmp_coord(a.y, a.den, b.y, b.den) == 0;
}

int orientation(const QPoint& a, const QPoint& b, const QPoint& c) {
    const Big dx1 = Big(b.x) * a.den - Big(a.x) * b.den, dy1 = Big(b.y) * a.den - Big(a.y) * b.den;
    const Big dx2 = Big(c.x) * a.den - Big(a.x) * c.den, dy2 = Big(c.y) * a.den - Big(a.y) * c.den;
    // Both differences carry positive denominators, so the sign is exact.
    return sgn(dx1 * dy2 - dy1 * dx2);
}

int segment_intersection(const QPoint& a, const QPoint& b, const QPoint& c, const QPoint& d, QPoint* at) {
    const int o1 = orientation(a, b, c), o2 = orientation(a, b, d);
    const int o3 = orientation(c, d, a), o4 = orientation(c, d, b);
    if (o1 == 0 && o2 == 0) {
        // Collinear: count the shared endpoints to tell touching from overlapping.
        std::vector<QPoint> shared;
        for (const QPoint& p : {a, b})
            if (on_segment(c, d, p)) shared.push_back(p);
        for (const QPoint& p : {c, d})
            if (on_segment(a, b, p)) shared.push_back(p);
        if (shared.empty()) return 0;
        for (const QPoint& p : shared)
            if (!same_point(p, shared[0])) return 2;
        if (at) *at = shared[0];
        return 1;
    }
    if (o1 * o2 > 0 || o3 * o4 > 0) return 0;
    if (at) {
        // Common denominator D, then a + t (b - a) with t = (c-a)x(d-c) / (b-a)x(d-c).
        const Big D = Big(a.den) * b.den * c.den * d.den;
        auto sc = [&](const QPoint& p, bool y) { return Big(y ? p.y : p.x) * (D / p.den); };
        const Big ax = sc(a, false), ay = sc(a, true), bx = sc(b, false), by = sc(b, true);
        const Big cx = sc(c, false), cy = sc(c, true), dx = sc(d, false), dy = sc(d, true);
        Big tn = (cx - ax) * (dy - cy) - (cy - ay) * (dx - cx);
        Big td = (bx - ax) * (dy - cy) - (by - ay) * (dx - cx);
        const Big g = gcd_big(tn, td);
        if (g > 1) {
            tn /= g;
            td /= g;
        }
        *at = make_point(ax * td + tn * (bx - ax), ay * td + tn * (by - ay), td * D);
    }
    return 1;
}

bool before_on_segment(const QPoint& a, const QPoint& b, const QPoint& p, const QPoint& q) {
    const int dx = cmp_coord(b.x, b.den, a.x, a.den);
    if (dx != 0) return dx * cmp_coord(p.x, p.den, q.x, q.den) < 0;
    const int dy = cmp_coord(b.y, b.den, a.y, a.den);
    return dy * cmp_coord(p.y, p.den, q.y, q.den) < 0;
}

std::vector<int> Drawing::degrees() const {
    std::vector<int> deg(points.size(), 0);
    for (const DrawnEdge& e : edges) {
        ++deg[e.u];
        ++deg[e.v];
    }
    return deg;
}

int Drawing::max_degree() const {
    const std::vector<int> deg = degrees();
    return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

namespace {

// Integer box enclosing a segment (floors and ceilings of its coordinates).
struct Box {
    i64 x0, x1, y0, y1;
    bool meets(const Box& o) const { return x0 <= o.x1 && o.x0 <= x1 && y0 <= o.y1 && o.y0 <= y1; }
};

i64 floor_q(i64 n, i64 d) { return n >= 0 ? n / d : -((-n + d - 1) / d); }

Box box_of(const QPoint& a, const QPoint& b) {
    const i64 ax = floor_q(a.x, a.den), bx = floor_q(b.x, b.den), ay = floor_q(a.y, a.den), by = floor_q(b.y, b.den);
    return {std::min(ax, bx), std::max(ax, bx) + 1, std::min(ay, by), std::max(ay, by) + 1};
}

}  // namespace

std::vector<Crossing> recount_crossings(const Drawing& d) {
    std::vector<Crossing> out;
    std::vector<std::vector<Box>> boxes(d.edges.size());
    for (std::size_t i = 0; i < d.edges.size(); ++i)
        for (std::size_t s = 0; s + 1 < d.edges[i].curve.size(); ++s)
            boxes[i].push_back(box_of(d.edges[i].curve[s], d.edges[i].curve[s + 1]));
    for (std::size_t i = 0; i < d.edges.size(); ++i) {
        for (std::size_t j = i + 1; j < d.edges.size(); ++j) {
            const DrawnEdge &e = d.edges[i], &f = d.edges[j];
            std::vector<QPoint> shared;  // images of common endpoints
            for (int x : {e.u, e.v})
                if (x == f.u || x == f.v) shared.push_back(d.points[x]);
            std::vector<Crossing> found;
            for (std::size_t s = 0; s + 1 < e.curve.size(); ++s) {
                for (std::size_t t = 0; t + 1 < f.curve.size(); ++t) {
                    if (!boxes[i][s].meets(boxes[j][t])) continue;
                    QPoint at;
                    const int k = segment_intersection(e.curve[s], e.curve[s + 1], f.curve[t], f.curve[t + 1], &at);
                    require(k != 2, ErrorKind::Contract, "two curves overlap along a segment");
                    if (k == 0) continue;
                    if (std::any_of(shared.begin(), shared.end(), [&](const QPoint& p) { return same_point(p, at); }))
                        continue;
                    const bool dup = std::any_of(found.begin(), found.end(),
                                                 [&](const Crossing& c) { return same_point(c.at, at); });
                    if (!dup)
                        found.push_back({static_cast<int>(i), static_cast<int>(j), static_cast<int>(s),
                                         static_cast<int>(t), at});
                }
            }
            out.insert(out.end(), found.begin(), found.end());
        }
    }
    return out;
}

Report validate_drawing(const Drawing& d) {
    Report rep;
    for (std::size_t i = 0; i < d.edges.size(); ++i) {
        const DrawnEdge& e = d.edges[i];
        const std::string tag = "edge " + std::to_string(i);
        if (e.u < 0 || e.v < 0 || static_cast<std::size_t>(std::max(e.u, e.v)) >= d.points.size()) {
            rep.fail(tag + ": endpoint out of range");
            continue;
        }
        if (e.curve.size() < 2) {
            rep.fail(tag + ": curve has fewer than two points");
            continue;
        }
        if (!same_point(e.curve.front(), d.points[e.u]) || !same_point(e.curve.back(), d.points[e.v]))
            rep.fail(tag + ": curve does not join its endpoint images");
        for (std::size_t v = 0; v < d.points.size(); ++v) {
            if (static_cast<int>(v) == e.u || static_cast<int>(v) == e.v) continue;
            const Box pb = box_of(d.points[v], d.points[v]);
            for (std::size_t s = 0; s + 1 < e.curve.size(); ++s)
                if (box_of(e.curve[s], e.curve[s + 1]).meets(pb) && on_segment(e.curve[s], e.curve[s + 1], d.points[v])) {
                    rep.fail(tag + ": curve passes through the image of vertex " + std::to_string(v));
                    break;
                }
        }
        // Self-intersections: non-adjacent segments must be disjoint and
        // adjacent ones may share only their common point.
        for (std::size_t s = 0; s + 1 < e.curve.size(); ++s) {
            for (std::size_t t = s + 1; t + 1 < e.curve.size(); ++t) {
                if (!box_of(e.curve[s], e.curve[s + 1]).meets(box_of(e.curve[t], e.curve[t + 1]))) continue;
                QPoint at;
                const int k = segment_intersection(e.curve[s], e.curve[s + 1], e.curve[t], e.curve[t + 1], &at);
                if (k == 0) continue;
                if (t == s + 1 && k == 1 && same_point(at, e.curve[t])) continue;
                rep.fail(tag + ": curve meets itself");
                s = e.curve.size();
                break;
            }
        }
    }
    // No point on three curves.
    std::map<std::pair<i64, i64>, std::vector<const Crossing*>> by_x;  // bucket by floor coordinates
    for (const Crossing& c : d.crossings) by_x[{c.at.x / c.at.den, c.at.y / c.at.den}].push_back(&c);
    for (const auto& [key, list] : by_x) {
        for (const Crossing* c : list) {
            std::set<int> curves;
            for (const Crossing* o : list)
                if (same_point(o->at, c->at)) {
                    curves.insert(o->edge1);
                    curves.insert(o->edge2);
                }
            if (curves.size() > 2) {
                rep.fail("three curves share a crossing point");
                return rep;
            }
        }
    }
    return rep;
}

Drawing straight_line_drawing(const std::vector<QPoint>& points, const std::vector<std::pair<int, int>>& edges) {
    Drawing d;
    d.points = points;
    for (auto [u, v] : edges) {
        require(u >= 0 && v >= 0 && static_cast<std::size_t>(std::max(u, v)) < points.size() && u != v,
                ErrorKind::OutOfBounds, "edge endpoint out of range");
        d.edges.push_back({u, v, {points[u], points[v]}});
    }
    d.crossings = recount_crossings(d);
    return d;
}

i64 routed_crossing_bound_per_edge(const NdpInstance& inst) { return 2 * inst.block_length(); }

namespace {

// Point on the line from p (a cell middle) to terminal s at doubled column X.
QPoint on_line(const QPoint& p, const QPoint& s, i64 X) {
    const i64 dx = s.x - p.x, dy = s.y - p.y;  // p and s are integral (den 1)
    return make_point(Big(X) * dx, Big(p.y) * dx + Big(dy) * (X - p.x), Big(dx));
}

// A vertical path segment at doubled column X crossing the open line from p to s.
bool crosses_line(const QPoint& p, const QPoint& s, const QPoint& a, const QPoint& b, QPoint* at) {
    if (a.x != b.x) return false;
    const i64 X = a.x;
    if (!(X > std::min(p.x, s.x) && X < std::max(p.x, s.x))) return false;
    const QPoint q = on_line(p, s, X);
    const i64 lo = std::min(a.y, b.y), hi = std::max(a.y, b.y);
    if (cmp_coord(q.y, q.den, lo, 1) <= 0 || cmp_coord(q.y, q.den, hi, 1) >= 0) return false;
    *at = q;
    return true;
}

struct Routed {
    std::vector<QPoint> wp;        // doubled waypoints of the path, s to t
    QPoint p_img, s_pt, t_pt, q_img;
    int trim_a = -1, trim_b = -1;  // path segments where the curve leaves/joins the lines
    QPoint ta, tb;
    std::vector<int> curve_seg;    // path segment -> curve segment (-1 if trimmed away)
};

// Position on the path: (segment, point) order.
bool path_before(const Routed& r, int k1, const QPoint& p1, int k2, const QPoint& p2) {
    if (k1 != k2) return k1 < k2;
    return before_on_segment(r.wp[k1], r.wp[k1 + 1], p1, p2);
}

}  // namespace

Drawing draw_routing(const GpwbInstance& I, const NdpInstance& inst, const PathSet& routing,
                     const std::vector<int>& edges) {
    require(!inst.wall, ErrorKind::Contract, "routed drawings are defined for grid instances");
    std::map<std::string, std::size_t> path_of;
    for (std::size_t i = 0; i < routing.size(); ++i) path_of[routing.pairing[i]] = i;

    Drawing d;
    std::map<VertexRef, int> local;
    std::vector<int> sorted_edges = edges;
    std::sort(sorted_edges.begin(), sorted_edges.end());
    require(std::adjacent_find(sorted_edges.begin(), sorted_edges.end()) == sorted_edges.end(), ErrorKind::Contract,
            "edge listed twice");
    for (int e : sorted_edges) {
        require(e >= 0 && static_cast<std::size_t>(e) < inst.pairs.size(), ErrorKind::OutOfBounds, "edge out of range");
        local.emplace(VertexRef{Part::Left, I.edges[e].first}, 0);
        local.emplace(VertexRef{Part::Right, I.edges[e].second}, 0);
    }
    for (auto& [v, id] : local) {
        id = static_cast<int>(d.points.size());
        d.vertex_ref.push_back(v);
        if (v.side == Part::Left) {
            const Block& b = inst.source_blocks[inst.left_block_of[v.index]];
            d.points.push_back({2 * b.col_lo + 1, 2 * inst.source_row - 1, 1});
        } else {
            const Block& b = inst.dest_blocks[inst.right_block_of[v.index]];
            d.points.push_back({2 * b.col_lo + 1, 2 * inst.dest_row + 1, 1});
        }
    }

    std::vector<Routed> rt(sorted_edges.size());
    for (std::size_t i = 0; i < sorted_edges.size(); ++i) {
        const int e = sorted_edges[i];
        const auto it = path_of.find(inst.pairs[e].id);
        require(it != path_of.end(), ErrorKind::Contract, "edge " + inst.pairs[e].id + " has no routed path");
        GridPath path = routing.paths[it->second];
        const GridCoord s = inst.source_of(e), t = inst.dest_of(e);
        if (path.front() == t && path.back() == s) std::reverse(path.waypoints.begin(), path.waypoints.end());
        require(path.front() == s && path.back() == t, ErrorKind::Contract,
                "path of " + inst.pairs[e].id + " does not join its terminals");
        Routed& r = rt[i];
        for (GridCoord c : path.waypoints) r.wp.push_back({2 * c.col, 2 * c.row, 1});
        const int u = local.at({Part::Left, I.edges[e].first}), v = local.at({Part::Right, I.edges[e].second});
        r.p_img = d.points[u];
        r.q_img = d.points[v];
        r.s_pt = r.wp.front();
        r.t_pt = r.wp.back();
        // Self-loops: leave the source line at the last crossing along the path,
        // join the destination line at the first crossing after that.
        const int nseg = static_cast<int>(r.wp.size()) - 1;
        for (int k = 0; k < nseg; ++k) {
            QPoint at;
            if (crosses_line(r.p_img, r.s_pt, r.wp[k], r.wp[k + 1], &at)) {
                r.trim_a = k;
                r.ta = at;
            }
        }
        for (int k = std::max(0, r.trim_a); k < nseg && r.trim_b < 0; ++k) {
            QPoint at;
            if (!crosses_line(r.q_img, r.t_pt, r.wp[k], r.wp[k + 1], &at)) continue;
            if (k == r.trim_a && !before_on_segment(r.wp[k], r.wp[k + 1], r.ta, at)) continue;
            r.trim_b = k;
            r.tb = at;
        }
        DrawnEdge de{u, v, {r.p_img}};
        r.curve_seg.assign(nseg, -1);
        const int first = std::max(0, r.trim_a), last = r.trim_b >= 0 ? r.trim_b : nseg - 1;
        de.curve.push_back(r.trim_a >= 0 ? r.ta : r.wp[0]);
        for (int k = first; k <= last; ++k) {
            r.curve_seg[k] = static_cast<int>(de.curve.size()) - 1;
            de.curve.push_back(k == r.trim_b ? r.tb : r.wp[k + 1]);
        }
        de.curve.push_back(r.q_img);
        d.edges.push_back(std::move(de));
        d.edge_ref.push_back(e);
    }

    // Crossings: a curve can only be crossed on its straight pieces, by the
    // vertical path segments of other curves passing through the band next
    // to the terminal row of that piece.
    for (std::size_t f = 0; f < rt.size(); ++f) {
        const Routed& rf = rt[f];
        const int last_seg = static_cast<int>(d.edges[f].curve.size()) - 2;
        struct Line {
            QPoint from, to;  // along the curve
            QPoint img, term;
            int seg;
        };
        const Line lines[2] = {{rf.p_img, rf.trim_a >= 0 ? rf.ta : rf.s_pt, rf.p_img, rf.s_pt, 0},
                               {rf.trim_b >= 0 ? rf.tb : rf.t_pt, rf.q_img, rf.q_img, rf.t_pt, last_seg}};
        for (const Line& ln : lines) {
            for (std::size_t e = 0; e < rt.size(); ++e) {
                if (e == f) continue;
                const Routed& re = rt[e];
                for (std::size_t k = 0; k + 1 < re.wp.size(); ++k) {
                    if (re.curve_seg[k] < 0) continue;
                    QPoint at;
                    if (!crosses_line(ln.img, ln.term, re.wp[k], re.wp[k + 1], &at)) continue;
                    // inside the kept piece of the line
                    if (!on_segment(ln.from, ln.to, at) || same_point(at, ln.from) || same_point(at, ln.to)) continue;
                    const int kk = static_cast<int>(k);
                    if (kk == re.trim_a && !path_before(re, kk, re.ta, kk, at)) continue;
                    if (kk == re.trim_b && !path_before(re, kk, at, kk, re.tb)) continue;
                    d.crossings.push_back({static_cast<int>(f), static_cast<int>(e), ln.seg, re.curve_seg[k], at});
                }
            }
        }
    }
    std::sort(d.crossings.begin(), d.crossings.end(), [](const Crossing& a, const Crossing& b) {
        if (a.edge1 != b.edge1) return a.edge1 < b.edge1;
        if (a.edge2 != b.edge2) return a.edge2 < b.edge2;
        if (a.seg1 != b.seg1) return a.seg1 < b.seg1;
        return a.seg2 < b.seg2;
    });
    return d;
}

}  // namespace ndp
