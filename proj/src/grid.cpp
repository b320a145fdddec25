#include "ndp/grid.hpp"

#include <algorithm>
#include <climits>
#include <numeric>
#include <optional>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace ndp {

namespace {

std::string coord_str(GridCoord v) {
    std::ostringstream os;
    os << "v(" << v.row << "," << v.col << ")";
    return os.str();
}

void set_why(std::string* why, const std::string& msg) {
    if (why) *why = msg;
}

i64 sign(i64 x) { return (x > 0) - (x < 0); }

struct CoordHash {
    std::size_t operator()(GridCoord v) const {
        return static_cast<std::size_t>(mix64(static_cast<u64>(v.row) * 0x9e3779b97f4a7c15ULL ^ static_cast<u64>(v.col)));
    }
};

}  // namespace

i64 GridPath::length() const {
    i64 total = 0;
    for (std::size_t i = 1; i < waypoints.size(); ++i) {
        total += std::abs(waypoints[i].row - waypoints[i - 1].row) + std::abs(waypoints[i].col - waypoints[i - 1].col);
    }
    return total;
}

i64 grid_distance(const GridSpec& g, GridCoord u, GridCoord v) {
    require(g.contains(u), ErrorKind::OutOfBounds, coord_str(u) + " outside grid");
    require(g.contains(v), ErrorKind::OutOfBounds, coord_str(v) + " outside grid");
    return std::abs(u.row - v.row) + std::abs(u.col - v.col);
}

// ---- walls -----------------------------------------------------------------

void validate_wall(const WallSpec& w) {
    // Length 2 would cascade into deleting everything; from 4 on only
    // corners are ever removed.
    require(w.base.length >= 4 && w.base.length % 2 == 0, ErrorKind::Parameter,
            "wall base length must be even and >= 4");
    require(w.base.height >= 2, ErrorKind::Parameter, "wall base height must be >= 2");
}

bool wall_contains_vertex(const WallSpec& w, GridCoord v) {
    validate_wall(w);
    if (!w.base.contains(v)) return false;
    const i64 h = w.base.height, l = w.base.length;
    // Every vertex keeps exactly one vertical edge except in rows 1 and h,
    // so only the four corners can drop to degree 1. The process stops after
    // one round because their neighbours keep degree >= 2.
    if (v.row == 1 && v.col == l) return pmod(1 - l, 2) == 0;
    if (v.row == h && v.col == 1) return pmod(h - 1 - 1, 2) == 0;
    if (v.row == h && v.col == l) return pmod(h - 1 - l, 2) == 0;
    return true;
}

bool wall_contains_edge(const WallSpec& w, GridCoord a, GridCoord b) {
    require(w.base.contains(a), ErrorKind::OutOfBounds, coord_str(a) + " outside wall base");
    require(w.base.contains(b), ErrorKind::OutOfBounds, coord_str(b) + " outside wall base");
    require(std::abs(a.row - b.row) + std::abs(a.col - b.col) == 1, ErrorKind::Parameter,
            coord_str(a) + "-" + coord_str(b) + " is not a grid edge");
    if (!wall_contains_vertex(w, a) || !wall_contains_vertex(w, b)) return false;
    if (a.row == b.row) return true;
    const i64 z = std::min(a.row, b.row);
    return pmod(z - a.col, 2) == 0;
}

// ---- segments and paths ----------------------------------------------------------

i64 segment_distance(const Segment& s, const Segment& t) {
    const i64 gap_r = std::max<i64>(0, std::max(s.row_lo(), t.row_lo()) - std::min(s.row_hi(), t.row_hi()));
    const i64 gap_c = std::max<i64>(0, std::max(s.col_lo(), t.col_lo()) - std::min(s.col_hi(), t.col_hi()));
    return gap_r + gap_c;
}

std::vector<Segment> segments_of(const GridPath& p) {
    std::vector<Segment> out;
    if (p.waypoints.size() == 1) out.push_back({p.waypoints[0], p.waypoints[0]});
    for (std::size_t i = 1; i < p.waypoints.size(); ++i) out.push_back({p.waypoints[i - 1], p.waypoints[i]});
    return out;
}

GridPath compress(const std::vector<GridCoord>& pts) {
    GridPath out;
    for (const GridCoord& v : pts) {
        if (!out.waypoints.empty() && out.waypoints.back() == v) continue;
        if (out.waypoints.size() >= 2) {
            const GridCoord a = out.waypoints[out.waypoints.size() - 2];
            const GridCoord b = out.waypoints.back();
            const bool same_row = a.row == b.row && b.row == v.row;
            const bool same_col = a.col == b.col && b.col == v.col;
            // Drop b only when it lies strictly between a and v on their line.
            if ((same_row && sign(b.col - a.col) == sign(v.col - b.col)) ||
                (same_col && sign(b.row - a.row) == sign(v.row - b.row))) {
                out.waypoints.back() = v;
                continue;
            }
        }
        out.waypoints.push_back(v);
    }
    for (std::size_t i = 1; i < out.waypoints.size(); ++i) {
        const GridCoord a = out.waypoints[i - 1], b = out.waypoints[i];
        require(a.row == b.row || a.col == b.col, ErrorKind::Contract,
                "waypoints " + coord_str(a) + " and " + coord_str(b) + " are not axis-aligned");
    }
    return out;
}

std::vector<GridCoord> expand(const GridPath& p, i64 max_vertices) {
    require(p.length() + 1 <= max_vertices, ErrorKind::Capacity,
            "path with " + std::to_string(p.length() + 1) + " vertices is too long to expand");
    std::vector<GridCoord> out;
    out.reserve(static_cast<std::size_t>(p.length() + 1));
    if (p.waypoints.empty()) return out;
    out.push_back(p.waypoints[0]);
    for (std::size_t i = 1; i < p.waypoints.size(); ++i) {
        GridCoord cur = p.waypoints[i - 1];
        const GridCoord nxt = p.waypoints[i];
        require(cur.row == nxt.row || cur.col == nxt.col, ErrorKind::Contract, "path is not axis-aligned");
        const i64 dr = sign(nxt.row - cur.row), dc = sign(nxt.col - cur.col);
        while (!(cur == nxt)) {
            cur.row += dr;
            cur.col += dc;
            out.push_back(cur);
        }
    }
    return out;
}

bool is_valid_path(const GridPath& p, const GridSpec& g, std::string* why) {
    if (p.waypoints.empty()) {
        set_why(why, "empty path");
        return false;
    }
    for (const GridCoord& v : p.waypoints) {
        if (!g.contains(v)) {
            set_why(why, coord_str(v) + " outside grid");
            return false;
        }
    }
    for (std::size_t i = 1; i < p.waypoints.size(); ++i) {
        const GridCoord a = p.waypoints[i - 1], b = p.waypoints[i];
        if (a == b || (a.row != b.row && a.col != b.col)) {
            set_why(why, "step " + coord_str(a) + " -> " + coord_str(b) + " is not an axis-aligned move");
            return false;
        }
    }
    const std::vector<Segment> segs = segments_of(p);
    // Simplicity: pairwise segment tests cost k^2; a path with many short
    // segments (a wall zigzag) is cheaper to check vertex by vertex.
    const double k = static_cast<double>(segs.size());
    if (static_cast<double>(p.length()) < k * k / 4) {
        std::unordered_set<GridCoord, CoordHash> seen;
        for (GridCoord v : expand(p)) {
            if (!seen.insert(v).second) {
                set_why(why, "path revisits " + coord_str(v));
                return false;
            }
        }
        return true;
    }
    for (std::size_t i = 0; i < segs.size(); ++i) {
        for (std::size_t j = i + 1; j < segs.size(); ++j) {
            if (j == i + 1) {
                // Consecutive segments share exactly their joint; a reversal
                // along the same line would overlap.
                const Segment& s = segs[i];
                const Segment& t = segs[j];
                const bool s_h = s.a.row == s.b.row, t_h = t.a.row == t.b.row;
                if (s_h == t_h) {
                    const bool reverse = s_h ? sign(s.b.col - s.a.col) != sign(t.b.col - t.a.col)
                                             : sign(s.b.row - s.a.row) != sign(t.b.row - t.a.row);
                    if (reverse) {
                        set_why(why, "path reverses at " + coord_str(s.b));
                        return false;
                    }
                }
                continue;
            }
            if (segment_distance(segs[i], segs[j]) == 0) {
                set_why(why, "path revisits a vertex near " + coord_str(segs[j].a));
                return false;
            }
        }
    }
    return true;
}

bool is_valid_wall_path(const GridPath& p, const WallSpec& w, std::string* why) {
    validate_wall(w);
    if (!is_valid_path(p, w.base, why)) return false;
    for (const GridCoord& v : p.waypoints) {
        if (!wall_contains_vertex(w, v)) {
            set_why(why, coord_str(v) + " is not a wall vertex");
            return false;
        }
    }
    for (const Segment& s : segments_of(p)) {
        if (s.a.col == s.b.col && s.a.row != s.b.row) {
            if (s.row_hi() - s.row_lo() != 1 || pmod(s.row_lo() - s.a.col, 2) != 0) {
                set_why(why, "vertical run " + coord_str(s.a) + " -> " + coord_str(s.b) + " uses a deleted edge");
                return false;
            }
        }
    }
    return true;
}

namespace {

struct TaggedSeg {
    Segment seg;
    std::size_t path;
};

/// Calls visit(x, y) for every pair of segments from different paths whose
/// column ranges come within `reach` of each other.
template <class Visit>
bool sweep_pairs(const PathSet& ps, i64 reach, Visit visit) {
    std::vector<TaggedSeg> all;
    for (std::size_t p = 0; p < ps.paths.size(); ++p)
        for (const Segment& s : segments_of(ps.paths[p])) all.push_back({s, p});
    std::sort(all.begin(), all.end(),
              [](const TaggedSeg& x, const TaggedSeg& y) { return x.seg.col_lo() < y.seg.col_lo(); });
    for (std::size_t i = 0; i < all.size(); ++i) {
        for (std::size_t j = i + 1; j < all.size() && all[j].seg.col_lo() <= all[i].seg.col_hi() + reach; ++j) {
            if (all[i].path == all[j].path) continue;
            if (!visit(all[i], all[j])) return false;
        }
    }
    return true;
}

}  // namespace

bool verify_node_disjoint(const PathSet& ps, std::string* why) {
    return sweep_pairs(ps, 0, [&](const TaggedSeg& x, const TaggedSeg& y) {
        if (segment_distance(x.seg, y.seg) == 0) {
            set_why(why, "paths " + std::to_string(x.path) + " and " + std::to_string(y.path) + " share a vertex");
            return false;
        }
        return true;
    });
}

bool verify_edge_disjoint(const PathSet& ps, std::string* why) {
    return sweep_pairs(ps, 0, [&](const TaggedSeg& x, const TaggedSeg& y) {
        const bool xh = x.seg.a.row == x.seg.b.row && x.seg.a.col != x.seg.b.col;
        const bool yh = y.seg.a.row == y.seg.b.row && y.seg.a.col != y.seg.b.col;
        const bool xv = x.seg.a.col == x.seg.b.col && x.seg.a.row != x.seg.b.row;
        const bool yv = y.seg.a.col == y.seg.b.col && y.seg.a.row != y.seg.b.row;
        i64 overlap = -1;
        if (xh && yh && x.seg.a.row == y.seg.a.row)
            overlap = std::min(x.seg.col_hi(), y.seg.col_hi()) - std::max(x.seg.col_lo(), y.seg.col_lo());
        if (xv && yv && x.seg.a.col == y.seg.a.col)
            overlap = std::min(x.seg.row_hi(), y.seg.row_hi()) - std::max(x.seg.row_lo(), y.seg.row_lo());
        if (overlap >= 1) {
            set_why(why, "paths " + std::to_string(x.path) + " and " + std::to_string(y.path) + " share an edge");
            return false;
        }
        return true;
    });
}

bool verify_spaced_out(const PathSet& ps, const GridSpec& g, std::string* why) {
    for (std::size_t p = 0; p < ps.paths.size(); ++p) {
        const GridPath& path = ps.paths[p];
        if (!is_valid_path(path, g, why)) return false;
        const GridCoord s = path.front(), t = path.back();
        for (const Segment& seg : segments_of(path)) {
            // Intersect the segment with each boundary line; every touching
            // vertex must be an endpoint of the path.
            struct Line { bool horizontal; i64 at; };
            const Line lines[4] = {{true, 1}, {true, g.height}, {false, 1}, {false, g.length}};
            for (const Line& line : lines) {
                i64 lo, hi;
                if (line.horizontal) {
                    if (seg.row_lo() > line.at || seg.row_hi() < line.at) continue;
                    lo = seg.col_lo();
                    hi = seg.col_hi();
                    if (seg.a.row != seg.b.row) lo = hi = seg.a.col;
                } else {
                    if (seg.col_lo() > line.at || seg.col_hi() < line.at) continue;
                    lo = seg.row_lo();
                    hi = seg.row_hi();
                    if (seg.a.col != seg.b.col) lo = hi = seg.a.row;
                }
                for (i64 x = lo; x <= hi; ++x) {
                    const GridCoord v = line.horizontal ? GridCoord{line.at, x} : GridCoord{x, line.at};
                    if (!(v == s) && !(v == t)) {
                        set_why(why, "path " + std::to_string(p) + " touches the boundary at " + coord_str(v));
                        return false;
                    }
                    if (x - lo >= 2) break;  // more than two touching vertices cannot all be endpoints
                }
            }
        }
    }
    return sweep_pairs(ps, 1, [&](const TaggedSeg& x, const TaggedSeg& y) {
        if (segment_distance(x.seg, y.seg) < 2) {
            set_why(why, "paths " + std::to_string(x.path) + " and " + std::to_string(y.path) +
                             " come within distance " + std::to_string(segment_distance(x.seg, y.seg)));
            return false;
        }
        return true;
    });
}

// ---- snakes ----------------------------------------------------------------

namespace {

enum class Side { N, S, E, W };

/// Shared boundary segment between consecutive corridors, expressed as the
/// side of each corridor it lies on and the vertex range along that side.
struct Junction {
    Side first_side, second_side;
    bool horizontal;  // the shared line is a row
    i64 line;         // its row or column
    i64 lo, hi;       // range along the line
};

std::optional<Junction> junction_of(const Corridor& a, const Corridor& b) {
    auto overlap = [](i64 l1, i64 h1, i64 l2, i64 h2) { return std::pair{std::max(l1, l2), std::min(h1, h2)}; };
    const auto [cl, ch] = overlap(a.col_lo, a.col_hi, b.col_lo, b.col_hi);
    const auto [rl, rh] = overlap(a.row_lo, a.row_hi, b.row_lo, b.row_hi);
    if (a.row_lo == b.row_hi && cl <= ch) return Junction{Side::N, Side::S, true, a.row_lo, cl, ch};
    if (a.row_hi == b.row_lo && cl <= ch) return Junction{Side::S, Side::N, true, a.row_hi, cl, ch};
    if (a.col_hi == b.col_lo && rl <= rh) return Junction{Side::E, Side::W, false, a.col_hi, rl, rh};
    if (a.col_lo == b.col_hi && rl <= rh) return Junction{Side::W, Side::E, false, a.col_lo, rl, rh};
    return std::nullopt;
}

bool corridors_touch(const Corridor& a, const Corridor& b) {
    return std::max(a.row_lo, b.row_lo) <= std::min(a.row_hi, b.row_hi) &&
           std::max(a.col_lo, b.col_lo) <= std::min(a.col_hi, b.col_hi);
}

bool on_side(const Corridor& c, Side s, GridCoord v) {
    if (!c.contains(v)) return false;
    switch (s) {
        case Side::N: return v.row == c.row_lo;
        case Side::S: return v.row == c.row_hi;
        case Side::W: return v.col == c.col_lo;
        case Side::E: return v.col == c.col_hi;
    }
    return false;
}

/// Rotation of a corridor into a local frame (0-based rows and columns) in
/// which the entry side is the bottom row. Rotations keep orientation, so a
/// non-crossing routing in the local frame is non-crossing globally.
struct Frame {
    Corridor c;
    Side entry;
    i64 h = 0, w = 0;  // local height and width

    Frame(const Corridor& cor, Side e) : c(cor), entry(e) {
        const bool turned = e == Side::E || e == Side::W;
        h = turned ? c.length() : c.height();
        w = turned ? c.height() : c.length();
    }
    std::pair<i64, i64> local(GridCoord v) const {
        const i64 r = v.row - c.row_lo, q = v.col - c.col_lo;
        switch (entry) {
            case Side::S: return {r, q};
            case Side::N: return {c.height() - 1 - r, c.length() - 1 - q};
            case Side::E: return {q, c.height() - 1 - r};
            case Side::W: return {c.length() - 1 - q, r};
        }
        return {r, q};
    }
    GridCoord global(i64 lr, i64 lc) const {
        i64 r = 0, q = 0;
        switch (entry) {
            case Side::S: r = lr; q = lc; break;
            case Side::N: r = c.height() - 1 - lr; q = c.length() - 1 - lc; break;
            case Side::E: q = lr; r = c.height() - 1 - lc; break;
            case Side::W: q = c.length() - 1 - lr; r = lc; break;
        }
        return {c.row_lo + r, c.col_lo + q};
    }
    /// The local side on which a global side of the corridor lands.
    Side local_side(Side global_side) const {
        GridCoord p, q;
        switch (global_side) {
            case Side::N: p = {c.row_lo, c.col_lo}; q = {c.row_lo, c.col_hi}; break;
            case Side::S: p = {c.row_hi, c.col_lo}; q = {c.row_hi, c.col_hi}; break;
            case Side::W: p = {c.row_lo, c.col_lo}; q = {c.row_hi, c.col_lo}; break;
            case Side::E: p = {c.row_lo, c.col_hi}; q = {c.row_hi, c.col_hi}; break;
        }
        const auto [pr, pc] = local(p);
        const auto [qr, qc] = local(q);
        if (pr == 0 && qr == 0 && pc != qc) return Side::N;
        if (pr == h - 1 && qr == h - 1 && pc != qc) return Side::S;
        if (pc == 0 && qc == 0) return Side::W;
        if (pc == w - 1 && qc == w - 1) return Side::E;
        return pr == 0 ? Side::N : Side::S;
    }
};

using LocalPt = std::pair<i64, i64>;

/// Comb routing inside one corridor in its local frame. Entries lie on the
/// bottom row, exits on `exit_side`. Returns, for each entry, the local
/// polyline and the index of the exit it reaches.
std::vector<std::pair<std::vector<LocalPt>, std::size_t>> comb(const Frame& f, Side exit_side,
                                                               const std::vector<LocalPt>& entries,
                                                               const std::vector<LocalPt>& exits) {
    const std::size_t k = entries.size();
    const i64 h = f.h;
    std::vector<std::size_t> ei(k), xi(k);
    std::iota(ei.begin(), ei.end(), 0);
    std::iota(xi.begin(), xi.end(), 0);
    std::sort(ei.begin(), ei.end(), [&](std::size_t a, std::size_t b) { return entries[a].second < entries[b].second; });
    std::vector<std::pair<std::vector<LocalPt>, std::size_t>> out(k);

    switch (exit_side) {
        case Side::N: {
            std::sort(xi.begin(), xi.end(), [&](std::size_t a, std::size_t b) { return exits[a].second < exits[b].second; });
            std::vector<std::size_t> right, left;
            for (std::size_t t = 0; t < k; ++t) {
                const i64 e = entries[ei[t]].second, x = exits[xi[t]].second;
                if (x > e) right.push_back(t);
                if (x < e) left.push_back(t);
            }
            std::reverse(left.begin(), left.end());
            require(static_cast<i64>(std::max(right.size(), left.size())) <= h - 2, ErrorKind::Capacity,
                    "corridor too short for the jog rows");
            std::vector<i64> jog(k, -1);
            for (std::size_t u = 0; u < right.size(); ++u) jog[right[u]] = h - 1 - static_cast<i64>(right.size()) + static_cast<i64>(u);
            for (std::size_t u = 0; u < left.size(); ++u) jog[left[u]] = h - 1 - static_cast<i64>(left.size()) + static_cast<i64>(u);
            for (std::size_t t = 0; t < k; ++t) {
                const i64 e = entries[ei[t]].second, x = exits[xi[t]].second;
                std::vector<LocalPt> pl{{h - 1, e}};
                if (jog[t] >= 0) {
                    pl.push_back({jog[t], e});
                    pl.push_back({jog[t], x});
                }
                pl.push_back({0, x});
                out[ei[t]] = {pl, xi[t]};
            }
            break;
        }
        case Side::E:
        case Side::W: {
            // Nested L shapes: for an east exit the leftmost entry takes the
            // topmost exit, for a west exit the bottommost.
            const bool east = exit_side == Side::E;
            std::sort(xi.begin(), xi.end(), [&](std::size_t a, std::size_t b) {
                return east ? exits[a].first < exits[b].first : exits[a].first > exits[b].first;
            });
            for (std::size_t t = 0; t < k; ++t) {
                const i64 e = entries[ei[t]].second;
                const LocalPt x = exits[xi[t]];
                out[ei[t]] = {{{h - 1, e}, {x.first, e}, x}, xi[t]};
            }
            break;
        }
        case Side::S: {
            // U-turn: entries and exits share the bottom row and must form
            // two separate blocks; strands are nested spans.
            i64 emin = INT64_MAX, emax = INT64_MIN, xmin = INT64_MAX, xmax = INT64_MIN;
            for (const auto& e : entries) emin = std::min(emin, e.second), emax = std::max(emax, e.second);
            for (const auto& x : exits) xmin = std::min(xmin, x.second), xmax = std::max(xmax, x.second);
            const bool exits_right = emax < xmin;
            require(exits_right || xmax < emin, ErrorKind::Placement, "entries and exits interleave on a U-turn");
            // Innermost pair first: entries nearest the exits and vice versa.
            std::sort(ei.begin(), ei.end(), [&](std::size_t a, std::size_t b) {
                return exits_right ? entries[a].second > entries[b].second : entries[a].second < entries[b].second;
            });
            std::sort(xi.begin(), xi.end(), [&](std::size_t a, std::size_t b) {
                return exits_right ? exits[a].second < exits[b].second : exits[a].second > exits[b].second;
            });
            require(static_cast<i64>(k) <= h - 2, ErrorKind::Capacity, "corridor too short for a U-turn");
            for (std::size_t t = 0; t < k; ++t) {
                const i64 e = entries[ei[t]].second, x = exits[xi[t]].second;
                const i64 j = h - 2 - static_cast<i64>(t);
                out[ei[t]] = {{{h - 1, e}, {j, e}, {j, x}, {h - 1, x}}, xi[t]};
            }
            break;
        }
    }
    return out;
}

/// Side of corridor c containing every vertex of pts, avoiding `avoid` when
/// another side also qualifies.
Side side_holding(const Corridor& c, const std::vector<GridCoord>& pts, std::optional<Side> avoid, const char* what) {
    std::vector<Side> ok;
    for (Side s : {Side::S, Side::N, Side::W, Side::E}) {
        bool all = true;
        for (const GridCoord& v : pts) all = all && on_side(c, s, v);
        if (all) ok.push_back(s);
    }
    require(!ok.empty(), ErrorKind::Placement, std::string(what) + " vertices are not on one boundary side of their corridor");
    for (Side s : ok)
        if (!avoid || s != *avoid) return s;
    return ok.front();
}

/// Travel-order key of a boundary vertex: left to right for a strand that
/// enters (or leaves) the corridor through the given side in its local frame.
i64 travel_key(const Frame& f, Side local_exit, GridCoord v, bool entering) {
    const auto [r, c] = f.local(v);
    if (entering) return c;
    switch (local_exit) {
        case Side::N: return c;
        case Side::E: return r;
        case Side::W: return -r;
        case Side::S: return -c;
    }
    return c;
}

struct SnakePlan {
    std::vector<Side> entry, exit;  // per corridor, global sides
    std::vector<Junction> junctions;
};

SnakePlan plan_snake(const Snake& s, const std::vector<GridCoord>& a, const std::vector<GridCoord>& a_prime) {
    validate_snake(s);
    SnakePlan plan;
    const std::size_t z = s.corridors.size();
    for (std::size_t i = 0; i + 1 < z; ++i) plan.junctions.push_back(*junction_of(s.corridors[i], s.corridors[i + 1]));
    plan.entry.resize(z);
    plan.exit.resize(z);
    plan.entry[0] = side_holding(s.corridors[0], a, z > 1 ? std::optional(plan.junctions[0].first_side) : std::nullopt, "entry");
    for (std::size_t i = 0; i + 1 < z; ++i) {
        plan.exit[i] = plan.junctions[i].first_side;
        plan.entry[i + 1] = plan.junctions[i].second_side;
    }
    plan.exit[z - 1] = side_holding(s.corridors[z - 1], a_prime,
                                    z > 1 ? std::optional(plan.junctions[z - 2].second_side) : std::optional(plan.entry[0]),
                                    "exit");
    return plan;
}

}  // namespace

void validate_snake(const Snake& s) {
    require(!s.corridors.empty(), ErrorKind::Parameter, "snake has no corridors");
    for (const Corridor& c : s.corridors)
        require(c.row_lo >= 1 && c.col_lo >= 1 && c.row_lo <= c.row_hi && c.col_lo <= c.col_hi, ErrorKind::Parameter,
                "corridor with an empty or out-of-range interval");
    for (std::size_t i = 0; i < s.corridors.size(); ++i) {
        for (std::size_t j = i + 1; j < s.corridors.size(); ++j) {
            const Corridor &a = s.corridors[i], &b = s.corridors[j];
            if (j == i + 1) {
                require(junction_of(a, b).has_value(), ErrorKind::Parameter,
                        "consecutive corridors " + std::to_string(i) + " and " + std::to_string(j) + " do not share a side");
                const i64 ro = std::min(a.row_hi, b.row_hi) - std::max(a.row_lo, b.row_lo);
                const i64 co = std::min(a.col_hi, b.col_hi) - std::max(a.col_lo, b.col_lo);
                require(ro <= 0 || co <= 0, ErrorKind::Parameter, "consecutive corridors overlap internally");
            } else {
                require(!corridors_touch(a, b), ErrorKind::Parameter,
                        "non-consecutive corridors " + std::to_string(i) + " and " + std::to_string(j) + " touch");
            }
        }
    }
}

i64 snake_width(const Snake& s) {
    validate_snake(s);
    i64 w = INT64_MAX;
    for (const Corridor& c : s.corridors) w = std::min(w, c.width());
    for (std::size_t i = 0; i + 1 < s.corridors.size(); ++i) {
        const Junction j = *junction_of(s.corridors[i], s.corridors[i + 1]);
        w = std::min(w, j.hi - j.lo + 1);
    }
    return w;
}

PathSet snake_route(const Snake& s, const std::vector<GridCoord>& a, const std::vector<GridCoord>& a_prime) {
    require(a.size() == a_prime.size(), ErrorKind::Parameter, "|A| and |A'| differ");
    const i64 width = snake_width(s);
    const std::size_t k = a.size();
    require(static_cast<i64>(k) <= width - 2, ErrorKind::Capacity,
            "|A| = " + std::to_string(k) + " exceeds snake width - 2 = " + std::to_string(width - 2));
    PathSet out;
    if (k == 0) return out;
    for (const auto* list : {&a, &a_prime}) {
        std::vector<GridCoord> sorted = *list;
        std::sort(sorted.begin(), sorted.end());
        require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(), ErrorKind::Placement,
                "terminal list contains a repeated vertex");
    }
    const SnakePlan plan = plan_snake(s, a, a_prime);
    const std::size_t z = s.corridors.size();

    std::vector<std::vector<GridCoord>> strands(k);
    std::vector<GridCoord> current = a;  // current end of each strand
    for (std::size_t i = 0; i < k; ++i) strands[i].push_back(a[i]);

    for (std::size_t ci = 0; ci < z; ++ci) {
        const Frame f(s.corridors[ci], plan.entry[ci]);
        std::vector<GridCoord> exits;
        if (ci + 1 < z) {
            // k consecutive hand-off vertices centred on the shared segment,
            // keeping at least one vertex of margin at either end.
            const Junction& j = plan.junctions[ci];
            const i64 n = j.hi - j.lo + 1;
            const i64 start = j.lo + (n - static_cast<i64>(k)) / 2;
            require(start >= j.lo + 1 && start + static_cast<i64>(k) - 1 <= j.hi - 1, ErrorKind::Capacity,
                    "shared segment too short for the hand-off");
            for (std::size_t t = 0; t < k; ++t) {
                const i64 x = start + static_cast<i64>(t);
                exits.push_back(j.horizontal ? GridCoord{j.line, x} : GridCoord{x, j.line});
            }
        } else {
            exits = a_prime;
        }
        const Side local_exit = f.local_side(plan.exit[ci]);
        std::vector<LocalPt> le, lx;
        for (const GridCoord& v : current) {
            le.push_back(f.local(v));
            require(le.back().first == f.h - 1, ErrorKind::Placement, "entry vertex not on the entry side");
        }
        for (const GridCoord& v : exits) lx.push_back(f.local(v));
        const auto routed = comb(f, local_exit, le, lx);
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t p = 1; p < routed[i].first.size(); ++p) {
                const GridCoord v = f.global(routed[i].first[p].first, routed[i].first[p].second);
                // Consecutive points of a rectangle span a segment inside it.
                require(f.c.contains(v), ErrorKind::Contract, "snake strand leaves its corridor");
                strands[i].push_back(v);
            }
            current[i] = exits[routed[i].second];
            require(strands[i].back() == current[i], ErrorKind::Contract, "strand does not reach its exit");
        }
    }

    for (std::size_t i = 0; i < k; ++i) {
        out.paths.push_back(compress(strands[i]));
        out.pairing.push_back(std::to_string(i));
    }
    // Post-conditions: simple paths, pairwise disjoint (containment is
    // checked per corridor above).
    GridSpec ambient{0, 0};
    for (const Corridor& c : s.corridors) {
        ambient.height = std::max(ambient.height, c.row_hi);
        ambient.length = std::max(ambient.length, c.col_hi);
    }
    std::string why;
    for (const GridPath& p : out.paths)
        require(is_valid_path(p, ambient, &why), ErrorKind::Contract, "snake strand invalid: " + why);
    require(verify_node_disjoint(out, &why), ErrorKind::Contract, "snake strands not disjoint: " + why);
    return out;
}

PathSet snake_route_spaced(const Snake& s, const std::vector<GridCoord>& b, const std::vector<GridCoord>& b_prime) {
    require(b.size() == b_prime.size(), ErrorKind::Parameter, "|B| and |B'| differ");
    const std::size_t k = b.size();
    for (const auto* list : {&b, &b_prime})
        for (std::size_t i = 0; i < list->size(); ++i)
            for (std::size_t j = i + 1; j < list->size(); ++j)
                require(std::abs((*list)[i].row - (*list)[j].row) + std::abs((*list)[i].col - (*list)[j].col) >= 2,
                        ErrorKind::Spacing, "terminals closer than distance 2");
    const i64 width = snake_width(s);
    require(static_cast<i64>(k) <= (width - 1) / 2, ErrorKind::Capacity,
            "|B| = " + std::to_string(k) + " exceeds floor((width - 1) / 2) = " + std::to_string((width - 1) / 2));
    PathSet out;
    if (k == 0) return out;

    const SnakePlan plan = plan_snake(s, b, b_prime);
    const Frame first(s.corridors.front(), plan.entry.front());
    const Frame last(s.corridors.back(), plan.entry.back());
    const Side last_exit = last.local_side(plan.exit.back());

    auto ordered = [](std::vector<GridCoord> v, auto key) {
        std::sort(v.begin(), v.end(), [&](GridCoord x, GridCoord y) { return key(x) < key(y); });
        return v;
    };
    const std::vector<GridCoord> bs = ordered(b, [&](GridCoord v) { return travel_key(first, Side::N, v, true); });
    const std::vector<GridCoord> bps = ordered(b_prime, [&](GridCoord v) { return travel_key(last, last_exit, v, false); });

    // Interleave one auxiliary terminal between consecutive terminals; the
    // auxiliary strands keep the real ones at distance >= 2.
    auto interleave = [](const std::vector<GridCoord>& v) {
        std::vector<GridCoord> all;
        for (std::size_t i = 0; i < v.size(); ++i) {
            all.push_back(v[i]);
            if (i + 1 < v.size()) {
                const GridCoord p = v[i], q = v[i + 1];
                all.push_back({p.row + sign(q.row - p.row), p.col + sign(q.col - p.col)});
            }
        }
        return all;
    };
    const std::vector<GridCoord> aa = interleave(bs), ap = interleave(bps);
    const PathSet full = snake_route(s, aa, ap);
    for (std::size_t i = 0; i < k; ++i) {
        const GridPath& p = full.paths[2 * i];
        require(p.back() == bps[i], ErrorKind::Contract, "spaced snake routing is not order-preserving");
        out.paths.push_back(p);
        out.pairing.push_back(std::to_string(i));
    }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            for (const Segment& x : segments_of(out.paths[i]))
                for (const Segment& y : segments_of(out.paths[j]))
                    require(segment_distance(x, y) >= 2, ErrorKind::Contract, "spaced snake strands too close");
    return out;
}

// ---- grid to wall ----------------------------------------------------------

PathSet grid_routing_to_wall(const PathSet& ps, const WallSpec& w) {
    validate_wall(w);
    std::string why;
    require(verify_spaced_out(ps, w.base, &why), ErrorKind::Contract, "input routing is not spaced-out: " + why);
    PathSet out;
    out.pairing = ps.pairing;
    for (const GridPath& p : ps.paths) {
        const std::vector<GridCoord> verts = expand(p);
        std::vector<GridCoord> walk;
        std::unordered_map<GridCoord, std::size_t, CoordHash> where;
        auto key = [](GridCoord v) { return v; };
        auto visit = [&](GridCoord v) {
            // Chronological loop erasure: returning to a visited vertex cuts
            // the loop that closed there.
            auto it = where.find(key(v));
            if (it != where.end()) {
                while (walk.size() > it->second + 1) {
                    where.erase(key(walk.back()));
                    walk.pop_back();
                }
                return;
            }
            where[key(v)] = walk.size();
            walk.push_back(v);
        };
        visit(verts.front());
        for (std::size_t i = 1; i < verts.size(); ++i) {
            const GridCoord u = verts[i - 1], v = verts[i];
            if (u.col == v.col && pmod(std::min(u.row, v.row) - u.col, 2) != 0) {
                require(u.col + 1 <= w.base.length, ErrorKind::Contract, "detour column outside the wall");
                visit({u.row, u.col + 1});
                visit({v.row, v.col + 1});
            }
            visit(v);
        }
        GridPath wp = compress(walk);
        require(is_valid_wall_path(wp, w, &why), ErrorKind::Contract, "converted path invalid in wall: " + why);
        require(wp.front() == p.front() && wp.back() == p.back(), ErrorKind::Contract, "conversion moved an endpoint");
        out.paths.push_back(std::move(wp));
    }
    require(verify_node_disjoint(out, &why), ErrorKind::Contract, "wall routing not node-disjoint: " + why);
    return out;
}

std::vector<std::vector<std::size_t>> conflict_digraph(const PathSet& ps) {
    const std::size_t n = ps.paths.size();
    std::vector<std::vector<Segment>> segs(n);
    for (std::size_t i = 0; i < n; ++i) segs[i] = segments_of(ps.paths[i]);
    std::vector<std::vector<std::size_t>> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (GridCoord x : {ps.paths[i].front(), ps.paths[i].back()}) {
            const Segment pt{x, x};
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                for (const Segment& s : segs[j]) {
                    if (segment_distance(pt, s) == 0) {
                        out[i].push_back(j);
                        break;
                    }
                }
            }
        }
        std::sort(out[i].begin(), out[i].end());
        out[i].erase(std::unique(out[i].begin(), out[i].end()), out[i].end());
    }
    return out;
}

PathSet edp_to_ndp_wall(const PathSet& ps, const WallSpec& w) {
    validate_wall(w);
    std::string why;
    for (const GridPath& p : ps.paths)
        require(is_valid_wall_path(p, w, &why), ErrorKind::Contract, "input path invalid in wall: " + why);
    require(verify_edge_disjoint(ps, &why), ErrorKind::Contract, "input routing not edge-disjoint: " + why);

    // In a graph of maximum degree 3, edge-disjoint paths can only share a
    // vertex that is an endpoint of one of them, so conflicts are exactly the
    // arcs of the conflict digraph.
    const std::size_t n = ps.paths.size();
    const auto arcs = conflict_digraph(ps);
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j : arcs[i]) adj[i].push_back(j), adj[j].push_back(i);
    for (auto& l : adj) {
        std::sort(l.begin(), l.end());
        l.erase(std::unique(l.begin(), l.end()), l.end());
    }
    // Greedy independent set: repeatedly take a minimum-degree path and drop
    // its neighbours.
    std::vector<char> alive(n, 1);
    std::vector<std::size_t> deg(n);
    for (std::size_t i = 0; i < n; ++i) deg[i] = adj[i].size();
    std::vector<std::size_t> chosen;
    for (;;) {
        std::size_t best = n;
        for (std::size_t i = 0; i < n; ++i)
            if (alive[i] && (best == n || deg[i] < deg[best])) best = i;
        if (best == n) break;
        chosen.push_back(best);
        std::vector<std::size_t> removed{best};
        for (std::size_t j : adj[best])
            if (alive[j]) removed.push_back(j);
        for (std::size_t r : removed) alive[r] = 0;
        for (std::size_t r : removed)
            for (std::size_t j : adj[r])
                if (alive[j]) --deg[j];
    }
    std::sort(chosen.begin(), chosen.end());
    PathSet sel;
    for (std::size_t i : chosen) {
        sel.paths.push_back(ps.paths[i]);
        sel.pairing.push_back(i < ps.pairing.size() ? ps.pairing[i] : std::to_string(i));
    }
    require(verify_node_disjoint(sel, &why), ErrorKind::Contract, "selected wall paths not node-disjoint: " + why);
    return sel;
}

}  // namespace ndp
