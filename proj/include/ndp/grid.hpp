#pragma once
// Implicit grid and wall graphs. Nothing here materializes a grid: a grid
// is its two dimensions, and a path is a compressed axis-aligned polyline.
// Every geometric predicate works on segments.

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "ndp/common.hpp"

namespace ndp {

/// Vertex v(row, col) of a grid; both indices are 1-based.
struct GridCoord {
    i64 row = 0;
    i64 col = 0;
    friend bool operator==(const GridCoord&, const GridCoord&) = default;
    friend auto operator<=>(const GridCoord&, const GridCoord&) = default;
};

struct GridSpec {
    i64 height = 0;
    i64 length = 0;
    bool contains(GridCoord v) const { return v.row >= 1 && v.row <= height && v.col >= 1 && v.col <= length; }
    bool on_boundary(GridCoord v) const {
        return v.row == 1 || v.row == height || v.col == 1 || v.col == length;
    }
};

/// Wall obtained from a base grid with even length by deleting every
/// vertical edge e^j_z with z != j (mod 2) and then the degree-1 vertices.
struct WallSpec {
    GridSpec base;
};

/// Axis-aligned sub-rectangle [row_lo, row_hi] x [col_lo, col_hi].
struct Corridor {
    i64 row_lo = 0, row_hi = 0;
    i64 col_lo = 0, col_hi = 0;
    i64 height() const { return row_hi - row_lo + 1; }
    i64 length() const { return col_hi - col_lo + 1; }
    i64 width() const { return std::min(height(), length()); }
    bool contains(GridCoord v) const {
        return v.row >= row_lo && v.row <= row_hi && v.col >= col_lo && v.col <= col_hi;
    }
};

/// Sequence of corridors in which consecutive corridors share a boundary
/// line segment and non-consecutive corridors do not touch.
struct Snake {
    std::vector<Corridor> corridors;
};

/// Compressed path: consecutive waypoints share a row or a column.
struct GridPath {
    std::vector<GridCoord> waypoints;
    GridCoord front() const { return waypoints.front(); }
    GridCoord back() const { return waypoints.back(); }
    /// Number of edges of the expanded path.
    i64 length() const;
};

/// A routing: one path per demand pair, with the pair id alongside.
struct PathSet {
    std::vector<GridPath> paths;
    std::vector<std::string> pairing;
    std::size_t size() const { return paths.size(); }
};

// ---- distances and predicates ----------------------------------------------

/// L1 distance between two vertices of g (the shortest-path distance).
i64 grid_distance(const GridSpec& g, GridCoord u, GridCoord v);

/// True iff the wall keeps vertex v of its base grid.
bool wall_contains_vertex(const WallSpec& w, GridCoord v);

/// True iff the base-grid edge {a, b} survives in the wall.
bool wall_contains_edge(const WallSpec& w, GridCoord a, GridCoord b);

/// Checks the wall specification itself (even length, height >= 2).
void validate_wall(const WallSpec& w);

/// Axis-aligned segment, endpoints inclusive.
struct Segment {
    GridCoord a, b;
    i64 row_lo() const { return std::min(a.row, b.row); }
    i64 row_hi() const { return std::max(a.row, b.row); }
    i64 col_lo() const { return std::min(a.col, b.col); }
    i64 col_hi() const { return std::max(a.col, b.col); }
};

/// L1 distance between the vertex sets of two axis-aligned segments.
i64 segment_distance(const Segment& s, const Segment& t);

/// Segments of a path; a single-vertex path yields one degenerate segment.
std::vector<Segment> segments_of(const GridPath& p);

/// Removes repeated and collinear interior waypoints.
GridPath compress(const std::vector<GridCoord>& pts);

/// Expands a path into its full vertex sequence. Refuses paths longer than
/// max_vertices (expansion is a desk-scale oracle, never a production path).
std::vector<GridCoord> expand(const GridPath& p, i64 max_vertices = 50'000'000);

/// Structural validity: axis-aligned steps, inside g, and a simple path.
bool is_valid_path(const GridPath& p, const GridSpec& g, std::string* why = nullptr);

/// Valid path in the wall: valid in the base grid and every edge survives.
bool is_valid_wall_path(const GridPath& p, const WallSpec& w, std::string* why = nullptr);

/// Pairwise vertex-disjointness of the paths, computed on segments.
bool verify_node_disjoint(const PathSet& ps, std::string* why = nullptr);

/// Spaced-out: pairwise vertex distance >= 2 and no path touches the
/// boundary of g except possibly at its endpoints.
bool verify_spaced_out(const PathSet& ps, const GridSpec& g, std::string* why = nullptr);

// ---- snakes ------------------------------------------------------------------

/// Width of a snake: minimum over corridor widths and the lengths of the
/// shared boundary segments between consecutive corridors.
i64 snake_width(const Snake& s);

/// Throws unless s is a well-formed snake.
void validate_snake(const Snake& s);

/// Node-disjoint paths inside s linking every vertex of a (on one boundary
/// side of the first corridor) to a distinct vertex of a_prime (on one side of
/// the last corridor). Path i starts at a[i]. Requires |a| <= width - 2.
PathSet snake_route(const Snake& s, const std::vector<GridCoord>& a, const std::vector<GridCoord>& a_prime);

/// Spaced-out, order-preserving variant. Both lists are ordered left to
/// right with respect to the direction of travel (for a corridor entered
/// from below and left through the top: by increasing column) and the i-th
/// vertex of b is linked to the i-th vertex of b_prime; output path i
/// belongs to that i-th pair. Requires |b| <= floor((width - 1) / 2) and
/// pairwise distance >= 2 inside each list.
PathSet snake_route_spaced(const Snake& s, const std::vector<GridCoord>& b,
                           const std::vector<GridCoord>& b_prime);

// ---- walls -------------------------------------------------------------------

/// Converts a spaced-out grid routing into a node-disjoint wall routing with
/// the same endpoints by detouring around every deleted vertical edge.
PathSet grid_routing_to_wall(const PathSet& ps, const WallSpec& w);

/// Conflict digraph of a routing: arc P -> P' when an endpoint of P lies on P'.
/// Returned as out-neighbour lists (indices into ps).
std::vector<std::vector<std::size_t>> conflict_digraph(const PathSet& ps);

/// Reduces an edge-disjoint wall routing to a node-disjoint one by greedily
/// taking an independent set of the conflict graph (minimum total degree
/// first). Keeps the pairing of the selected paths.
PathSet edp_to_ndp_wall(const PathSet& ps, const WallSpec& w);

/// True iff no two paths share an edge (collinear overlap of length >= 1).
bool verify_edge_disjoint(const PathSet& ps, std::string* why = nullptr);

}  // namespace ndp
