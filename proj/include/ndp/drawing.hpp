#pragma once
// Drawings of graphs in the plane with exact rational geometry, and the
// drawing of a routed subgraph obtained from an NDP routing: every vertex is
// placed inside a cell next to its block and every edge follows the path
// routing its demand pair, joined to the vertex images by straight lines.

#include <string>
#include <vector>

#include "ndp/common.hpp"
#include "ndp/gpwb.hpp"
#include "ndp/grid.hpp"
#include "ndp/reduce_ndp.hpp"

namespace ndp {

/// Point (x/den, y/den) with den > 0. Routed drawings use doubled grid
/// coordinates: vertex v(row, col) sits at (2 col, 2 row), so cell middles
/// have odd coordinates and every vertex image is off the grid lines.
struct QPoint {
    i64 x = 0, y = 0, den = 1;
};

bool same_point(const QPoint& a, const QPoint& b);

/// Sign of the cross product (b - a) x (c - a), computed exactly.
int orientation(const QPoint& a, const QPoint& b, const QPoint& c);

/// Intersection of the closed segments ab and cd: 0 if disjoint, 1 if they
/// meet in exactly one point (stored in *at), 2 if they overlap collinearly.
int segment_intersection(const QPoint& a, const QPoint& b, const QPoint& c, const QPoint& d, QPoint* at);

/// Orders two points lying on the segment from a towards b by their distance from a.
bool before_on_segment(const QPoint& a, const QPoint& b, const QPoint& p, const QPoint& q);

struct DrawnEdge {
    int u = 0, v = 0;
    std::vector<QPoint> curve;  // polyline from the image of u to the image of v
};

/// Intersection of the curves of two edges; seg1/seg2 index the polyline
/// segments of edge1/edge2 holding the point.
struct Crossing {
    int edge1 = 0, edge2 = 0;
    int seg1 = 0, seg2 = 0;
    QPoint at;
};

struct Drawing {
    std::vector<QPoint> points;           // vertex images
    std::vector<DrawnEdge> edges;
    std::vector<Crossing> crossings;
    std::vector<VertexRef> vertex_ref;    // routed drawings: the GPwB vertex of each image
    std::vector<int> edge_ref;            // routed drawings: the GPwB edge (= pair) of each curve

    std::size_t num_vertices() const { return points.size(); }
    std::size_t num_edges() const { return edges.size(); }
    std::vector<int> degrees() const;
    int max_degree() const;
};

/// Independent recount: every pair of segments of different curves is
/// intersected, ignoring shared endpoints at common vertex images. Quadratic
/// in the number of segments; used as an oracle and for small drawings.
std::vector<Crossing> recount_crossings(const Drawing& d);

/// Structural checks of the drawing definition: curves start and end at
/// their endpoint images, no curve passes through another vertex image, no
/// curve meets itself, and no point is shared by three curves.
Report validate_drawing(const Drawing& d);

/// Straight-line drawing with crossings filled in by the recount.
Drawing straight_line_drawing(const std::vector<QPoint>& points, const std::vector<std::pair<int, int>>& edges);

/// Drawing of the subgraph of the GPwB graph formed by `edges` (edge = pair
/// indices), each routed by the path of `routing` carrying its pair id.
/// Crossings are counted per block band rather than by the recount.
Drawing draw_routing(const GpwbInstance& I, const NdpInstance& inst, const PathSet& routing,
                     const std::vector<int>& edges);

/// Per-edge crossing bound of a routed drawing: 2 * c_block * ceil(h log M).
i64 routed_crossing_bound_per_edge(const NdpInstance& inst);

}  // namespace ndp
