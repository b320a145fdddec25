#pragma once
// Planar graphs: the planarization of a drawing by vertex expansion (each
// vertex becomes a small grid whose top row carries one portal per incident
// edge, each crossing becomes a vertex) and a weighted planar separator.

#include <utility>
#include <vector>

#include "ndp/common.hpp"
#include "ndp/drawing.hpp"

namespace ndp {

/// Undirected simple graph on vertices 0..n-1.
struct SimpleGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<int>> adjacency() const;
    int max_degree() const;
};

/// Boyer-Myrvold planarity test.
bool is_planar(const SimpleGraph& g);

struct PlanarizedGraph {
    SimpleGraph graph;
    std::vector<i64> weight;                       // 1 on portals, 0 elsewhere
    std::vector<int> owner;                        // original vertex of a grid vertex, -1 for crossings
    std::vector<std::vector<int>> grid_vertices;   // Q_v per original vertex (row-major, d_v x d_v)
    std::vector<std::vector<int>> portals;         // top row of Q_v, clockwise order
    std::vector<std::vector<int>> special_chain;   // per original edge: portal, crossing vertices, portal
    std::vector<int> portal_edge;                  // original edge attached to each vertex (-1 if none)
    std::size_t crossing_vertices = 0;
};

/// Expands every vertex of the drawn graph into a d_v x d_v grid with
/// portals ordered by the clockwise order of the incident curves, joins
/// matched portals by special edges and subdivides them at crossings.
/// Requires no isolated vertex; the result is checked to be planar with
/// maximum degree 4.
PlanarizedGraph expand_to_planar(const Drawing& d);

/// Partition (A, X, B) of the vertices: side[v] is 0 (A), 1 (X) or 2 (B).
struct Separator {
    std::vector<int> side;
    std::size_t separator_size() const;
    i64 weight_of(const std::vector<i64>& w, int s) const;
};

/// Weighted planar separator: no edge joins A and B, each side weighs at
/// most 2W/3, and |X| <= 2 sqrt(2n). Throws a contract error on non-planar
/// input or if the size bound cannot be met.
Separator planar_separator(const SimpleGraph& g, const std::vector<i64>& weight);

/// Independent check of the three separator properties.
Report check_separator(const SimpleGraph& g, const std::vector<i64>& weight, const Separator& s);

}  // namespace ndp
