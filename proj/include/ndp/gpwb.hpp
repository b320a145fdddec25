#pragma once
// (r,h)-Graph Partitioning with Bundles: instances, bundles, solutions and
// their validation. Vertices are addressed by side and index; the opaque
// string ids are kept alongside for serialization.

#include <string>
#include <vector>

#include "ndp/common.hpp"

namespace ndp {

enum class Part { Left, Right };

/// A vertex of the bipartite graph: side plus index within that side.
struct VertexRef {
    Part side = Part::Left;
    int index = 0;
    friend bool operator==(const VertexRef&, const VertexRef&) = default;
    friend auto operator<=>(const VertexRef&, const VertexRef&) = default;
};

struct GpwbInstance {
    std::vector<std::string> left_ids, right_ids;         // V1, V2
    std::vector<std::pair<int, int>> edges;               // (left index, right index)
    std::vector<std::string> edge_ids;                    // optional labels, parallel to edges
    std::vector<std::vector<int>> groups_left, groups_right;  // partitions of V1 and V2
    std::vector<std::string> group_left_ids, group_right_ids;
    i64 h = 0;
    i64 r = 0;

    std::size_t num_edges() const { return edges.size(); }
    std::size_t num_vertices() const { return left_ids.size() + right_ids.size(); }
};

/// Reverse group index (vertex -> group) for each side.
struct GroupIndex {
    std::vector<int> left_group, right_group;
};
/// Throws a partition error if some vertex is in no group or in two.
GroupIndex index_groups(const GpwbInstance& I);

/// All edges between an anchor vertex and one group on the other side.
struct Bundle {
    VertexRef anchor;
    int opposite_group = 0;
    std::vector<int> edges;
};

/// Bundles of every vertex plus, for each edge, its left- and right-anchored
/// bundle (indices into `bundles`).
struct BundleIndex {
    std::vector<Bundle> bundles;
    std::vector<std::vector<int>> of_left, of_right;  // vertex -> bundle indices
    std::vector<int> left_bundle_of_edge, right_bundle_of_edge;
    int beta(VertexRef v) const {
        return static_cast<int>(v.side == Part::Left ? of_left[v.index].size() : of_right[v.index].size());
    }
};

BundleIndex compute_bundles(const GpwbInstance& I);

/// beta* = sum over left vertices of their bundle counts.
i64 beta_star(const GpwbInstance& I);

struct Report {
    bool ok = true;
    std::vector<std::string> violations;
    void fail(std::string msg) {
        ok = false;
        violations.push_back(std::move(msg));
    }
};

/// Valid iff h = beta*/r exactly, h >= max beta(v), every group has r
/// vertices, no parallel edges and edge endpoints in range.
Report validate_instance(const GpwbInstance& I);

struct GpwbSolution {
    std::vector<std::vector<VertexRef>> clusters;  // W_1..W_r
    std::vector<std::vector<int>> selected;        // E_1..E_r (edge indices)
};

/// Partition of V1 u V2, E_i inside W_i, |E_i| <= h, one edge per bundle per cluster.
Report validate_solution(const GpwbInstance& I, const GpwbSolution& S);
i64 solution_value(const GpwbSolution& S);

/// Perfect: every cluster holds exactly one vertex of every group and |E_i| = h.
/// Throws a contract error if S is infeasible.
bool is_perfect(const GpwbInstance& I, const GpwbSolution& S);

/// Exhaustive optimum for tiny instances (<= 10 vertices); an oracle for tests.
i64 brute_force_optimum(const GpwbInstance& I);

}  // namespace ndp
