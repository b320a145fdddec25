#pragma once
// YES-direction routing: choose, from a perfect GPwB solution, a large set of
// demand pairs with the distance property, and route it with spaced-out
// paths that cross the middle row exactly once each.

#include <string>
#include <vector>

#include "ndp/gpwb.hpp"
#include "ndp/grid.hpp"
#include "ndp/reduce_ndp.hpp"

namespace ndp {

/// Outcome of the distance-property check with the worst consecutive pair.
struct DistanceCheck {
    bool ok = true;
    int witness_a = -1, witness_b = -1;  // pair indices (consecutive sources)
    i64 between = 0;                     // N(s, s'): destinations between t and t' in sigma
    i64 distance = 0;                    // d(s, s')
};

/// Distance property of a pair set given in sigma order (position i of the
/// list is destination t_{i+1}). Throws a contract error on shared terminals.
DistanceCheck check_distance_property(const NdpInstance& inst, const std::vector<int>& sigma_ordered);

/// Sizes and diagnostics of the four selection steps.
struct SelectionAudit {
    bool degenerate = false;
    std::size_t m0 = 0, m1 = 0, m2 = 0, m3 = 0, m_final = 0;
    int p = 0, q = 0;
    i64 step3_modulus = 1, step4_modulus = 1;
    bool h_large = true;              // h >= 2^p 2^q / 4
    bool heavy_path = false;          // first bad event: a block holds a heavy sub-path
    i64 max_window_load = 0;          // most selected sources in one window of a block
    bool n_bound_exceeded = false;    // second bad event: N(s,s') above its bound after step 2
    bool almost_distance_ok = true;   // N(s,s') <= 128 d(s,s') inside blocks after step 3
    DistanceCheck distance;           // distance property of the final set
};

struct RoutableSubset {
    std::vector<int> pairs;          // selected pairs in sigma order
    std::vector<int> cluster;        // cluster of each selected pair's destination
    SelectionAudit audit;
};

/// Cluster index of every right vertex in a solution (-1 if uncovered).
std::vector<int> right_clusters(const GpwbInstance& I, const GpwbSolution& S);

/// Pairs sorted by sigma: by cluster of their destination, then by column on R''.
std::vector<int> sigma_order(const NdpInstance& inst, const GpwbInstance& I, const std::vector<int>& cluster_of_right,
                             std::vector<int> pairs);

/// Steps 1-4 of the selection. Deterministic: the only randomness of the
/// YES direction is the instance construction itself.
RoutableSubset select_routable_subset(const GpwbInstance& I, const GpwbSolution& perfect, const NdpInstance& inst);

/// Spaced-out routing of a set with the distance property: path i (sigma
/// order) crosses the middle row exactly once, at column 2(i+1).
PathSet route_spaced_out(const NdpInstance& inst, const RoutableSubset& rs);

/// Independent post-checks of a YES routing: endpoints, single crossing of
/// the middle row at the assigned vertex, spaced-out.
Report audit_yes_routing(const NdpInstance& inst, const RoutableSubset& rs, const PathSet& ps);

/// Longest run of consecutive yellow (false) labels.
std::size_t longest_yellow_run(const std::vector<bool>& pink);

/// Largest number of pink (true) labels among `window` consecutive items.
std::size_t max_pink_in_window(const std::vector<bool>& pink, std::size_t window);

}  // namespace ndp
