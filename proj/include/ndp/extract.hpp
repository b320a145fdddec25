#pragma once
// NO-direction extraction: from any routing of an NDP-Grid instance, a GPwB
// solution whose value is within a polylogarithmic factor of the number of
// routed pairs. Large routed subgraphs are split by edge-balanced cuts found
// through a planar separator of the planarized drawing.

#include <string>
#include <vector>

#include "ndp/drawing.hpp"
#include "ndp/gpwb.hpp"
#include "ndp/planar.hpp"
#include "ndp/reduce_ndp.hpp"

namespace ndp {

/// Bipartition of the vertices of a drawn graph with its cut edges and the
/// intermediate quantities of the construction.
struct Cut {
    std::vector<int> side;        // per vertex: 0 (A) or 1 (B)
    std::vector<int> cut_edges;   // edge indices with endpoints on both sides
    i64 edges_a = 0, edges_b = 0; // |E(A)|, |E(B)|

    i64 m = 0;
    int d = 0;
    double alpha = 0;
    i64 crossings = 0;
    double value_bound = 0;             // c_cut * sqrt(8 m d alpha)
    i64 planar_vertices = 0;
    std::size_t separator_size = 0;
    i64 value_after_separator = 0;      // |E(A', B')| in the planarized graph
    i64 value_after_step1 = 0;
    i64 value_after_step2 = 0;
    i64 portal_load_after_step1 = 0;    // max(|A' n Pi|, |B' n Pi|)
    std::size_t uneven_split = 0, even_split = 0;
    bool refined = false;               // post-processing changed the projected cut

    i64 value() const { return static_cast<i64>(cut_edges.size()); }
};

/// Threshold on m below which the cut lemma does not apply: 2^c_lemma_exp d alpha.
double cut_lemma_threshold(const ConstantProfile& p, int d, double log_m);

/// 1/32-edge-balanced cut of the drawn graph of value at most
/// c_cut sqrt(8 m d alpha), alpha = profile.alpha(log_m). Throws a threshold
/// error when m <= 2^c_lemma_exp d alpha or the drawing has more than
/// m d alpha crossings, and a contract error if the output bounds fail.
Cut balanced_cut(const Drawing& d, const ConstantProfile& profile, double log_m);

/// Edge-balance and value checks of any bipartition (used by tests and verify).
Report check_cut(const Drawing& d, const Cut& c, double rho, double value_bound);

/// Minimum value of a rho-edge-balanced cut by exhaustive search (<= 20 vertices);
/// -1 if none exists.
i64 brute_force_balanced_cut(const Drawing& d, double rho);

struct PartitionLevel {
    int level = 0;
    std::size_t parts = 0;     // subgraphs present at this level
    i64 edges = 0;             // edges inside them
    std::size_t cuts = 0;      // cuts computed in the phase leaving this level
    i64 cut_value = 0;         // edges discarded by those cuts
};

struct ExtractionAudit {
    bool base_case = false;
    i64 routed = 0;                 // |P*|
    double base_threshold = 0;      // 2^c_base_exp h log^3 M
    i64 m0 = 0;                     // |E(G~')| = |P*|
    i64 retained = 0;               // edges inside the final parts
    int depth = 0;                  // phases of the partitioning loop
    double depth_bound = 0;         // log M / log(32/31)
    std::size_t parts = 0;          // final parts before any merge
    std::size_t merged = 0;         // parts merged to respect the r clusters
    i64 value = 0;
    double value_target = 0;        // |P*| / (c_route log^3 M)
    std::vector<PartitionLevel> levels;
};

struct Extraction {
    GpwbSolution solution;
    ExtractionAudit audit;
};

/// Routed pairs of a routing after checking that its paths are node-disjoint
/// and join the terminals of the pairs they name.
std::vector<int> routed_pairs(const NdpInstance& inst, const PathSet& routing);

/// GPwB solution from a routing. Base case (|P*| small): one cluster with
/// ceil(|P*| / (2^c_base_exp log^3 M)) edges. Otherwise the routed graph is
/// split by balanced cuts until every part is small; parts become clusters
/// holding up to h of their edges. The result passes validate_solution.
Extraction extract_gpwb_solution(const GpwbInstance& I, const NdpInstance& inst, const PathSet& routing,
                                 const ConstantProfile& profile);

}  // namespace ndp
