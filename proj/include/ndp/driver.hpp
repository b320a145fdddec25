#pragma once
// The iterative decision procedure for 3COL(5) built on an NDP solver, the
// strategy-or-partition dichotomy it relies on, and a greedy baseline solver.

#include <functional>
#include <string>
#include <vector>

#include "ndp/game3col.hpp"
#include "ndp/gpwb.hpp"
#include "ndp/grid.hpp"
#include "ndp/reduce_ndp.hpp"

namespace ndp {

// ---- solvers ---------------------------------------------------------------------

/// Context of a solver call. Real solvers look only at the NDP instance; the
/// oracle solver also uses the cluster and its level graph.
struct SolverHint {
    const ConstraintGraph* cluster = nullptr;
    const LevelGraph* level = nullptr;
};

/// Returns node-disjoint paths for distinct demand pairs of the instance.
using NdpSolver = std::function<PathSet(const NdpInstance&, const SolverHint&)>;

struct GreedyStats {
    std::size_t searches = 0;        // shortest-path computations
    std::size_t skipped = 0;         // pairs whose window search exceeded the node cap
    std::size_t max_nodes = 0;       // largest compressed search graph
};

/// Greedy baseline: repeatedly route the pair with the shortest available
/// path (ties by pair id), searching inside the pair's bounding box padded
/// by 2 * (number of pairs) and deleting used vertices. Shortest paths are
/// exact: the search runs on the grid lines through obstacle and terminal
/// coordinates, which contain a shortest rectilinear path.
PathSet greedy_ndp(const NdpInstance& inst, GreedyStats* stats = nullptr, std::size_t node_cap = 4'000'000);

NdpSolver greedy_solver();
/// Routes nothing.
NdpSolver empty_solver();
/// YES-direction routing of the cluster's perfect solution (needs a valid
/// coloring); returns no paths when the instance misses the distance property.
NdpSolver oracle_solver(const ColoringInstance& G, const Coloring& chi);

// ---- strategies and the dichotomy ---------------------------------------------------

/// Randomized prover strategy: pick a cluster index uniformly, then answer
/// every query uniformly among the answers whose vertices lie in that cluster
/// (answer 0 when there are none).
struct ProverStrategy {
    int r = 0;
    std::vector<std::vector<std::vector<int>>> edge_answers;    // [cluster][edge query] -> answers
    std::vector<std::vector<std::vector<int>>> vertex_answers;  // [cluster][vertex query] -> answers

    GlobalAssignment sample(Rng& rng) const;
    /// Exact expected fraction of satisfied constraints of H.
    double exact_fraction(const ConstraintGraph& H) const;
};

/// Strategy induced by a GPwB solution of the level graph of H.
ProverStrategy strategy_from_solution(const ConstraintGraph& H, const LevelGraph& L, const GpwbSolution& sol);

struct DichotomyParams {
    double alpha = 1;            // value loss factor: solution value >= |E(H')| 6^l / alpha
    double gamma = 1;            // parallel-repetition exponent
    double c_prime = 1;          // Case-2 acceptance constant
    int trials = 8;              // randomized Case-2 constructions
};

struct DichotomyAudit {
    double alpha = 0, z = 0;
    std::size_t strings = 0, good = 0, light = 0, heavy = 0;
    std::size_t terrible_edges = 0;
    bool terrible_bound_ok = true;   // <= 6^l / (4 alpha) terrible edges per good string
    bool not_terrible_ok = true;     // retained clusters satisfy both count ratios
    bool alpha_condition = true;     // alpha < 2^{gamma l / 32}
    int j_star = -1;
    std::size_t r_star = 0;          // strings choosing j*
    int trials_used = 0;
    i64 mass = 0;                    // edges in the returned parts
    double mass_target = 0;          // c' |E(H')| / (l^2 alpha^2)
    double part_bound = 0;           // |E(H')| / 2^{gamma l / 16}
    bool part_bound_ok = true;
};

struct Dichotomy {
    bool is_strategy = false;
    ProverStrategy strategy;               // Case 1
    std::vector<std::vector<int>> parts;   // Case 2: arc indices of H' per part
    DichotomyAudit audit;
};

/// Good strategy or partition for cluster H' given a solution of I(H').
/// Throws a contract error when the solution value is below |E(H')| 6^l / alpha
/// or the solution is infeasible.
Dichotomy strategy_or_partition(const ConstraintGraph& Hp, const LevelGraph& L, const GpwbSolution& sol,
                                const DichotomyParams& params, u64 seed);

// ---- the decision procedure ---------------------------------------------------------

struct DriverParams {
    double gamma = 400;          // large at desk scale so the dichotomy bounds are meaningful
    double alpha_star = 1;       // approximation factor attributed to the solver
    double c_yi = 1;
    double c_prime = 1;
    int retries = 8;             // NDP instances per cluster (NDPLAB_TRIALS overrides)
    double confidence = 1000;    // P
    int max_partition_trials = 64;
    int max_phases = 64;
    ConstantProfile profile = ConstantProfile::desk();
};

/// Retry budget after the NDPLAB_TRIALS override.
int effective_retries(const DriverParams& p);

enum class Outcome { Yes, No, Inconclusive };
std::string to_string(Outcome o);

struct ClusterLog {
    int phase = 0;
    std::size_t edges = 0;
    int instances_tried = 0;
    i64 best_routed = 0;
    double route_threshold = 0;      // |E(H')| 6^l / (c_YI alpha* l^3 log^3 n)
    i64 solution_value = 0;
    double value_threshold = 0;      // |E(H')| 6^l / alpha
    std::string result;              // "no-routing", "strategy", "partition", "low-mass"
    DichotomyAudit dichotomy;
};

struct PhaseAudit {
    int phase = 0;
    std::size_t active = 0, edges = 0;
    std::size_t to_inactive = 0, parts_added = 0;
};

struct CertificateEntry {
    std::vector<int> arcs;           // arc indices of H
    ProverStrategy strategy;
    double fraction = 0;             // exact satisfied fraction on the cluster
};

struct Decision {
    Outcome outcome = Outcome::Inconclusive;
    int step = 0;                    // 3 or 5 for NO
    std::vector<int> failing_cluster;
    std::vector<CertificateEntry> certificate;
    double alpha = 0;                // c_YI^2 alpha* l^6 log^6 n
    double strategy_threshold = 0;   // 2^{-gamma l / 2}
    double global_fraction = 0;      // sum of fraction * |cluster| over |R|
    double global_threshold = 0;     // 2^{-gamma l}
    int phases = 0;
    double phase_bound = 0;          // 1 + log|E(H)| / (gamma l / 16)
    std::vector<PhaseAudit> phase_log;
    std::vector<ClusterLog> cluster_log;
};

/// Runs the phases over the clusters of the constraint graph H of G.
Decision decide(const ColoringInstance& G, int ell, const NdpSolver& solver, const DriverParams& params, u64 seed);

/// Independent re-check of a YES certificate: disjoint clusters, recomputed
/// fractions above 2^{-gamma l / 2}, and the aggregated fraction.
Report verify_certificate(const ConstraintGraph& H, const Decision& d, double gamma);

}  // namespace ndp
