#pragma once
// 3COL(5) instances, the l-fold repeated two-prover game, the constraint
// graph H, the level graph L(H') and the GPwB instance built from it.

#include <functional>
#include <string>
#include <vector>

#include "ndp/common.hpp"
#include "ndp/gpwb.hpp"

namespace ndp {

/// Simple undirected graph; edges stored with u < v, sorted.
struct ColoringInstance {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
    bool regular = true;  // every vertex has degree 5
    std::size_t m() const { return edges.size(); }
};

/// Builds and validates a graph. With require_regular, every degree must be 5.
ColoringInstance make_coloring_instance(int n, std::vector<std::pair<int, int>> edges, bool require_regular = true);

using Coloring = std::vector<int>;  // colors 0, 1, 2 (r, g, b)

/// Number of edges whose endpoints receive different colors.
std::size_t verify_coloring(const ColoringInstance& G, const Coloring& chi);

/// K_{5,5} with its side 2-coloring.
std::pair<ColoringInstance, Coloring> complete_bipartite_55();

/// Random 5-regular graph on n vertices (n divisible by 6) with a planted
/// proper 3-coloring.
std::pair<ColoringInstance, Coloring> planted_5regular(int n, u64 seed);

/// Exhaustive 3-colorability check (small graphs only).
bool is_3_colorable(const ColoringInstance& G);

// ---- the game --------------------------------------------------------------------

/// Random string R = (Q, Q'): an l-tuple of edges and, per coordinate, which
/// endpoint (0 = smaller id, 1 = larger) the vertex query picks.
struct RandomString {
    std::vector<int> edges;
    std::vector<int> ends;
    friend bool operator==(const RandomString&, const RandomString&) = default;
    friend auto operator<=>(const RandomString&, const RandomString&) = default;
};

struct ConstraintGraph {
    int ell = 1;
    std::vector<std::vector<int>> edge_queries;    // U^E: l-tuples of edges of G
    std::vector<std::vector<int>> vertex_queries;  // U^V: l-tuples of vertices of G
    struct Arc {
        int edge_query;
        int vertex_query;
        RandomString string;
    };
    std::vector<Arc> arcs;  // one per admitted random string

    std::size_t num_strings() const { return arcs.size(); }
};

std::string edge_query_id(const std::vector<int>& q);
std::string vertex_query_id(const std::vector<int>& q);

/// Full constraint graph H; refuses when (2m)^l exceeds cap.
ConstraintGraph build_constraint_graph(const ColoringInstance& G, int ell, i64 cap = 1'000'000);

/// Restricted constraint graph H' with exactly the listed random strings.
ConstraintGraph constraint_graph_from_strings(const ColoringInstance& G, int ell, std::vector<RandomString> strings);

/// `count` distinct uniformly random strings.
std::vector<RandomString> sample_random_strings(const ColoringInstance& G, int ell, std::size_t count, u64 seed);

/// Sub-constraint graph keeping the listed arcs (indices into H.arcs).
ConstraintGraph restrict_constraint_graph(const ConstraintGraph& H, const std::vector<int>& arcs);

// ---- answers ---------------------------------------------------------------

/// Ordered pair of distinct colors for an edge, indexed 0..5.
std::pair<int, int> edge_answer_colors(int code);
int edge_answer_code(int cu, int cv);
/// Digit i (base 6 for edge answers, base 3 for vertex answers).
int answer_digit(int answer, int base, int i);
i64 ipow(i64 b, int e);

/// Whether (A, A') is a matching answer pair for random string R.
bool consistent(const RandomString& R, int edge_answer, int vertex_answer);

/// Vertex answer induced by an edge answer on the endpoints picked by R.
int project_answer(const RandomString& R, int edge_answer);

// ---- level graph and GPwB instance ------------------------------------------------

struct LevelGraph {
    GpwbInstance instance;  // underlying graph, groups S(Q), r = 6^l, h = |E(H')|
    int ell = 1;
    // Left vertex index = edge_query * 6^l + A.
    // Right vertex index = vertex_query * 6^l + A' * 2^l + copy.
    struct EdgeInfo {
        int arc;            // random string (index into H'.arcs)
        int edge_answer;    // A
        int vertex_answer;  // A'
        int copy;           // j in 0..2^l-1
    };
    std::vector<EdgeInfo> edge_info;             // parallel to instance.edges
    std::vector<std::vector<int>> edges_of_arc;  // E(R) per random string
    int left_query(int v) const { return v / static_cast<int>(ipow(6, ell)); }
    int left_answer(int v) const { return v % static_cast<int>(ipow(6, ell)); }
    int right_query(int v) const { return v / static_cast<int>(ipow(6, ell)); }
    int right_answer(int v) const { return (v % static_cast<int>(ipow(6, ell))) / static_cast<int>(ipow(2, ell)); }
    int right_copy(int v) const { return v % static_cast<int>(ipow(2, ell)); }
};

LevelGraph build_level_graph(const ConstraintGraph& H, int ell);

/// The GPwB instance I(H'): L(H') with r = 6^l and h = |E(H')|.
GpwbInstance gpwb_of(const ConstraintGraph& H, int ell);

// ---- perfect assignments and strategies ----------------------------------------

/// Answers to the queries of H' (indices into H'.edge_queries / vertex_queries).
struct GlobalAssignment {
    std::vector<int> edge_answer;
    std::vector<int> vertex_answer;
};

/// The 6^l perfect global assignments f_b built from one valid coloring and
/// the six color permutations, evaluated lazily per index b.
class PerfectFamily {
public:
    PerfectFamily(const ColoringInstance& G, Coloring chi, int ell);
    i64 size() const { return ipow(6, ell_); }
    int edge_answer(i64 b, const std::vector<int>& edge_query) const;
    int vertex_answer(i64 b, const std::vector<int>& vertex_query) const;
    GlobalAssignment assignment(i64 b, const ConstraintGraph& H) const;

private:
    ColoringInstance g_;
    Coloring chi_;
    int ell_;
};

PerfectFamily perfect_assignments(const ColoringInstance& G, const Coloring& chi, int ell);

/// The perfect solution of I(H') induced by the family: cluster i holds
/// v(Q, f_i(Q)) and the lowest unused copy v_j(Q', f_i(Q')).
GpwbSolution perfect_gpwb_solution(const ColoringInstance& G, const Coloring& chi, const ConstraintGraph& H,
                                   const LevelGraph& L);

/// Exact fraction of random strings of H' satisfied by f.
double evaluate_strategy(const ConstraintGraph& H, const GlobalAssignment& f);

/// Monte Carlo estimate for a randomized strategy given as a sampler.
double evaluate_strategy(const ConstraintGraph& H, const std::function<GlobalAssignment(Rng&)>& sample, int trials,
                         u64 seed);

}  // namespace ndp
