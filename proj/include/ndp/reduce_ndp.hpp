#pragma once
// The randomized construction turning a valid GPwB instance into an
// NDP-Grid instance: a square implicit grid, one block of row R' per left
// vertex holding that vertex's bundle sources, one block of row R'' per
// right vertex holding its bundle destinations, and one demand pair per edge.

#include <string>
#include <vector>

#include "ndp/common.hpp"
#include "ndp/gpwb.hpp"
#include "ndp/grid.hpp"

namespace ndp {

/// Every absolute constant of the construction and of the downstream
/// thresholds, gathered so that they scale together.
struct ConstantProfile {
    std::string name = "paper";
    double c_grid = 2048;       // grid side = c_grid * ceil(M^2 log M)
    double c_block = 1024;      // block length = c_block * ceil(h log M)
    double c_space = 512;       // source gap = c_space * ceil(h log M / beta)
    double c_sep_blocks = 10;   // block separation = c_sep_blocks * M
    double c_sparsify = 32;     // selection step 3 keeps 1 in ceil(c_sparsify log M)
    double c_step4 = 512;       // selection step 4 keeps 1 in c_step4
    double c_cut = 64;          // balanced-cut value <= c_cut * sqrt(8 m d alpha)
    double c_base_exp = 64;     // extraction base case: |P*| <= 2^c_base_exp h log^3 M
    double c_lemma_exp = 20;    // balanced-cut lemma: m > 2^c_lemma_exp d alpha
    double c_route = 1;         // c*: target value |P*| / (c* log^3 M)
    double c_degenerate = 1;    // selection returns one pair when |M0| <= c log^3 M

    /// Constants as written in the construction.
    static ConstantProfile paper();
    /// Shrunk constants for desk-scale runs; derived inequalities still hold.
    static ConstantProfile desk();
    /// Tiny thresholds that force every branch of the extraction loop.
    static ConstantProfile stress();
    static ConstantProfile by_name(const std::string& name);

    /// Crossing-density parameter alpha of the balanced-cut lemma (4 c_block log M).
    double alpha(double log_m) const { return 4.0 * c_block * log_m; }
};

/// A terminal vertex shared by all demand pairs of one bundle.
struct Terminal {
    GridCoord at;
    int vertex = 0;   // index of the anchor vertex on its side
    int bundle = 0;   // index into BundleIndex::bundles
    int block = 0;    // index of the block holding it
};

/// Column interval of a block on R' or R'' and the vertex it represents.
struct Block {
    i64 col_lo = 0, col_hi = 0;
    int vertex = 0;
    std::vector<int> terminals;  // left to right
};

struct DemandPair {
    std::string id;
    int edge = 0;         // edge of the GPwB graph (equals the pair index)
    int source = 0;       // index into NdpInstance::sources
    int destination = 0;  // index into NdpInstance::destinations
};

struct NdpInstance {
    GridSpec grid;
    bool wall = false;  // true: the graph is the wall over `grid`
    i64 source_row = 0, dest_row = 0, middle_row = 0;
    i64 M = 0;          // number of GPwB edges
    double log_m = 1;   // max(1, log2 M)
    i64 h = 0, r = 0;
    u64 seed = 0;
    ConstantProfile profile;

    std::vector<Block> source_blocks, dest_blocks;  // left to right (orders sigma, sigma')
    std::vector<Terminal> sources, destinations;
    std::vector<DemandPair> pairs;                  // pair i represents edge i
    std::vector<int> rho_prime;                     // random order of the right groups
    std::vector<int> left_block_of, right_block_of; // vertex -> block index

    GridCoord source_of(int pair) const { return sources[pairs[pair].source].at; }
    GridCoord dest_of(int pair) const { return destinations[pairs[pair].destination].at; }
    i64 block_length() const;
    i64 block_separation() const;
    /// Exact gap (column difference) between consecutive terminals of a vertex with beta bundles.
    i64 terminal_gap(int beta) const;
};

/// Builds the NDP-Grid instance; only the order of the right groups depends on the seed.
NdpInstance build_ndp_instance(const GpwbInstance& I, u64 seed, const ConstantProfile& profile);

/// For pairs whose sources are distinct and lie in one block: true iff the
/// left-to-right order of the sources equals that of the destinations.
bool ordering_consistency_check(const NdpInstance& inst, const std::vector<int>& pairs);

/// Same demand pairs on the wall over the instance's grid.
NdpInstance build_wall_instance(const NdpInstance& inst);

/// Structural audit: block disjointness and separation, row margins, exact
/// terminal spacing, and that terminals are shared exactly by bundles.
Report audit_instance(const GpwbInstance& I, const NdpInstance& inst);

}  // namespace ndp
