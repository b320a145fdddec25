#include "ndp/reduce_ndp.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace ndp {

ConstantProfile ConstantProfile::paper() { return ConstantProfile{}; }

ConstantProfile ConstantProfile::desk() {
    ConstantProfile p;
    p.name = "desk";
    p.c_grid = 8;
    p.c_block = 8;
    p.c_space = 4;
    p.c_sep_blocks = 2;
    p.c_sparsify = 1;
    p.c_step4 = 1;
    p.c_cut = 64;
    p.c_base_exp = 1;
    p.c_lemma_exp = 0;
    p.c_route = 2;
    p.c_degenerate = 0;
    return p;
}

ConstantProfile ConstantProfile::stress() {
    ConstantProfile p = desk();
    p.name = "stress";
    p.c_base_exp = -12;
    p.c_lemma_exp = -30;
    return p;
}

ConstantProfile ConstantProfile::by_name(const std::string& name) {
    if (name == "paper") return paper();
    if (name == "desk") return desk();
    if (name == "stress") return stress();
    throw Error(ErrorKind::Parameter, "unknown profile '" + name + "' (expected paper, desk or stress)");
}

namespace {

i64 as_int(double c) { return static_cast<i64>(std::llround(c)); }

}  // namespace

i64 NdpInstance::block_length() const { return as_int(profile.c_block) * ceil_to_i64(static_cast<double>(h) * log_m); }

i64 NdpInstance::block_separation() const { return as_int(profile.c_sep_blocks) * M; }

i64 NdpInstance::terminal_gap(int beta) const {
    return as_int(profile.c_space) * ceil_to_i64(static_cast<double>(h) * log_m / beta) + 1;
}

NdpInstance build_ndp_instance(const GpwbInstance& I, u64 seed, const ConstantProfile& profile) {
    const Report rep = validate_instance(I);
    require(rep.ok, ErrorKind::Contract, "invalid GPwB instance: " + (rep.violations.empty() ? "" : rep.violations[0]));
    require(!I.edges.empty(), ErrorKind::Contract, "GPwB instance has no edges");
    const BundleIndex bi = compute_bundles(I);

    NdpInstance inst;
    inst.M = static_cast<i64>(I.edges.size());
    inst.log_m = log_m(static_cast<double>(inst.M));
    inst.h = I.h;
    inst.r = I.r;
    inst.seed = seed;
    inst.profile = profile;

    const double side = profile.c_grid * std::ceil(static_cast<double>(inst.M) * inst.M * inst.log_m - 1e-9);
    require(side < 4e18, ErrorKind::Capacity, "grid side overflows 64-bit coordinates");
    const i64 L = static_cast<i64>(std::llround(side));
    inst.grid = {L, L};
    inst.source_row = 3 * L / 8;
    inst.dest_row = 5 * L / 8;
    inst.middle_row = L / 2;

    // Group orders: rho lexicographic by group id (index as fallback), rho'
    // a seeded uniform permutation.
    auto group_name = [](const std::vector<std::string>& ids, std::size_t g) {
        return g < ids.size() ? ids[g] : std::to_string(g);
    };
    std::vector<int> rho(I.groups_left.size());
    std::iota(rho.begin(), rho.end(), 0);
    std::stable_sort(rho.begin(), rho.end(), [&](int a, int b) {
        return group_name(I.group_left_ids, a) < group_name(I.group_left_ids, b);
    });
    inst.rho_prime.resize(I.groups_right.size());
    std::iota(inst.rho_prime.begin(), inst.rho_prime.end(), 0);
    Rng rng(seed, "rho-prime");
    rng.shuffle(inst.rho_prime);
    std::vector<int> rho_pos(rho.size()), rho_prime_pos(inst.rho_prime.size());
    for (std::size_t i = 0; i < rho.size(); ++i) rho_pos[rho[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < inst.rho_prime.size(); ++i) rho_prime_pos[inst.rho_prime[i]] = static_cast<int>(i);

    auto vertex_order = [](const std::vector<std::vector<int>>& groups, const std::vector<int>& order) {
        std::vector<int> out;
        for (int g : order) {
            std::vector<int> members = groups[g];
            std::sort(members.begin(), members.end());
            out.insert(out.end(), members.begin(), members.end());
        }
        return out;
    };
    const std::vector<int> sigma = vertex_order(I.groups_left, rho);
    const std::vector<int> sigma_prime = vertex_order(I.groups_right, inst.rho_prime);

    const i64 blen = inst.block_length(), sep = inst.block_separation();
    auto need = [&](std::size_t n) { return sep + static_cast<i64>(n) * (blen + sep); };
    require(need(sigma.size()) <= L && need(sigma_prime.size()) <= L, ErrorKind::Capacity,
            "blocks do not fit on the grid side " + std::to_string(L));

    // Lay out the blocks of one row and the terminals inside them.
    auto lay_out = [&](const std::vector<int>& order, const std::vector<std::vector<int>>& bundles_of, i64 row,
                       const std::vector<int>& opp_group_pos, std::vector<Block>& blocks, std::vector<Terminal>& terms,
                       std::vector<int>& block_of, std::vector<int>& terminal_of_bundle) {
        block_of.assign(order.size(), -1);
        for (std::size_t b = 0; b < order.size(); ++b) {
            const int v = order[b];
            Block blk;
            blk.col_lo = sep + 1 + static_cast<i64>(b) * (blen + sep);
            blk.col_hi = blk.col_lo + blen - 1;
            blk.vertex = v;
            std::vector<int> bs = bundles_of[v];
            std::sort(bs.begin(), bs.end(), [&](int x, int y) {
                return opp_group_pos[bi.bundles[x].opposite_group] < opp_group_pos[bi.bundles[y].opposite_group];
            });
            const i64 gap = bs.empty() ? 0 : inst.terminal_gap(static_cast<int>(bs.size()));
            for (std::size_t k = 0; k < bs.size(); ++k) {
                Terminal t;
                t.at = {row, blk.col_lo + static_cast<i64>(k) * gap};
                require(t.at.col <= blk.col_hi, ErrorKind::Capacity, "terminals overflow their block");
                t.vertex = v;
                t.bundle = bs[k];
                t.block = static_cast<int>(b);
                terminal_of_bundle[bs[k]] = static_cast<int>(terms.size());
                blk.terminals.push_back(static_cast<int>(terms.size()));
                terms.push_back(t);
            }
            block_of[v] = static_cast<int>(b);
            blocks.push_back(std::move(blk));
        }
    };
    std::vector<int> terminal_of_bundle(bi.bundles.size(), -1);
    lay_out(sigma, bi.of_left, inst.source_row, rho_prime_pos, inst.source_blocks, inst.sources, inst.left_block_of,
            terminal_of_bundle);
    lay_out(sigma_prime, bi.of_right, inst.dest_row, rho_pos, inst.dest_blocks, inst.destinations, inst.right_block_of,
            terminal_of_bundle);

    inst.pairs.resize(I.edges.size());
    for (std::size_t e = 0; e < I.edges.size(); ++e) {
        DemandPair& p = inst.pairs[e];
        p.edge = static_cast<int>(e);
        p.id = e < I.edge_ids.size() && !I.edge_ids[e].empty() ? I.edge_ids[e] : "e" + std::to_string(e);
        p.source = terminal_of_bundle[bi.left_bundle_of_edge[e]];
        p.destination = terminal_of_bundle[bi.right_bundle_of_edge[e]];
    }
    return inst;
}

bool ordering_consistency_check(const NdpInstance& inst, const std::vector<int>& pairs) {
    if (pairs.size() <= 1) return true;
    std::set<int> srcs;
    int block = -1;
    for (int p : pairs) {
        require(p >= 0 && static_cast<std::size_t>(p) < inst.pairs.size(), ErrorKind::OutOfBounds, "pair index out of range");
        const Terminal& s = inst.sources[inst.pairs[p].source];
        require(srcs.insert(inst.pairs[p].source).second, ErrorKind::Contract, "sources are not distinct");
        require(block == -1 || block == s.block, ErrorKind::Contract, "sources lie in different blocks");
        block = s.block;
    }
    std::vector<int> by_source = pairs;
    std::sort(by_source.begin(), by_source.end(),
              [&](int a, int b) { return inst.source_of(a).col < inst.source_of(b).col; });
    for (std::size_t i = 1; i < by_source.size(); ++i)
        if (inst.dest_of(by_source[i - 1]).col >= inst.dest_of(by_source[i]).col) return false;
    return true;
}

NdpInstance build_wall_instance(const NdpInstance& inst) {
    require(inst.grid.length % 2 == 0 && inst.grid.length >= 4, ErrorKind::Parameter,
            "wall needs an even grid side of at least 4");
    NdpInstance w = inst;
    w.wall = true;
    const WallSpec ws{inst.grid};
    for (const auto* terms : {&w.sources, &w.destinations})
        for (const Terminal& t : *terms)
            require(wall_contains_vertex(ws, t.at), ErrorKind::Placement, "terminal deleted by the wall construction");
    return w;
}

Report audit_instance(const GpwbInstance& I, const NdpInstance& inst) {
    Report rep;
    const i64 L = inst.grid.height;
    if (inst.grid.length != L) rep.fail("grid is not square");
    if (inst.source_row - 1 < L / 4 || L - inst.dest_row < L / 4 || inst.dest_row - inst.source_row < L / 4)
        rep.fail("rows R', R'' violate the L/4 margins");
    const i64 sep = inst.block_separation(), blen = inst.block_length();
    const BundleIndex bi = compute_bundles(I);
    for (const auto* blocks : {&inst.source_blocks, &inst.dest_blocks}) {
        const bool left = blocks == &inst.source_blocks;
        const auto& terms = left ? inst.sources : inst.destinations;
        for (std::size_t b = 0; b < blocks->size(); ++b) {
            const Block& blk = (*blocks)[b];
            if (blk.col_hi - blk.col_lo + 1 != blen) rep.fail("block length differs from the formula");
            const i64 before = b == 0 ? blk.col_lo - 1 : blk.col_lo - (*blocks)[b - 1].col_hi - 1;
            if (before < sep) rep.fail("blocks closer than the required separation");
            if (b + 1 == blocks->size() && L - blk.col_hi < sep) rep.fail("last block too close to the boundary");
            const int beta = left ? bi.beta({Part::Left, blk.vertex}) : bi.beta({Part::Right, blk.vertex});
            if (static_cast<int>(blk.terminals.size()) != beta) rep.fail("block terminal count differs from beta(v)");
            for (std::size_t k = 0; k < blk.terminals.size(); ++k) {
                const GridCoord at = terms[blk.terminals[k]].at;
                if (at.col < blk.col_lo || at.col > blk.col_hi) rep.fail("terminal outside its block");
                if (at.row != (left ? inst.source_row : inst.dest_row)) rep.fail("terminal off its row");
                if (k > 0 && at.col - terms[blk.terminals[k - 1]].at.col != inst.terminal_gap(beta))
                    rep.fail("terminal spacing differs from the formula");
            }
        }
    }
    // Terminals are shared exactly by the pairs of one bundle.
    for (std::size_t e = 0; e < inst.pairs.size(); ++e) {
        const DemandPair& p = inst.pairs[e];
        if (p.edge != static_cast<int>(e)) rep.fail("pair/edge map is not the identity");
        if (inst.sources[p.source].bundle != bi.left_bundle_of_edge[e]) rep.fail("source not shared by its bundle");
        if (inst.destinations[p.destination].bundle != bi.right_bundle_of_edge[e])
            rep.fail("destination not shared by its bundle");
    }
    return rep;
}

}  // namespace ndp
