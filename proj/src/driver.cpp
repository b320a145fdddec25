#include "ndp/driver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>

#include "ndp/extract.hpp"
#include "ndp/route_yes.hpp"

namespace ndp {

// ---- solvers ---------------------------------------------------------------------

NdpSolver oracle_solver(const ColoringInstance& G, const Coloring& chi) {
    return [G, chi](const NdpInstance& inst, const SolverHint& hint) -> PathSet {
        require(hint.cluster && hint.level, ErrorKind::Contract, "the oracle solver needs the cluster and level graph");
        const GpwbSolution S = perfect_gpwb_solution(G, chi, *hint.cluster, *hint.level);
        const RoutableSubset rs = select_routable_subset(hint.level->instance, S, inst);
        if (!rs.audit.distance.ok) return {};
        return route_spaced_out(inst, rs);
    };
}

// ---- strategies ----------------------------------------------------------------------

GlobalAssignment ProverStrategy::sample(Rng& rng) const {
    require(r > 0, ErrorKind::Domain, "empty strategy");
    const std::size_t i = rng.below(static_cast<u64>(r));
    GlobalAssignment f;
    auto pick = [&](const std::vector<int>& answers) {
        return answers.empty() ? 0 : answers[rng.below(answers.size())];
    };
    for (const auto& a : edge_answers[i]) f.edge_answer.push_back(pick(a));
    for (const auto& a : vertex_answers[i]) f.vertex_answer.push_back(pick(a));
    return f;
}

double ProverStrategy::exact_fraction(const ConstraintGraph& H) const {
    require(r > 0 && !H.arcs.empty(), ErrorKind::Domain, "strategy value undefined");
    static const std::vector<int> kDefault = {0};
    double total = 0;
    for (const auto& arc : H.arcs) {
        double p = 0;
        for (int i = 0; i < r; ++i) {
            const auto& ea = edge_answers[i][arc.edge_query].empty() ? kDefault : edge_answers[i][arc.edge_query];
            const auto& va =
                vertex_answers[i][arc.vertex_query].empty() ? kDefault : vertex_answers[i][arc.vertex_query];
            std::size_t ok = 0;
            for (int a : ea)
                for (int b : va) ok += consistent(arc.string, a, b);
            p += static_cast<double>(ok) / static_cast<double>(ea.size() * va.size());
        }
        total += p / r;
    }
    return total / static_cast<double>(H.arcs.size());
}

ProverStrategy strategy_from_solution(const ConstraintGraph& H, const LevelGraph& L, const GpwbSolution& sol) {
    ProverStrategy st;
    st.r = static_cast<int>(sol.clusters.size());
    st.edge_answers.assign(sol.clusters.size(), std::vector<std::vector<int>>(H.edge_queries.size()));
    st.vertex_answers.assign(sol.clusters.size(), std::vector<std::vector<int>>(H.vertex_queries.size()));
    for (std::size_t i = 0; i < sol.clusters.size(); ++i) {
        for (const VertexRef& v : sol.clusters[i]) {
            auto& list = v.side == Part::Left ? st.edge_answers[i][L.left_query(v.index)]
                                              : st.vertex_answers[i][L.right_query(v.index)];
            list.push_back(v.side == Part::Left ? L.left_answer(v.index) : L.right_answer(v.index));
        }
        for (auto* side : {&st.edge_answers[i], &st.vertex_answers[i]})
            for (auto& list : *side) {
                std::sort(list.begin(), list.end());
                list.erase(std::unique(list.begin(), list.end()), list.end());
            }
    }
    return st;
}

// ---- the dichotomy -----------------------------------------------------------------------

namespace {

// Class index j with 2^{j-1} < x <= 2^j (x >= 1).
int size_class(i64 x) {
    int j = 0;
    while ((i64{1} << j) < x) ++j;
    return j;
}

}  // namespace

Dichotomy strategy_or_partition(const ConstraintGraph& Hp, const LevelGraph& L, const GpwbSolution& sol,
                                const DichotomyParams& params, u64 seed) {
    const GpwbInstance& I = L.instance;
    const Report rep = validate_solution(I, sol);
    require(rep.ok, ErrorKind::Contract,
            "infeasible GPwB solution: " + (rep.violations.empty() ? std::string() : rep.violations[0]));
    const int ell = Hp.ell;
    const double six = static_cast<double>(ipow(6, ell));
    const double alpha = params.alpha, m = static_cast<double>(Hp.arcs.size());
    require(alpha > 0, ErrorKind::Parameter, "alpha must be positive");
    require(static_cast<double>(solution_value(sol)) >= m * six / alpha - 1e-9, ErrorKind::Contract,
            "solution value " + std::to_string(solution_value(sol)) + " is below |E(H')| 6^l / alpha");

    Dichotomy out;
    DichotomyAudit& au = out.audit;
    au.alpha = alpha;
    au.z = std::pow(2.0, params.gamma * ell / 8);
    au.strings = Hp.arcs.size();
    au.alpha_condition = alpha < std::pow(2.0, params.gamma * ell / 32);
    au.mass_target = params.c_prime * m / (static_cast<double>(ell) * ell * alpha * alpha);
    au.part_bound = m / std::pow(2.0, params.gamma * ell / 16);

    const std::size_t r = sol.clusters.size();
    std::vector<int> cluster_of_edge(I.edges.size(), -1);
    for (std::size_t i = 0; i < r; ++i)
        for (int e : sol.selected[i]) cluster_of_edge[e] = static_cast<int>(i);
    std::vector<std::vector<i64>> cnt_e(r, std::vector<i64>(Hp.edge_queries.size(), 0)),
        cnt_v(r, std::vector<i64>(Hp.vertex_queries.size(), 0));
    for (std::size_t i = 0; i < r; ++i)
        for (const VertexRef& v : sol.clusters[i]) {
            if (v.side == Part::Left) ++cnt_e[i][L.left_query(v.index)];
            else ++cnt_v[i][L.right_query(v.index)];
        }

    // Per good string: retained (non-terrible) edge counts per cluster and heavy flag.
    struct StringInfo {
        bool good = false, heavy = false;
        std::map<int, i64> heavy_per_cluster;
    };
    std::vector<StringInfo> info(Hp.arcs.size());
    for (std::size_t k = 0; k < Hp.arcs.size(); ++k) {
        const auto& arc = Hp.arcs[k];
        std::map<int, i64> per_cluster;
        i64 in_e = 0;
        for (int e : L.edges_of_arc[k])
            if (cluster_of_edge[e] >= 0) {
                ++per_cluster[cluster_of_edge[e]];
                ++in_e;
            }
        if (static_cast<double>(in_e) < six / (2 * alpha)) continue;
        StringInfo& s = info[k];
        s.good = true;
        ++au.good;
        i64 terrible = 0, retained = 0, heavy = 0;
        for (auto [i, x] : per_cluster) {
            const double qv = static_cast<double>(cnt_v[i][arc.vertex_query]),
                         qe = static_cast<double>(cnt_e[i][arc.edge_query]);
            if (static_cast<double>(x) < qv / (8 * alpha) || static_cast<double>(x) < qe / (8 * alpha)) {
                terrible += x;
                continue;
            }
            if (qv < qe / (8 * alpha) || qe < qv / (8 * alpha)) au.not_terrible_ok = false;
            retained += x;
            if (qe > au.z && qv > au.z) {
                heavy += x;
                s.heavy_per_cluster[i] = x;
            }
        }
        au.terrible_edges += static_cast<std::size_t>(terrible);
        if (static_cast<double>(terrible) > six / (4 * alpha) + 1e-9) au.terrible_bound_ok = false;
        s.heavy = retained > 0 && 2 * heavy >= retained;
        (s.heavy ? au.heavy : au.light) += 1;
    }

    if (2 * au.light >= au.good) {
        out.is_strategy = true;
        out.strategy = strategy_from_solution(Hp, L, sol);
        return out;
    }

    // Case 2: each heavy string chooses the size class holding most of its heavy edges.
    std::vector<int> choice(Hp.arcs.size(), -1);
    std::map<int, std::size_t> votes;
    for (std::size_t k = 0; k < Hp.arcs.size(); ++k) {
        if (!info[k].good || !info[k].heavy) continue;
        std::map<int, i64> mass_of_class;
        for (auto [i, x] : info[k].heavy_per_cluster) mass_of_class[size_class(x)] += x;
        int best = -1;
        i64 best_mass = -1;
        for (auto [j, x] : mass_of_class)
            if (x > best_mass) {
                best = j;
                best_mass = x;
            }
        choice[k] = best;
        ++votes[best];
    }
    std::size_t top = 0;
    for (auto [j, v] : votes)
        if (v > top) {
            top = v;
            au.j_star = j;
        }
    au.r_star = top;
    const double need = std::pow(2.0, au.j_star - 1);

    Rng rng(seed, "partition");
    std::vector<std::vector<int>> best_parts;
    i64 best_mass = -1;
    for (int t = 0; t < std::max(1, params.trials); ++t) {
        ++au.trials_used;
        std::vector<int> order(r);
        for (std::size_t i = 0; i < r; ++i) order[i] = static_cast<int>(i);
        rng.shuffle(order);
        auto owner = [&](const std::vector<std::vector<i64>>& cnt, int q) {
            for (int i : order)
                if (static_cast<double>(cnt[i][q]) >= need) return i;
            return -1;
        };
        std::vector<int> own_e(Hp.edge_queries.size()), own_v(Hp.vertex_queries.size());
        for (std::size_t q = 0; q < own_e.size(); ++q) own_e[q] = owner(cnt_e, static_cast<int>(q));
        for (std::size_t q = 0; q < own_v.size(); ++q) own_v[q] = owner(cnt_v, static_cast<int>(q));
        std::vector<std::vector<int>> parts(r);
        i64 mass = 0;
        for (std::size_t k = 0; k < Hp.arcs.size(); ++k) {
            if (choice[k] != au.j_star) continue;
            const int i = own_e[Hp.arcs[k].edge_query];
            if (i < 0 || i != own_v[Hp.arcs[k].vertex_query]) continue;
            const auto it = info[k].heavy_per_cluster.find(i);
            if (it == info[k].heavy_per_cluster.end() || size_class(it->second) != au.j_star) continue;
            parts[i].push_back(static_cast<int>(k));
            ++mass;
        }
        if (mass > best_mass) {
            best_mass = mass;
            best_parts = std::move(parts);
        }
        if (static_cast<double>(best_mass) >= au.mass_target) break;
    }
    au.mass = best_mass;
    for (auto& p : best_parts)
        if (!p.empty()) {
            if (static_cast<double>(p.size()) > au.part_bound + 1e-9) au.part_bound_ok = false;
            out.parts.push_back(std::move(p));
        }
    return out;
}

// ---- the decision procedure -------------------------------------------------------------

int effective_retries(const DriverParams& p) {
    if (const char* env = std::getenv("NDPLAB_TRIALS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        require(end != env && *end == '\0' && v >= 1, ErrorKind::Parameter,
                "NDPLAB_TRIALS must be a positive integer");
        return static_cast<int>(v);
    }
    return p.retries;
}

std::string to_string(Outcome o) {
    switch (o) {
        case Outcome::Yes: return "YES";
        case Outcome::No: return "NO";
        case Outcome::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

Decision decide(const ColoringInstance& G, int ell, const NdpSolver& solver, const DriverParams& params, u64 seed) {
    const ConstraintGraph H = build_constraint_graph(G, ell);
    const double six = static_cast<double>(ipow(6, ell)), logn = log_m(G.n), l = ell;
    Decision d;
    d.alpha = params.c_yi * params.c_yi * params.alpha_star * std::pow(l, 6) * std::pow(logn, 6);
    d.strategy_threshold = std::pow(2.0, -params.gamma * ell / 2);
    d.global_threshold = std::pow(2.0, -params.gamma * ell);
    d.phase_bound = 1 + std::log2(static_cast<double>(std::max<std::size_t>(H.arcs.size(), 2))) / (params.gamma * ell / 16);
    const int retries = effective_retries(params);
    const double c_case2 = 128 * std::pow(std::log2(6.0), 2);
    const double wanted_trials = std::ceil(2 * c_case2 * l * l * d.alpha * d.alpha * std::log(params.confidence));
    const int trials = static_cast<int>(std::min<double>(params.max_partition_trials, std::max(1.0, wanted_trials)));

    const Rng base(seed, "driver");
    u64 draws = 0;
    std::vector<std::vector<int>> active = {{}};
    for (std::size_t k = 0; k < H.arcs.size(); ++k) active[0].push_back(static_cast<int>(k));

    for (int phase = 0; !active.empty(); ++phase) {
        if (phase >= params.max_phases) {
            d.outcome = Outcome::Inconclusive;
            return d;
        }
        d.phases = phase + 1;
        PhaseAudit pa;
        pa.phase = phase;
        pa.active = active.size();
        for (const auto& c : active) pa.edges += c.size();
        std::vector<std::vector<int>> next;
        for (const std::vector<int>& arcs : active) {
            ClusterLog log;
            log.phase = phase;
            log.edges = arcs.size();
            const ConstraintGraph Hp = restrict_constraint_graph(H, arcs);
            const LevelGraph L = build_level_graph(Hp, ell);
            const SolverHint hint{&Hp, &L};
            log.route_threshold =
                static_cast<double>(arcs.size()) * six / (params.c_yi * params.alpha_star * std::pow(l, 3) * std::pow(logn, 3));
            log.value_threshold = static_cast<double>(arcs.size()) * six / d.alpha;

            // Steps 2-3: independent NDP instances until one is routed well.
            NdpInstance chosen;
            PathSet routing;
            bool found = false;
            for (int k = 0; k < retries && !found; ++k) {
                Rng child = base.split("instance", draws++);
                NdpInstance inst = build_ndp_instance(L.instance, child(), params.profile);
                PathSet ps = solver(inst, hint);
                const i64 routed = static_cast<i64>(routed_pairs(inst, ps).size());
                ++log.instances_tried;
                log.best_routed = std::max(log.best_routed, routed);
                if (static_cast<double>(routed) >= log.route_threshold) {
                    chosen = std::move(inst);
                    routing = std::move(ps);
                    found = true;
                }
            }
            if (!found) {
                log.result = "no-routing";
                d.cluster_log.push_back(log);
                d.phase_log.push_back(pa);
                d.outcome = Outcome::No;
                d.step = 3;
                d.failing_cluster = arcs;
                return d;
            }

            // Step 4: GPwB solution from the routing.
            const Extraction ex = extract_gpwb_solution(L.instance, chosen, routing, params.profile);
            log.solution_value = ex.audit.value;
            if (static_cast<double>(ex.audit.value) < log.value_threshold - 1e-9) {
                log.result = "low-value";
                d.cluster_log.push_back(log);
                d.phase_log.push_back(pa);
                d.outcome = Outcome::Inconclusive;
                d.failing_cluster = arcs;
                return d;
            }

            // Step 5: strategy or partition.
            const Dichotomy dich = strategy_or_partition(Hp, L, ex.solution,
                                                         {d.alpha, params.gamma, params.c_prime, trials},
                                                         base.split("dichotomy", draws++)());
            log.dichotomy = dich.audit;
            if (dich.is_strategy) {
                const double frac = dich.strategy.exact_fraction(Hp);
                if (frac <= d.strategy_threshold) {
                    log.result = "weak-strategy";
                    d.cluster_log.push_back(log);
                    d.phase_log.push_back(pa);
                    d.outcome = Outcome::No;
                    d.step = 5;
                    d.failing_cluster = arcs;
                    return d;
                }
                log.result = "strategy";
                d.certificate.push_back({arcs, dich.strategy, frac});
                ++pa.to_inactive;
            } else {
                if (static_cast<double>(dich.audit.mass) < dich.audit.mass_target) {
                    log.result = "low-mass";
                    d.cluster_log.push_back(log);
                    d.phase_log.push_back(pa);
                    d.outcome = Outcome::No;
                    d.step = 5;
                    d.failing_cluster = arcs;
                    return d;
                }
                log.result = "partition";
                for (const auto& part : dich.parts) {
                    std::vector<int> mapped;
                    for (int k : part) mapped.push_back(arcs[k]);
                    next.push_back(std::move(mapped));
                    ++pa.parts_added;
                }
            }
            d.cluster_log.push_back(log);
        }
        d.phase_log.push_back(pa);
        active = std::move(next);
    }
    d.outcome = Outcome::Yes;
    double covered = 0;
    for (const auto& c : d.certificate) covered += c.fraction * static_cast<double>(c.arcs.size());
    d.global_fraction = covered / static_cast<double>(H.arcs.size());
    return d;
}

Report verify_certificate(const ConstraintGraph& H, const Decision& d, double gamma) {
    Report rep;
    if (d.outcome != Outcome::Yes) {
        rep.fail("decision is not YES");
        return rep;
    }
    const double per_cluster = std::pow(2.0, -gamma * H.ell / 2), global = std::pow(2.0, -gamma * H.ell);
    std::set<int> arcs_seen, eq_seen, vq_seen;
    double covered = 0;
    for (std::size_t c = 0; c < d.certificate.size(); ++c) {
        const CertificateEntry& e = d.certificate[c];
        std::set<int> eq, vq;
        for (int a : e.arcs) {
            if (a < 0 || static_cast<std::size_t>(a) >= H.arcs.size()) {
                rep.fail("cluster " + std::to_string(c) + " names an unknown random string");
                return rep;
            }
            if (!arcs_seen.insert(a).second) rep.fail("random string " + std::to_string(a) + " in two clusters");
            eq.insert(H.arcs[a].edge_query);
            vq.insert(H.arcs[a].vertex_query);
        }
        for (int q : eq)
            if (eq_seen.count(q)) rep.fail("edge query shared by two clusters");
        for (int q : vq)
            if (vq_seen.count(q)) rep.fail("vertex query shared by two clusters");
        eq_seen.insert(eq.begin(), eq.end());
        vq_seen.insert(vq.begin(), vq.end());
        // Recompute the expected satisfied count directly from the answer lists.
        const ConstraintGraph Hp = restrict_constraint_graph(H, e.arcs);
        const ProverStrategy& s = e.strategy;
        if (s.r <= 0 || s.edge_answers.size() != static_cast<std::size_t>(s.r) ||
            s.vertex_answers.size() != static_cast<std::size_t>(s.r)) {
            rep.fail("cluster " + std::to_string(c) + " has a malformed strategy");
            continue;
        }
        double expected = 0;
        for (int i = 0; i < s.r; ++i) {
            if (s.edge_answers[i].size() != Hp.edge_queries.size() ||
                s.vertex_answers[i].size() != Hp.vertex_queries.size()) {
                rep.fail("cluster " + std::to_string(c) + " strategy does not cover its queries");
                break;
            }
            for (const auto& arc : Hp.arcs) {
                std::vector<int> ea = s.edge_answers[i][arc.edge_query], va = s.vertex_answers[i][arc.vertex_query];
                if (ea.empty()) ea = {0};
                if (va.empty()) va = {0};
                i64 hits = 0;
                for (int a : ea)
                    for (int b : va)
                        if (project_answer(arc.string, a) == b) ++hits;
                expected += static_cast<double>(hits) / static_cast<double>(ea.size() * va.size()) / s.r;
            }
        }
        const double frac = expected / static_cast<double>(Hp.arcs.size());
        if (std::abs(frac - e.fraction) > 1e-9)
            rep.fail("cluster " + std::to_string(c) + " stored fraction " + std::to_string(e.fraction) +
                     " differs from recomputed " + std::to_string(frac));
        if (!(frac > per_cluster)) rep.fail("cluster " + std::to_string(c) + " strategy fraction not above 2^{-gamma l/2}");
        covered += frac * static_cast<double>(e.arcs.size());
    }
    const double g = covered / static_cast<double>(H.arcs.size());
    if (std::abs(g - d.global_fraction) > 1e-9) rep.fail("aggregated fraction differs from the certificate");
    if (!(g > global)) rep.fail("aggregated fraction not above 2^{-gamma l}");
    return rep;
}

}  // namespace ndp
