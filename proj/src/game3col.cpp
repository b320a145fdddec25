#include "ndp/game3col.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ndp {

namespace {

// The six permutations of {0,1,2}; f_b applies permutation b digit-wise.
constexpr int kPerms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
// Edge answer codes: ordered pairs of distinct colors.
constexpr int kPairs[6][2] = {{0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}};

std::string join(const std::vector<int>& q) {
    std::string s;
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (i) s += '.';
        s += std::to_string(q[i]);
    }
    return s;
}

}  // namespace

i64 ipow(i64 b, int e) {
    i64 r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

ColoringInstance make_coloring_instance(int n, std::vector<std::pair<int, int>> edges, bool require_regular) {
    require(n >= 1, ErrorKind::Domain, "graph needs at least one vertex");
    for (auto& [u, v] : edges) {
        require(u >= 0 && v >= 0 && u < n && v < n, ErrorKind::OutOfBounds, "edge endpoint out of range");
        require(u != v, ErrorKind::Domain, "self-loop");
        if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    require(std::adjacent_find(edges.begin(), edges.end()) == edges.end(), ErrorKind::Domain, "parallel edge");
    std::vector<int> deg(n, 0);
    for (auto [u, v] : edges) ++deg[u], ++deg[v];
    const bool regular = std::all_of(deg.begin(), deg.end(), [](int d) { return d == 5; });
    require(regular || !require_regular, ErrorKind::Domain, "graph is not 5-regular");
    return {n, std::move(edges), regular};
}

std::size_t verify_coloring(const ColoringInstance& G, const Coloring& chi) {
    require(static_cast<int>(chi.size()) == G.n, ErrorKind::Domain, "coloring is not total");
    for (int c : chi) require(c >= 0 && c <= 2, ErrorKind::Domain, "color outside {r,g,b}");
    std::size_t ok = 0;
    for (auto [u, v] : G.edges) ok += chi[u] != chi[v];
    return ok;
}

std::pair<ColoringInstance, Coloring> complete_bipartite_55() {
    std::vector<std::pair<int, int>> e;
    for (int u = 0; u < 5; ++u)
        for (int v = 5; v < 10; ++v) e.push_back({u, v});
    Coloring chi(10);
    for (int v = 0; v < 10; ++v) chi[v] = v < 5 ? 0 : 1;
    return {make_coloring_instance(10, e), chi};
}

std::pair<ColoringInstance, Coloring> planted_5regular(int n, u64 seed) {
    require(n >= 12 && n % 6 == 0, ErrorKind::Parameter, "planted 5-regular graphs need n divisible by 6, n >= 12");
    const int s = n / 3;
    Rng rng(seed, "planted-3col");
    // Class k holds vertices k*s .. k*s+s-1. Half of each class sends 2 edges
    // to the next class and 3 to the other; the other half the reverse, so
    // each pair of classes carries exactly 5s/2 edges.
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::set<std::pair<int, int>> edges;
        bool ok = true;
        for (int a = 0; a < 3 && ok; ++a) {
            const int b = (a + 1) % 3;
            std::vector<int> stubs_a, stubs_b;
            for (int i = 0; i < s; ++i) {
                // degree of a-vertex towards b and of b-vertex towards a
                const int da = i < s / 2 ? 2 : 3;
                const int db = i < s / 2 ? 3 : 2;
                for (int t = 0; t < da; ++t) stubs_a.push_back(a * s + i);
                for (int t = 0; t < db; ++t) stubs_b.push_back(b * s + i);
            }
            rng.shuffle(stubs_b);
            for (std::size_t t = 0; t < stubs_a.size() && ok; ++t) {
                auto e = std::minmax(stubs_a[t], stubs_b[t]);
                ok = edges.insert({e.first, e.second}).second;
            }
        }
        if (!ok) continue;
        Coloring chi(n);
        for (int v = 0; v < n; ++v) chi[v] = v / s;
        return {make_coloring_instance(n, {edges.begin(), edges.end()}), chi};
    }
    throw Error(ErrorKind::Capacity, "could not sample a simple planted 5-regular graph");
}

bool is_3_colorable(const ColoringInstance& G) {
    require(G.n <= 40, ErrorKind::Capacity, "exhaustive 3-colorability limited to 40 vertices");
    std::vector<std::vector<int>> adj(G.n);
    for (auto [u, v] : G.edges) adj[u].push_back(v), adj[v].push_back(u);
    std::vector<int> col(G.n, -1);
    std::function<bool(int)> rec = [&](int v) {
        if (v == G.n) return true;
        for (int c = 0; c < 3; ++c) {
            bool ok = true;
            for (int w : adj[v]) ok = ok && col[w] != c;
            if (!ok) continue;
            col[v] = c;
            if (rec(v + 1)) return true;
            col[v] = -1;
            if (v == 0) break;  // color symmetry
        }
        return false;
    };
    return rec(0);
}

std::string edge_query_id(const std::vector<int>& q) { return "E:" + join(q); }
std::string vertex_query_id(const std::vector<int>& q) { return "V:" + join(q); }

std::pair<int, int> edge_answer_colors(int code) { return {kPairs[code][0], kPairs[code][1]}; }

int edge_answer_code(int cu, int cv) {
    for (int i = 0; i < 6; ++i)
        if (kPairs[i][0] == cu && kPairs[i][1] == cv) return i;
    throw Error(ErrorKind::Domain, "edge answer must color its endpoints differently");
}

int answer_digit(int answer, int base, int i) { return static_cast<int>(answer / ipow(base, i) % base); }

int project_answer(const RandomString& R, int edge_answer) {
    int a = 0;
    for (std::size_t i = R.edges.size(); i-- > 0;) {
        const int d = answer_digit(edge_answer, 6, static_cast<int>(i));
        a = a * 3 + kPairs[d][R.ends[i]];
    }
    return a;
}

bool consistent(const RandomString& R, int edge_answer, int vertex_answer) {
    return project_answer(R, edge_answer) == vertex_answer;
}

// ---- constraint graphs --------------------------------------------------------

ConstraintGraph constraint_graph_from_strings(const ColoringInstance& G, int ell, std::vector<RandomString> strings) {
    require(ell >= 1, ErrorKind::Parameter, "l must be >= 1");
    ConstraintGraph H;
    H.ell = ell;
    std::map<std::vector<int>, int> eq_index, vq_index;
    std::set<RandomString> seen;
    for (RandomString& R : strings) {
        require(static_cast<int>(R.edges.size()) == ell && static_cast<int>(R.ends.size()) == ell, ErrorKind::Parameter,
                "random string of the wrong length");
        require(seen.insert(R).second, ErrorKind::Parameter, "repeated random string");
        std::vector<int> vq(ell);
        for (int i = 0; i < ell; ++i) {
            require(R.edges[i] >= 0 && static_cast<std::size_t>(R.edges[i]) < G.m(), ErrorKind::OutOfBounds,
                    "random string names a missing edge");
            require(R.ends[i] == 0 || R.ends[i] == 1, ErrorKind::Parameter, "endpoint selector must be 0 or 1");
            vq[i] = R.ends[i] == 0 ? G.edges[R.edges[i]].first : G.edges[R.edges[i]].second;
        }
        auto [ei, enew] = eq_index.try_emplace(R.edges, static_cast<int>(H.edge_queries.size()));
        if (enew) H.edge_queries.push_back(R.edges);
        auto [vi, vnew] = vq_index.try_emplace(vq, static_cast<int>(H.vertex_queries.size()));
        if (vnew) H.vertex_queries.push_back(vq);
        H.arcs.push_back({ei->second, vi->second, std::move(R)});
    }
    return H;
}

ConstraintGraph build_constraint_graph(const ColoringInstance& G, int ell, i64 cap) {
    require(ell >= 1, ErrorKind::Parameter, "l must be >= 1");
    const i64 per = 2 * static_cast<i64>(G.m());
    i64 total = 1;
    for (int i = 0; i < ell; ++i) {
        total *= per;
        require(total <= cap, ErrorKind::Capacity,
                "full constraint graph exceeds the cap of " + std::to_string(cap) + " random strings; supply a restriction");
    }
    std::vector<RandomString> all;
    all.reserve(static_cast<std::size_t>(total));
    for (i64 code = 0; code < total; ++code) {
        RandomString R;
        i64 c = code;
        for (int i = 0; i < ell; ++i) {
            R.edges.push_back(static_cast<int>((c % per) / 2));
            R.ends.push_back(static_cast<int>(c % 2));
            c /= per;
        }
        std::reverse(R.edges.begin(), R.edges.end());
        std::reverse(R.ends.begin(), R.ends.end());
        all.push_back(std::move(R));
    }
    std::sort(all.begin(), all.end());
    return constraint_graph_from_strings(G, ell, std::move(all));
}

std::vector<RandomString> sample_random_strings(const ColoringInstance& G, int ell, std::size_t count, u64 seed) {
    const i64 per = 2 * static_cast<i64>(G.m());
    i64 total = 1;
    for (int i = 0; i < ell && total <= static_cast<i64>(count); ++i) total *= per;
    require(static_cast<i64>(count) <= total, ErrorKind::Parameter, "more random strings requested than exist");
    Rng rng(seed, "random-strings");
    std::set<RandomString> chosen;
    while (chosen.size() < count) {
        RandomString R;
        for (int i = 0; i < ell; ++i) {
            R.edges.push_back(static_cast<int>(rng.below(G.m())));
            R.ends.push_back(static_cast<int>(rng.below(2)));
        }
        chosen.insert(std::move(R));
    }
    return {chosen.begin(), chosen.end()};
}

ConstraintGraph restrict_constraint_graph(const ConstraintGraph& H, const std::vector<int>& arcs) {
    ConstraintGraph out;
    out.ell = H.ell;
    std::map<int, int> eq, vq;
    for (int a : arcs) {
        require(a >= 0 && static_cast<std::size_t>(a) < H.arcs.size(), ErrorKind::OutOfBounds, "arc index out of range");
        const auto& arc = H.arcs[a];
        auto [ei, enew] = eq.try_emplace(arc.edge_query, static_cast<int>(out.edge_queries.size()));
        if (enew) out.edge_queries.push_back(H.edge_queries[arc.edge_query]);
        auto [vi, vnew] = vq.try_emplace(arc.vertex_query, static_cast<int>(out.vertex_queries.size()));
        if (vnew) out.vertex_queries.push_back(H.vertex_queries[arc.vertex_query]);
        out.arcs.push_back({ei->second, vi->second, arc.string});
    }
    return out;
}

// ---- level graph ------------------------------------------------------------------

LevelGraph build_level_graph(const ConstraintGraph& H, int ell) {
    require(ell == H.ell, ErrorKind::Parameter, "level graph l differs from the constraint graph's");
    require(!H.arcs.empty(), ErrorKind::Domain, "empty constraint graph");
    const int six = static_cast<int>(ipow(6, ell)), three = static_cast<int>(ipow(3, ell)),
              two = static_cast<int>(ipow(2, ell));
    LevelGraph L;
    L.ell = ell;
    GpwbInstance& I = L.instance;
    for (std::size_t q = 0; q < H.edge_queries.size(); ++q) {
        const std::string qid = edge_query_id(H.edge_queries[q]);
        I.group_left_ids.push_back("S(" + qid + ")");
        std::vector<int> g;
        for (int a = 0; a < six; ++a) {
            g.push_back(static_cast<int>(I.left_ids.size()));
            I.left_ids.push_back("v(" + qid + ";" + std::to_string(a) + ")");
        }
        I.groups_left.push_back(std::move(g));
    }
    for (std::size_t q = 0; q < H.vertex_queries.size(); ++q) {
        const std::string qid = vertex_query_id(H.vertex_queries[q]);
        I.group_right_ids.push_back("S(" + qid + ")");
        std::vector<int> g;
        for (int a = 0; a < three; ++a)
            for (int j = 0; j < two; ++j) {
                g.push_back(static_cast<int>(I.right_ids.size()));
                I.right_ids.push_back("v" + std::to_string(j + 1) + "(" + qid + ";" + std::to_string(a) + ")");
            }
        I.groups_right.push_back(std::move(g));
    }
    L.edges_of_arc.resize(H.arcs.size());
    for (std::size_t r = 0; r < H.arcs.size(); ++r) {
        const auto& arc = H.arcs[r];
        for (int a = 0; a < six; ++a) {
            const int ap = project_answer(arc.string, a);
            for (int j = 0; j < two; ++j) {
                L.edges_of_arc[r].push_back(static_cast<int>(I.edges.size()));
                I.edges.push_back({arc.edge_query * six + a, arc.vertex_query * six + ap * two + j});
                I.edge_ids.push_back("e(" + std::to_string(r) + ";" + std::to_string(a) + ";" + std::to_string(j + 1) + ")");
                L.edge_info.push_back({static_cast<int>(r), a, ap, j});
            }
        }
    }
    I.r = six;
    I.h = static_cast<i64>(H.arcs.size());
    return L;
}

GpwbInstance gpwb_of(const ConstraintGraph& H, int ell) { return build_level_graph(H, ell).instance; }

// ---- perfect assignments ------------------------------------------------------------

PerfectFamily::PerfectFamily(const ColoringInstance& G, Coloring chi, int ell) : g_(G), chi_(std::move(chi)), ell_(ell) {
    require(ell >= 1, ErrorKind::Parameter, "l must be >= 1");
    require(verify_coloring(G, chi_) == G.m(), ErrorKind::Contract, "perfect assignments need a valid coloring");
}

int PerfectFamily::edge_answer(i64 b, const std::vector<int>& q) const {
    require(b >= 0 && b < size(), ErrorKind::OutOfBounds, "assignment index out of range");
    int a = 0;
    for (int i = ell_ - 1; i >= 0; --i) {
        const int* p = kPerms[answer_digit(static_cast<int>(b), 6, i)];
        const auto [u, v] = g_.edges[q[i]];
        a = a * 6 + edge_answer_code(p[chi_[u]], p[chi_[v]]);
    }
    return a;
}

int PerfectFamily::vertex_answer(i64 b, const std::vector<int>& q) const {
    require(b >= 0 && b < size(), ErrorKind::OutOfBounds, "assignment index out of range");
    int a = 0;
    for (int i = ell_ - 1; i >= 0; --i) a = a * 3 + kPerms[answer_digit(static_cast<int>(b), 6, i)][chi_[q[i]]];
    return a;
}

GlobalAssignment PerfectFamily::assignment(i64 b, const ConstraintGraph& H) const {
    GlobalAssignment f;
    for (const auto& q : H.edge_queries) f.edge_answer.push_back(edge_answer(b, q));
    for (const auto& q : H.vertex_queries) f.vertex_answer.push_back(vertex_answer(b, q));
    return f;
}

PerfectFamily perfect_assignments(const ColoringInstance& G, const Coloring& chi, int ell) { return {G, chi, ell}; }

GpwbSolution perfect_gpwb_solution(const ColoringInstance& G, const Coloring& chi, const ConstraintGraph& H,
                                   const LevelGraph& L) {
    const PerfectFamily fam(G, chi, L.ell);
    const int six = static_cast<int>(ipow(6, L.ell)), two = static_cast<int>(ipow(2, L.ell));
    const GpwbInstance& I = L.instance;
    GpwbSolution S;
    S.clusters.resize(six);
    S.selected.resize(six);
    std::vector<int> cluster_left(I.left_ids.size(), -1), cluster_right(I.right_ids.size(), -1);
    // next_copy[(vertex query, A')] = lowest unused copy index
    std::vector<int> next_copy(H.vertex_queries.size() * static_cast<std::size_t>(ipow(3, L.ell)), 0);
    for (int b = 0; b < six; ++b) {
        for (std::size_t q = 0; q < H.edge_queries.size(); ++q) {
            const int v = static_cast<int>(q) * six + fam.edge_answer(b, H.edge_queries[q]);
            S.clusters[b].push_back({Part::Left, v});
            cluster_left[v] = b;
        }
        for (std::size_t q = 0; q < H.vertex_queries.size(); ++q) {
            const int ap = fam.vertex_answer(b, H.vertex_queries[q]);
            int& j = next_copy[q * static_cast<std::size_t>(ipow(3, L.ell)) + ap];
            require(j < two, ErrorKind::Contract, "vertex answer used more than 2^l times");
            const int v = static_cast<int>(q) * six + ap * two + j++;
            S.clusters[b].push_back({Part::Right, v});
            cluster_right[v] = b;
        }
    }
    for (std::size_t e = 0; e < I.edges.size(); ++e) {
        const int c = cluster_left[I.edges[e].first];
        if (c >= 0 && c == cluster_right[I.edges[e].second]) S.selected[c].push_back(static_cast<int>(e));
    }
    return S;
}

double evaluate_strategy(const ConstraintGraph& H, const GlobalAssignment& f) {
    require(!H.arcs.empty(), ErrorKind::Domain, "strategy value undefined on an empty constraint graph");
    require(f.edge_answer.size() == H.edge_queries.size() && f.vertex_answer.size() == H.vertex_queries.size(),
            ErrorKind::Domain, "strategy does not answer every query");
    std::size_t ok = 0;
    for (const auto& arc : H.arcs) {
        const int a = f.edge_answer[arc.edge_query], ap = f.vertex_answer[arc.vertex_query];
        require(a >= 0 && ap >= 0, ErrorKind::Domain, "strategy leaves a query unanswered");
        ok += consistent(arc.string, a, ap);
    }
    return static_cast<double>(ok) / static_cast<double>(H.arcs.size());
}

double evaluate_strategy(const ConstraintGraph& H, const std::function<GlobalAssignment(Rng&)>& sample, int trials,
                         u64 seed) {
    require(trials >= 1, ErrorKind::Parameter, "need at least one trial");
    Rng rng(seed, "strategy-trials");
    double total = 0;
    for (int t = 0; t < trials; ++t) total += evaluate_strategy(H, sample(rng));
    return total / trials;
}

}  // namespace ndp
