#include "ndp/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace ndp {

namespace {

Json coord(GridCoord c) { return Json::array({c.row, c.col}); }

GridCoord coord_from(const Json& j) {
    require(j.is_array() && j.size() == 2, ErrorKind::Parse, "expected a [row, col] pair");
    return {j.at(0).get<i64>(), j.at(1).get<i64>()};
}

Json vref(const VertexRef& v) { return Json::array({v.side == Part::Left ? "L" : "R", v.index}); }

VertexRef vref_from(const Json& j) {
    require(j.is_array() && j.size() == 2, ErrorKind::Parse, "expected a [side, index] vertex");
    const std::string side = j.at(0).get<std::string>();
    require(side == "L" || side == "R", ErrorKind::Parse, "vertex side must be L or R");
    return {side == "L" ? Part::Left : Part::Right, j.at(1).get<int>()};
}

Json qpoint(const QPoint& p) { return Json::array({p.x, p.y, p.den}); }

Json pairs_json(const std::vector<std::pair<int, int>>& v) {
    Json out = Json::array();
    for (auto [a, b] : v) out.push_back(Json::array({a, b}));
    return out;
}

std::vector<std::pair<int, int>> pairs_from(const Json& j) {
    std::vector<std::pair<int, int>> out;
    for (const Json& e : j) {
        require(e.is_array() && e.size() == 2, ErrorKind::Parse, "expected a pair");
        out.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
    }
    return out;
}

Json blocks_json(const std::vector<Block>& blocks) {
    Json out = Json::array();
    for (const Block& b : blocks)
        out.push_back({{"col_lo", b.col_lo}, {"col_hi", b.col_hi}, {"vertex", b.vertex}, {"terminals", b.terminals}});
    return out;
}

std::vector<Block> blocks_from(const Json& j) {
    std::vector<Block> out;
    for (const Json& b : j)
        out.push_back({b.at("col_lo").get<i64>(), b.at("col_hi").get<i64>(), b.at("vertex").get<int>(),
                       b.at("terminals").get<std::vector<int>>()});
    return out;
}

Json terminals_json(const std::vector<Terminal>& ts) {
    Json out = Json::array();
    for (const Terminal& t : ts)
        out.push_back({{"at", coord(t.at)}, {"vertex", t.vertex}, {"bundle", t.bundle}, {"block", t.block}});
    return out;
}

std::vector<Terminal> terminals_from(const Json& j) {
    std::vector<Terminal> out;
    for (const Json& t : j)
        out.push_back({coord_from(t.at("at")), t.at("vertex").get<int>(), t.at("bundle").get<int>(),
                       t.at("block").get<int>()});
    return out;
}

Json distance_json(const DistanceCheck& d) {
    return {{"ok", d.ok}, {"witness_a", d.witness_a}, {"witness_b", d.witness_b}, {"between", d.between},
            {"distance", d.distance}};
}

}  // namespace

// ---- manifest and documents --------------------------------------------------------

Json to_json(const RunManifest& m) {
    return {{"subcommand", m.subcommand}, {"inputs", m.inputs}, {"profile", m.profile},
            {"seed", m.seed},             {"params", m.params}, {"version", m.version}};
}

RunManifest manifest_from_json(const Json& j) {
    RunManifest m;
    m.subcommand = j.value("subcommand", "");
    m.inputs = j.value("inputs", std::map<std::string, std::string>{});
    m.profile = j.value("profile", "");
    m.seed = j.value("seed", u64{0});
    m.params = j.value("params", std::map<std::string, std::string>{});
    m.version = j.value("version", "");
    return m;
}

std::string digest_bytes(std::string_view bytes) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(fnv1a(bytes)));
    return buf;
}

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), ErrorKind::Parse, path + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return digest_bytes(ss.str());
}

Json make_document(const std::string& kind, const RunManifest& manifest, Json data) {
    return {{"format_version", kFormatVersion}, {"kind", kind}, {"manifest", to_json(manifest)}, {"data", std::move(data)}};
}

Document parse_document(const std::string& text, const std::string& origin) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        std::size_t line = 1;
        for (std::size_t i = 0; i < e.byte && i < text.size(); ++i) line += text[i] == '\n';
        throw Error(ErrorKind::Parse, origin + ":" + std::to_string(line) + ": malformed JSON (" + e.what() + ")");
    }
    try {
        require(j.is_object(), ErrorKind::Parse, origin + ": document must be a JSON object");
        require(j.contains("format_version"), ErrorKind::Parse, origin + ": missing format_version");
        const int v = j.at("format_version").get<int>();
        require(v == kFormatVersion, ErrorKind::Parse,
                origin + ": unsupported format_version " + std::to_string(v));
        Document d;
        d.kind = j.at("kind").get<std::string>();
        d.manifest = manifest_from_json(j.value("manifest", Json::object()));
        d.data = j.at("data");
        return d;
    } catch (const Json::exception& e) {
        throw Error(ErrorKind::Parse, origin + ": " + e.what());
    }
}

Document read_document(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), ErrorKind::Parse, path + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_document(ss.str(), path);
}

Document read_document(const std::string& path, const std::string& expected_kind) {
    Document d = read_document(path);
    require(d.kind == expected_kind, ErrorKind::Parse,
            path + ": expected a '" + expected_kind + "' document, found '" + d.kind + "'");
    return d;
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

void write_document(const std::string& path, const Json& doc) {
    const std::string text = dump(doc);
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    require(static_cast<bool>(out), ErrorKind::Parse, path + ": cannot write file");
    out << text;
}

// ---- coloring instances and constraint graphs ------------------------------------------

Json to_json(const ColoringInstance& G, const Coloring* chi) {
    std::vector<std::vector<int>> adj(G.n);
    for (auto [u, v] : G.edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
    Json j = {{"n", G.n}, {"adjacency", adj}, {"regular", G.regular}};
    if (chi) j["coloring"] = *chi;
    return j;
}

ColoringInstance coloring_instance_from_json(const Json& j) {
    const int n = j.at("n").get<int>();
    const auto adj = j.at("adjacency").get<std::vector<std::vector<int>>>();
    require(static_cast<int>(adj.size()) == n, ErrorKind::Parse, "adjacency list length differs from n");
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v : adj[u]) {
            require(v >= 0 && v < n && v != u, ErrorKind::Parse, "adjacency entry out of range");
            if (u < v) edges.push_back({u, v});
        }
    return make_coloring_instance(n, std::move(edges), j.value("regular", true));
}

Coloring coloring_from_json(const Json& j) {
    if (!j.contains("coloring")) return {};
    return j.at("coloring").get<Coloring>();
}

Json to_json(const ConstantProfile& p) {
    return {{"name", p.name},
            {"c_grid", p.c_grid},
            {"c_block", p.c_block},
            {"c_space", p.c_space},
            {"c_sep_blocks", p.c_sep_blocks},
            {"c_sparsify", p.c_sparsify},
            {"c_step4", p.c_step4},
            {"c_cut", p.c_cut},
            {"c_base_exp", p.c_base_exp},
            {"c_lemma_exp", p.c_lemma_exp},
            {"c_route", p.c_route},
            {"c_degenerate", p.c_degenerate}};
}

ConstantProfile profile_from_json(const Json& j) {
    ConstantProfile p;
    p.name = j.at("name").get<std::string>();
    p.c_grid = j.at("c_grid").get<double>();
    p.c_block = j.at("c_block").get<double>();
    p.c_space = j.at("c_space").get<double>();
    p.c_sep_blocks = j.at("c_sep_blocks").get<double>();
    p.c_sparsify = j.at("c_sparsify").get<double>();
    p.c_step4 = j.at("c_step4").get<double>();
    p.c_cut = j.at("c_cut").get<double>();
    p.c_base_exp = j.at("c_base_exp").get<double>();
    p.c_lemma_exp = j.at("c_lemma_exp").get<double>();
    p.c_route = j.at("c_route").get<double>();
    p.c_degenerate = j.at("c_degenerate").get<double>();
    return p;
}

Json to_json(const ConstraintGraph& H) {
    Json arcs = Json::array();
    for (const auto& a : H.arcs)
        arcs.push_back({{"edge_query", a.edge_query}, {"vertex_query", a.vertex_query},
                        {"edges", a.string.edges}, {"ends", a.string.ends}});
    return {{"ell", H.ell}, {"edge_queries", H.edge_queries}, {"vertex_queries", H.vertex_queries}, {"arcs", arcs}};
}

ConstraintGraph constraint_graph_from_json(const Json& j) {
    ConstraintGraph H;
    H.ell = j.at("ell").get<int>();
    H.edge_queries = j.at("edge_queries").get<std::vector<std::vector<int>>>();
    H.vertex_queries = j.at("vertex_queries").get<std::vector<std::vector<int>>>();
    for (const Json& a : j.at("arcs")) {
        ConstraintGraph::Arc arc{a.at("edge_query").get<int>(), a.at("vertex_query").get<int>(),
                                 {a.at("edges").get<std::vector<int>>(), a.at("ends").get<std::vector<int>>()}};
        require(arc.edge_query >= 0 && static_cast<std::size_t>(arc.edge_query) < H.edge_queries.size() &&
                    arc.vertex_query >= 0 && static_cast<std::size_t>(arc.vertex_query) < H.vertex_queries.size(),
                ErrorKind::Parse, "arc query index out of range");
        H.arcs.push_back(std::move(arc));
    }
    return H;
}

// ---- GPwB -----------------------------------------------------------------------

Json to_json(const GpwbInstance& I) {
    return {{"left_ids", I.left_ids},
            {"right_ids", I.right_ids},
            {"edges", pairs_json(I.edges)},
            {"edge_ids", I.edge_ids},
            {"groups_left", I.groups_left},
            {"groups_right", I.groups_right},
            {"group_left_ids", I.group_left_ids},
            {"group_right_ids", I.group_right_ids},
            {"h", I.h},
            {"r", I.r}};
}

GpwbInstance gpwb_instance_from_json(const Json& j) {
    GpwbInstance I;
    I.left_ids = j.at("left_ids").get<std::vector<std::string>>();
    I.right_ids = j.at("right_ids").get<std::vector<std::string>>();
    I.edges = pairs_from(j.at("edges"));
    I.edge_ids = j.value("edge_ids", std::vector<std::string>{});
    I.groups_left = j.at("groups_left").get<std::vector<std::vector<int>>>();
    I.groups_right = j.at("groups_right").get<std::vector<std::vector<int>>>();
    I.group_left_ids = j.value("group_left_ids", std::vector<std::string>{});
    I.group_right_ids = j.value("group_right_ids", std::vector<std::string>{});
    I.h = j.at("h").get<i64>();
    I.r = j.at("r").get<i64>();
    for (auto [a, b] : I.edges)
        require(a >= 0 && static_cast<std::size_t>(a) < I.left_ids.size() && b >= 0 &&
                    static_cast<std::size_t>(b) < I.right_ids.size(),
                ErrorKind::Parse, "edge endpoint out of range");
    return I;
}

Json to_json(const GpwbSolution& S) {
    Json clusters = Json::array();
    for (const auto& c : S.clusters) {
        Json members = Json::array();
        for (const VertexRef& v : c) members.push_back(vref(v));
        clusters.push_back(members);
    }
    return {{"clusters", clusters}, {"selected", S.selected}, {"value", solution_value(S)}};
}

GpwbSolution gpwb_solution_from_json(const Json& j) {
    GpwbSolution S;
    for (const Json& c : j.at("clusters")) {
        std::vector<VertexRef> members;
        for (const Json& v : c) members.push_back(vref_from(v));
        S.clusters.push_back(std::move(members));
    }
    S.selected = j.at("selected").get<std::vector<std::vector<int>>>();
    return S;
}

// ---- NDP instances and routings ---------------------------------------------------------

Json to_json(const NdpInstance& inst) {
    Json pairs = Json::array();
    for (std::size_t p = 0; p < inst.pairs.size(); ++p) {
        const DemandPair& d = inst.pairs[p];
        pairs.push_back({{"id", d.id},
                         {"edge", d.edge},
                         {"source", d.source},
                         {"destination", d.destination},
                         {"s", coord(inst.source_of(static_cast<int>(p)))},
                         {"t", coord(inst.dest_of(static_cast<int>(p)))}});
    }
    return {{"grid", {{"height", inst.grid.height}, {"length", inst.grid.length}}},
            {"wall", inst.wall},
            {"source_row", inst.source_row},
            {"dest_row", inst.dest_row},
            {"middle_row", inst.middle_row},
            {"M", inst.M},
            {"log_m", inst.log_m},
            {"h", inst.h},
            {"r", inst.r},
            {"seed", inst.seed},
            {"profile", to_json(inst.profile)},
            {"source_blocks", blocks_json(inst.source_blocks)},
            {"dest_blocks", blocks_json(inst.dest_blocks)},
            {"sources", terminals_json(inst.sources)},
            {"destinations", terminals_json(inst.destinations)},
            {"pairs", pairs},
            {"rho_prime", inst.rho_prime},
            {"left_block_of", inst.left_block_of},
            {"right_block_of", inst.right_block_of}};
}

NdpInstance ndp_instance_from_json(const Json& j) {
    NdpInstance inst;
    inst.grid = {j.at("grid").at("height").get<i64>(), j.at("grid").at("length").get<i64>()};
    inst.wall = j.value("wall", false);
    inst.source_row = j.at("source_row").get<i64>();
    inst.dest_row = j.at("dest_row").get<i64>();
    inst.middle_row = j.at("middle_row").get<i64>();
    inst.M = j.at("M").get<i64>();
    inst.log_m = j.at("log_m").get<double>();
    inst.h = j.at("h").get<i64>();
    inst.r = j.at("r").get<i64>();
    inst.seed = j.at("seed").get<u64>();
    inst.profile = profile_from_json(j.at("profile"));
    inst.source_blocks = blocks_from(j.at("source_blocks"));
    inst.dest_blocks = blocks_from(j.at("dest_blocks"));
    inst.sources = terminals_from(j.at("sources"));
    inst.destinations = terminals_from(j.at("destinations"));
    for (const Json& p : j.at("pairs")) {
        DemandPair d{p.at("id").get<std::string>(), p.at("edge").get<int>(), p.at("source").get<int>(),
                     p.at("destination").get<int>()};
        require(d.source >= 0 && static_cast<std::size_t>(d.source) < inst.sources.size() && d.destination >= 0 &&
                    static_cast<std::size_t>(d.destination) < inst.destinations.size(),
                ErrorKind::Parse, "demand pair " + d.id + " names a missing terminal");
        inst.pairs.push_back(std::move(d));
    }
    inst.rho_prime = j.at("rho_prime").get<std::vector<int>>();
    inst.left_block_of = j.at("left_block_of").get<std::vector<int>>();
    inst.right_block_of = j.at("right_block_of").get<std::vector<int>>();
    return inst;
}

Json to_json(const PathSet& ps) {
    Json paths = Json::array();
    for (std::size_t i = 0; i < ps.size(); ++i) {
        Json w = Json::array();
        for (const GridCoord& c : ps.paths[i].waypoints) w.push_back(coord(c));
        paths.push_back({{"pair", ps.pairing[i]}, {"waypoints", w}});
    }
    return {{"paths", paths}};
}

PathSet path_set_from_json(const Json& j) {
    PathSet ps;
    for (const Json& p : j.at("paths")) {
        GridPath path;
        for (const Json& c : p.at("waypoints")) path.waypoints.push_back(coord_from(c));
        require(!path.waypoints.empty(), ErrorKind::Parse, "path without waypoints");
        ps.paths.push_back(std::move(path));
        ps.pairing.push_back(p.at("pair").get<std::string>());
    }
    return ps;
}

Json to_json(const SelectionAudit& a) {
    return {{"degenerate", a.degenerate},
            {"sizes", {a.m0, a.m1, a.m2, a.m3, a.m_final}},
            {"p", a.p},
            {"q", a.q},
            {"step3_modulus", a.step3_modulus},
            {"step4_modulus", a.step4_modulus},
            {"h_large", a.h_large},
            {"heavy_path", a.heavy_path},
            {"max_window_load", a.max_window_load},
            {"n_bound_exceeded", a.n_bound_exceeded},
            {"almost_distance_ok", a.almost_distance_ok},
            {"distance", distance_json(a.distance)}};
}

Json to_json(const RoutableSubset& rs) {
    return {{"pairs", rs.pairs}, {"cluster", rs.cluster}, {"audit", to_json(rs.audit)}};
}

RoutableSubset routable_subset_from_json(const Json& j) {
    RoutableSubset rs;
    rs.pairs = j.at("pairs").get<std::vector<int>>();
    rs.cluster = j.at("cluster").get<std::vector<int>>();
    require(rs.pairs.size() == rs.cluster.size(), ErrorKind::Parse, "subset pairs and clusters differ in length");
    return rs;
}

// ---- drawings, cuts and extraction -----------------------------------------------------

Json to_json(const Drawing& d) {
    Json points = Json::array(), edges = Json::array(), crossings = Json::array(), refs = Json::array();
    for (const QPoint& p : d.points) points.push_back(qpoint(p));
    for (const DrawnEdge& e : d.edges) {
        Json curve = Json::array();
        for (const QPoint& p : e.curve) curve.push_back(qpoint(p));
        edges.push_back({{"u", e.u}, {"v", e.v}, {"curve", curve}});
    }
    for (const Crossing& c : d.crossings)
        crossings.push_back({{"edges", {c.edge1, c.edge2}}, {"segments", {c.seg1, c.seg2}}, {"at", qpoint(c.at)}});
    for (const VertexRef& v : d.vertex_ref) refs.push_back(vref(v));
    return {{"points", points}, {"edges", edges}, {"crossings", crossings}, {"vertex_ref", refs},
            {"edge_ref", d.edge_ref}};
}

Json to_json(const Cut& c) {
    return {{"side", c.side},
            {"cut_edges", c.cut_edges},
            {"edges_a", c.edges_a},
            {"edges_b", c.edges_b},
            {"m", c.m},
            {"d", c.d},
            {"alpha", c.alpha},
            {"crossings", c.crossings},
            {"value", c.value()},
            {"value_bound", c.value_bound},
            {"planar_vertices", c.planar_vertices},
            {"separator_size", c.separator_size},
            {"value_after_separator", c.value_after_separator},
            {"value_after_step1", c.value_after_step1},
            {"value_after_step2", c.value_after_step2},
            {"portal_load_after_step1", c.portal_load_after_step1},
            {"uneven_split", c.uneven_split},
            {"even_split", c.even_split},
            {"refined", c.refined}};
}

Json to_json(const ExtractionAudit& a) {
    Json levels = Json::array();
    for (const PartitionLevel& l : a.levels)
        levels.push_back({{"level", l.level}, {"parts", l.parts}, {"edges", l.edges}, {"cuts", l.cuts},
                          {"cut_value", l.cut_value}});
    return {{"base_case", a.base_case},   {"routed", a.routed},     {"base_threshold", a.base_threshold},
            {"m0", a.m0},                 {"retained", a.retained}, {"depth", a.depth},
            {"depth_bound", a.depth_bound}, {"parts", a.parts},     {"merged", a.merged},
            {"value", a.value},           {"value_target", a.value_target}, {"levels", levels}};
}

// ---- driver ----------------------------------------------------------------------

Json to_json(const DichotomyAudit& a) {
    return {{"alpha", a.alpha},
            {"z", a.z},
            {"strings", a.strings},
            {"good", a.good},
            {"light", a.light},
            {"heavy", a.heavy},
            {"terrible_edges", a.terrible_edges},
            {"terrible_bound_ok", a.terrible_bound_ok},
            {"not_terrible_ok", a.not_terrible_ok},
            {"alpha_condition", a.alpha_condition},
            {"j_star", a.j_star},
            {"r_star", a.r_star},
            {"trials_used", a.trials_used},
            {"mass", a.mass},
            {"mass_target", a.mass_target},
            {"part_bound", a.part_bound},
            {"part_bound_ok", a.part_bound_ok}};
}

Json to_json(const ProverStrategy& s) {
    return {{"r", s.r}, {"edge_answers", s.edge_answers}, {"vertex_answers", s.vertex_answers}};
}

ProverStrategy prover_strategy_from_json(const Json& j) {
    ProverStrategy s;
    s.r = j.at("r").get<int>();
    s.edge_answers = j.at("edge_answers").get<std::vector<std::vector<std::vector<int>>>>();
    s.vertex_answers = j.at("vertex_answers").get<std::vector<std::vector<std::vector<int>>>>();
    return s;
}

Json to_json(const Decision& d) {
    Json cert = Json::array(), phases = Json::array(), clusters = Json::array();
    for (const CertificateEntry& c : d.certificate)
        cert.push_back({{"arcs", c.arcs}, {"strategy", to_json(c.strategy)}, {"fraction", c.fraction}});
    for (const PhaseAudit& p : d.phase_log)
        phases.push_back({{"phase", p.phase}, {"active", p.active}, {"edges", p.edges},
                          {"to_inactive", p.to_inactive}, {"parts_added", p.parts_added}});
    for (const ClusterLog& c : d.cluster_log)
        clusters.push_back({{"phase", c.phase},
                            {"edges", c.edges},
                            {"instances_tried", c.instances_tried},
                            {"best_routed", c.best_routed},
                            {"route_threshold", c.route_threshold},
                            {"solution_value", c.solution_value},
                            {"value_threshold", c.value_threshold},
                            {"result", c.result},
                            {"dichotomy", to_json(c.dichotomy)}});
    return {{"outcome", to_string(d.outcome)},
            {"step", d.step},
            {"failing_cluster", d.failing_cluster},
            {"certificate", cert},
            {"alpha", d.alpha},
            {"strategy_threshold", d.strategy_threshold},
            {"global_fraction", d.global_fraction},
            {"global_threshold", d.global_threshold},
            {"phases", d.phases},
            {"phase_bound", d.phase_bound},
            {"phase_log", phases},
            {"cluster_log", clusters}};
}

Decision decision_from_json(const Json& j) {
    Decision d;
    const std::string o = j.at("outcome").get<std::string>();
    if (o == "YES") d.outcome = Outcome::Yes;
    else if (o == "NO") d.outcome = Outcome::No;
    else if (o == "INCONCLUSIVE") d.outcome = Outcome::Inconclusive;
    else throw Error(ErrorKind::Parse, "unknown outcome " + o);
    d.step = j.value("step", 0);
    d.failing_cluster = j.value("failing_cluster", std::vector<int>{});
    for (const Json& c : j.at("certificate"))
        d.certificate.push_back(
            {c.at("arcs").get<std::vector<int>>(), prover_strategy_from_json(c.at("strategy")), c.at("fraction").get<double>()});
    d.alpha = j.value("alpha", 0.0);
    d.strategy_threshold = j.value("strategy_threshold", 0.0);
    d.global_fraction = j.value("global_fraction", 0.0);
    d.global_threshold = j.value("global_threshold", 0.0);
    d.phases = j.value("phases", 0);
    d.phase_bound = j.value("phase_bound", 0.0);
    return d;
}

Json to_json(const Report& r) { return {{"ok", r.ok}, {"violations", r.violations}}; }

}  // namespace ndp
