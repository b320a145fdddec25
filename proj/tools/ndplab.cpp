// ndplab: command-line front end for the whole pipeline. Every subcommand
// writes a versioned JSON document with its manifest; `verify` re-checks
// artifacts with the independent checkers of each module.
//
// Exit codes: 0 pass, 1 invariant failure, 2 usage or input error.

#include <chrono>
#include <iostream>
#include <map>
#include <set>
#include <string>

#include "CLI11.hpp"
#include "ndp/io.hpp"

using namespace ndp;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

/// Prints one line per checked invariant and remembers whether any failed.
class Verdict {
public:
    void check(const std::string& invariant, bool ok, const std::string& detail = "") {
        std::cout << (ok ? "PASS " : "FAIL ") << invariant;
        if (!detail.empty()) std::cout << ": " << detail;
        std::cout << "\n";
        ok_ = ok_ && ok;
    }
    void report(const std::string& invariant, const Report& r) {
        if (r.ok) {
            check(invariant, true);
            return;
        }
        for (const std::string& v : r.violations) check(invariant, false, v);
    }
    int exit_code() const {
        std::cout << (ok_ ? "verify: PASS\n" : "verify: FAIL\n");
        return ok_ ? kExitPass : kExitFail;
    }

private:
    bool ok_ = true;
};

RunManifest manifest(const std::string& sub, const std::string& profile, u64 seed) {
    RunManifest m;
    m.subcommand = sub;
    m.profile = profile;
    m.seed = seed;
    return m;
}

// ---- subcommands -----------------------------------------------------------------

struct Gen3ColOpts {
    std::string kind = "k55";
    int n = 12;
    u64 seed = 1;
    std::string out = "-";
};

int run_gen_3col(const Gen3ColOpts& o) {
    std::pair<ColoringInstance, Coloring> gc;
    if (o.kind == "k55") gc = complete_bipartite_55();
    else if (o.kind == "planted") gc = planted_5regular(o.n, o.seed);
    else throw Error(ErrorKind::Parameter, "unknown graph kind " + o.kind);
    RunManifest m = manifest("gen-3col", "", o.seed);
    m.params["kind"] = o.kind;
    if (o.kind == "planted") m.params["n"] = std::to_string(o.n);
    Json data = to_json(gc.first, &gc.second);
    data["checked_edges"] = verify_coloring(gc.first, gc.second);
    write_document(o.out, make_document("coloring", m, std::move(data)));
    return kExitPass;
}

struct BuildGpwbOpts {
    std::string graph;
    int ell = 1;
    std::size_t strings = 0;  // 0: every random string
    u64 seed = 1;
    std::string out = "-";
    std::string solution_out;
};

int run_build_gpwb(const BuildGpwbOpts& o) {
    const Document gd = read_document(o.graph, "coloring");
    const ColoringInstance G = coloring_instance_from_json(gd.data);
    const ConstraintGraph H = o.strings == 0
                                  ? build_constraint_graph(G, o.ell)
                                  : constraint_graph_from_strings(G, o.ell, sample_random_strings(G, o.ell, o.strings, o.seed));
    const LevelGraph L = build_level_graph(H, o.ell);
    const Report valid = validate_instance(L.instance);
    require(valid.ok, ErrorKind::Contract, "level graph instance is invalid");

    RunManifest m = manifest("build-gpwb", "", o.seed);
    m.inputs["graph"] = file_digest(o.graph);
    m.params["ell"] = std::to_string(o.ell);
    m.params["strings"] = std::to_string(o.strings);
    Json data = {{"ell", o.ell}, {"constraint_graph", to_json(H)}, {"instance", to_json(L.instance)}};
    write_document(o.out, make_document("gpwb", m, std::move(data)));

    if (!o.solution_out.empty()) {
        const Coloring chi = coloring_from_json(gd.data);
        require(!chi.empty(), ErrorKind::Parameter, o.graph + ": no coloring to build a perfect solution from");
        const GpwbSolution S = perfect_gpwb_solution(G, chi, H, L);
        RunManifest ms = m;
        ms.params["solution"] = "perfect";
        write_document(o.solution_out, make_document("gpwb-solution", ms, to_json(S)));
    }
    return kExitPass;
}

struct BuildNdpOpts {
    std::string gpwb;
    std::string profile = "desk";
    u64 seed = 1;
    std::string out = "-";
};

int run_build_ndp(const BuildNdpOpts& o) {
    const Document gd = read_document(o.gpwb, "gpwb");
    const GpwbInstance I = gpwb_instance_from_json(gd.data.at("instance"));
    const NdpInstance inst = build_ndp_instance(I, o.seed, ConstantProfile::by_name(o.profile));
    RunManifest m = manifest("build-ndp", o.profile, o.seed);
    m.inputs["gpwb"] = file_digest(o.gpwb);
    Json data = {{"gpwb", gd.data.at("instance")}, {"instance", to_json(inst)}};
    write_document(o.out, make_document("ndp", m, std::move(data)));
    return kExitPass;
}

struct RouteYesOpts {
    std::string instance, solution;
    u64 seed = 1;
    std::string out = "-";
};

int run_route_yes(const RouteYesOpts& o) {
    const Document nd = read_document(o.instance, "ndp");
    const GpwbInstance I = gpwb_instance_from_json(nd.data.at("gpwb"));
    const NdpInstance inst = ndp_instance_from_json(nd.data.at("instance"));
    const GpwbSolution S = gpwb_solution_from_json(read_document(o.solution, "gpwb-solution").data);
    require(is_perfect(I, S), ErrorKind::Parameter, o.solution + ": the YES router needs a perfect solution");

    // Wall routings of desk-scale instances have a waypoint per row; the
    // wall conversion is exercised by the library on small walls only.
    require(!inst.wall, ErrorKind::Parameter, o.instance + ": route-yes works on grid instances");
    const RoutableSubset rs = select_routable_subset(I, S, inst);
    const PathSet ps = route_spaced_out(inst, rs);
    const Report audit = audit_yes_routing(inst, rs, ps);

    RunManifest m = manifest("route-yes", inst.profile.name, o.seed);
    m.inputs["instance"] = file_digest(o.instance);
    m.inputs["solution"] = file_digest(o.solution);
    Json data = {{"routing", to_json(ps)}, {"subset", to_json(rs)}, {"audit", to_json(audit)}};
    write_document(o.out, make_document("routing", m, std::move(data)));
    return audit.ok ? kExitPass : kExitFail;
}

struct ExtractOpts {
    std::string instance, routing;
    std::string profile;  // empty: the instance's profile
    std::string out = "-";
};

int run_extract(const ExtractOpts& o) {
    const Document nd = read_document(o.instance, "ndp");
    const GpwbInstance I = gpwb_instance_from_json(nd.data.at("gpwb"));
    const NdpInstance inst = ndp_instance_from_json(nd.data.at("instance"));
    const PathSet ps = path_set_from_json(read_document(o.routing, "routing").data.at("routing"));
    const ConstantProfile profile = o.profile.empty() ? inst.profile : ConstantProfile::by_name(o.profile);
    const Extraction ex = extract_gpwb_solution(I, inst, ps, profile);

    RunManifest m = manifest("extract", profile.name, inst.seed);
    m.inputs["instance"] = file_digest(o.instance);
    m.inputs["routing"] = file_digest(o.routing);
    Json data = to_json(ex.solution);
    data["audit"] = to_json(ex.audit);
    write_document(o.out, make_document("gpwb-solution", m, std::move(data)));
    return kExitPass;
}

struct DriveOpts {
    std::string graph;
    int ell = 1;
    std::string solver = "oracle";
    std::string profile = "desk";
    u64 seed = 1;
    double gamma = 400;
    std::string out = "-";
};

int run_drive(const DriveOpts& o) {
    const Document gd = read_document(o.graph, "coloring");
    const ColoringInstance G = coloring_instance_from_json(gd.data);
    NdpSolver solver;
    if (o.solver == "greedy") solver = greedy_solver();
    else if (o.solver == "empty") solver = empty_solver();
    else if (o.solver == "oracle") {
        const Coloring chi = coloring_from_json(gd.data);
        require(!chi.empty(), ErrorKind::Parameter, o.graph + ": the oracle solver needs a coloring");
        solver = oracle_solver(G, chi);
    } else {
        throw Error(ErrorKind::Parameter, "unknown solver " + o.solver);
    }
    DriverParams params;
    params.gamma = o.gamma;
    params.profile = ConstantProfile::by_name(o.profile);
    const Decision d = decide(G, o.ell, solver, params, o.seed);

    RunManifest m = manifest("drive", o.profile, o.seed);
    m.inputs["graph"] = file_digest(o.graph);
    m.params["ell"] = std::to_string(o.ell);
    m.params["solver"] = o.solver;
    m.params["gamma"] = Json(o.gamma).dump();
    m.params["retries"] = std::to_string(effective_retries(params));
    write_document(o.out, make_document("decision", m, to_json(d)));
    std::cerr << "decision: " << to_string(d.outcome) << (d.step ? " (step " + std::to_string(d.step) + ")" : "")
              << "\n";
    return kExitPass;
}

// ---- verify ------------------------------------------------------------------------

void verify_routing(Verdict& v, const NdpInstance& inst, const Json& routing_data) {
    const PathSet ps = path_set_from_json(routing_data.at("routing"));
    std::map<std::string, int> pair_of;
    for (std::size_t i = 0; i < inst.pairs.size(); ++i) pair_of[inst.pairs[i].id] = static_cast<int>(i);

    PathSet valid;
    std::set<std::string> seen;
    std::string bad_path, bad_end, bad_id;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        const std::string& id = ps.pairing[i];
        std::string why;
        const bool ok = inst.wall ? is_valid_wall_path(ps.paths[i], WallSpec{inst.grid}, &why)
                                  : is_valid_path(ps.paths[i], inst.grid, &why);
        if (!ok && bad_path.empty()) bad_path = "path " + id + ": " + why;
        const auto it = pair_of.find(id);
        if ((it == pair_of.end() || !seen.insert(id).second) && bad_id.empty()) bad_id = "pair " + id;
        if (it != pair_of.end()) {
            const GridCoord s = inst.source_of(it->second), t = inst.dest_of(it->second);
            const GridCoord a = ps.paths[i].front(), b = ps.paths[i].back();
            if (!((a == s && b == t) || (a == t && b == s)) && bad_end.empty())
                bad_end = "path " + id + " does not join its terminals";
        }
        if (ok) {
            valid.paths.push_back(ps.paths[i]);
            valid.pairing.push_back(id);
        }
    }
    v.check("path-validity", bad_path.empty(), bad_path);
    v.check("pair-ids", bad_id.empty(), bad_id.empty() ? "" : bad_id + " unknown or routed twice");
    v.check("endpoints", bad_end.empty(), bad_end);
    std::string why;
    v.check("node-disjoint", verify_node_disjoint(valid, &why), why);

    // YES routings additionally promise spacing and a single middle-row crossing.
    if (routing_data.contains("subset") && !inst.wall) {
        why.clear();
        v.check("spaced-out", verify_spaced_out(valid, inst.grid, &why), why);
        if (bad_path.empty() && bad_end.empty()) {
            const RoutableSubset rs = routable_subset_from_json(routing_data.at("subset"));
            v.report("yes-routing", audit_yes_routing(inst, rs, ps));
        }
    }
}

struct VerifyOpts {
    std::string instance, routing, gpwb, solution, graph, decision;
};

int run_verify(const VerifyOpts& o) {
    Verdict v;
    if (!o.instance.empty()) {
        const Document nd = read_document(o.instance, "ndp");
        const GpwbInstance I = gpwb_instance_from_json(nd.data.at("gpwb"));
        const NdpInstance inst = ndp_instance_from_json(nd.data.at("instance"));
        v.report("gpwb-instance", validate_instance(I));
        v.report("ndp-instance", audit_instance(I, inst));
        if (!o.routing.empty()) verify_routing(v, inst, read_document(o.routing, "routing").data);
        if (!o.solution.empty()) {
            const GpwbSolution S = gpwb_solution_from_json(read_document(o.solution, "gpwb-solution").data);
            v.report("gpwb-solution", validate_solution(I, S));
        }
        return v.exit_code();
    }
    if (!o.gpwb.empty()) {
        const GpwbInstance I = gpwb_instance_from_json(read_document(o.gpwb, "gpwb").data.at("instance"));
        v.report("gpwb-instance", validate_instance(I));
        if (!o.solution.empty()) {
            const GpwbSolution S = gpwb_solution_from_json(read_document(o.solution, "gpwb-solution").data);
            const Report r = validate_solution(I, S);
            v.report("gpwb-solution", r);
            if (r.ok) std::cout << "value " << solution_value(S) << (is_perfect(I, S) ? " (perfect)" : "") << "\n";
        }
        return v.exit_code();
    }
    if (!o.graph.empty() && !o.decision.empty()) {
        const ColoringInstance G = coloring_instance_from_json(read_document(o.graph, "coloring").data);
        const Document dd = read_document(o.decision, "decision");
        const Decision d = decision_from_json(dd.data);
        const int ell = std::stoi(dd.manifest.params.at("ell"));
        const double gamma = Json::parse(dd.manifest.params.at("gamma")).get<double>();
        std::cout << "outcome " << to_string(d.outcome) << "\n";
        if (d.outcome == Outcome::Yes) v.report("certificate", verify_certificate(build_constraint_graph(G, ell), d, gamma));
        else v.check("certificate", d.certificate.empty(), d.certificate.empty() ? "" : "certificate on a non-YES outcome");
        return v.exit_code();
    }
    if (!o.graph.empty()) {
        const Document gd = read_document(o.graph, "coloring");
        const ColoringInstance G = coloring_instance_from_json(gd.data);
        const Coloring chi = coloring_from_json(gd.data);
        if (!chi.empty()) {
            const std::size_t good = chi.size() == static_cast<std::size_t>(G.n) ? verify_coloring(G, chi) : 0;
            v.check("coloring", good == G.m(), std::to_string(good) + "/" + std::to_string(G.m()) + " edges properly colored");
        }
        return v.exit_code();
    }
    throw CLI::ValidationError("verify", "give --instance, --gpwb, or --graph (with --decision)");
}

// ---- stats -------------------------------------------------------------------------

int run_stats(const std::string& input) {
    const Document d = read_document(input);
    std::cout << "kind " << d.kind << "\n";
    std::cout << "subcommand " << d.manifest.subcommand << "\n";
    if (!d.manifest.profile.empty()) std::cout << "profile " << d.manifest.profile << "\n";
    std::cout << "seed " << d.manifest.seed << "\n";
    for (const auto& [role, digest] : d.manifest.inputs) std::cout << "input " << role << " " << digest << "\n";
    const Json& x = d.data;
    if (d.kind == "coloring") {
        const ColoringInstance G = coloring_instance_from_json(x);
        std::cout << "vertices " << G.n << "\nedges " << G.m() << "\ncolored " << x.contains("coloring") << "\n";
    } else if (d.kind == "gpwb") {
        const GpwbInstance I = gpwb_instance_from_json(x.at("instance"));
        std::cout << "strings " << x.at("constraint_graph").at("arcs").size() << "\nleft " << I.left_ids.size()
                  << "\nright " << I.right_ids.size() << "\nedges " << I.num_edges() << "\nr " << I.r << "\nh " << I.h
                  << "\n";
    } else if (d.kind == "ndp") {
        const NdpInstance inst = ndp_instance_from_json(x.at("instance"));
        std::cout << "grid " << inst.grid.height << "x" << inst.grid.length << (inst.wall ? " (wall)" : "")
                  << "\npairs " << inst.pairs.size() << "\nsources " << inst.sources.size() << "\ndestinations "
                  << inst.destinations.size() << "\nrows " << inst.source_row << " " << inst.middle_row << " "
                  << inst.dest_row << "\n";
    } else if (d.kind == "routing") {
        const PathSet ps = path_set_from_json(x.at("routing"));
        i64 length = 0;
        for (const GridPath& p : ps.paths) length += p.length();
        std::cout << "paths " << ps.size() << "\ntotal_length " << length << "\n";
    } else if (d.kind == "gpwb-solution") {
        const GpwbSolution S = gpwb_solution_from_json(x);
        std::cout << "clusters " << S.clusters.size() << "\nvalue " << solution_value(S) << "\n";
        if (x.contains("audit"))
            std::cout << "base_case " << x["audit"]["base_case"] << "\ndepth " << x["audit"]["depth"] << "\n";
    } else if (d.kind == "decision") {
        std::cout << "outcome " << x.at("outcome").get<std::string>() << "\nstep " << x.at("step") << "\nphases "
                  << x.at("phases") << "\ncertificate " << x.at("certificate").size() << "\n";
    }
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ndplab: reductions, routings and extraction for node-disjoint paths in grids"};
    app.require_subcommand(1);
    const std::vector<std::string> profiles = {"paper", "desk", "stress"};

    Gen3ColOpts gen;
    auto* g = app.add_subcommand("gen-3col", "Generate a 3COL(5) instance with a coloring");
    g->add_option("--kind", gen.kind, "k55 or planted")->check(CLI::IsMember({"k55", "planted"}));
    g->add_option("--n", gen.n, "vertices of a planted instance (divisible by 6)");
    g->add_option("--seed", gen.seed);
    g->add_option("-o,--out", gen.out, "output file or - for stdout");

    BuildGpwbOpts bg;
    auto* b = app.add_subcommand("build-gpwb", "Constraint graph and GPwB instance of a 3COL(5) graph");
    b->add_option("--graph", bg.graph)->required()->check(CLI::ExistingFile);
    b->add_option("--ell", bg.ell)->check(CLI::Range(1, 3));
    b->add_option("--strings", bg.strings, "sample this many random strings (0: all)");
    b->add_option("--seed", bg.seed);
    b->add_option("-o,--out", bg.out);
    b->add_option("--solution-out", bg.solution_out, "also write the perfect solution");

    BuildNdpOpts bn;
    auto* n = app.add_subcommand("build-ndp", "NDP-Grid instance of a GPwB instance");
    n->add_option("--gpwb", bn.gpwb)->required()->check(CLI::ExistingFile);
    n->add_option("--profile", bn.profile)->check(CLI::IsMember(profiles));
    n->add_option("--seed", bn.seed);
    n->add_option("-o,--out", bn.out);

    RouteYesOpts ry;
    auto* r = app.add_subcommand("route-yes", "Spaced-out routing from a perfect GPwB solution");
    r->add_option("--instance", ry.instance)->required()->check(CLI::ExistingFile);
    r->add_option("--solution", ry.solution)->required()->check(CLI::ExistingFile);
    r->add_option("--seed", ry.seed, "recorded in the manifest; the routing itself is deterministic");
    r->add_option("-o,--out", ry.out);

    ExtractOpts ex;
    auto* e = app.add_subcommand("extract", "GPwB solution from any routing");
    e->add_option("--instance", ex.instance)->required()->check(CLI::ExistingFile);
    e->add_option("--routing", ex.routing)->required()->check(CLI::ExistingFile);
    e->add_option("--profile", ex.profile, "override the instance's profile")->check(CLI::IsMember(profiles));
    e->add_option("-o,--out", ex.out);

    VerifyOpts vo;
    auto* v = app.add_subcommand("verify", "Re-check artifacts with independent checkers");
    v->add_option("--instance", vo.instance)->check(CLI::ExistingFile);
    v->add_option("--routing", vo.routing)->check(CLI::ExistingFile);
    v->add_option("--gpwb", vo.gpwb)->check(CLI::ExistingFile);
    v->add_option("--solution", vo.solution)->check(CLI::ExistingFile);
    v->add_option("--graph", vo.graph)->check(CLI::ExistingFile);
    v->add_option("--decision", vo.decision)->check(CLI::ExistingFile);

    DriveOpts dr;
    auto* d = app.add_subcommand("drive", "Run the decision procedure with an NDP solver");
    d->add_option("--graph", dr.graph)->required()->check(CLI::ExistingFile);
    d->add_option("--ell", dr.ell)->check(CLI::Range(1, 3));
    d->add_option("--solver", dr.solver)->check(CLI::IsMember({"greedy", "oracle", "empty"}));
    d->add_option("--profile", dr.profile)->check(CLI::IsMember(profiles));
    d->add_option("--seed", dr.seed);
    d->add_option("--gamma", dr.gamma)->check(CLI::PositiveNumber);
    d->add_option("-o,--out", dr.out);

    std::string stats_input;
    auto* s = app.add_subcommand("stats", "Summary of any artifact");
    s->add_option("input", stats_input)->required()->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? kExitPass : kExitUsage;
    }

    const auto start = std::chrono::steady_clock::now();
    int code = kExitPass;
    try {
        if (*g) code = run_gen_3col(gen);
        else if (*b) code = run_build_gpwb(bg);
        else if (*n) code = run_build_ndp(bn);
        else if (*r) code = run_route_yes(ry);
        else if (*e) code = run_extract(ex);
        else if (*v) code = run_verify(vo);
        else if (*d) code = run_drive(dr);
        else if (*s) code = run_stats(stats_input);
    } catch (const CLI::ParseError& err) {
        return app.exit(err) == 0 ? kExitPass : kExitUsage;
    } catch (const Error& err) {
        std::cerr << "error: " << err.what() << "\n";
        const bool usage = err.kind() == ErrorKind::Parse || err.kind() == ErrorKind::Parameter;
        return usage ? kExitUsage : kExitFail;
    } catch (const Json::exception& err) {
        std::cerr << "error: malformed document: " << err.what() << "\n";
        return kExitUsage;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cerr << "elapsed " << secs << " s\n";
    return code;
}
