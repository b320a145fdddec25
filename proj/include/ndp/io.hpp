#pragma once
// Versioned JSON documents for every artifact of the pipeline. Each document
// is {"format_version", "kind", "manifest", "data"}; the manifest records how
// the artifact was produced (subcommand, input digests, profile, seed,
// parameters, tool version) and never contains timing, so re-running with
// the same manifest reproduces the same bytes.

#include <map>
#include <string>
#include <string_view>

#include "json.hpp"
#include "ndp/driver.hpp"
#include "ndp/extract.hpp"
#include "ndp/game3col.hpp"
#include "ndp/gpwb.hpp"
#include "ndp/grid.hpp"
#include "ndp/reduce_ndp.hpp"
#include "ndp/route_yes.hpp"

namespace ndp {

using Json = nlohmann::json;

inline constexpr int kFormatVersion = 1;
inline constexpr const char* kToolVersion = "ndplab 1.0";

struct RunManifest {
    std::string subcommand;
    std::map<std::string, std::string> inputs;  // role -> digest of the input file
    std::string profile;
    u64 seed = 0;
    std::map<std::string, std::string> params;
    std::string version = kToolVersion;
};

Json to_json(const RunManifest& m);
RunManifest manifest_from_json(const Json& j);

/// "fnv1a64:" followed by 16 hex digits.
std::string digest_bytes(std::string_view bytes);
std::string file_digest(const std::string& path);

struct Document {
    std::string kind;
    RunManifest manifest;
    Json data;
};

Json make_document(const std::string& kind, const RunManifest& manifest, Json data);
/// Parses a document; malformed text raises a parse error naming the origin and line.
Document parse_document(const std::string& text, const std::string& origin);
Document read_document(const std::string& path);
/// Reads a document and checks its kind.
Document read_document(const std::string& path, const std::string& expected_kind);
/// Serialized form (2-space indentation, trailing newline).
std::string dump(const Json& doc);
/// Writes to a file, or to stdout when path is "-".
void write_document(const std::string& path, const Json& doc);

// ---- converters ------------------------------------------------------------------

Json to_json(const ColoringInstance& G, const Coloring* chi = nullptr);
ColoringInstance coloring_instance_from_json(const Json& j);
/// Empty when the document carries no coloring.
Coloring coloring_from_json(const Json& j);

Json to_json(const ConstantProfile& p);
ConstantProfile profile_from_json(const Json& j);

Json to_json(const ConstraintGraph& H);
ConstraintGraph constraint_graph_from_json(const Json& j);

Json to_json(const GpwbInstance& I);
GpwbInstance gpwb_instance_from_json(const Json& j);

Json to_json(const GpwbSolution& S);
GpwbSolution gpwb_solution_from_json(const Json& j);

Json to_json(const NdpInstance& inst);
NdpInstance ndp_instance_from_json(const Json& j);

Json to_json(const PathSet& ps);
PathSet path_set_from_json(const Json& j);

Json to_json(const SelectionAudit& a);
Json to_json(const RoutableSubset& rs);
RoutableSubset routable_subset_from_json(const Json& j);

Json to_json(const Drawing& d);
Json to_json(const Cut& c);
Json to_json(const ExtractionAudit& a);

Json to_json(const DichotomyAudit& a);
Json to_json(const ProverStrategy& s);
ProverStrategy prover_strategy_from_json(const Json& j);
Json to_json(const Decision& d);
Decision decision_from_json(const Json& j);

Json to_json(const Report& r);

}  // namespace ndp
