#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "ipaths/decomposition.hpp"
#include "ipaths/generators.hpp"
#include "ipaths/mapper.hpp"
#include "ipaths/search_graph.hpp"

namespace ipaths {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// Graph JSON ---------------------------------------------------------------

Json stats_to_json(const GraphStats& stats);

/// {"schemaVersion", "h", "rule", "tau", "vertices", "edges", "stats", "meta"?}
Json graph_to_json(const SearchGraph& g, const std::optional<GadgetConstants>& meta = {});

/// Throws InputError naming the offending field path, e.g. "edges[3].signature".
SearchGraph graph_from_json(const Json& doc, std::optional<GadgetConstants>* meta = nullptr);

SearchGraph load_graph(const std::string& path, std::optional<GadgetConstants>* meta = nullptr);
void save_graph(const std::string& path, const SearchGraph& g,
                const std::optional<GadgetConstants>& meta = {});

// Skeleton JSON ------------------------------------------------------------

/// {"schemaVersion", "h", "clusters":[{"id","members","gMean","filterMeans","size"}], "links":[[a,b]]}
Json skeleton_to_json(const Skeleton& sk);
Skeleton skeleton_from_json(const Json& doc);

Skeleton load_skeleton(const std::string& path);
void save_skeleton(const std::string& path, const Skeleton& sk);

// Run reports --------------------------------------------------------------

struct ReportPath {
    std::vector<EdgeId> edges;
    std::vector<VertexId> vertices;
    std::string signature;  // bit string, or "*" when undetermined
    double score = 0.0;
};

struct RunReport {
    std::string command;
    std::optional<Rule> rule;
    std::optional<double> tau;
    std::optional<int> k;
    std::optional<std::uint64_t> seed;
    std::optional<GraphStats> stats;
    std::vector<ReportPath> paths;
    std::optional<double> total_score;
    std::optional<ScoreBounds> bounds;
    std::vector<std::pair<std::string, double>> timings_ms;
    Json extra = Json::object();  // command-specific fields (solver stats, ...)
};

ReportPath report_path(const SearchGraph& g, const InterestingPath& p);

Json report_to_json(const RunReport& report);
RunReport report_from_json(const Json& doc);

/// Recomputes every path score and the total from g's edge weights;
/// returns a description of the first mismatch beyond tolerance.
std::optional<std::string> check_report(const SearchGraph& g, const RunReport& report,
                                        double tolerance = 1e-9);

// Files / DOT --------------------------------------------------------------

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Graphviz rendering. Edges on a path are drawn in that path's color and
/// labeled "weight / rank / signature"; other edges "weight / - / signature".
std::string to_dot(const SearchGraph& g, const std::vector<InterestingPath>& paths);

}  // namespace ipaths
