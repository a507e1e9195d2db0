#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "slc/base.hpp"
#include "slc/bipartite.hpp"
#include "slc/classify.hpp"
#include "slc/clf.hpp"
#include "slc/consensus.hpp"
#include "slc/graph.hpp"
#include "slc/switching.hpp"

#include <json.hpp>

namespace slc::io {

using json = nlohmann::json;

struct FileNotFoundError : SlcError {
  using SlcError::SlcError;
};
struct ParseError : SlcError {
  using SlcError::SlcError;
};

/// CSV matrix: one row per line, comma and/or whitespace separated decimals.
Matrix read_matrix_csv(const std::filesystem::path& path);
Matrix parse_matrix_csv(const std::string& text, const std::string& origin = "<string>");
void write_matrix_csv(const std::filesystem::path& path, const Eigen::Ref<const Matrix>& m);

/// Graph JSON: {"n": int, "edges": [[source, target, weight], ...]}, 1-based.
SignedDigraph read_graph_json(const std::filesystem::path& path);
SignedDigraph parse_graph_json(const json& j);
json graph_to_json(const SignedDigraph& g);

/// Matrix file dispatch: JSON objects are graphs (their Laplacian is
/// returned), anything else parses as CSV.
Matrix read_matrix_any(const std::filesystem::path& path, bool* was_graph = nullptr);

/// Scenario JSON; matrix entries may be inline row-lists or file references
/// resolved against the scenario file's directory.
SwitchingScenario read_scenario_json(const std::filesystem::path& path);
SwitchingScenario parse_scenario_json(const json& j, const std::filesystem::path& base_dir);
json scenario_to_json(const SwitchingScenario& scenario);

/// Certificate JSON, re-loadable into verify_certificate.
json certificate_to_json(const ClfCertificate& cert);
ClfCertificate certificate_from_json(const json& j);

/// Trajectory CSV with header t, x1..xn, alpha, delta_norm.
void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& troj);
Trajectory read_trajectory_csv(const std::filesystem::path& path);

// Report payloads.
json to_json(const Spectrum& s);
json to_json(const PfVerdict& v);
json to_json(const DefinitenessReport& d);
json to_json(const ClassificationReport& r);
json to_json(const ConsensusVerdict& v);
json to_json(const Trajectory& t);  // summary: verdict + endpoints, not samples
json to_json(const ConsensusSetReport& r);
json to_json(const BipartiteVerdict& v);
json to_json(const BipartiteSetReport& r);
json tolerances_to_json(const Tolerances& tol);

/// FNV-1a 64-bit content digest, hex encoded.
std::string file_digest(const std::filesystem::path& path);

/// Envelope written by every CLI command.
struct RunReport {
  std::string command;
  std::vector<std::filesystem::path> inputs;
  Tolerances tolerances;
  json result;
  bool with_timestamp = true;
  std::string version;

  json to_json() const;
};

}  // namespace slc::io
