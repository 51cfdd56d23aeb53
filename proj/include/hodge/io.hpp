#pragma once

#include <json.hpp>
#include <map>
#include <optional>
#include <string>

#include "hodge/experiments.hpp"
#include "hodge/meshgen.hpp"
#include "hodge/spectra.hpp"

namespace hodge::io {

using Json = nlohmann::json;

/// FNV-1a 64-bit of a file's bytes, as "fnv1a:<hex>"; deterministic manifest hash.
std::string file_hash(const std::string& path);

/// Manifest embedded in every report file. Timing is deliberately not part of
/// it so reruns are bitwise identical; the CLI prints timing to stderr.
struct RunManifest {
  std::string command;
  std::string tool_version;
  std::map<std::string, std::string> input_hashes;  // path -> hash
  Json config_echo;
  unsigned long long seed = 0;
  int threads = 1;
};

Json to_json(const RunManifest& m);

extern const char* kToolVersion;

// ---- mesh / metric / conformal files ----

void save_mesh(const meshgen::Mesh& mesh, const std::string& path);
meshgen::Mesh load_mesh(const std::string& path);

void save_metric(const std::map<std::pair<int, int>, double>& edge_lengths,
                 const std::string& path);
/// Merges edge lengths from a metric file into a loaded mesh.
void apply_metric_file(meshgen::Mesh& mesh, const std::string& path);

void save_conformal(const VecX& factor, const std::string& path);
VecX load_conformal(const std::string& path);

// ---- reports ----

Json to_json(const spectra::SpectrumReport& rep, const RunManifest& manifest);
void save_spectrum_report(const spectra::SpectrumReport& rep, const RunManifest& manifest,
                          const std::string& json_path, const std::string& csv_path);

Json to_json(const experiments::SqueezeReport& rep);
Json to_json(const experiments::FloorReport& rep);
Json to_json(const experiments::DualityReport& rep);
Json to_json(const experiments::KunnethReport& rep);
Json to_json(const experiments::SmoothingReport& rep);

/// Writes report JSON (with embedded manifest) plus a CSV table.
void save_experiment(const Json& report, const RunManifest& manifest, const std::string& csv,
                     const std::string& json_path, const std::string& csv_path);

/// CSV table per experiment kind.
std::string squeeze_csv(const experiments::SqueezeReport& rep);
std::string floor_csv(const experiments::FloorReport& rep);
std::string duality_csv(const experiments::DualityReport& rep);
std::string kunneth_csv(const experiments::KunnethReport& rep);

/// Deterministic shortest-round-trip double formatting for CSV.
std::string format_double(double v);

}  // namespace hodge::io
