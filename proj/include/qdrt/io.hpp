// SPDX-License-Identifier: Apache-2.0
//
// qdrt — quasi-deterministic ray tracing for street-canyon radio channels

#pragma once

#include "qdrt/montecarlo.hpp"
#include "qdrt/raytrace.hpp"
#include "qdrt/rcs.hpp"
#include "qdrt/stats.hpp"

#include <string>
#include <vector>

namespace qdrt {

/// Shortest round-trip decimal form; the one formatter used for all CSV
/// output so artifacts are byte-stable.
std::string format_double(double value);

std::string dataset_to_csv(const RcsDataset& dataset);
std::string path_table_to_csv(const std::vector<PropagationPath>& paths);
std::string mc_samples_to_csv(const McResult& result);
std::string mc_delays_to_csv(const McResult& result);

std::string fit_to_json(const FitResult& fit);
std::string gof_to_json(const GofResult& gof);

/// Everything needed to reproduce a command's outputs byte for byte.
struct RunManifest {
    std::string command;
    std::string version;
    std::string timestamp; // informational; not part of reproducibility
    std::uint64_t master_seed = 0;
    unsigned threads = 0;
    std::string args_json;    // command-specific arguments, JSON object
    std::string scene_config; // resolved scene document
    std::vector<std::string> artifacts;
};

std::string manifest_to_json(const RunManifest& manifest);
RunManifest manifest_from_json(const std::string& text);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

} // namespace qdrt
