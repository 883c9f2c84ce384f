/*
   Copyright 2026 The erwlil Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

// Run manifests: enough to regenerate every output byte for byte.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "erwlil/cli/config.hpp"

namespace erwlil::cli {

struct OutputFile {
    std::string file;  ///< relative to the manifest's directory
    std::string sha256;
    std::vector<std::string> columns;
    std::size_t rows = 0;
};

struct RunManifest {
    std::string tool = "erwlil";
    std::string version;
    int schema = 0;
    ExperimentConfig config;
    std::string generator;
    std::string normal_transform;
    std::vector<OutputFile> outputs;
    nlohmann::ordered_json diagnostics = nlohmann::ordered_json::object();
    double wall_clock_seconds = 0.0;
    int worker_threads = 0;
};

inline constexpr const char* kManifestName = "manifest.json";

/// Lower-case hex SHA-256 of a file's bytes.
std::string sha256_file(const std::string& path);

nlohmann::ordered_json to_json(const RunManifest& m);
RunManifest manifest_from_json(const nlohmann::json& doc);

void write_manifest(const RunManifest& m, const std::string& path);
RunManifest read_manifest(const std::string& path);

}  // namespace erwlil::cli
