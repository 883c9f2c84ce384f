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

#include "erwlil/cli/manifest.hpp"

#include <cstdio>
#include <fstream>
#include <memory>

#include <openssl/evp.h>

#include "erwlil/errors.hpp"

namespace erwlil::cli {

std::string sha256_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), "file readable for hashing: " + path);
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 initialisation failed");
    }
    char buf[1 << 16];
    while (in) {
        in.read(buf, sizeof buf);
        if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(in.gcount()));
    }
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx.get(), digest, &len);
    std::string hex;
    hex.reserve(2 * len);
    static constexpr char kHex[] = "0123456789abcdef";
    for (unsigned int i = 0; i < len; ++i) {
        hex += kHex[digest[i] >> 4];
        hex += kHex[digest[i] & 0xf];
    }
    return hex;
}

nlohmann::ordered_json to_json(const RunManifest& m) {
    nlohmann::ordered_json doc;
    doc["tool"] = m.tool;
    doc["version"] = m.version;
    doc["schema"] = m.schema;
    doc["subcommand"] = m.config.subcommand;
    doc["seed"] = seed_text(m.config.seed);
    doc["generator"] = m.generator;
    doc["normal_transform"] = m.normal_transform;
    doc["config"] = to_json(m.config);
    auto outputs = nlohmann::ordered_json::array();
    for (const auto& o : m.outputs) {
        outputs.push_back({{"file", o.file}, {"sha256", o.sha256}, {"columns", o.columns}, {"rows", o.rows}});
    }
    doc["outputs"] = outputs;
    doc["diagnostics"] = m.diagnostics;
    doc["worker_threads"] = m.worker_threads;
    doc["wall_clock_seconds"] = m.wall_clock_seconds;
    return doc;
}

RunManifest manifest_from_json(const nlohmann::json& doc) {
    require(doc.is_object() && doc.contains("tool") && doc.contains("config"), "manifest has tool and config keys");
    RunManifest m;
    try {
        m.tool = doc.at("tool").get<std::string>();
        m.version = doc.at("version").get<std::string>();
        m.schema = doc.at("schema").get<int>();
        m.config = config_from_json(doc.at("config"));
        m.generator = doc.at("generator").get<std::string>();
        m.normal_transform = doc.at("normal_transform").get<std::string>();
        for (const auto& o : doc.at("outputs")) {
            m.outputs.push_back({o.at("file").get<std::string>(), o.at("sha256").get<std::string>(),
                                 o.at("columns").get<std::vector<std::string>>(), o.at("rows").get<std::size_t>()});
        }
        if (doc.contains("diagnostics")) m.diagnostics = doc.at("diagnostics");
        m.worker_threads = doc.value("worker_threads", 0);
        m.wall_clock_seconds = doc.value("wall_clock_seconds", 0.0);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument("constraint violated: well-formed manifest (" + std::string(e.what()) + ")");
    }
    require(m.tool == "erwlil", "manifest written by erwlil (got '" + m.tool + "')");
    return m;
}

void write_manifest(const RunManifest& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    require(static_cast<bool>(out), "manifest writable: " + path);
    out << to_json(m).dump(2) << '\n';
    if (!out) throw std::runtime_error("failed writing " + path);
}

RunManifest read_manifest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), "manifest readable: " + path);
    try {
        return manifest_from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidArgument("constraint violated: manifest is valid JSON (" + std::string(e.what()) + ")");
    }
}

}  // namespace erwlil::cli
