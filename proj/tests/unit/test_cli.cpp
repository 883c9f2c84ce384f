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

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "erwlil/cli/commands.hpp"
#include "erwlil/cli/config.hpp"
#include "erwlil/cli/csv.hpp"
#include "erwlil/cli/manifest.hpp"
#include "erwlil/cli/report.hpp"
#include "erwlil/errors.hpp"
#include "erwlil/version.hpp"

using namespace erwlil;
using namespace erwlil::cli;
namespace fs = std::filesystem;

namespace {

// Fresh scratch directory under the system temp path.
fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "erwlil-test-cli" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ExperimentConfig collide_config(const fs::path& out, std::uint32_t first, std::uint32_t count) {
    ExperimentConfig c;
    c.subcommand = "collide";
    c.seed = 7;
    c.horizon = 10000;
    c.replicas = count;
    c.first_replica = first;
    c.out = out.string();
    return c;
}

const SummaryRow& find_row(const Report& r, const std::string& key, const std::string& stat) {
    for (const auto& row : r.rows) {
        if (row.key == key && row.statistic == stat) return row;
    }
    FAIL("missing summary row " << key << "/" << stat);
    return r.rows.front();
}

int run_tool(const std::string& args, const fs::path& log) {
    const std::string cmd = std::string(ERWLIL_TOOL_PATH) + " " + args + " > " + log.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("parse_probability") {
    CHECK(parse_probability("0.6") == 0.6);
    CHECK(parse_probability("3/4") == 0.75);
    CHECK(parse_probability("6/8") == 0.75);
    CHECK(parse_probability("1e-1") == 0.1);
    CHECK(parse_probability("1/3") == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK_THROWS_AS(parse_probability("abc"), InvalidArgument);
    CHECK_THROWS_AS(parse_probability("1/0"), InvalidArgument);
    CHECK_THROWS_AS(parse_probability(""), InvalidArgument);
}

TEST_CASE("config round trip") {
    ExperimentConfig c;
    c.subcommand = "lil";
    c.seed = 0xfedcba9876543210ULL;
    c.p = 0.1;
    c.q2 = 1.0 / 3.0;
    c.checkpoints = {10, 100};
    c.variant = "stable";
    c.stable_alpha = 1.7;
    c.manifests = {"a/manifest.json"};
    const auto doc = to_json(c);
    CHECK(doc["seed"] == "18364758544493064720");
    const auto back = config_from_json(nlohmann::json::parse(doc.dump()));
    CHECK(back == c);
    CHECK(to_json(back).dump() == doc.dump());
    CHECK(config_from_json(nlohmann::json::parse(to_json(ExperimentConfig{}).dump())) == ExperimentConfig{});
}

TEST_CASE("config parsing rules") {
    CHECK(config_from_json(nlohmann::json{{"seed", "0x10"}}).seed == 16);
    CHECK(config_from_json(nlohmann::json{{"seed", 42}}).seed == 42);
    CHECK(config_from_json(nlohmann::json{{"p", "3/4"}}).p == 0.75);
    CHECK_THROWS_WITH_AS(config_from_json(nlohmann::json{{"nonsense", 1}}), doctest::Contains("nonsense"),
                         InvalidArgument);
    CHECK_THROWS_AS(config_from_json(nlohmann::json{{"replicas", "many"}}), InvalidArgument);
    CHECK_THROWS_AS(config_from_json(nlohmann::json::array()), InvalidArgument);
    // Parameter domains are checked by the modules; validate() covers structure.
    ExperimentConfig bad;
    bad.replicas = 0;
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
    bad = ExperimentConfig{};
    bad.checkpoints = {100, 10};
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
    bad = ExperimentConfig{};
    bad.p = 1.5;
    bad.subcommand = "simulate";
    bad.out = scratch("bad-p").string();
    CHECK_THROWS_WITH_AS(run(bad), doctest::Contains("0 <= p <= 1"), InvalidArgument);
    bad = ExperimentConfig{};
    bad.subcommand = "dance";
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
}

TEST_CASE("csv formatting and round trip") {
    CHECK(format_real(0.1) == "0.10000000000000001");
    CHECK(format_real(2.0) == "2");
    CHECK(format_real(std::nan("")) == "nan");
    CHECK(format_real(-INFINITY) == "-inf");
    CHECK(std::stod(format_real(1.0 / 3.0)) == 1.0 / 3.0);

    const auto dir = scratch("csv");
    CsvWriter w((dir / "t.csv").string(), {"a", "b"});
    w.row(1, 0.5);
    w.row(std::int64_t{-3}, std::string("x"));
    CHECK_THROWS_AS(w.row(1), std::logic_error);
    w.close();
    CHECK(slurp(dir / "t.csv") == "a,b\n1,0.5\n-3,x\n");
    const auto t = read_csv((dir / "t.csv").string());
    CHECK(t.columns == std::vector<std::string>{"a", "b"});
    CHECK(t.rows.size() == 2);
    CHECK(t.column("b") == 1);
    CHECK_THROWS_AS(t.column("c"), InvalidArgument);
}

TEST_CASE("sha256 of a known string") {
    const auto dir = scratch("sha");
    std::ofstream(dir / "abc", std::ios::binary) << "abc";
    CHECK(sha256_file((dir / "abc").string()) == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("collide run: rows, determinism and regeneration from the manifest") {
    const auto dir = scratch("collide");
    auto cfg = collide_config(dir / "a", 0, 100);
    const auto first = run(cfg);
    CHECK(first.manifest.outputs.size() == 1);
    CHECK(first.manifest.outputs[0].rows == 100);
    CHECK(first.manifest.generator == "philox4x32-10");
    const auto table = read_csv((dir / "a" / "collide.csv").string());
    CHECK(table.rows.size() == 100);
    CHECK(table.columns ==
          std::vector<std::string>{"replica", "horizon", "count", "last_collision", "stat_plus", "stat_minus"});

    // Rerun from the stored manifest config with a different thread count.
    auto again = load_config((dir / "a" / kManifestName).string());
    CHECK(again == cfg);
    again.out = (dir / "b").string();
    again.threads = 1;
    const auto second = run(again);
    REQUIRE(second.manifest.outputs.size() == first.manifest.outputs.size());
    for (std::size_t i = 0; i < first.manifest.outputs.size(); ++i) {
        CHECK(second.manifest.outputs[i].sha256 == first.manifest.outputs[i].sha256);
        CHECK(slurp(dir / "a" / first.manifest.outputs[i].file) == slurp(dir / "b" / second.manifest.outputs[i].file));
    }
    const auto m = read_manifest((dir / "a" / kManifestName).string());
    CHECK(m.version == kVersion);
    CHECK(m.schema == kOutputSchema);
    CHECK(m.outputs[0].sha256 == first.manifest.outputs[0].sha256);
}

TEST_CASE("every subcommand regenerates byte-identical outputs") {
    const auto dir = scratch("regen");
    std::vector<ExperimentConfig> configs;
    ExperimentConfig sim;
    sim.subcommand = "simulate";
    sim.p = 0.7;
    sim.horizon = 500;
    sim.replicas = 20;
    configs.push_back(sim);
    ExperimentConfig ker;
    ker.subcommand = "kernel";
    ker.variant = "rlfbm";
    ker.beta = 1.0;
    ker.gamma = 0.5;
    configs.push_back(ker);
    ExperimentConfig lil;
    lil.subcommand = "lil";
    lil.variant = "erwdiff";
    lil.p = 0.5;
    lil.p2 = 0.6;
    lil.nmax = 12;
    lil.replicas = 10;
    configs.push_back(lil);
    ExperimentConfig bvn;
    bvn.subcommand = "bvn";
    bvn.delta = 0.3;
    bvn.a = 1.0;
    bvn.b = 2.0;
    configs.push_back(bvn);
    int i = 0;
    for (auto c : configs) {
        c.out = (dir / std::to_string(i)).string();
        const auto a = run(c);
        c.out = (dir / (std::to_string(i) + "r")).string();
        auto replay = load_config((dir / std::to_string(i) / kManifestName).string());
        CHECK(replay.out == (dir / std::to_string(i)).string());
        replay.out = c.out;
        CHECK(replay == c);
        const auto b = run(replay);
        REQUIRE(a.manifest.outputs.size() == b.manifest.outputs.size());
        for (std::size_t k = 0; k < a.manifest.outputs.size(); ++k) {
            CAPTURE(c.subcommand);
            CHECK(a.manifest.outputs[k].sha256 == b.manifest.outputs[k].sha256);
        }
        ++i;
    }
}

TEST_CASE("bvn at delta 0 reports phi = 0") {
    ExperimentConfig c;
    c.subcommand = "bvn";
    c.out = scratch("bvn").string();
    const auto out = run(c);
    const auto doc = nlohmann::json::parse(out.console);
    CHECK(doc["phi"] == 0.0);
    CHECK(doc["phi_bound"] == 0.0);
    CHECK(doc["quadrant_prob"].get<double>() == doctest::Approx(doc["independent_prob"].get<double>()));
}

TEST_CASE("lil run on the ERW difference kernel writes a decreasing ratio") {
    ExperimentConfig c;
    c.subcommand = "lil";
    c.variant = "erwdiff";
    c.p = 0.5;
    c.p2 = 0.6;
    c.alpha = 16;
    c.nmax = 30;
    c.replicas = 20;
    c.out = scratch("lil").string();
    run(c);
    const auto t = read_csv(c.out + "/er_ratio.csv");
    const auto col = t.column("ratio");
    REQUIRE(t.rows.size() == 29);
    for (std::size_t i = 1; i < t.rows.size(); ++i) CHECK(std::stod(t.rows[i][col]) < std::stod(t.rows[i - 1][col]));
    CHECK(read_csv(c.out + "/blocks.csv").columns == std::vector<std::string>{"k", "t_k", "gamma_k", "a_k"});
    CHECK(read_csv(c.out + "/delta.csv").columns == std::vector<std::string>{"j", "delta_j"});
}

TEST_CASE("report pools replica ranges as a weighted mean") {
    const auto dir = scratch("report");
    const auto a = run(collide_config(dir / "a", 0, 30));
    const auto b = run(collide_config(dir / "b", 30, 70));
    const auto all = run(collide_config(dir / "all", 0, 100));
    const std::string ma = (dir / "a" / kManifestName).string(), mb = (dir / "b" / kManifestName).string();

    const auto ra = build_report({ma});
    const auto rb = build_report({mb});
    const auto pooled = build_report({ma, mb});
    const auto whole = build_report({(dir / "all" / kManifestName).string()});
    CHECK(pooled.replicas == 100);
    CHECK(pooled.warnings.empty());
    const auto& pa = find_row(ra, "10000", "count");
    const auto& pb = find_row(rb, "10000", "count");
    const auto& pp = find_row(pooled, "10000", "count");
    CHECK(pp.count == 100);
    CHECK(pp.mean == doctest::Approx((30.0 * pa.mean + 70.0 * pb.mean) / 100.0).epsilon(1e-14));
    CHECK(pp.mean == doctest::Approx(find_row(whole, "10000", "count").mean).epsilon(1e-14));
    CHECK(find_row(pooled, "10000", "stat_plus").theory == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(pp.theory == doctest::Approx(111.84214806972069).epsilon(1e-12));

    // A single manifest summarizes its own raw rows.
    const auto t = read_csv((dir / "a" / "collide.csv").string());
    double sum = 0.0;
    for (const auto& row : t.rows) sum += std::stod(row[t.column("count")]);
    CHECK(pa.mean == doctest::Approx(sum / 30.0).epsilon(1e-14));

    // Overlapping ranges under one seed are flagged.
    CHECK_FALSE(build_report({ma, (dir / "all" / kManifestName).string()}).warnings.empty());

    ExperimentConfig rc;
    rc.subcommand = "report";
    rc.manifests = {ma, mb};
    rc.out = (dir / "summary").string();
    const auto rep = run(rc);
    CHECK(rep.console.find("stat_plus") != std::string::npos);
    CHECK(fs::exists(dir / "summary" / "summary.csv"));
    CHECK(fs::exists(dir / "summary" / "summary.txt"));
}

TEST_CASE("report refuses mismatched or tampered inputs") {
    const auto dir = scratch("report-bad");
    run(collide_config(dir / "a", 0, 10));
    auto other = collide_config(dir / "b", 10, 10);
    other.p = 0.6;
    run(other);
    const std::string ma = (dir / "a" / kManifestName).string();
    CHECK_THROWS_AS(build_report({ma, (dir / "b" / kManifestName).string()}), InvalidArgument);
    std::ofstream(dir / "a" / "collide.csv", std::ios::app) << "9,9,9,9,9,9\n";
    CHECK_THROWS_WITH_AS(build_report({ma}), doctest::Contains("digest"), InvalidArgument);
}

TEST_CASE("quantile and summarize") {
    CHECK(quantile({1, 2, 3, 4}, 0.5) == 2.5);
    CHECK(quantile({1, 2, 3, 4}, 0.1) == doctest::Approx(1.3));
    CHECK(std::isnan(quantile({}, 0.5)));
    const auto s = summarize("k", "x", {1.0, std::nan(""), 3.0}, 2.0);
    CHECK(s.count == 2);
    CHECK(s.mean == 2.0);
    CHECK(s.std_error == doctest::Approx(1.0));
    CHECK(s.theory == 2.0);
}

TEST_CASE("command-line binary: outputs and exit codes") {
    const auto dir = scratch("binary");
    const auto log = dir / "log.txt";
    CHECK(run_tool("--version", log) == 0);
    CHECK(slurp(log).find(kVersion) != std::string::npos);

    const std::string base = "collide --p 0.5 --q 0.5 --p2 0.5 --q2 0.5 --horizon 10000 --replicas 100 --seed ";
    CHECK(run_tool(base + "7 --out " + (dir / "x").string(), log) == 0);
    CHECK(run_tool(base + "0x7 --threads 1 --out " + (dir / "y").string(), log) == 0);
    CHECK(read_csv((dir / "x" / "collide.csv").string()).rows.size() == 100);
    CHECK(slurp(dir / "x" / "collide.csv") == slurp(dir / "y" / "collide.csv"));

    CHECK(run_tool("bvn --delta 0 --a 1 --b 1 --out " + (dir / "bvn").string(), log) == 0);
    CHECK(nlohmann::json::parse(slurp(log))["phi"] == 0.0);

    CHECK(run_tool("simulate --p 1.5 --out " + (dir / "bad").string(), log) == 2);
    CHECK(slurp(log).find("0 <= p <= 1") != std::string::npos);
    CHECK(run_tool("collide --no-such-flag", log) == 2);
    CHECK(run_tool("", log) == 2);
    CHECK(run_tool("report " + (dir / "missing.json").string() + " --out " + (dir / "r").string(), log) == 2);

    // A config file plus a flag override.
    {
        std::ofstream(dir / "cfg.json") << R"({"subcommand": "bvn", "delta": "1/2", "a": 1, "b": 1})";
    }
    CHECK(run_tool("bvn --config " + (dir / "cfg.json").string() + " --b 2 --out " + (dir / "c").string(), log) == 0);
    const auto doc = nlohmann::json::parse(slurp(log));
    CHECK(doc["delta"] == 0.5);
    CHECK(doc["b"] == 2.0);
}
