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

// erwlil command-line front end.
//
//   erwlil [global flags] <simulate|collide|kernel|lil|bvn|report> [flags]
//
// Flags and config keys share one namespace: --stat-grid-start sets
// "stat_grid_start". A --config document is applied first and explicit flags
// override it.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "erwlil/cli/commands.hpp"
#include "erwlil/cli/config.hpp"
#include "erwlil/errors.hpp"
#include "erwlil/version.hpp"

namespace {

using erwlil::cli::ExperimentConfig;
using json = nlohmann::json;

constexpr int kExitInvalid = 2;
constexpr int kExitNumerical = 3;

std::string key_of(const std::string& flag) {
    std::string key = flag;
    for (char& c : key) {
        if (c == '-') c = '_';
    }
    return key;
}

// Raw flag text, keyed by config key.
struct Flags {
    std::map<std::string, std::string> scalars;
    std::map<std::string, std::vector<std::string>> lists;
    std::map<std::string, bool> switches;
};

void scalar(CLI::App* app, Flags& f, const std::string& flag, const std::string& help) {
    app->add_option("--" + flag, f.scalars[key_of(flag)], help);
}

void kernel_flags(CLI::App* app, Flags& f) {
    scalar(app, f, "variant", "fbm | rlfbm | erwdiff | stable");
    scalar(app, f, "hurst", "FBM Hurst index H in (0,1)");
    scalar(app, f, "beta", "RLFBM beta");
    scalar(app, f, "gamma", "RLFBM gamma");
    scalar(app, f, "p", "erwdiff memory parameter p");
    scalar(app, f, "p2", "erwdiff memory parameter p'");
    scalar(app, f, "stable-alpha", "stable spectral index in (0,2]");
    scalar(app, f, "r11", "stable spectral R(1,1)");
}

// Applies flags the user actually passed, coercing to each key's JSON type.
json apply_flags(json doc, const CLI::App& sub, const CLI::App& app, const Flags& f) {
    auto given = [&](const std::string& key) {
        const std::string flag = "--" + [&] {
            std::string s = key;
            for (char& c : s) {
                if (c == '_') c = '-';
            }
            return s;
        }();
        for (const CLI::App* a : {&sub, &app}) {
            try {
                if (a->get_option(flag)->count() > 0) return true;
            } catch (const CLI::OptionNotFound&) {
            }
        }
        return false;
    };
    for (const auto& [key, text] : f.scalars) {
        if (!given(key)) continue;
        const json& current = doc.at(key);
        try {
            if (current.is_number_unsigned() && key == "seed") {
                doc[key] = text;  // parse_seed handles decimal and 0x-hex
            } else if (current.is_number_integer()) {
                std::size_t used = 0;
                const long long v = std::stoll(text, &used);
                if (used != text.size()) throw std::invalid_argument(text);
                doc[key] = v;
            } else if (current.is_number()) {
                doc[key] = text;  // parse_probability accepts rationals such as 3/4
            } else {
                doc[key] = text;
            }
        } catch (const std::logic_error&) {
            throw erwlil::InvalidArgument("constraint violated: --" + key + " takes an integer (got '" + text + "')");
        }
    }
    for (const auto& [key, values] : f.lists) {
        if (values.empty()) continue;
        json arr = json::array();
        for (const auto& v : values) {
            if (key == "manifests") {
                arr.push_back(v);
            } else {
                try {
                    arr.push_back(std::stoll(v));
                } catch (const std::logic_error&) {
                    throw erwlil::InvalidArgument("constraint violated: --" + key + " takes integers (got '" + v +
                                                  "')");
                }
            }
        }
        doc[key] = arr;
    }
    for (const auto& [key, on] : f.switches) {
        if (on) doc[key] = true;
    }
    return doc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Elephant random walks, self-similar Gaussian kernels and iterated-logarithm diagnostics", "erwlil"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(erwlil::kVersion));

    Flags f;
    std::string config_path;
    bool print_config = false;
    app.add_option("--config", config_path, "JSON config (or a run manifest) applied before the flags");
    app.add_flag("--print-config", print_config, "print the effective config as JSON and exit");
    scalar(&app, f, "seed", "seed, decimal or 0x-hex");
    scalar(&app, f, "replicas", "number of replicas");
    scalar(&app, f, "first-replica", "index of the first replica (for split runs)");
    scalar(&app, f, "threads", "worker threads, 0 for the runtime default");
    scalar(&app, f, "out", "output directory");

    std::map<std::string, CLI::App*> subs;
    auto add_sub = [&](const std::string& name, const std::string& help) {
        CLI::App* s = app.add_subcommand(name, help);
        s->fallthrough();
        subs[name] = s;
        return s;
    };

    CLI::App* sim = add_sub("simulate", "single elephant walks and the exact law of S_n");
    scalar(sim, f, "p", "memory parameter, decimal or rational");
    scalar(sim, f, "q", "probability that the first step is +1");
    scalar(sim, f, "horizon", "number of steps");
    sim->add_flag("--full-path", f.switches["full_path"], "write every n instead of doubling horizons");

    CLI::App* col = add_sub("collide", "collisions and the normalized distance of two walks");
    scalar(col, f, "p", "first walk memory parameter");
    scalar(col, f, "q", "first walk first-step probability");
    scalar(col, f, "p2", "second walk memory parameter");
    scalar(col, f, "q2", "second walk first-step probability");
    scalar(col, f, "horizon", "number of steps");
    col->add_option("--checkpoints", f.lists["checkpoints"], "extra report horizons below the horizon");
    scalar(col, f, "stat-grid-start", "first time of the doubling statistic grid (>= 16)");

    CLI::App* ker = add_sub("kernel", "kernel dumps, h profile and decay fit");
    kernel_flags(ker, f);
    scalar(ker, f, "grid-min", "smallest time of the (s,t) grid");
    scalar(ker, f, "grid-max", "largest time of the (s,t) grid");
    scalar(ker, f, "grid-points", "points of the geometric (s,t) grid");
    scalar(ker, f, "profile-max", "largest x of the h profile");
    scalar(ker, f, "profile-points", "points of the geometric h profile");
    scalar(ker, f, "scale", "c for the self-similarity check");

    CLI::App* lil = add_sub("lil", "geometric-grid blocks, Erdos-Renyi ratio and sampled running maxima");
    kernel_flags(lil, f);
    scalar(lil, f, "alpha", "grid ratio (> 1, default 16)");
    scalar(lil, f, "nmax", "number of grid times");
    scalar(lil, f, "t-min", "first tracked time (> e)");

    CLI::App* bvn = add_sub("bvn", "quadrant probability shift phi(delta, a, b)");
    scalar(bvn, f, "delta", "correlation in (-1, 1)");
    scalar(bvn, f, "a", "first threshold");
    scalar(bvn, f, "b", "second threshold");

    CLI::App* rep = add_sub("report", "pool run manifests into summary tables");
    rep->add_option("manifests", f.lists["manifests"], "manifest.json files")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalid;
    }

    CLI::App* chosen = app.get_subcommands().front();
    try {
        ExperimentConfig base = config_path.empty() ? ExperimentConfig{} : erwlil::cli::load_config(config_path);
        base.subcommand = chosen->get_name();
        // Subcommands own disjoint flag sets, so unrelated entries are never "given".
        json doc = apply_flags(json(erwlil::cli::to_json(base)), *chosen, app, f);
        const ExperimentConfig cfg = erwlil::cli::config_from_json(doc);
        cfg.validate();
        if (print_config) {
            std::cout << erwlil::cli::to_json(cfg).dump(2) << '\n';
            return 0;
        }
        const auto outcome = erwlil::cli::run(cfg);
        std::cout << outcome.console;
        return 0;
    } catch (const erwlil::InvalidArgument& e) {
        std::cerr << "erwlil: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const erwlil::NumericalError& e) {
        std::cerr << "erwlil: numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "erwlil: " << e.what() << '\n';
        return 1;
    }
}
