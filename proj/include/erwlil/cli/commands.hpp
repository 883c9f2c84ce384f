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

// Subcommand drivers. Each writes its outputs and manifest.json into
// config.out; outputs depend only on the config, never on thread count.

#include <string>

#include "erwlil/cli/config.hpp"
#include "erwlil/cli/manifest.hpp"
#include "erwlil/kernel.hpp"

namespace erwlil::cli {

struct RunOutcome {
    RunManifest manifest;
    std::string console;  ///< text for stdout (bvn JSON, report summary)
};

/// Dispatches on config.subcommand. Throws InvalidArgument or NumericalError.
RunOutcome run(const ExperimentConfig& config);

RunOutcome run_simulate(const ExperimentConfig& config);
RunOutcome run_collide(const ExperimentConfig& config);
RunOutcome run_kernel(const ExperimentConfig& config);
RunOutcome run_lil(const ExperimentConfig& config);
RunOutcome run_bvn(const ExperimentConfig& config);
RunOutcome run_report(const ExperimentConfig& config);

/// Kernel named by config.variant with its parameters.
KernelSpec kernel_from_config(const ExperimentConfig& config);

}  // namespace erwlil::cli
