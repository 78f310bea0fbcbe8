// Copyright 2026 The stilde Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STILDE_CLI_H
#define STILDE_CLI_H

#include <exception>
#include <iosfwd>
#include <string>
#include <vector>

#include "stilde/serialize.h"

namespace stilde {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitScope = 3;
constexpr int kExitProperty = 4;

/// Exit code for an exception escaping a command.
int exit_code_for(const std::exception &e);

/// Toric code layers (one per group order), then redundant terms and ancillas.
ModelPtr build_config_model(const RunConfig &cfg);
/// Annulus pair on the lattice sites (not lifted).
AnnulusPair build_config_pair(const RunConfig &cfg, const StabilizerModel &model);

/// Result of a command: the report plus the exit code it implies.
struct CommandResult {
    Json report;
    int exit_code = kExitOk;
    /// One line for humans.
    std::string summary;
    /// Extra files written next to the report (name, contents).
    std::vector<std::pair<std::string, std::string>> extra_files;
};

CommandResult cmd_smatrix(const RunConfig &cfg);
/// With no inputs the S~ is computed from the config.
CommandResult cmd_reconstruct(const RunConfig &cfg, const std::vector<std::string> &inputs);
CommandResult cmd_perturb(const RunConfig &cfg);
CommandResult cmd_witness(const RunConfig &cfg);
/// Scenario names select builtin witness instances; otherwise the config model is used.
CommandResult cmd_oracle(const RunConfig &cfg, const std::string &scenario);
CommandResult cmd_check(const RunConfig &cfg);
CommandResult cmd_algebra(const RunConfig &cfg);

/// Full command line entry point. Reports go to `out`, summaries and errors to `err`.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace stilde

#endif
