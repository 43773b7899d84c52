// Copyright 2026 The Loopsim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LOOPSIM_TOOLS_COMMANDS_HPP_
#define LOOPSIM_TOOLS_COMMANDS_HPP_

#include <filesystem>
#include <optional>
#include <vector>

#include "loopsim/synthetic.hpp"

namespace loopsim::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitMissingData = 3;
inline constexpr int kExitHashMismatch = 4;
inline constexpr int kExitBadInput = 5;

struct RunOptions {
  std::optional<int> checkpoint_every;
  // Stop after this iteration instead of running to the configured count;
  // the run can be continued with cmd_resume.
  std::optional<int> stop_after;
};

// Output directory layout written by cmd_run and cmd_resume.
inline constexpr const char* kTrajectoryFile = "trajectory.csv";
inline constexpr const char* kEventsFile = "selections.tsv";
inline constexpr const char* kManifestFile = "manifest.json";
inline constexpr const char* kCheckpointDir = "checkpoints";

int cmd_run(const std::filesystem::path& config_path,
            const std::filesystem::path& out_dir, const RunOptions& options);

int cmd_resume(const std::filesystem::path& manifest_path);

int cmd_compare(const std::vector<std::filesystem::path>& inputs,
                const std::filesystem::path& out_file);

int cmd_synth(const SyntheticSpec& spec, const std::filesystem::path& out_dir);

}  // namespace loopsim::cli

#endif  // LOOPSIM_TOOLS_COMMANDS_HPP_
