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

#include <spdlog/spdlog.h>

#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

void configure_logging() {
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("LOOPSIM_LOG")) {
    const auto level = spdlog::level::from_str(env);
    if (level != spdlog::level::off || std::string(env) == "off") {
      spdlog::set_level(level);
    }
  }
  spdlog::set_pattern("[%Y-%m-%d %H:%M:%S.%e] [%l] %v");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace loopsim::cli;
  configure_logging();

  CLI::App app{"Feedback-loop recommender simulation"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  RunOptions run_opts;
  auto* run = app.add_subcommand("run", "Run a simulation from a config");
  run->add_option("config", config_path, "YAML config file")->required();
  run->add_option("--out", out_dir, "Output directory")->required();
  run->add_option("--checkpoint-every", run_opts.checkpoint_every,
                  "Write a checkpoint every k iterations");
  run->add_option("--stop-after", run_opts.stop_after,
                  "Stop after iteration t (continue with resume)");

  std::string manifest_path;
  auto* resume = app.add_subcommand("resume", "Continue an interrupted run");
  resume->add_option("manifest", manifest_path, "manifest.json of the run")
      ->required();

  std::vector<std::string> inputs;
  std::string compare_out;
  auto* compare =
      app.add_subcommand("compare", "Merge trajectory files into one CSV");
  compare->add_option("inputs", inputs, "trajectory.csv files")->required();
  compare->add_option("--out", compare_out, "Output CSV")->required();

  loopsim::SyntheticSpec spec;
  std::string synth_out;
  auto* synth = app.add_subcommand(
      "synth", "Write a synthetic corpus in the MovieLens file layout");
  synth->add_option("--out", synth_out, "Output directory")->required();
  synth->add_option("--users", spec.num_users, "Number of users");
  synth->add_option("--items", spec.num_items, "Number of items");
  synth->add_option("--seed", spec.seed, "Generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (*run) return cmd_run(config_path, out_dir, run_opts);
    if (*resume) return cmd_resume(manifest_path);
    if (*compare) {
      std::vector<std::filesystem::path> paths(inputs.begin(), inputs.end());
      return cmd_compare(paths, compare_out);
    }
    if (*synth) return cmd_synth(spec, synth_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}
