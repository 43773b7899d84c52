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

#include "commands.hpp"

#include <spdlog/spdlog.h>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>

#include "json.hpp"
#include "loopsim/config.hpp"
#include "loopsim/hash.hpp"
#include "loopsim/report_io.hpp"
#include "loopsim/simulation.hpp"

namespace loopsim::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string utc_now() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string dataset_fingerprint(const MovieLensPaths& p) {
  return sha256_hex(sha256_file(p.ratings) + sha256_file(p.users) +
                    sha256_file(p.movies));
}

void write_json(const fs::path& path, const json& j) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << j.dump(2) << '\n';
    if (!out.flush()) throw Error("cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

bool data_files_exist(const MovieLensPaths& p) {
  bool ok = true;
  for (const fs::path& f : {p.ratings, p.users, p.movies}) {
    if (!fs::is_regular_file(f)) {
      spdlog::error("missing dataset file {}", f.string());
      ok = false;
    }
  }
  return ok;
}

// Keeps only lines whose leading integer field is <= max_t; lines starting
// with '#' and a first-line CSV header are kept as-is.
void truncate_after(const fs::path& path, int max_t, char sep,
                    bool has_header) {
  if (!fs::exists(path)) return;
  std::ifstream in(path, std::ios::binary);
  std::vector<std::string> keep;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if ((first && has_header) || (!line.empty() && line[0] == '#')) {
      keep.push_back(line);
    } else if (!line.empty()) {
      const int t = std::stoi(line.substr(0, line.find(sep)));
      if (t <= max_t) keep.push_back(line);
    }
    first = false;
  }
  in.close();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  for (const auto& l : keep) out << l << '\n';
}

struct Execution {
  fs::path out_dir;
  SimulationConfig config;
  Dataset data;  // ratings hold D^first
  int first_iteration = 1;
  int last_iteration = 0;
  std::optional<int> checkpoint_every;
  json manifest;
};

int execute(Execution& ex) {
  const fs::path manifest_path = ex.out_dir / kManifestFile;
  const fs::path checkpoints = ex.out_dir / kCheckpointDir;
  if (ex.checkpoint_every) fs::create_directories(checkpoints);

  std::ofstream trajectory(ex.out_dir / kTrajectoryFile,
                           std::ios::binary | std::ios::app);
  std::ofstream events(ex.out_dir / kEventsFile,
                       std::ios::binary | std::ios::app);
  if (!trajectory || !events) {
    spdlog::error("cannot open outputs in {}", ex.out_dir.string());
    return kExitFailure;
  }

  loopsim::RunOptions ro;
  ro.first_iteration = ex.first_iteration;
  ro.last_iteration = ex.last_iteration;
  ro.on_iteration = [&](const IterationResult& it) {
    trajectory << trajectory_row(it.report) << '\n';
    trajectory.flush();
    for (const SelectionEvent& e : it.events) {
      if (e.accepted) events << event_row(e, it.next) << '\n';
    }
    events.flush();
    if (!trajectory || !events) throw Error("failed writing outputs");
    const int t = it.report.t;
    ex.manifest["completed_iterations"] = t;
    if (ex.checkpoint_every &&
        (t % *ex.checkpoint_every == 0 || t == ex.last_iteration)) {
      const fs::path cp = checkpoint_path(checkpoints, t);
      write_checkpoint(cp, it.next, t, ex.config);
      ex.manifest["last_checkpoint"] =
          fs::relative(cp, ex.out_dir).generic_string();
      ex.manifest["last_checkpoint_iteration"] = t;
    }
    write_json(manifest_path, ex.manifest);
  };

  try {
    run_simulation(ex.data, ex.config, ro);
  } catch (const std::exception& e) {
    spdlog::error("simulation failed: {}", e.what());
    ex.manifest["status"] = "failed";
    ex.manifest["error"] = e.what();
    ex.manifest["ended_at"] = utc_now();
    write_json(manifest_path, ex.manifest);
    return kExitFailure;
  }
  ex.manifest["status"] =
      ex.last_iteration >= ex.config.iterations ? "complete" : "stopped";
  ex.manifest["ended_at"] = utc_now();
  write_json(manifest_path, ex.manifest);
  return kExitOk;
}

}  // namespace

int cmd_run(const fs::path& config_path, const fs::path& out_dir,
            const RunOptions& options) {
  const fs::path config_abs = fs::absolute(config_path).lexically_normal();
  SimulationConfig config;
  try {
    config = load_config(config_abs);
  } catch (const ConfigError& e) {
    spdlog::error("invalid config {}: {}", config_path.string(), e.what());
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }
  if (options.checkpoint_every && *options.checkpoint_every < 1) {
    std::cerr << "config error: checkpoint-every: must be >= 1\n";
    return kExitConfigError;
  }
  if (options.stop_after && *options.stop_after < 1) {
    std::cerr << "config error: stop-after: must be >= 1\n";
    return kExitConfigError;
  }
  if (!data_files_exist(config.data)) return kExitMissingData;

  Execution ex;
  ex.out_dir = out_dir;
  ex.config = config;
  ex.checkpoint_every = options.checkpoint_every;
  ex.last_iteration = std::min(config.iterations,
                               options.stop_after.value_or(config.iterations));
  try {
    ex.data = load_movielens(config.data, config.bounds);
  } catch (const std::exception& e) {
    spdlog::error("cannot load dataset: {}", e.what());
    return kExitBadInput;
  }

  fs::create_directories(out_dir);
  {
    std::ofstream trajectory(out_dir / kTrajectoryFile,
                             std::ios::binary | std::ios::trunc);
    trajectory << kTrajectoryHeader << '\n';
    std::ofstream events(out_dir / kEventsFile,
                         std::ios::binary | std::ios::trunc);
    events << "# t\tuser\titem\trank\tomega\trating\n";
  }
  std::error_code ec;
  fs::remove_all(out_dir / kCheckpointDir, ec);

  ex.manifest = {
      {"version", 1},
      {"status", "running"},
      {"config_path", config_abs.string()},
      {"config", canonical_config(config)},
      {"config_hash", config_hash(config)},
      {"dataset_fingerprint", dataset_fingerprint(config.data)},
      {"algorithm", std::string(algorithm_name(config.algorithm))},
      {"iterations", config.iterations},
      {"completed_iterations", 0},
      {"checkpoint_every",
       options.checkpoint_every ? json(*options.checkpoint_every) : json()},
      {"last_checkpoint", nullptr},
      {"last_checkpoint_iteration", 0},
      {"reports", {{"trajectory", kTrajectoryFile}, {"events", kEventsFile}}},
      {"started_at", utc_now()},
      {"ended_at", nullptr},
  };
  write_json(out_dir / kManifestFile, ex.manifest);
  return execute(ex);
}

int cmd_resume(const fs::path& manifest_path) {
  json manifest;
  try {
    std::ifstream in(manifest_path);
    if (!in) throw Error("cannot open " + manifest_path.string());
    manifest = json::parse(in);
  } catch (const std::exception& e) {
    std::cerr << "cannot read manifest: " << e.what() << '\n';
    return kExitBadInput;
  }
  const fs::path out_dir = manifest_path.parent_path();
  if (manifest.value("status", "") == "complete") {
    spdlog::info("run in {} is already complete", out_dir.string());
    return kExitOk;
  }

  const fs::path config_path = manifest.at("config_path").get<std::string>();
  SimulationConfig config;
  try {
    config = load_config(config_path);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }
  const std::string hash = config_hash(config);
  if (hash != manifest.at("config_hash").get<std::string>()) {
    std::cerr << "refusing to resume: config " << config_path.string()
              << " changed since the run started (hash " << hash
              << " != " << manifest.at("config_hash").get<std::string>()
              << ")\n";
    return kExitHashMismatch;
  }
  if (!data_files_exist(config.data)) return kExitMissingData;
  if (dataset_fingerprint(config.data) !=
      manifest.at("dataset_fingerprint").get<std::string>()) {
    std::cerr << "refusing to resume: dataset files changed since the run "
                 "started\n";
    return kExitHashMismatch;
  }

  Execution ex;
  ex.out_dir = out_dir;
  ex.config = config;
  ex.manifest = manifest;
  ex.last_iteration = config.iterations;
  if (!manifest["checkpoint_every"].is_null()) {
    ex.checkpoint_every = manifest["checkpoint_every"].get<int>();
  }
  try {
    ex.data = load_movielens(config.data, config.bounds);
  } catch (const std::exception& e) {
    spdlog::error("cannot load dataset: {}", e.what());
    return kExitBadInput;
  }

  int completed = 0;
  if (!manifest["last_checkpoint"].is_null()) {
    const fs::path cp_path =
        out_dir / manifest["last_checkpoint"].get<std::string>();
    Checkpoint cp;
    try {
      cp = read_checkpoint(cp_path, ex.data.ratings);
    } catch (const std::exception& e) {
      std::cerr << "cannot read checkpoint: " << e.what() << '\n';
      return kExitBadInput;
    }
    if (cp.config_hash != hash) {
      std::cerr << "refusing to resume: checkpoint " << cp_path.string()
                << " was written under a different config\n";
      return kExitHashMismatch;
    }
    completed = cp.completed_iteration;
    ex.data.ratings = std::move(cp.store);
  }
  ex.first_iteration = completed + 1;
  ex.manifest["status"] = "running";
  ex.manifest["completed_iterations"] = completed;
  truncate_after(out_dir / kTrajectoryFile, completed, ',', true);
  truncate_after(out_dir / kEventsFile, completed, '\t', false);
  spdlog::info("resuming {} at iteration {}", out_dir.string(),
               ex.first_iteration);
  if (ex.first_iteration > ex.last_iteration) {
    ex.manifest["status"] = "complete";
    write_json(out_dir / kManifestFile, ex.manifest);
    return kExitOk;
  }
  return execute(ex);
}

int cmd_compare(const std::vector<fs::path>& inputs, const fs::path& out_file) {
  if (inputs.empty()) {
    std::cerr << "compare needs at least one trajectory file\n";
    return kExitBadInput;
  }
  std::vector<std::pair<std::string, TextTable>> tables;
  std::map<std::string, int> seen;
  for (const fs::path& p : inputs) {
    TextTable t;
    try {
      t = read_table(p);
    } catch (const std::exception& e) {
      std::cerr << e.what() << '\n';
      return kExitBadInput;
    }
    if (t.header != kTrajectoryHeader) {
      std::cerr << "header mismatch in " << p.string() << '\n';
      return kExitBadInput;
    }
    std::string id = p.filename() == kTrajectoryFile
                         ? p.parent_path().filename().string()
                         : p.stem().string();
    if (id.empty()) id = p.stem().string();
    if (int n = seen[id]++; n > 0) id += "_" + std::to_string(n + 1);
    tables.emplace_back(id, std::move(t));
  }
  std::ofstream out(out_file, std::ios::binary | std::ios::trunc);
  if (!out) {
    std::cerr << "cannot write " << out_file.string() << '\n';
    return kExitFailure;
  }
  out << "run_id," << kTrajectoryHeader << '\n';
  for (const auto& [id, t] : tables) {
    for (const auto& row : t.rows) out << id << ',' << row << '\n';
  }
  return out.flush() ? kExitOk : kExitFailure;
}

int cmd_synth(const SyntheticSpec& spec, const fs::path& out_dir) {
  try {
    write_movielens(generate_synthetic(spec), out_dir);
  } catch (const std::exception& e) {
    std::cerr << "synth failed: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace loopsim::cli
