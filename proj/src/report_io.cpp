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

#include "loopsim/report_io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

namespace loopsim {

std::string format_metric(std::optional<double> v) {
  if (!v) return std::string(kNotApplicable);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", *v);
  return buf;
}

std::string trajectory_row(const IterationReport& r) {
  std::string row = std::to_string(r.t);
  row += ',';
  row += algorithm_name(r.algorithm);
  for (const auto& v :
       {r.avg_pop_data, r.avg_pop_rec, r.agg_div, r.theta_abs, r.theta_rel,
        r.drift_all, r.drift_male, r.drift_female, r.kld_male_female,
        r.kld_pop_male, r.kld_pop_female}) {
    row += ',';
    row += format_metric(v);
  }
  row += ',';
  row += std::to_string(r.committed);
  return row;
}

void write_trajectory(std::ostream& out,
                      std::span<const IterationReport> reports) {
  out << kTrajectoryHeader << '\n';
  for (const auto& r : reports) out << trajectory_row(r) << '\n';
}

std::string event_row(const SelectionEvent& e, const RatingStore& store) {
  char omega[64];
  std::snprintf(omega, sizeof(omega), "%.17g", e.omega);
  return std::to_string(e.iteration) + '\t' +
         std::to_string(store.user_id(e.user)) + '\t' +
         std::to_string(store.item_id(e.item)) + '\t' +
         std::to_string(e.rank) + '\t' + omega + '\t' +
         std::to_string(e.rating);
}

TextTable read_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  TextTable table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (first) {
      table.header = line;
      first = false;
    } else if (!line.empty()) {
      table.rows.push_back(line);
    }
  }
  return table;
}

}  // namespace loopsim
