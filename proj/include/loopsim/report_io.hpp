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

#ifndef LOOPSIM_REPORT_IO_HPP_
#define LOOPSIM_REPORT_IO_HPP_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "loopsim/simulation.hpp"

namespace loopsim {

inline constexpr std::string_view kTrajectoryHeader =
    "t,algorithm,avg_pop_data,avg_pop_rec,agg_div,theta_abs,theta_rel,"
    "drift_all,drift_M,drift_F,kld_MF,kld_pop_M,kld_pop_F,K";

inline constexpr std::string_view kNotApplicable = "NA";

// %.17g, or NA for an unset value.
std::string format_metric(std::optional<double> v);

// One CSV data row (no newline) in kTrajectoryHeader column order.
std::string trajectory_row(const IterationReport& report);

void write_trajectory(std::ostream& out,
                      std::span<const IterationReport> reports);

// t<TAB>user<TAB>item<TAB>rank<TAB>omega<TAB>rating with external ids. Only
// accepted events are logged.
std::string event_row(const SelectionEvent& event, const RatingStore& store);

// Header line and data lines of a text file, without line terminators.
struct TextTable {
  std::string header;
  std::vector<std::string> rows;
};
TextTable read_table(const std::filesystem::path& path);

}  // namespace loopsim

#endif  // LOOPSIM_REPORT_IO_HPP_
