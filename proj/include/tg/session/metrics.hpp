// Copyright 2026 The TG Teleoperation Authors
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

#ifndef TG__SESSION__METRICS_HPP_
#define TG__SESSION__METRICS_HPP_

#include <ostream>
#include <stdexcept>
#include <string>

#include "tg/session/session.hpp"

namespace tg::session
{
/// Direct-control baselines reported next to TG results. Not computed.
inline constexpr double kDirectControlTotalS = 56.7;
inline constexpr double kDirectControlMeanSpeedKmh = 4.09;

class IncompleteRun : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct SessionMetrics
{
  double t_plan{0.0};       // s
  double t_drive{0.0};      // s
  double t_total{0.0};      // s
  double v_mean{0.0};       // km/h
  double path_length{0.0};  // m
  std::size_t n_segments{0};
  std::size_t n_mrm{0};
  bool operator==(const SessionMetrics &) const = default;
};

/// Planning: operator time in creation, check and approval phases.
/// Driving: vehicle time tracking or executing an MRM.
/// Path length integrates reported speed over the run record.
SessionMetrics compute_metrics(const SessionRecord & record);

inline constexpr const char * kMetricsCsvHeader =
  "name,seed,t_plan_s,t_drive_s,t_total_s,v_mean_kmh,path_length_m,n_segments,n_mrm";

std::string metrics_csv_row(const std::string & name, std::uint64_t seed, const SessionMetrics & m);
void write_metrics_csv(std::ostream & out, const std::string & name, std::uint64_t seed, const SessionMetrics & m);

}  // namespace tg::session

#endif  // TG__SESSION__METRICS_HPP_
