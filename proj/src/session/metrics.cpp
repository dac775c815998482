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

#include "tg/session/metrics.hpp"

#include <cstdio>
#include <set>

namespace tg::session
{
namespace
{
template <class Phase>
double time_in(const std::vector<PhaseChange<Phase>> & log, const std::set<Phase> & phases, std::int64_t end_ms)
{
  std::int64_t total = 0;
  for (std::size_t i = 0; i < log.size(); ++i) {
    const std::int64_t until = i + 1 < log.size() ? log[i + 1].t_ms : end_ms;
    if (phases.count(log[i].phase)) total += until - log[i].t_ms;
  }
  return static_cast<double>(total) / 1000.0;
}

template <class Phase>
std::size_t entries_into(const std::vector<PhaseChange<Phase>> & log, Phase phase)
{
  std::size_t n = 0;
  for (const auto & c : log) n += c.phase == phase;
  return n;
}
}  // namespace

SessionMetrics compute_metrics(const SessionRecord & record)
{
  if (!record.ended || record.outcome == Outcome::Running) {
    throw IncompleteRun("session has not ended");
  }
  if (record.operator_phases.empty() || record.vehicle_phases.empty()) {
    throw IncompleteRun("run record has no phase history");
  }
  using protocol::OperatorPhase;
  using protocol::VehiclePhase;
  SessionMetrics m;
  m.t_plan = time_in(
    record.operator_phases,
    {OperatorPhase::TrajectoryCreation, OperatorPhase::AwaitCheck, OperatorPhase::TrajectoryApproval},
    record.end_ms);
  m.t_drive =
    time_in(record.vehicle_phases, {VehiclePhase::TrajectoryTracking, VehiclePhase::EmergencyStop}, record.end_ms);
  m.t_total = m.t_plan + m.t_drive;

  const auto & rows = record.run.rows;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    m.path_length += 0.5 * (rows[i].v + rows[i - 1].v) * (rows[i].t - rows[i - 1].t);
  }
  m.v_mean = m.t_drive > 0.0 ? 3.6 * m.path_length / m.t_drive : 0.0;
  m.n_segments = entries_into(record.vehicle_phases, VehiclePhase::TrajectoryTracking);
  m.n_mrm = entries_into(record.vehicle_phases, VehiclePhase::EmergencyStop);
  return m;
}

std::string metrics_csv_row(const std::string & name, std::uint64_t seed, const SessionMetrics & m)
{
  char buf[256];
  std::snprintf(
    buf, sizeof buf, "%s,%llu,%.3f,%.3f,%.3f,%.3f,%.3f,%zu,%zu", name.c_str(), static_cast<unsigned long long>(seed),
    m.t_plan, m.t_drive, m.t_total, m.v_mean, m.path_length, m.n_segments, m.n_mrm);
  return buf;
}

void write_metrics_csv(std::ostream & out, const std::string & name, std::uint64_t seed, const SessionMetrics & m)
{
  out << kMetricsCsvHeader << '\n' << metrics_csv_row(name, seed, m) << '\n';
}

}  // namespace tg::session
