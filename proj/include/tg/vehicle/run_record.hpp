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

#ifndef TG__VEHICLE__RUN_RECORD_HPP_
#define TG__VEHICLE__RUN_RECORD_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace tg::vehicle
{
struct RunRow
{
  double t{0.0};
  double x{0.0};
  double y{0.0};
  double psi{0.0};
  double v{0.0};
  double a{0.0};
  double s_progress{0.0};
  std::string phase;
  bool mrm_active{false};
  bool operator==(const RunRow &) const = default;
};

struct RunRecord
{
  std::vector<RunRow> rows;
  bool operator==(const RunRecord &) const = default;
};

inline constexpr const char * kRunRecordHeader = "t,x,y,psi,v,a,s_progress,phase,mrm_active";

/// Fixed-precision CSV, so identical runs give identical bytes.
void write_csv(std::ostream & out, const RunRecord & record);

}  // namespace tg::vehicle

#endif  // TG__VEHICLE__RUN_RECORD_HPP_
