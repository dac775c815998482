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

#include "tg/vehicle/run_record.hpp"

#include <cstdio>

namespace tg::vehicle
{
void write_csv(std::ostream & out, const RunRecord & record)
{
  out << kRunRecordHeader << '\n';
  char buf[256];
  for (const auto & r : record.rows) {
    std::snprintf(buf, sizeof(buf), "%.3f,%.4f,%.4f,%.5f,%.4f,%.4f,%.4f,", r.t, r.x, r.y, r.psi, r.v, r.a, r.s_progress);
    out << buf << r.phase << ',' << (r.mrm_active ? 1 : 0) << '\n';
  }
}

}  // namespace tg::vehicle
