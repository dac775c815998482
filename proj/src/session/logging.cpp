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

#include "tg/session/logging.hpp"

#include <cstdlib>
#include <string>

#include <spdlog/spdlog.h>

namespace tg::session
{
void init_logging()
{
  auto level = spdlog::level::warn;
  if (const char * env = std::getenv("TG_LOG_LEVEL")) {
    const std::string name(env);
    level = spdlog::level::from_str(name);
    // from_str maps unknown names to off; keep the default instead.
    if (level == spdlog::level::off && name != "off") level = spdlog::level::warn;
  }
  spdlog::set_level(level);
}
}  // namespace tg::session
