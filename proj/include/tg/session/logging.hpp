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

#ifndef TG__SESSION__LOGGING_HPP_
#define TG__SESSION__LOGGING_HPP_

namespace tg::session
{
/// Sets the global log level from TG_LOG_LEVEL (trace, debug, info, warn,
/// error, critical, off). Defaults to warn.
void init_logging();
}  // namespace tg::session

#endif  // TG__SESSION__LOGGING_HPP_
