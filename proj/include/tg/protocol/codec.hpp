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

#ifndef TG__PROTOCOL__CODEC_HPP_
#define TG__PROTOCOL__CODEC_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tg/protocol/message.hpp"

namespace tg::protocol
{
/// Wire schema version, carried in the top byte of the frame header.
inline constexpr std::uint8_t kSchemaVersion = 1;
/// Largest JSON body a frame header can describe (24-bit length).
inline constexpr std::size_t kMaxFrameBody = (1u << 24) - 1;

class MalformedMessage : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Frame layout: [version:u8][length:u24 big-endian][UTF-8 JSON object of `length` bytes].
// The JSON object has exactly the keys type, seq, sent_at_ms, payload; keys are
// emitted sorted so encoding is canonical.

std::vector<std::uint8_t> encode(const Message & msg);

/// Decodes exactly one frame; trailing bytes, unknown keys, missing keys, wrong
/// types, unknown message types or a version mismatch throw MalformedMessage.
Message decode(std::span<const std::uint8_t> frame);

/// Body without the frame header, as used on the UI WebSocket.
nlohmann::json to_json(const Message & msg);
Message from_json(const nlohmann::json & j);
std::string to_json_text(const Message & msg);
Message from_json_text(std::string_view text);

nlohmann::json trajectory_to_json(const traj::Trajectory & traj);
nlohmann::json limits_to_json(const traj::LimitSet & limits);
traj::LimitSet limits_from_json(const nlohmann::json & j);

/// Incremental splitter for a byte stream of frames.
class FrameReader
{
public:
  void feed(std::span<const std::uint8_t> bytes);
  /// Next complete frame, if buffered. Throws MalformedMessage on a bad header.
  std::optional<std::vector<std::uint8_t>> next_frame();

private:
  std::vector<std::uint8_t> buffer_;
};

}  // namespace tg::protocol

#endif  // TG__PROTOCOL__CODEC_HPP_
