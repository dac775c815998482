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

#include "tg/protocol/codec.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <string>

namespace tg::protocol
{
using nlohmann::json;

namespace
{
template <class... Ts>
struct overloaded : Ts...
{
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void malformed(const std::string & what) { throw MalformedMessage(what); }

void expect_keys(const json & j, std::initializer_list<std::string_view> keys, std::string_view where)
{
  if (!j.is_object()) {
    malformed(std::string(where) + ": expected an object");
  }
  if (j.size() != keys.size()) {
    malformed(std::string(where) + ": unexpected or missing keys");
  }
  for (const auto key : keys) {
    if (!j.contains(std::string(key))) {
      malformed(std::string(where) + ": missing key '" + std::string(key) + "'");
    }
  }
}

double get_double(const json & j, const char * key)
{
  const auto & v = j.at(key);
  if (!v.is_number()) {
    malformed(std::string("field '") + key + "' must be a number");
  }
  const double d = v.get<double>();
  if (!std::isfinite(d)) {
    malformed(std::string("field '") + key + "' must be finite");
  }
  return d;
}

std::uint64_t get_uint(const json & j, const char * key)
{
  const auto & v = j.at(key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    malformed(std::string("field '") + key + "' must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::string get_string(const json & j, const char * key)
{
  const auto & v = j.at(key);
  if (!v.is_string()) {
    malformed(std::string("field '") + key + "' must be a string");
  }
  return v.get<std::string>();
}

bool get_bool(const json & j, const char * key)
{
  const auto & v = j.at(key);
  if (!v.is_boolean()) {
    malformed(std::string("field '") + key + "' must be a boolean");
  }
  return v.get<bool>();
}

std::vector<double> get_double_array(const json & j, const char * key)
{
  const auto & arr = j.at(key);
  if (!arr.is_array()) {
    malformed(std::string("field '") + key + "' must be an array");
  }
  std::vector<double> out;
  out.reserve(arr.size());
  for (const auto & v : arr) {
    if (!v.is_number() || !std::isfinite(v.get<double>())) {
      malformed(std::string("field '") + key + "' must hold finite numbers");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

const json & get_array(const json & j, const char * key)
{
  const auto & arr = j.at(key);
  if (!arr.is_array()) {
    malformed(std::string("field '") + key + "' must be an array");
  }
  return arr;
}

json id_payload(std::uint64_t id) { return json{{"id", id}}; }

std::uint64_t id_from(const json & p)
{
  expect_keys(p, {"id"}, "payload");
  return get_uint(p, "id");
}

MrmCause mrm_cause_from(const std::string & s)
{
  if (s == "operator") return MrmCause::Operator;
  if (s == "network_loss") return MrmCause::NetworkLoss;
  if (s == "collision_risk") return MrmCause::CollisionRisk;
  malformed("unknown mrm cause '" + s + "'");
}

json payload_to_json(const Payload & payload)
{
  return std::visit(
    overloaded{
      [](const TeleopRequest & p) { return json{{"reason", p.reason}}; },
      [](const TakeoverAck &) { return json::object(); },
      [](const TrajectoryProposal & p) {
        json j = trajectory_to_json(p.trajectory);
        json wps = json::array();
        for (const auto & w : p.waypoints) {
          wps.push_back(json{{"x", w.x}, {"y", w.y}});
        }
        j["waypoints"] = std::move(wps);
        return j;
      },
      [](const TrajectoryChecked & p) {
        return json{
          {"id", p.id},
          {"status", p.status == CheckStatus::Ok ? "ok" : "rejected"},
          {"reasons", p.reasons}};
      },
      [](const TrajectoryApprove & p) { return id_payload(p.id); },
      [](const TrajectoryReject & p) { return id_payload(p.id); },
      [](const TrackingStarted & p) { return id_payload(p.id); },
      [](const VehicleStateReport & p) {
        return json{{"x", p.x}, {"y", p.y}, {"psi", p.psi}, {"v", p.v},
                    {"a", p.a}, {"s_progress", p.s_progress}, {"traj_id", p.traj_id}};
      },
      [](const PathEndReached & p) { return id_payload(p.id); },
      [](const EmergencyStop &) { return json::object(); },
      [](const MrmExecuted & p) {
        return json{{"cause", std::string(to_string(p.cause))}, {"stage", std::string(to_string(p.stage))}};
      },
      [](const Heartbeat &) { return json::object(); },
      [](const SessionEnd & p) { return json{{"goal_reached", p.goal_reached}}; },
    },
    payload);
}

TrajectoryProposal proposal_from(const json & p)
{
  expect_keys(p, {"id", "waypoints", "points", "v", "t", "limits"}, "trajectory_proposal");
  TrajectoryProposal out;
  auto & traj = out.trajectory;
  traj.id = get_uint(p, "id");
  for (const auto & w : get_array(p, "waypoints")) {
    expect_keys(w, {"x", "y"}, "waypoint");
    out.waypoints.push_back({get_double(w, "x"), get_double(w, "y")});
  }
  for (const auto & q : get_array(p, "points")) {
    expect_keys(q, {"x", "y", "heading", "kappa", "s"}, "point");
    traj.points.push_back(
      {get_double(q, "x"), get_double(q, "y"), get_double(q, "heading"), get_double(q, "kappa"),
       get_double(q, "s")});
  }
  traj.v = get_double_array(p, "v");
  traj.t = get_double_array(p, "t");
  traj.limits = limits_from_json(p.at("limits"));
  return out;
}

Payload payload_from_json(MessageType type, const json & p)
{
  switch (type) {
    case MessageType::TeleopRequest:
      expect_keys(p, {"reason"}, "teleop_request");
      return TeleopRequest{get_string(p, "reason")};
    case MessageType::TakeoverAck:
      expect_keys(p, {}, "takeover_ack");
      return TakeoverAck{};
    case MessageType::TrajectoryProposal:
      return proposal_from(p);
    case MessageType::TrajectoryChecked: {
      expect_keys(p, {"id", "status", "reasons"}, "trajectory_checked");
      TrajectoryChecked c;
      c.id = get_uint(p, "id");
      const auto status = get_string(p, "status");
      if (status == "ok") {
        c.status = CheckStatus::Ok;
      } else if (status == "rejected") {
        c.status = CheckStatus::Rejected;
      } else {
        malformed("unknown check status '" + status + "'");
      }
      for (const auto & r : get_array(p, "reasons")) {
        if (!r.is_string()) malformed("reasons must be strings");
        c.reasons.push_back(r.get<std::string>());
      }
      return c;
    }
    case MessageType::TrajectoryApprove: return TrajectoryApprove{id_from(p)};
    case MessageType::TrajectoryReject: return TrajectoryReject{id_from(p)};
    case MessageType::TrackingStarted: return TrackingStarted{id_from(p)};
    case MessageType::VehicleState:
      expect_keys(p, {"x", "y", "psi", "v", "a", "s_progress", "traj_id"}, "vehicle_state");
      return VehicleStateReport{
        get_double(p, "x"), get_double(p, "y"),          get_double(p, "psi"),
        get_double(p, "v"), get_double(p, "a"),          get_double(p, "s_progress"),
        get_uint(p, "traj_id")};
    case MessageType::PathEndReached: return PathEndReached{id_from(p)};
    case MessageType::EmergencyStop:
      expect_keys(p, {}, "emergency_stop");
      return EmergencyStop{};
    case MessageType::MrmExecuted: {
      expect_keys(p, {"cause", "stage"}, "mrm_executed");
      MrmExecuted m;
      m.cause = mrm_cause_from(get_string(p, "cause"));
      const auto stage = get_string(p, "stage");
      if (stage == "triggered") {
        m.stage = MrmStage::Triggered;
      } else if (stage == "completed") {
        m.stage = MrmStage::Completed;
      } else {
        malformed("unknown mrm stage '" + stage + "'");
      }
      return m;
    }
    case MessageType::Heartbeat:
      expect_keys(p, {}, "heartbeat");
      return Heartbeat{};
    case MessageType::SessionEnd:
      expect_keys(p, {"goal_reached"}, "session_end");
      return SessionEnd{get_bool(p, "goal_reached")};
  }
  malformed("unhandled message type");
}

}  // namespace

json limits_to_json(const traj::LimitSet & l)
{
  return json{{"v_max", l.v_max},         {"a_max", l.a_max}, {"d_max", l.d_max},
              {"a_lat_max", l.a_lat_max}, {"j_max", l.j_max}, {"kappa_max", l.kappa_max},
              {"d_mrm", l.d_mrm}};
}

traj::LimitSet limits_from_json(const json & j)
{
  expect_keys(j, {"v_max", "a_max", "d_max", "a_lat_max", "j_max", "kappa_max", "d_mrm"}, "limits");
  traj::LimitSet l;
  l.v_max = get_double(j, "v_max");
  l.a_max = get_double(j, "a_max");
  l.d_max = get_double(j, "d_max");
  l.a_lat_max = get_double(j, "a_lat_max");
  l.j_max = get_double(j, "j_max");
  l.kappa_max = get_double(j, "kappa_max");
  l.d_mrm = get_double(j, "d_mrm");
  return l;
}

json trajectory_to_json(const traj::Trajectory & traj)
{
  json points = json::array();
  for (const auto & p : traj.points) {
    points.push_back(json{{"x", p.x}, {"y", p.y}, {"heading", p.heading}, {"kappa", p.curvature}, {"s", p.s}});
  }
  return json{
    {"id", traj.id}, {"points", std::move(points)}, {"v", traj.v}, {"t", traj.t},
    {"limits", limits_to_json(traj.limits)}};
}

json to_json(const Message & msg)
{
  return json{
    {"type", std::string(to_string(msg.type()))},
    {"seq", msg.seq},
    {"sent_at_ms", msg.sent_at_ms},
    {"payload", payload_to_json(msg.payload)}};
}

Message from_json(const json & j)
{
  try {
    expect_keys(j, {"type", "seq", "sent_at_ms", "payload"}, "message");
    const auto type = message_type_from_string(get_string(j, "type"));
    if (!type) {
      malformed("unknown message type");
    }
    Message msg;
    msg.seq = get_uint(j, "seq");
    const auto & sent = j.at("sent_at_ms");
    if (!sent.is_number_integer() || sent.get<std::int64_t>() < 0) {
      malformed("sent_at_ms must be a non-negative integer");
    }
    msg.sent_at_ms = sent.get<std::int64_t>();
    msg.payload = payload_from_json(*type, j.at("payload"));
    return msg;
  } catch (const json::exception & e) {
    throw MalformedMessage(std::string("json: ") + e.what());
  }
}

std::string to_json_text(const Message & msg) { return to_json(msg).dump(); }

Message from_json_text(std::string_view text)
{
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception & e) {
    throw MalformedMessage(std::string("json parse: ") + e.what());
  }
  return from_json(j);
}

std::vector<std::uint8_t> encode(const Message & msg)
{
  const std::string body = to_json_text(msg);
  if (body.size() > kMaxFrameBody) {
    throw MalformedMessage("message body exceeds frame limit");
  }
  const auto len = static_cast<std::uint32_t>(body.size());
  std::vector<std::uint8_t> out;
  out.reserve(4 + body.size());
  out.push_back(kSchemaVersion);
  out.push_back(static_cast<std::uint8_t>((len >> 16) & 0xff));
  out.push_back(static_cast<std::uint8_t>((len >> 8) & 0xff));
  out.push_back(static_cast<std::uint8_t>(len & 0xff));
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

namespace
{
std::size_t body_length(std::span<const std::uint8_t> header)
{
  if (header[0] != kSchemaVersion) {
    malformed("unsupported schema version " + std::to_string(header[0]));
  }
  return (std::size_t{header[1]} << 16) | (std::size_t{header[2]} << 8) | std::size_t{header[3]};
}
}  // namespace

Message decode(std::span<const std::uint8_t> frame)
{
  if (frame.size() < 4) {
    malformed("truncated frame header");
  }
  const std::size_t len = body_length(frame.first(4));
  if (frame.size() - 4 < len) {
    malformed("truncated payload");
  }
  if (frame.size() - 4 > len) {
    malformed("trailing bytes after frame");
  }
  const auto body = frame.subspan(4);
  return from_json_text(std::string_view(reinterpret_cast<const char *>(body.data()), body.size()));
}

void FrameReader::feed(std::span<const std::uint8_t> bytes)
{
  buffer_.insert(buffer_.end(), bytes.begin(), bytes.end());
}

std::optional<std::vector<std::uint8_t>> FrameReader::next_frame()
{
  if (buffer_.size() < 4) {
    return std::nullopt;
  }
  const std::size_t len = body_length(std::span<const std::uint8_t>(buffer_).first(4));
  if (buffer_.size() < 4 + len) {
    return std::nullopt;
  }
  std::vector<std::uint8_t> frame(buffer_.begin(), buffer_.begin() + static_cast<std::ptrdiff_t>(4 + len));
  buffer_.erase(buffer_.begin(), buffer_.begin() + static_cast<std::ptrdiff_t>(4 + len));
  return frame;
}

}  // namespace tg::protocol
