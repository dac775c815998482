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

#include <doctest.h>

#include <cstring>
#include <limits>
#include <string>
#include <vector>

#include "tg/protocol/codec.hpp"
#include "tg/traj/trajectory.hpp"

using namespace tg::protocol;
using tg::traj::Waypoint;

namespace
{
const std::vector<Waypoint> kCurvyWaypoints{{0.0, 0.0},  {8.0, 0.2},  {16.0, 4.5}, {24.0, 6.0},
                                            {36.0, 6.0}, {44.0, 4.5}, {52.0, 0.5}, {60.0, 0.0}};

TrajectoryProposal proposal_with_points(std::size_t count)
{
  const auto probe = tg::traj::build_trajectory(kCurvyWaypoints, tg::traj::LimitSet{}, 9);
  const double ds = probe.length() / static_cast<double>(count - 1);
  return TrajectoryProposal{kCurvyWaypoints, tg::traj::build_trajectory(kCurvyWaypoints, tg::traj::LimitSet{}, 9, ds)};
}

std::vector<Message> fixtures()
{
  std::vector<Message> out;
  Outbox box;
  std::int64_t now = 0;
  auto add = [&](Payload p) { out.push_back(box.stamp(std::move(p), now += 7)); };
  add(TeleopRequest{"construction site blocks lane"});
  add(TakeoverAck{});
  add(proposal_with_points(12));
  add(TrajectoryChecked{4, CheckStatus::Ok, {}});
  add(TrajectoryChecked{5, CheckStatus::Rejected, {"CurvatureExceeded", "ObstacleConflict"}});
  add(TrajectoryApprove{4});
  add(TrajectoryReject{5});
  add(TrackingStarted{4});
  add(VehicleStateReport{12.5, -0.25, 0.1, 1.3888888888888888, -0.5, 11.75, 4});
  add(PathEndReached{4});
  add(EmergencyStop{});
  add(MrmExecuted{MrmCause::NetworkLoss, MrmStage::Triggered});
  add(MrmExecuted{MrmCause::CollisionRisk, MrmStage::Completed});
  add(Heartbeat{});
  add(SessionEnd{true});
  return out;
}

std::vector<std::uint8_t> frame_of(const std::string & body)
{
  std::vector<std::uint8_t> f{kSchemaVersion, static_cast<std::uint8_t>(body.size() >> 16),
                              static_cast<std::uint8_t>(body.size() >> 8), static_cast<std::uint8_t>(body.size())};
  f.insert(f.end(), body.begin(), body.end());
  return f;
}
}  // namespace

TEST_SUITE("codec")
{
TEST_CASE("every message type round-trips")
{
  const auto msgs = fixtures();
  std::vector<bool> seen(13, false);
  for (const auto & m : msgs) {
    CAPTURE(to_string(m.type()));
    seen[static_cast<std::size_t>(m.type())] = true;
    const auto bytes = encode(m);
    const auto back = decode(bytes);
    CHECK(back == m);
    CHECK(encode(back) == bytes);
  }
  for (bool s : seen) CHECK(s);
}

TEST_CASE("270-point proposal survives bit-exactly")
{
  const auto proposal = proposal_with_points(270);
  REQUIRE(proposal.trajectory.points.size() == 270);
  const Message m{42, 1234, proposal};
  const auto back = decode(encode(m));
  const auto & t0 = proposal.trajectory;
  const auto & t1 = std::get<TrajectoryProposal>(back.payload).trajectory;
  REQUIRE(t1.points.size() == 270);
  for (std::size_t i = 0; i < t0.points.size(); ++i) {
    CHECK(std::memcmp(&t0.points[i], &t1.points[i], sizeof(t0.points[i])) == 0);
    CHECK(std::memcmp(&t0.v[i], &t1.v[i], sizeof(double)) == 0);
    CHECK(std::memcmp(&t0.t[i], &t1.t[i], sizeof(double)) == 0);
  }
  CHECK(t1.limits == t0.limits);
  CHECK(back == m);
}

TEST_CASE("header carries version and big-endian length")
{
  const auto bytes = encode(Message{1, 0, Heartbeat{}});
  REQUIRE(bytes.size() > 4);
  CHECK(bytes[0] == kSchemaVersion);
  const std::size_t len = (std::size_t{bytes[1]} << 16) | (std::size_t{bytes[2]} << 8) | bytes[3];
  CHECK(len == bytes.size() - 4);
  const std::string body(bytes.begin() + 4, bytes.end());
  CHECK(body == R"({"payload":{},"sent_at_ms":0,"seq":1,"type":"heartbeat"})");
}

TEST_CASE("wire field names")
{
  const auto j = to_json(Message{3, 60, VehicleStateReport{1, 2, 0.5, 1.2, 0.1, 7.5, 2}});
  CHECK(j.at("type") == "vehicle_state");
  for (const char * k : {"x", "y", "psi", "v", "a", "s_progress", "traj_id"}) {
    CHECK(j.at("payload").contains(k));
  }
  const auto p = to_json(Message{1, 0, proposal_with_points(5)}).at("payload");
  for (const char * k : {"id", "waypoints", "points", "v", "t", "limits"}) CHECK(p.contains(k));
  for (const char * k : {"x", "y", "heading", "kappa", "s"}) CHECK(p.at("points").at(0).contains(k));
  for (const char * k : {"v_max", "a_max", "d_max", "a_lat_max", "j_max", "kappa_max", "d_mrm"}) {
    CHECK(p.at("limits").contains(k));
  }
}

TEST_CASE("truncated frames are malformed")
{
  const auto bytes = encode(Message{1, 0, TrackingStarted{3}});
  for (std::size_t cut = 0; cut < bytes.size(); ++cut) {
    CHECK_THROWS_AS(decode(std::span(bytes.data(), cut)), MalformedMessage);
  }
}

TEST_CASE("trailing bytes are malformed")
{
  auto bytes = encode(Message{1, 0, Heartbeat{}});
  bytes.push_back('x');
  CHECK_THROWS_AS(decode(bytes), MalformedMessage);
}

TEST_CASE("schema violations are rejected")
{
  const char * bad[] = {
    R"({"payload":{},"sent_at_ms":0,"seq":1,"type":"heartbeat","extra":1})",
    R"({"payload":{"x":1},"sent_at_ms":0,"seq":1,"type":"heartbeat"})",
    R"({"payload":{},"sent_at_ms":0,"type":"heartbeat"})",
    R"({"payload":{},"sent_at_ms":0,"seq":1,"type":"warp_drive"})",
    R"({"payload":{},"sent_at_ms":0,"seq":-1,"type":"heartbeat"})",
    R"({"payload":{},"sent_at_ms":1.5,"seq":1,"type":"heartbeat"})",
    R"({"payload":{"id":"4"},"sent_at_ms":0,"seq":1,"type":"trajectory_approve"})",
    R"({"payload":{"id":4,"status":"maybe","reasons":[]},"sent_at_ms":0,"seq":1,"type":"trajectory_checked"})",
    R"({"payload":{"cause":"aliens","stage":"triggered"},"sent_at_ms":0,"seq":1,"type":"mrm_executed"})",
    R"({"payload":{"goal_reached":1},"sent_at_ms":0,"seq":1,"type":"session_end"})",
    R"([1,2,3])",
    R"({"payload":{},"sent_at_ms":0,"seq":1,"type":"heartbeat")",
  };
  for (const char * text : bad) {
    CAPTURE(text);
    CHECK_THROWS_AS(decode(frame_of(text)), MalformedMessage);
  }
}

TEST_CASE("unsupported version is rejected")
{
  auto bytes = encode(Message{1, 0, Heartbeat{}});
  bytes[0] = kSchemaVersion + 1;
  CHECK_THROWS_AS(decode(bytes), MalformedMessage);
}

TEST_CASE("non-finite numbers cannot be encoded into a valid frame")
{
  VehicleStateReport r;
  r.v = std::numeric_limits<double>::quiet_NaN();
  const auto bytes = encode(Message{1, 0, r});
  CHECK_THROWS_AS(decode(bytes), MalformedMessage);
}

TEST_CASE("seq stays monotone through encode/decode")
{
  Outbox box;
  std::uint64_t last = 0;
  std::int64_t last_sent = 0;
  for (int i = 0; i < 200; ++i) {
    const std::int64_t now = (i * 37) % 101 + i;  // jittery but mostly increasing clock
    const auto m = decode(encode(box.stamp(Heartbeat{}, now)));
    CHECK(m.seq > last);
    CHECK(m.sent_at_ms >= last_sent);
    last = m.seq;
    last_sent = m.sent_at_ms;
  }
}

TEST_CASE("frame reader splits a byte stream fed in arbitrary chunks")
{
  const auto msgs = fixtures();
  std::vector<std::uint8_t> stream;
  for (const auto & m : msgs) {
    const auto b = encode(m);
    stream.insert(stream.end(), b.begin(), b.end());
  }
  FrameReader reader;
  std::vector<Message> out;
  std::size_t pos = 0;
  std::size_t chunk = 1;
  while (pos < stream.size()) {
    const std::size_t n = std::min(chunk, stream.size() - pos);
    reader.feed(std::span(stream.data() + pos, n));
    pos += n;
    chunk = chunk * 3 % 97 + 1;
    while (auto f = reader.next_frame()) out.push_back(decode(*f));
  }
  CHECK(out == msgs);
}
}
