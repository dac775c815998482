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

#include "tg/session/bridge.hpp"

#include <chrono>
#include <deque>
#include <vector>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>
#include <spdlog/spdlog.h>

#include "tg/protocol/codec.hpp"

namespace tg::session
{
namespace asio = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;

namespace
{
nlohmann::json polygon_json(const Polygon & p)
{
  auto out = nlohmann::json::array();
  for (const auto & v : p) out.push_back({v.x, v.y});
  return out;
}

nlohmann::json waypoints_json(const std::vector<traj::Waypoint> & w)
{
  auto out = nlohmann::json::array();
  for (const auto & p : w) out.push_back({p.x, p.y});
  return out;
}
}  // namespace

nlohmann::json scene_state(const Session & session, bool ui_link_lost)
{
  const auto & sc = session.scenario();
  const auto & op = session.operator_end();
  const auto & veh = session.vehicle_end();
  const auto view = session.view();

  nlohmann::json obstacles = nlohmann::json::array();
  for (const auto & o : sc.obstacles) obstacles.push_back(polygon_json(o));

  nlohmann::json vehicle = nullptr;
  if (view.vehicle) {
    const auto & r = *view.vehicle;
    vehicle = {{"x", r.x}, {"y", r.y}, {"psi", r.psi}, {"v", r.v}, {"a", r.a}, {"s_progress", r.s_progress},
               {"traj_id", r.traj_id}, {"length", sc.vehicle.length}, {"width", sc.vehicle.width},
               {"wheelbase", sc.vehicle.wheelbase}};
  }

  nlohmann::json allowed = nlohmann::json::array();
  for (int k = 0; k <= static_cast<int>(UiCommandKind::EndSession); ++k) {
    const auto kind = static_cast<UiCommandKind>(k);
    if (command_allowed(view.phase, kind)) allowed.push_back(std::string(to_string(kind)));
  }

  const bool mrm_alarm = view.phase == protocol::OperatorPhase::EmergencyStopped;
  return {
    {"type", "scene_state"},
    {"t_ms", session.now_ms()},
    {"scenario",
     {{"name", sc.name},
      {"bounds", polygon_json(sc.bounds)},
      {"obstacles", obstacles},
      {"start", {{"x", sc.start_pose.x}, {"y", sc.start_pose.y}, {"psi", sc.start_pose.psi}}},
      {"goal", {{"x", sc.goal.x}, {"y", sc.goal.y}, {"radius", sc.goal.radius}}}}},
    {"vehicle", vehicle},
    {"draft", waypoints_json(op.draft())},
    {"proposal", op.proposal() ? protocol::trajectory_to_json(*op.proposal()) : nlohmann::json(nullptr)},
    {"active", op.active() ? protocol::trajectory_to_json(*op.active()) : nlohmann::json(nullptr)},
    {"phase", std::string(protocol::to_string(view.phase))},
    {"vehicle_phase", std::string(protocol::to_string(veh.phase()))},
    {"alarms",
     {{"check_failed", view.last_check_rejected},
      {"check_reasons", op.last_check_reasons()},
      {"mrm", mrm_alarm},
      {"link_lost", view.link_lost || ui_link_lost}}},
    {"allowed_commands", allowed},
    {"ended", session.ended()},
    {"outcome", std::string(to_string(session.outcome()))},
  };
}

nlohmann::json error_frame(const std::string & message) { return {{"type", "error"}, {"message", message}}; }

std::optional<nlohmann::json> handle_client_frame(std::string_view text, QueueOperator & queue)
{
  try {
    queue.push(parse_ui_command_frame(text));
  } catch (const protocol::MalformedMessage & e) {
    spdlog::info("bridge: rejected frame: {}", e.what());
    return error_frame(e.what());
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- server

class Client;

struct UiServer::Impl
{
  Impl(UiServer & owner, const Scenario & scenario, BridgeOptions options)
  : owner(owner), scenario(scenario), options(std::move(options)), acceptor(ioc)
  {
  }

  void do_accept();
  void broadcast(std::shared_ptr<const std::string> text);
  void on_connected(const std::shared_ptr<Client> & c);
  void on_disconnected(const Client * c);
  void session_loop();

  UiServer & owner;
  Scenario scenario;
  BridgeOptions options;
  asio::io_context ioc;
  tcp::acceptor acceptor;
  std::vector<std::weak_ptr<Client>> clients;  // io thread only
  QueueOperator queue;
  mutable std::mutex session_mutex;
  std::unique_ptr<Session> session;
  std::atomic<bool> stopping{false};
  std::thread io_thread;
  std::thread session_thread;
};

class Client : public std::enable_shared_from_this<Client>
{
public:
  Client(tcp::socket socket, UiServer::Impl & server) : ws_(std::move(socket)), server_(server) {}

  void run()
  {
    http::async_read(
      ws_.next_layer(), buffer_, request_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
        self->on_request(ec);
      });
  }

  void send(std::shared_ptr<const std::string> text)
  {
    if (!open_) return;
    queue_.push_back(std::move(text));
    if (queue_.size() == 1) do_write();
  }

private:
  void on_request(beast::error_code ec)
  {
    if (ec) return;
    if (!websocket::is_upgrade(request_) || request_.target() != "/ws") {
      auto res = std::make_shared<http::response<http::string_body>>(http::status::not_found, request_.version());
      res->set(http::field::content_type, "text/plain");
      res->body() = "websocket endpoint is /ws\n";
      res->prepare_payload();
      http::async_write(ws_.next_layer(), *res, [self = shared_from_this(), res](beast::error_code, std::size_t) {
        beast::error_code ignored;
        self->ws_.next_layer().socket().shutdown(tcp::socket::shutdown_send, ignored);
      });
      return;
    }
    ws_.async_accept(request_, [self = shared_from_this()](beast::error_code ec) {
      if (ec) return;
      self->open_ = true;
      self->ws_.text(true);
      self->server_.on_connected(self);
      self->do_read();
    });
  }

  void do_read()
  {
    ws_.async_read(buffer_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
      if (ec) {
        self->open_ = false;
        self->server_.on_disconnected(self.get());
        return;
      }
      const std::string text = beast::buffers_to_string(self->buffer_.data());
      self->buffer_.consume(self->buffer_.size());
      if (auto err = handle_client_frame(text, self->server_.queue)) {
        self->send(std::make_shared<const std::string>(err->dump()));
      }
      self->do_read();
    });
  }

  void do_write()
  {
    ws_.async_write(asio::buffer(*queue_.front()), [self = shared_from_this()](beast::error_code ec, std::size_t) {
      if (ec) {
        self->open_ = false;
        self->queue_.clear();
        return;
      }
      self->queue_.pop_front();
      if (!self->queue_.empty()) self->do_write();
    });
  }

  websocket::stream<beast::tcp_stream> ws_;
  UiServer::Impl & server_;
  beast::flat_buffer buffer_;
  http::request<http::string_body> request_;
  std::deque<std::shared_ptr<const std::string>> queue_;
  bool open_{false};
};

void UiServer::Impl::do_accept()
{
  acceptor.async_accept(asio::make_strand(ioc), [this](beast::error_code ec, tcp::socket socket) {
    if (ec) return;  // acceptor closed
    std::make_shared<Client>(std::move(socket), *this)->run();
    do_accept();
  });
}

void UiServer::Impl::on_connected(const std::shared_ptr<Client> & c)
{
  clients.push_back(c);
  owner.ui_link_lost_ = false;
  spdlog::info("bridge: client connected");
}

void UiServer::Impl::on_disconnected(const Client * c)
{
  std::erase_if(clients, [c](const auto & w) {
    const auto p = w.lock();
    return !p || p.get() == c;
  });
  if (clients.empty()) {
    owner.ui_link_lost_ = true;
    spdlog::warn("bridge: last UI client disconnected, link-lost alarm raised");
  }
}

void UiServer::Impl::broadcast(std::shared_ptr<const std::string> text)
{
  for (const auto & w : clients) {
    if (const auto c = w.lock()) c->send(text);
  }
}

void UiServer::Impl::session_loop()
{
  std::vector<std::shared_ptr<const std::string>> outgoing;
  {
    std::lock_guard lock(session_mutex);
    session->on_delivery([&outgoing](const net::Delivery & d) {
      if (d.direction == net::Direction::ToOperator && d.message.type() != protocol::MessageType::Heartbeat) {
        outgoing.push_back(std::make_shared<const std::string>(protocol::to_json_text(d.message)));
      }
    });
  }
  const auto wall0 = std::chrono::steady_clock::now();
  const double factor = options.realtime_factor > 0.0 ? options.realtime_factor : 1.0;
  bool running = true;
  while (running && !stopping) {
    std::int64_t now = 0;
    {
      std::lock_guard lock(session_mutex);
      running = session->step();
      now = session->now_ms();
      if (now % 50 == 0 || !running) {
        outgoing.push_back(std::make_shared<const std::string>(scene_state(*session, owner.ui_link_lost()).dump()));
      }
    }
    if (!outgoing.empty()) {
      asio::post(ioc, [this, frames = std::move(outgoing)] {
        for (const auto & f : frames) broadcast(f);
      });
      outgoing.clear();
    }
    std::this_thread::sleep_until(
      wall0 + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                std::chrono::duration<double, std::milli>(static_cast<double>(now) / factor)));
  }
  owner.ended_ = true;
}

UiServer::UiServer(const Scenario & scenario, BridgeOptions options)
: impl_(std::make_unique<Impl>(*this, scenario, std::move(options)))
{
}

UiServer::~UiServer() { stop(); }

void UiServer::start()
{
  auto & im = *impl_;
  try {
    const tcp::endpoint ep(asio::ip::make_address(im.options.address), im.options.port);
    im.acceptor.open(ep.protocol());
    im.acceptor.set_option(asio::socket_base::reuse_address(true));
    im.acceptor.bind(ep);
    im.acceptor.listen();
  } catch (const boost::system::system_error & e) {
    throw BindError("cannot bind " + im.options.address + ":" + std::to_string(im.options.port) + ": " + e.what());
  }
  im.session = std::make_unique<Session>(im.scenario, im.queue, im.options.session);
  im.do_accept();
  im.io_thread = std::thread([&im] { im.ioc.run(); });
  im.session_thread = std::thread([&im] { im.session_loop(); });
  spdlog::info("bridge: listening on ws://{}:{}/ws", im.options.address, port());
}

void UiServer::stop()
{
  if (!impl_) return;
  auto & im = *impl_;
  im.stopping = true;
  if (im.session_thread.joinable()) im.session_thread.join();
  if (im.io_thread.joinable()) {
    asio::post(im.ioc, [&im] {
      beast::error_code ignored;
      im.acceptor.close(ignored);
    });
    // Let queued frames drain briefly before tearing down connections.
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
    im.ioc.stop();
    im.io_thread.join();
  }
}

void UiServer::wait()
{
  while (!ended_ && !impl_->stopping) std::this_thread::sleep_for(std::chrono::milliseconds(20));
}

std::uint16_t UiServer::port() const
{
  beast::error_code ec;
  const auto ep = impl_->acceptor.local_endpoint(ec);
  return ec ? impl_->options.port : ep.port();
}

SessionRecord UiServer::snapshot() const
{
  std::lock_guard lock(impl_->session_mutex);
  if (!impl_->session) return {};
  return impl_->session->record();
}

}  // namespace tg::session
