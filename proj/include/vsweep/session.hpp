#pragma once

#include "vsweep/scenario.hpp"
#include "vsweep/sweeping.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace vsweep {

inline constexpr int kProtocolVersion = 1;
inline constexpr int kFrameBoundaryPoints = 128;

/// One interactive stepping session. Each inbound line is a JSON object with
/// "v": 1 and a "type" among init, pose, reset; each call returns the JSON
/// lines to send back (ready, frame or error). Malformed input never ends
/// the session. The wire schema is documented in the README.
class Session {
 public:
  /// `defaults` seeds every field an init message leaves out.
  explicit Session(ScenarioConfig defaults = named_scenario("circle-lissajous"));

  std::vector<std::string> handle(std::string_view line);

  [[nodiscard]] bool initialized() const noexcept { return state_.has_value(); }
  [[nodiscard]] std::size_t step_index() const noexcept { return state_ ? state_->step_index() : 0; }

 private:
  std::string on_init(const nlohmann::json& msg);
  std::string on_pose(const nlohmann::json& msg);
  std::string on_reset();
  [[nodiscard]] std::string ready() const;
  [[nodiscard]] std::optional<std::size_t> current_step() const;

  ScenarioConfig defaults_;
  ScenarioConfig active_;
  ProjectionOptions projection_;
  std::optional<SweepState> state_;
};

/// Line-delimited session over a pair of streams (stdin/stdout in `serve --transport stdio`).
void serve_stream(std::istream& in, std::ostream& out, const ScenarioConfig& defaults);

enum class Transport { kTcp, kWebSocket };

/// Accepts connections on host:port and runs one Session per connection on
/// a background thread. Port 0 picks a free port; see port().
class SessionServer {
 public:
  SessionServer(Transport transport, const std::string& host, std::uint16_t port, ScenarioConfig defaults);
  ~SessionServer();
  SessionServer(const SessionServer&) = delete;
  SessionServer& operator=(const SessionServer&) = delete;

  [[nodiscard]] std::uint16_t port() const noexcept;
  /// Blocks until stop() is called from another thread or a signal handler.
  void wait();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace vsweep
