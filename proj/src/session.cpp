#include "vsweep/session.hpp"

#include "vsweep/error.hpp"
#include "vsweep/geometry.hpp"
#include "vsweep/json_io.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>

namespace vsweep {

using nlohmann::json;

namespace {

std::string error_line(const std::string& message, std::optional<std::size_t> step) {
  json j{{"v", kProtocolVersion}, {"type", "error"}, {"message", message}};
  j["step"] = step ? json(*step) : json(nullptr);
  return j.dump();
}

}  // namespace

Session::Session(ScenarioConfig defaults) : defaults_(std::move(defaults)), active_(defaults_) {}

std::vector<std::string> Session::handle(std::string_view line) {
  json msg;
  try {
    msg = json::parse(line);
  } catch (const json::exception&) {
    return {error_line("malformed message: not JSON", current_step())};
  }
  if (!msg.is_object()) return {error_line("malformed message: expected an object", current_step())};
  const auto v = msg.find("v");
  if (v == msg.end() || !v->is_number_integer() || v->get<int>() != kProtocolVersion) {
    return {error_line("unsupported protocol version", current_step())};
  }
  const auto type = msg.find("type");
  if (type == msg.end() || !type->is_string()) return {error_line("message needs a string 'type'", current_step())};

  try {
    const auto kind = type->get<std::string>();
    if (kind == "init") return {on_init(msg)};
    if (kind == "pose") return {on_pose(msg)};
    if (kind == "reset") return {on_reset()};
    return {error_line("unknown message type '" + kind + "'", current_step())};
  } catch (const json::exception& e) {
    return {error_line(std::string("malformed message: ") + e.what(), current_step())};
  } catch (const Error& e) {
    return {error_line(e.what(), current_step())};
  }
}

std::string Session::on_init(const json& msg) {
  require_keys(msg, "init", {"v", "type", "scenario", "kernel", "set", "h", "past", "tol"});
  ScenarioConfig cfg = msg.contains("scenario") ? named_scenario(msg.at("scenario").get<std::string>()) : defaults_;
  if (msg.contains("kernel")) cfg.kernel = msg.at("kernel").get<KernelConfig>();
  if (msg.contains("set")) {
    const json& s = msg.at("set");
    require_keys(s, "set", {"kind", "radius", "length"});
    cfg.set.kind = s.value("kind", cfg.set.kind);
    cfg.set.radius = s.value("radius", cfg.set.radius);
    cfg.set.length = s.value("length", cfg.set.length);
  }
  if (msg.contains("h")) cfg.h = msg.at("h").get<double>();
  if (msg.contains("past")) cfg.past = msg.at("past").get<std::vector<double>>();
  if (msg.contains("tol")) cfg.tolerances.projection = msg.at("tol").get<double>();
  cfg.T = std::max(cfg.T, cfg.h);
  validate(cfg);
  if (cfg.dimension != 2) throw Error(ErrorCode::kInvalidConfig, "sessions are planar");

  auto dk = std::make_shared<const DiscreteKernel>(
      discretize(build_kernel(cfg.kernel), cfg.h, discretize_options(cfg.kernel)));
  state_.emplace(std::move(dk), build_past(cfg));
  projection_ = projection_options(cfg.tolerances);
  active_ = std::move(cfg);
  return ready();
}

std::string Session::on_pose(const json& msg) {
  if (!state_) throw Error(ErrorCode::kInvalidArgument, "pose before init");
  require_keys(msg, "pose", {"v", "type", "t", "center", "angle"});
  SetConfig pose = active_.set;
  pose.center = Path::constant(point_from_json(msg.at("center")));
  pose.angle = Path::constant_scalar(msg.value("angle", 0.0));
  if (pose.center.dimension() != state_->dimension()) {
    throw Error(ErrorCode::kInvalidArgument, "pose center does not match the dimension");
  }
  const ConstraintSet set = build_set(pose);
  const StepRecord rec = step(*state_, set, projection_);

  json boundary = json::array();
  for (const Point& p : boundary_polyline(set, rec.t, kFrameBoundaryPoints)) boundary.push_back(point_to_json(p));
  const json frame{{"v", kProtocolVersion},
                   {"type", "frame"},
                   {"step", rec.n},
                   {"t", rec.t},
                   {"x", point_to_json(rec.x)},
                   {"xbar", point_to_json(rec.xbar)},
                   {"lag", rec.lag},
                   {"active", rec.active},
                   {"boundary", std::move(boundary)}};
  return frame.dump();
}

std::optional<std::size_t> Session::current_step() const {
  if (!state_) return std::nullopt;
  return state_->step_index();
}

std::string Session::on_reset() {
  if (!state_) throw Error(ErrorCode::kInvalidArgument, "reset before init");
  state_->reset();
  return ready();
}

std::string Session::ready() const {
  const json j{{"v", kProtocolVersion},
               {"type", "ready"},
               {"step", state_->step_index()},
               {"h", state_->kernel().step()},
               {"window", state_->kernel().truncation_index()}};
  return j.dump();
}

void serve_stream(std::istream& in, std::ostream& out, const ScenarioConfig& defaults) {
  Session session(defaults);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    for (const std::string& reply : session.handle(line)) out << reply << '\n';
    out.flush();
  }
}

}  // namespace vsweep
