#include "vsweep/scenario.hpp"

#include "vsweep/error.hpp"
#include "vsweep/json_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace vsweep {

using nlohmann::json;

namespace {

[[noreturn]] void bad_config(const std::string& message) { throw Error(ErrorCode::kInvalidConfig, message); }

std::vector<double> to_vector(const Point& p) { return {p.data(), p.data() + p.size()}; }

Point to_point(const std::vector<double>& v) {
  Point p(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) p[static_cast<Eigen::Index>(i)] = v[i];
  return p;
}

Path lissajous_path() { return Path::lissajous(Point{{2.0, 2.0}}, Point{{1.0, 2.0}}, Point{{0.0, 0.0}}); }

}  // namespace

void require_keys(const json& j, std::string_view where, std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) bad_config(std::string(where) + " must be an object");
  for (const auto& item : j.items()) {
    bool known = false;
    for (std::string_view k : allowed) known = known || item.key() == k;
    if (!known) bad_config("unknown key '" + item.key() + "' in " + std::string(where));
  }
}

json point_to_json(const Point& p) { return to_vector(p); }

Point point_from_json(const json& j) {
  if (!j.is_array()) bad_config("point must be an array of numbers");
  return to_point(j.get<std::vector<double>>());
}

void to_json(json& j, const Path& path) {
  std::visit(
      [&j](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, Path::Constant>) {
          j = json{{"kind", "constant"}, {"value", to_vector(p.value)}};
        } else if constexpr (std::is_same_v<P, Path::Lissajous>) {
          j = json{{"kind", "lissajous"},
                   {"amplitude", to_vector(p.amplitude)},
                   {"frequency", to_vector(p.frequency)},
                   {"phase", to_vector(p.phase)}};
        } else if constexpr (std::is_same_v<P, Path::Linear>) {
          j = json{{"kind", "linear"}, {"offset", to_vector(p.offset)}, {"rate", to_vector(p.rate)}};
        } else {
          json values = json::array();
          for (const Point& v : p.values) values.push_back(to_vector(v));
          j = json{{"kind", "tabulated"}, {"times", p.times}, {"values", values}};
        }
      },
      path.variant());
}

void from_json(const json& j, Path& path) {
  if (!j.is_object() || !j.contains("kind")) bad_config("path needs a 'kind'");
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "constant") {
    require_keys(j, "constant path", {"kind", "value"});
    path = Path::constant(point_from_json(j.at("value")));
  } else if (kind == "lissajous") {
    require_keys(j, "lissajous path", {"kind", "amplitude", "frequency", "phase"});
    const Point a = point_from_json(j.at("amplitude"));
    path = Path::lissajous(a, point_from_json(j.at("frequency")),
                           j.contains("phase") ? point_from_json(j.at("phase")) : Point(Point::Zero(a.size())));
  } else if (kind == "linear") {
    require_keys(j, "linear path", {"kind", "offset", "rate"});
    path = Path::linear(point_from_json(j.at("offset")), point_from_json(j.at("rate")));
  } else if (kind == "tabulated") {
    require_keys(j, "tabulated path", {"kind", "times", "values"});
    std::vector<Point> values;
    for (const json& v : j.at("values")) values.push_back(point_from_json(v));
    path = Path::tabulated(j.at("times").get<std::vector<double>>(), std::move(values));
  } else {
    bad_config("unknown path kind '" + kind + "'");
  }
}

void to_json(json& j, const KernelConfig& c) {
  j = json{{"kind", c.kind}, {"trunc_tol", c.trunc_tol}, {"renormalize", c.renormalize}};
  if (c.kind == "exponential") j["epsilon"] = c.epsilon;
  if (c.kind == "algebraic") j["alpha"] = c.alpha;
  if (c.kind == "tabulated") {
    j["ages"] = c.ages;
    j["density"] = c.density;
  }
}

void from_json(const json& j, KernelConfig& c) {
  require_keys(j, "kernel", {"kind", "epsilon", "alpha", "ages", "density", "trunc_tol", "renormalize"});
  c = KernelConfig{};
  c.kind = j.value("kind", c.kind);
  c.epsilon = j.value("epsilon", c.epsilon);
  c.alpha = j.value("alpha", c.alpha);
  c.ages = j.value("ages", c.ages);
  c.density = j.value("density", c.density);
  c.trunc_tol = j.value("trunc_tol", c.trunc_tol);
  c.renormalize = j.value("renormalize", c.renormalize);
}

void to_json(json& j, const SetConfig& c) {
  j = json{{"kind", c.kind}, {"radius", c.radius}, {"center", c.center}};
  if (c.kind == "stadium") {
    j["length"] = c.length;
    j["angle"] = c.angle;
  }
}

void from_json(const json& j, SetConfig& c) {
  require_keys(j, "set", {"kind", "radius", "length", "center", "angle"});
  c = SetConfig{};
  c.kind = j.value("kind", c.kind);
  c.radius = j.value("radius", c.radius);
  c.length = j.value("length", c.length);
  if (j.contains("center")) c.center = j.at("center").get<Path>();
  if (j.contains("angle")) c.angle = j.at("angle").get<Path>();
}

void to_json(json& j, const ToleranceConfig& c) {
  j = json{{"projection", c.projection},
           {"fd_step", c.fd_step},
           {"newton_max_iterations", c.newton_max_iterations},
           {"refine_max_iterations", c.refine_max_iterations}};
}

void from_json(const json& j, ToleranceConfig& c) {
  require_keys(j, "tolerances", {"projection", "fd_step", "newton_max_iterations", "refine_max_iterations"});
  c = ToleranceConfig{};
  c.projection = j.value("projection", c.projection);
  c.fd_step = j.value("fd_step", c.fd_step);
  c.newton_max_iterations = j.value("newton_max_iterations", c.newton_max_iterations);
  c.refine_max_iterations = j.value("refine_max_iterations", c.refine_max_iterations);
}

void to_json(json& j, const ScenarioConfig& c) {
  j = json{{"name", c.name},
           {"kernel", c.kernel},
           {"time", {{"h", c.h}, {"T", c.T}}},
           {"dimension", c.dimension},
           {"set", c.set},
           {"past", {{"kind", "constant"}, {"value", c.past}}},
           {"tolerances", c.tolerances},
           {"output_dir", c.output_dir}};
}

void from_json(const json& j, ScenarioConfig& c) {
  require_keys(j, "config", {"name", "kernel", "time", "dimension", "set", "past", "tolerances", "output_dir"});
  c = ScenarioConfig{};
  c.name = j.value("name", c.name);
  if (j.contains("kernel")) c.kernel = j.at("kernel").get<KernelConfig>();
  if (j.contains("time")) {
    const json& t = j.at("time");
    require_keys(t, "time", {"h", "T"});
    c.h = t.value("h", c.h);
    c.T = t.value("T", c.T);
  }
  c.dimension = j.value("dimension", c.dimension);
  if (j.contains("set")) c.set = j.at("set").get<SetConfig>();
  if (j.contains("past")) {
    const json& p = j.at("past");
    require_keys(p, "past", {"kind", "value"});
    if (p.value("kind", std::string("constant")) != "constant") bad_config("only constant past conditions are configurable");
    c.past = p.at("value").get<std::vector<double>>();
  }
  if (j.contains("tolerances")) c.tolerances = j.at("tolerances").get<ToleranceConfig>();
  c.output_dir = j.value("output_dir", c.output_dir);
}

ScenarioConfig named_scenario(std::string_view name) {
  ScenarioConfig c;
  std::string_view base = name;
  bool incompat = false;
  constexpr std::string_view suffix = "-incompat";
  if (base.size() > suffix.size() && base.substr(base.size() - suffix.size()) == suffix) {
    base.remove_suffix(suffix.size());
    incompat = true;
  }
  if (base == "circle-lissajous") {
    c.set.kind = "disk";
    c.set.radius = 0.5;
  } else if (base == "stadium-lissajous") {
    c.set.kind = "stadium";
    c.set.radius = 0.3;
    c.set.length = 0.72;
    c.set.angle = Path::linear_scalar(0.0, 4.0);
  } else {
    bad_config("unknown scenario '" + std::string(name) + "'");
  }
  c.name = std::string(name);
  c.kernel.kind = "exponential";
  c.kernel.epsilon = 0.75;
  c.h = 0.005;
  c.T = 9.0;
  c.set.center = lissajous_path();
  c.past = incompat ? std::vector<double>{2.0, 0.0} : std::vector<double>{0.0, 0.0};
  return c;
}

std::vector<std::string> scenario_names() {
  return {"circle-lissajous", "circle-lissajous-incompat", "stadium-lissajous", "stadium-lissajous-incompat"};
}

ScenarioConfig parse_config(std::string_view text) {
  ScenarioConfig c;
  try {
    c = json::parse(text).get<ScenarioConfig>();
  } catch (const json::exception& e) {
    bad_config(std::string("malformed config: ") + e.what());
  }
  validate(c);
  return c;
}

std::string serialize_config(const ScenarioConfig& config) { return json(config).dump(2) + "\n"; }

ScenarioConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorCode::kInvalidConfig, "cannot read config " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void validate(const ScenarioConfig& c) {
  if (!(c.h > 0.0) || !std::isfinite(c.h)) bad_config("h must be positive");
  if (!(c.T > 0.0) || !std::isfinite(c.T)) bad_config("T must be positive");
  if (step_count(c.T, c.h) < 1) bad_config("T must cover at least one step");
  if (c.dimension < 1) bad_config("dimension must be positive");
  if (static_cast<int>(c.past.size()) != c.dimension) bad_config("past value does not match the dimension");

  const KernelConfig& k = c.kernel;
  if (k.kind == "exponential") {
    if (!(k.epsilon > 0.0)) bad_config("kernel epsilon must be positive");
  } else if (k.kind == "algebraic") {
    if (!(k.alpha > 1.0)) bad_config("kernel alpha must exceed 1");
  } else if (k.kind == "tabulated") {
    if (k.ages.size() < 2 || k.ages.size() != k.density.size()) bad_config("tabulated kernel needs matching samples");
  } else {
    bad_config("unknown kernel kind '" + k.kind + "'");
  }
  if (!(k.trunc_tol > 0.0)) bad_config("trunc_tol must be positive");

  const SetConfig& s = c.set;
  if (!(s.radius > 0.0)) bad_config("set radius must be positive");
  if (s.center.dimension() != c.dimension) bad_config("set center does not match the dimension");
  if (s.kind == "stadium") {
    if (c.dimension != 2) bad_config("stadium sets are planar");
    if (!(s.length > 0.0)) bad_config("stadium length must be positive");
    if (s.angle.dimension() != 1) bad_config("stadium angle must be a scalar path");
  } else if (s.kind != "disk") {
    bad_config("unknown set kind '" + s.kind + "'");
  }

  const ToleranceConfig& t = c.tolerances;
  if (!(t.projection > 0.0) || !(t.fd_step > 0.0)) bad_config("tolerances must be positive");
  if (t.newton_max_iterations < 1 || t.refine_max_iterations < 1) bad_config("iteration caps must be positive");
}

KernelSpec build_kernel(const KernelConfig& c) {
  if (c.kind == "exponential") return KernelSpec::exponential(c.epsilon);
  if (c.kind == "algebraic") return KernelSpec::algebraic(c.alpha);
  if (c.kind == "tabulated") return KernelSpec::from_samples(c.ages, c.density);
  bad_config("unknown kernel kind '" + c.kind + "'");
}

DiscretizeOptions discretize_options(const KernelConfig& c) {
  DiscretizeOptions o;
  o.trunc_tol = c.trunc_tol;
  o.renormalize = c.renormalize;
  return o;
}

ConstraintSet build_set(const SetConfig& c) {
  if (c.kind == "disk") return ConstraintSet::disk(c.center, c.radius);
  if (c.kind == "stadium") return ConstraintSet::stadium(c.center, c.angle, c.length, c.radius);
  bad_config("unknown set kind '" + c.kind + "'");
}

ProjectionOptions projection_options(const ToleranceConfig& c) {
  ProjectionOptions o;
  o.tol = c.projection;
  o.fd_step = c.fd_step;
  o.newton_max_iterations = c.newton_max_iterations;
  o.refine_max_iterations = c.refine_max_iterations;
  return o;
}

VectorPast build_past(const ScenarioConfig& c) { return VectorPast::constant(to_point(c.past)); }

SimulationSetup build_setup(const ScenarioConfig& config) { return build_setup(config, config.h); }

SimulationSetup build_setup(const ScenarioConfig& config, double h) {
  validate(config);
  auto dk = std::make_shared<const DiscreteKernel>(
      discretize(build_kernel(config.kernel), h, discretize_options(config.kernel)));
  return SimulationSetup{std::move(dk), build_set(config.set), build_past(config), step_count(config.T, h),
                         projection_options(config.tolerances)};
}

Trajectory simulate(const ScenarioConfig& config) { return simulate(build_setup(config)); }

bool past_compatible(const ScenarioConfig& config) {
  return build_set(config.set).evaluate(to_point(config.past), 0.0) >= 0.0;
}

std::string figure_tag(const ScenarioConfig& config) {
  std::string tag = config.set.kind == "disk" ? "circle" : "stadium";
  if (!past_compatible(config)) tag += "-incompat";
  return tag;
}

std::vector<double> parse_dyadic_range(std::string_view text) {
  auto parse_one = [&](std::string_view s, int& exponent) -> bool {
    if (s.substr(0, 3) == "2^-" || s.substr(0, 2) == "2^") {
      const std::string_view digits = s.substr(2);
      const auto r = std::from_chars(digits.data(), digits.data() + digits.size(), exponent);
      if (r.ec != std::errc{} || r.ptr != digits.data() + digits.size()) {
        bad_config("bad dyadic step '" + std::string(s) + "'");
      }
      return true;
    }
    return false;
  };

  const auto dots = text.find("..");
  if (dots == std::string_view::npos) {
    int e = 0;
    if (parse_one(text, e)) return {std::ldexp(1.0, e)};
    double v = 0.0;
    const auto r = std::from_chars(text.data(), text.data() + text.size(), v);
    if (r.ec != std::errc{} || r.ptr != text.data() + text.size() || !(v > 0.0)) {
      bad_config("bad step '" + std::string(text) + "'");
    }
    return {v};
  }
  int a = 0;
  int b = 0;
  if (!parse_one(text.substr(0, dots), a) || !parse_one(text.substr(dots + 2), b)) {
    bad_config("range must read 2^-a..2^-b");
  }
  std::vector<double> out;
  const int stride = a <= b ? 1 : -1;
  for (int e = a;; e += stride) {
    out.push_back(std::ldexp(1.0, e));
    if (e == b) break;
  }
  return out;
}

}  // namespace vsweep
