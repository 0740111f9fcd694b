#pragma once

#include "vsweep/geometry.hpp"
#include "vsweep/kernel.hpp"
#include "vsweep/path.hpp"
#include "vsweep/sweeping.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace vsweep {

struct KernelConfig {
  std::string kind{"exponential"};  // exponential | algebraic | tabulated
  double epsilon{0.75};
  double alpha{4.0};
  std::vector<double> ages;  // tabulated only
  std::vector<double> density;
  double trunc_tol{1e-12};
  bool renormalize{false};

  friend bool operator==(const KernelConfig&, const KernelConfig&) = default;
};

struct SetConfig {
  std::string kind{"disk"};  // disk | stadium
  double radius{0.5};
  double length{0.72};  // stadium segment length; the segment spans +-length/2
  Path center;
  Path angle{Path::constant_scalar(0.0)};

  friend bool operator==(const SetConfig&, const SetConfig&) = default;
};

struct ToleranceConfig {
  double projection{1e-8};
  double fd_step{1e-6};
  int newton_max_iterations{100};
  int refine_max_iterations{50};

  friend bool operator==(const ToleranceConfig&, const ToleranceConfig&) = default;
};

struct ScenarioConfig {
  std::string name{"custom"};
  KernelConfig kernel;
  double h{0.005};
  double T{9.0};
  int dimension{2};
  SetConfig set;
  std::vector<double> past{0.0, 0.0};  // constant X_p
  ToleranceConfig tolerances;
  std::string output_dir{"."};

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// circle-lissajous, stadium-lissajous and their -incompat variants
/// (past X_p = (2, 0) outside C(0)).
ScenarioConfig named_scenario(std::string_view name);
std::vector<std::string> scenario_names();

/// JSON text <-> config. Unknown keys and ill-typed values raise invalid-config.
ScenarioConfig parse_config(std::string_view text);
std::string serialize_config(const ScenarioConfig& config);
ScenarioConfig load_config(const std::filesystem::path& file);

/// Throws invalid-config on the first inconsistent field.
void validate(const ScenarioConfig& config);

KernelSpec build_kernel(const KernelConfig& config);
DiscretizeOptions discretize_options(const KernelConfig& config);
ConstraintSet build_set(const SetConfig& config);
ProjectionOptions projection_options(const ToleranceConfig& config);
VectorPast build_past(const ScenarioConfig& config);

/// Discretizes the kernel at `h` (the config's own step when omitted) and
/// assembles the run for N = floor(T / h).
SimulationSetup build_setup(const ScenarioConfig& config);
SimulationSetup build_setup(const ScenarioConfig& config, double h);

Trajectory simulate(const ScenarioConfig& config);

/// True when the past value at t = 0 lies in C(0).
bool past_compatible(const ScenarioConfig& config);

/// "circle" or "stadium", with "-incompat" appended for an incompatible past.
std::string figure_tag(const ScenarioConfig& config);

/// "2^-a..2^-b" -> {2^-a, ..., 2^-b}; "2^-a" or a decimal number -> one value.
std::vector<double> parse_dyadic_range(std::string_view text);

}  // namespace vsweep
