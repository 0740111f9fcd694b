// Command-line front end: simulate, volterra, audit, converge, serve.
//
// Exit status: 0 success, 1 audit failed, 2 bad arguments or config,
// 3 numerical failure during a run, 4 file output failure.

#include "vsweep/diagnostics.hpp"
#include "vsweep/error.hpp"
#include "vsweep/scenario.hpp"
#include "vsweep/session.hpp"
#include "vsweep/tsv.hpp"
#include "vsweep/volterra.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using namespace vsweep;

constexpr int kExitAuditFailed = 1;
constexpr int kExitBadConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

struct CommonOptions {
  std::string scenario;
  std::string config;
  std::optional<double> h;
  std::optional<double> T;
  std::string past;
  std::string out;
};

void add_common(CLI::App* cmd, CommonOptions& o, bool single_step = true) {
  cmd->add_option("--scenario", o.scenario, "Named scenario (circle-lissajous, stadium-lissajous, *-incompat)");
  cmd->add_option("--config", o.config, "Scenario config file (JSON)");
  if (single_step) cmd->add_option("--h", o.h, "Time step, overrides the config");
  cmd->add_option("--T", o.T, "Horizon, overrides the config");
  cmd->add_option("--past", o.past, "Constant past position as comma-separated coordinates");
  cmd->add_option("--out", o.out, "Output directory");
}

/// Thrown for failures that happen before any numerics run.
struct ConfigFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigFailure("bad coordinate '" + item + "' in --past");
    }
  }
  return v;
}

ScenarioConfig resolve_config(const CommonOptions& o) {
  try {
    if (!o.scenario.empty() && !o.config.empty()) throw ConfigFailure("give either --scenario or --config");
    ScenarioConfig c = o.config.empty() ? named_scenario(o.scenario.empty() ? "circle-lissajous" : o.scenario)
                                        : load_config(o.config);
    if (o.h) c.h = *o.h;
    if (o.T) c.T = *o.T;
    if (!o.past.empty()) c.past = parse_list(o.past);
    if (const char* env = std::getenv("VSWEEP_OUTPUT_DIR"); env != nullptr && *env != '\0') c.output_dir = env;
    if (!o.out.empty()) c.output_dir = o.out;
    validate(c);
    return c;
  } catch (const Error& e) {
    throw ConfigFailure(e.what());
  }
}

int report_written(const std::filesystem::path& p) {
  std::cout << "wrote " << p.string() << '\n';
  return 0;
}

int run_simulate(const CommonOptions& o) {
  const ScenarioConfig c = resolve_config(o);
  SimulationSetup setup = [&] {
    try {
      return build_setup(c);
    } catch (const Error& e) {
      throw ConfigFailure(e.what());
    }
  }();
  const Trajectory traj = simulate(setup);
  return report_written(write_file(c.output_dir, "trajectory-" + c.name + ".tsv",
                                   [&](std::ostream& out) { write_trajectory_tsv(out, traj); }));
}

int run_volterra(const CommonOptions& o, const std::string& forcing, const std::string& past) {
  const ScenarioConfig c = resolve_config(o);
  DiscreteKernel dk = [&] {
    try {
      return discretize(build_kernel(c.kernel), c.h, discretize_options(c.kernel));
    } catch (const Error& e) {
      throw ConfigFailure(e.what());
    }
  }();
  const std::size_t N = step_count(c.T, c.h);
  std::function<double(double)> f;
  if (forcing == "sin") {
    f = [](double t) { return std::sin(t); };
  } else if (forcing == "one") {
    f = [](double) { return 1.0; };
  } else if (forcing == "zero") {
    f = [](double) { return 0.0; };
  } else {
    throw ConfigFailure("unknown forcing '" + forcing + "'");
  }
  ScalarPast zp;
  if (past == "ramp") {
    zp = ScalarPast::ramp();
  } else if (past != "zero") {
    throw ConfigFailure("unknown scalar past '" + past + "'");
  }
  const BoundCertificate cert = check_comparison(dk, GridSequence::sample(c.h, N + 1, f), zp, N);
  std::cout << "certificate " << (cert.valid() ? "valid" : "INVALID") << "  max_violation "
            << format_number(cert.max_violation) << "  W_max " << format_number(cert.w_max) << "  conservation "
            << format_number(cert.conservation_residual) << '\n';
  for (const std::string& w : cert.warnings) std::cout << "warning: " << w << '\n';
  return report_written(write_file(c.output_dir, "volterra-" + c.kernel.kind + ".tsv",
                                   [&](std::ostream& out) { write_volterra_tsv(out, cert); }));
}

int run_audit(const CommonOptions& o) {
  const ScenarioConfig c = resolve_config(o);
  SimulationSetup setup = [&] {
    try {
      return build_setup(c);
    } catch (const Error& e) {
      throw ConfigFailure(e.what());
    }
  }();
  const Trajectory traj = simulate(setup);
  const EnergyAudit energy = energy_audit(traj, setup.set, *setup.kernel);
  const LagAudit lag = lag_audit(traj, *setup.kernel);
  write_audit_summary(std::cout, energy, lag);
  report_written(write_file(c.output_dir, "audit-" + c.name + ".tsv",
                            [&](std::ostream& out) { write_audit_summary(out, energy, lag); }));
  return energy.passed && lag.passed() ? 0 : kExitAuditFailed;
}

int run_converge(const CommonOptions& o, const std::string& h_range, const std::string& h_ref_text, bool serial) {
  const ScenarioConfig c = resolve_config(o);
  std::vector<double> hs;
  double h_ref = 0.0;
  try {
    hs = parse_dyadic_range(h_range);
    const auto ref = parse_dyadic_range(h_ref_text);
    if (ref.size() != 1) throw ConfigFailure("--href takes a single step");
    h_ref = ref.front();
  } catch (const Error& e) {
    throw ConfigFailure(e.what());
  }
  const std::string tag = figure_tag(c);
  ConvergenceTable table;
  try {
    table = convergence_study(
        tag, [&c](double h) { return build_setup(c, h); }, hs, h_ref, !serial);
  } catch (const SimulationError&) {
    throw;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInvalidArgument || e.code() == ErrorCode::kInvalidConfig) throw ConfigFailure(e.what());
    throw;
  }
  std::cout << "h\tError\tmax KKT\tL2 KKT\n";
  for (const ConvergenceRow& r : table.rows) {
    std::cout << format_number(r.h) << '\t' << format_number(r.error) << '\t' << format_number(r.product.max_scaled)
              << '\t' << format_number(r.product.l2) << '\n';
  }
  std::cout << "slope\t" << format_number(table.slope) << '\n';
  report_written(write_file(c.output_dir, "fig_convergence-L2-" + tag + ".tsv",
                            [&](std::ostream& out) { write_convergence_tsv(out, table); }));
  report_written(write_file(c.output_dir, "fig_projection-step-product-max-" + tag + ".tsv",
                            [&](std::ostream& out) { write_product_tsv(out, table, ProductStatistic::kMax); }));
  return report_written(write_file(c.output_dir, "fig_projection-step-product-L2-" + tag + ".tsv",
                                   [&](std::ostream& out) { write_product_tsv(out, table, ProductStatistic::kL2); }));
}

int run_serve(const CommonOptions& o, const std::string& transport, const std::string& host, std::uint16_t port) {
  const ScenarioConfig c = resolve_config(o);
  if (transport == "stdio") {
    serve_stream(std::cin, std::cout, c);
    return 0;
  }
  Transport kind{};
  if (transport == "tcp") {
    kind = Transport::kTcp;
  } else if (transport == "ws") {
    kind = Transport::kWebSocket;
  } else {
    throw ConfigFailure("unknown transport '" + transport + "'");
  }
  SessionServer server(kind, host, port, c);
  std::cerr << "listening on " << host << ':' << server.port() << " (" << transport << ")\n";
  server.wait();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Delayed sweeping processes with Volterra memory"};
  app.require_subcommand(1);
  // -h is left free so that --h can name the time step.
  app.set_help_flag("--help", "Print this help message and exit");

  CommonOptions sim_opts;
  CommonOptions vol_opts;
  CommonOptions audit_opts;
  CommonOptions conv_opts;
  CommonOptions serve_opts;

  auto* sim = app.add_subcommand("simulate", "Run one scenario and write its trajectory TSV");
  add_common(sim, sim_opts);

  auto* vol = app.add_subcommand("volterra", "Solve the scalar Volterra equation and write its comparison certificate");
  add_common(vol, vol_opts);
  std::string forcing = "sin";
  std::string scalar_past = "zero";
  vol->add_option("--forcing", forcing, "Forcing f(t): sin, one or zero")->capture_default_str();
  vol->add_option("--scalar-past", scalar_past, "Past of Z: zero or ramp")->capture_default_str();

  auto* audit = app.add_subcommand("audit", "Run one scenario and check the energy and lag bounds");
  add_common(audit, audit_opts);

  auto* conv = app.add_subcommand("converge", "L2 convergence and projection-step product over a dyadic sweep");
  add_common(conv, conv_opts, false);
  std::string h_range = "2^-2..2^-8";
  std::string h_ref = "2^-10";
  bool serial = false;
  conv->add_option("--h", h_range, "Steps as 2^-a..2^-b")->capture_default_str();
  conv->add_option("--href", h_ref, "Reference step")->capture_default_str();
  conv->add_flag("--serial", serial, "Run the sweep on one thread");

  auto* serve = app.add_subcommand("serve", "Run the interactive session service");
  add_common(serve, serve_opts);
  std::string transport = "ws";
  std::string host = "127.0.0.1";
  std::uint16_t port = 8765;
  serve->add_option("--transport", transport, "ws, tcp or stdio")->capture_default_str();
  serve->add_option("--host", host, "Listen address")->capture_default_str();
  serve->add_option("--port", port, "Listen port (0 picks one)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadConfig;
  }

  try {
    if (*sim) return run_simulate(sim_opts);
    if (*vol) return run_volterra(vol_opts, forcing, scalar_past);
    if (*audit) return run_audit(audit_opts);
    if (*conv) return run_converge(conv_opts, h_range, h_ref, serial);
    if (*serve) return run_serve(serve_opts, transport, host, port);
  } catch (const ConfigFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadConfig;
  } catch (const SimulationError& e) {
    std::cerr << "error: numerical failure at step " << e.step() << ": " << e.what() << '\n';
    return kExitNumerical;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::kIo ? kExitIo : kExitNumerical;
  }
  return kExitBadConfig;
}
