#include "vsweep/tsv.hpp"

#include "vsweep/error.hpp"

#include <array>
#include <charconv>
#include <fstream>

namespace vsweep {

std::string format_number(double v) {
  std::array<char, 64> buf{};
  const auto r = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return {buf.data(), r.ptr};
}

void write_trajectory_tsv(std::ostream& out, const Trajectory& traj) {
  const int d = traj.dimension;
  out << 't';
  for (int i = 1; i <= d; ++i) out << "\tx" << i;
  for (int i = 1; i <= d; ++i) out << "\txbar" << i;
  out << "\tlag\tenergy\tdissipation\tactive\n";
  for (const StepRecord& r : traj.steps) {
    out << format_number(r.t);
    for (int i = 0; i < d; ++i) out << '\t' << format_number(r.x[i]);
    for (int i = 0; i < d; ++i) out << '\t' << format_number(r.xbar[i]);
    out << '\t' << format_number(r.lag) << '\t' << format_number(r.energy) << '\t' << format_number(r.dissipation)
        << '\t' << (r.active ? 1 : 0) << '\n';
  }
}

void write_volterra_tsv(std::ostream& out, const BoundCertificate& cert) {
  out << "n\tt\tZ\tS\tW\n";
  const GridSequence& z = cert.solution;
  for (std::size_t n = 0; n < z.size(); ++n) {
    out << n << '\t' << format_number(z.time(n)) << '\t' << format_number(z[n]) << '\t'
        << format_number(cert.super_solution[n]) << '\t' << format_number(cert.initial_layer[n]) << '\n';
  }
}

void write_convergence_tsv(std::ostream& out, const ConvergenceTable& table) {
  out << "h\tError\n";
  for (const ConvergenceRow& row : table.rows) out << format_number(row.h) << '\t' << format_number(row.error) << '\n';
}

void write_product_tsv(std::ostream& out, const ConvergenceTable& table, ProductStatistic statistic) {
  out << "h\tmax KKT\n";
  for (const ConvergenceRow& row : table.rows) {
    const double v = statistic == ProductStatistic::kMax ? row.product.max_scaled : row.product.l2;
    out << format_number(row.h) << '\t' << format_number(v) << '\n';
  }
}

void write_audit_summary(std::ostream& out, const EnergyAudit& energy, const LagAudit& lag) {
  out << "key\tvalue\n";
  out << "steps\t" << energy.energy.size() << '\n';
  out << "energy_initial\t" << format_number(energy.energy.empty() ? 0.0 : energy.energy.front()) << '\n';
  out << "energy_final\t" << format_number(energy.energy.empty() ? 0.0 : energy.energy.back()) << '\n';
  out << "lhs\t" << format_number(energy.lhs) << '\n';
  out << "rhs\t" << format_number(energy.rhs) << '\n';
  out << "negative_dissipation_steps\t" << energy.negative_dissipation_steps << '\n';
  out << "dissipation_sum\t" << format_number(energy.dissipation_sum) << '\n';
  out << "excess_estimated\t" << (energy.estimated ? 1 : 0) << '\n';
  out << "energy_passed\t" << (energy.passed ? 1 : 0) << '\n';
  out << "max_lag\t" << format_number(lag.max_lag) << '\n';
  out << "lag_bound_max_violation\t" << format_number(lag.max_violation) << '\n';
  out << "lag_bound_passed\t" << (lag.passed() ? 1 : 0) << '\n';
}

std::filesystem::path write_file(const std::filesystem::path& dir, const std::string& name,
                                 const std::function<void(std::ostream&)>& writer) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir.string() + ": " + ec.message());
  const auto path = dir / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  writer(out);
  out.flush();
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
  return path;
}

}  // namespace vsweep
