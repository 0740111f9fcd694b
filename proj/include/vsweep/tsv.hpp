#pragma once

#include "vsweep/diagnostics.hpp"
#include "vsweep/sweeping.hpp"
#include "vsweep/volterra.hpp"

#include <filesystem>
#include <functional>
#include <ostream>
#include <string>

namespace vsweep {

/// Shortest decimal text that parses back to the same double.
std::string format_number(double v);

/// Header `t x1 x2 xbar1 xbar2 lag energy dissipation active` (tab separated),
/// then one row per step n = 0..N.
void write_trajectory_tsv(std::ostream& out, const Trajectory& traj);

/// Header `n t Z S W`.
void write_volterra_tsv(std::ostream& out, const BoundCertificate& cert);

/// Header `h Error`, one row per step of the sweep.
void write_convergence_tsv(std::ostream& out, const ConvergenceTable& table);

enum class ProductStatistic { kMax, kL2 };

/// Header `h max KKT` for both statistics; the column name is kept for
/// compatibility with existing figure scripts.
void write_product_tsv(std::ostream& out, const ConvergenceTable& table, ProductStatistic statistic);

/// `key<TAB>value` lines summarizing an energy and lag audit.
void write_audit_summary(std::ostream& out, const EnergyAudit& energy, const LagAudit& lag);

/// Writes through `writer` into dir/name, creating dir; raises io on failure.
std::filesystem::path write_file(const std::filesystem::path& dir, const std::string& name,
                                 const std::function<void(std::ostream&)>& writer);

}  // namespace vsweep
