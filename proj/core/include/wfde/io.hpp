#ifndef WFDE_IO_HPP
#define WFDE_IO_HPP

#include <string>
#include <vector>

#include "wfde/check_report.hpp"
#include "wfde/solver.hpp"

namespace wfde {

// Trajectory serialization: JSON (metadata plus per-snapshot arrays) and CSV
// (long format t,r,u).  Doubles are written in shortest round-trip form, so
// parse(serialize(x)) == x at full double precision.
std::string trajectory_to_json(const Trajectory& traj);
Trajectory trajectory_from_json(const std::string& text);
std::string trajectory_to_csv(const Trajectory& traj);

std::string reports_to_json(const std::vector<CheckReport>& reports);
std::vector<CheckReport> reports_from_json(const std::string& text);
// Summary columns: name, lhs, rhs, constant, pass, context hash.
std::string reports_to_csv(const std::vector<CheckReport>& reports);

std::string format_double(double v); // shortest round-trip decimal

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

} // namespace wfde

#endif
