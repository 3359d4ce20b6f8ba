#ifndef WFDE_CHECK_REPORT_HPP
#define WFDE_CHECK_REPORT_HPP

#include <string>
#include <vector>

namespace wfde {

// Outcome of one quantitative inequality check.  `rhs` is the constant-
// adjusted right-hand side; pass means lhs <= rhs within `tolerance`
// relative slack.  `measured_constant` is the smallest constant that would
// make this instance pass.
struct CheckReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double measured_constant = 0.0;
  bool pass = false;
  double tolerance = 1e-9;
  std::string context;

  static CheckReport make(std::string name, double lhs, double rhs,
                          double measured_constant, std::string context,
                          double tolerance = 1e-9);
};

std::uint64_t context_hash(const std::string& context);

} // namespace wfde

#endif
