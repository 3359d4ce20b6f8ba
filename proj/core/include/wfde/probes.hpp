#ifndef WFDE_PROBES_HPP
#define WFDE_PROBES_HPP

#include <functional>
#include <string>
#include <vector>

namespace wfde {

// Radial test profile with analytic derivative.  support_radius == 0 marks a
// profile on all of R^N (decaying); otherwise f vanishes outside the radius.
struct TestFunction {
  std::string name;
  std::function<double(double)> f;
  std::function<double(double)> df;
  double support_radius = 0.0;
};

TestFunction aubin_talenti(int N, double scale = 1.0);
TestFunction gaussian(double scale = 1.0);
TestFunction poly_bump(double radius, int power = 2);
TestFunction cone(double radius);
TestFunction shell_bump(double r_in, double r_out);
TestFunction linear_ramp(double radius); // f = r on [0, radius], not compactly supported

// The fixed, versioned probe family used when measuring inequality
// constants.  The manifest string lists every profile with its parameters;
// its FNV-1a hash versions the ledger.
struct ProbeFamily {
  std::vector<TestFunction> compact;   // compactly supported (admissible for D_{gamma,beta})
  std::vector<TestFunction> global;    // decaying profiles on R^N
  std::vector<TestFunction> positive;  // positive fields for BMO / reverse Hoelder
  std::string manifest;
  std::uint64_t version = 0;
};

ProbeFamily default_probe_family(int N);

} // namespace wfde

#endif
