#include "wfde/probes.hpp"

#include <cmath>
#include <sstream>

#include "wfde/check_report.hpp"

namespace wfde {

TestFunction aubin_talenti(int N, double scale) {
  // f = (1 + (r/s)^2)^{-(N-2)/2}, the Sobolev extremal shape.
  const double e = 0.5 * (N - 2.0);
  TestFunction t;
  std::ostringstream os;
  os << "aubin_talenti(N=" << N << ",scale=" << scale << ")";
  t.name = os.str();
  t.f = [e, scale](double r) {
    const double z = r / scale;
    return std::pow(1.0 + z * z, -e);
  };
  t.df = [e, scale](double r) {
    const double z = r / scale;
    return -2.0 * e * (z / scale) * std::pow(1.0 + z * z, -e - 1.0);
  };
  return t;
}

TestFunction gaussian(double scale) {
  TestFunction t;
  std::ostringstream os;
  os << "gaussian(scale=" << scale << ")";
  t.name = os.str();
  t.f = [scale](double r) { return std::exp(-r * r / (scale * scale)); };
  t.df = [scale](double r) {
    return -2.0 * r / (scale * scale) * std::exp(-r * r / (scale * scale));
  };
  return t;
}

TestFunction poly_bump(double radius, int power) {
  TestFunction t;
  std::ostringstream os;
  os << "poly_bump(R=" << radius << ",k=" << power << ")";
  t.name = os.str();
  t.support_radius = radius;
  t.f = [radius, power](double r) {
    if (r >= radius) return 0.0;
    const double z = r / radius;
    return std::pow(1.0 - z * z, power);
  };
  t.df = [radius, power](double r) {
    if (r >= radius) return 0.0;
    const double z = r / radius;
    return -2.0 * power * (z / radius) * std::pow(1.0 - z * z, power - 1);
  };
  return t;
}

TestFunction cone(double radius) {
  TestFunction t;
  std::ostringstream os;
  os << "cone(R=" << radius << ")";
  t.name = os.str();
  t.support_radius = radius;
  t.f = [radius](double r) { return r >= radius ? 0.0 : 1.0 - r / radius; };
  t.df = [radius](double r) { return r >= radius ? 0.0 : -1.0 / radius; };
  return t;
}

TestFunction shell_bump(double r_in, double r_out) {
  TestFunction t;
  std::ostringstream os;
  os << "shell_bump(a=" << r_in << ",b=" << r_out << ")";
  t.name = os.str();
  t.support_radius = r_out;
  const double mid = 0.5 * (r_in + r_out);
  const double half = 0.5 * (r_out - r_in);
  t.f = [mid, half, r_in, r_out](double r) {
    if (r <= r_in || r >= r_out) return 0.0;
    const double z = (r - mid) / half;
    return (1.0 - z * z) * (1.0 - z * z);
  };
  t.df = [mid, half, r_in, r_out](double r) {
    if (r <= r_in || r >= r_out) return 0.0;
    const double z = (r - mid) / half;
    return -4.0 * z / half * (1.0 - z * z);
  };
  return t;
}

TestFunction linear_ramp(double radius) {
  TestFunction t;
  std::ostringstream os;
  os << "linear_ramp(R=" << radius << ")";
  t.name = os.str();
  t.support_radius = radius;
  t.f = [radius](double r) { return std::min(r, radius); };
  t.df = [radius](double r) { return r < radius ? 1.0 : 0.0; };
  return t;
}

ProbeFamily default_probe_family(int N) {
  ProbeFamily fam;
  fam.compact = {
      poly_bump(1.0, 2), poly_bump(1.0, 4), poly_bump(0.5, 2), poly_bump(2.0, 3),
      cone(1.0), shell_bump(0.25, 1.0), shell_bump(0.5, 2.0),
  };
  fam.global = {
      aubin_talenti(N, 1.0), aubin_talenti(N, 0.5), aubin_talenti(N, 2.0),
      gaussian(1.0), gaussian(3.0),
  };
  // Positive fields for BMO probes: offset bumps and power laws.
  auto offset = [](TestFunction base, double c, const char* tag) {
    TestFunction t;
    t.name = std::string(tag) + "+" + base.name;
    t.support_radius = 0.0;
    auto f = base.f;
    t.f = [f, c](double r) { return c + f(r); };
    auto df = base.df;
    t.df = [df](double r) { return df(r); };
    return t;
  };
  fam.positive = {
      offset(poly_bump(1.0, 2), 0.05, "lifted"),
      offset(poly_bump(0.5, 3), 0.2, "lifted"),
      offset(gaussian(0.7), 0.01, "lifted"),
  };
  {
    TestFunction powerlaw;
    powerlaw.name = "powerlaw(-0.8)";
    powerlaw.f = [](double r) { return std::pow(std::max(r, 1e-12), -0.8); };
    powerlaw.df = [](double r) { return -0.8 * std::pow(std::max(r, 1e-12), -1.8); };
    fam.positive.push_back(powerlaw);
  }

  std::ostringstream man;
  man << "probe-family v1; N=" << N << "\n";
  for (const auto& t : fam.compact) man << "compact " << t.name << "\n";
  for (const auto& t : fam.global) man << "global " << t.name << "\n";
  for (const auto& t : fam.positive) man << "positive " << t.name << "\n";
  fam.manifest = man.str();
  fam.version = context_hash(fam.manifest);
  return fam;
}

} // namespace wfde
