#include "wfde/exact_solutions.hpp"

#include <cmath>
#include <limits>

#include "wfde/errors.hpp"
#include "wfde/quadrature.hpp"

namespace wfde {

SeparableSolution::SeparableSolution(const Params& params, double extinction_time)
    : params_(params), T_(extinction_time) {
  if (params.is_linear()) throw RegimeError("separable solution: nonlinear m required");
  if (!(extinction_time > 0.0))
    throw DomainError("separable solution: extinction time must be positive");
  const double m = params.m();
  const double sigma = params.sigma();
  const double bracket = params.dimension() - 2.0 - params.beta() - m * sigma / (1.0 - m);
  const double rhs = m * sigma * bracket;
  if (!(rhs > 0.0))
    throw RegimeError("separable solution: m sigma (N-2-beta - m sigma/(1-m)) <= 0");
  c_ = std::pow(rhs, 1.0 / (1.0 - m));
  decay_ = sigma / (1.0 - m);
}

double SeparableSolution::value(double t, double r) const {
  if (!(r > 0.0)) throw DomainError("separable solution: r = 0 is singular");
  if (t >= T_) return 0.0;
  const double one_minus_m = 1.0 - params_.m();
  return c_ * std::pow(T_ - t, 1.0 / one_minus_m) * std::pow(r, -decay_);
}

BarenblattSolution::BarenblattSolution(const Params& params, double D)
    : params_(params), D_(D) {
  if (params.is_linear()) throw RegimeError("barenblatt: nonlinear m required");
  if (!(params.m() > params.m_critical()))
    throw RegimeError("barenblatt: requires m > m_c (good fast diffusion range)");
  if (!(D > 0.0)) throw DomainError("barenblatt: D must be positive");
  const double sigma = params.sigma();
  const double Ngamma = params.dimension() - params.gamma();
  const double m = params.m();
  b_ = 1.0 / (sigma - Ngamma * (1.0 - m));
  a_ = -Ngamma * b_;
  // k = b(1-m)/(m sigma) is the profile curvature; A = k^{-1/(1-m)}.
  const double k = b_ * (1.0 - m) / (m * sigma);
  A_ = std::pow(k, -1.0 / (1.0 - m));
}

double BarenblattSolution::profile(double xi) const {
  const double m = params_.m();
  return A_ * std::pow(D_ + std::pow(xi, params_.sigma()), 1.0 / (m - 1.0));
}

double BarenblattSolution::value(double t, double r) const {
  if (!(t > 0.0)) throw DomainError("barenblatt: t must be positive");
  return std::pow(t, a_) * profile(r * std::pow(t, -b_));
}

double BarenblattSolution::mass() const {
  const int N = params_.dimension();
  const double gamma = params_.gamma();
  const double sigma = params_.sigma();
  const double one_minus_m = 1.0 - params_.m();
  const double SN = sphere_area(N);
  auto g = [this](double xi) { return profile(xi); };
  const double head = integrate_power_weighted(g, N - 1.0 - gamma, 0.0, 1.0);
  // Tail over [1, infty) under xi = 1/v:
  //   integrand = v^e A (1 + D v^sigma)^{-1/(1-m)},
  //   e = sigma/(1-m) - (N-gamma) - 1 > -1 exactly when m > m_c.
  const double e = sigma / one_minus_m - (N - gamma) - 1.0;
  auto tail_g = [&](double v) {
    return A_ * std::pow(1.0 + D_ * std::pow(v, sigma), -1.0 / one_minus_m);
  };
  const double tail = integrate_power_weighted(tail_g, e, 0.0, 1.0);
  return SN * (head + tail);
}

namespace {

// Plain central-difference residual at step h.
double residual_central(const ExactSolution& sol, double t, double r, double h) {
  const Params& P = sol.params();
  const double m = P.m();
  auto um = [&](double tt, double rr) { return std::pow(sol.value(tt, rr), m); };
  const double u_t = (sol.value(t + h, r) - sol.value(t - h, r)) / (2.0 * h);
  // |x|^gamma div(|x|^{-beta} grad u^m) in radial form:
  //   |x|^{gamma} r^{1-N} d/dr ( r^{N-1-beta} d(u^m)/dr )
  const double N = P.dimension();
  auto flux = [&](double rr) {
    const double d = (um(t, rr + h) - um(t, rr - h)) / (2.0 * h);
    return std::pow(rr, N - 1.0 - P.beta()) * d;
  };
  const double div = (flux(r + h) - flux(r - h)) / (2.0 * h);
  return u_t - std::pow(r, P.gamma()) * std::pow(r, 1.0 - N) * div;
}

} // namespace

double pde_residual(const ExactSolution& sol, double t, double r, double h) {
  const double rh = residual_central(sol, t, r, h);
  const double rh2 = residual_central(sol, t, r, 0.5 * h);
  return (4.0 * rh2 - rh) / 3.0;
}

double pde_residual_order(const ExactSolution& sol, double t, double r, double h) {
  const double rh = std::abs(residual_central(sol, t, r, h));
  const double rh2 = std::abs(residual_central(sol, t, r, 0.5 * h));
  if (!(rh > 0.0 && rh2 > 0.0)) return std::numeric_limits<double>::infinity();
  return std::log2(rh / rh2);
}

BarenblattSolution barenblatt_with_mass(const Params& params, double mass) {
  if (!(mass > 0.0)) throw DomainError("barenblatt_with_mass: mass must be positive");
  // mass(D) is monotone decreasing; bisect on log D.
  double lo = 1e-8, hi = 1e8;
  auto mass_at = [&](double D) { return BarenblattSolution(params, D).mass(); };
  if (mass_at(lo) < mass || mass_at(hi) > mass)
    throw DomainError("barenblatt_with_mass: target mass out of bracket");
  for (int i = 0; i < 200; ++i) {
    const double mid = std::sqrt(lo * hi);
    if (mass_at(mid) > mass) lo = mid; else hi = mid;
    if (hi / lo < 1.0 + 1e-12) break;
  }
  return BarenblattSolution(params, std::sqrt(lo * hi));
}

} // namespace wfde
