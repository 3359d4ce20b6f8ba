#include "wfde/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "wfde/errors.hpp"

namespace wfde {

Scenario classify_scenario(const Ball& ball) {
  const double c = ball.center_norm;
  const double R = ball.radius;
  if (c == 0.0) return Scenario::S1;
  if (c / 32.0 <= R && R <= c / 16.0) return Scenario::S2;
  if (2.5 * c <= R && R <= 4.0 * c) return Scenario::S3;
  return Scenario::Out;
}

double Cylinder::t_start() const {
  switch (kind) {
    case CylinderKind::full: return t_end - rho;
    case CylinderKind::forward: return t_end - 0.25 * rho;
    case CylinderKind::backward: return t_end - 0.875 * rho;
  }
  return t_end;
}

double Cylinder::t_stop() const {
  if (kind == CylinderKind::backward) return t_end - 0.625 * rho;
  return t_end;
}

double Cylinder::spatial_radius() const {
  return kind == CylinderKind::full ? 2.0 * ball.radius : 0.5 * ball.radius;
}

GeometryContext::GeometryContext(const Params& params, QuadratureOptions quad)
    : params_(params), quad_(quad) {}

double GeometryContext::mu(double alpha, const Ball& ball) const {
  return integrate_ball(alpha, [](double) { return 1.0; }, ball);
}

double GeometryContext::integrate_ball(double alpha,
                                       const std::function<double(double)>& g,
                                       const Ball& ball) const {
  const int N = params_.dimension();
  if (!(alpha < N)) throw DomainError("integrate_ball: requires alpha < N");
  if (!(ball.radius > 0.0)) throw DomainError("integrate_ball: radius must be positive");
  const double c = ball.center_norm;
  const double R = ball.radius;
  const double SN = sphere_area(N);
  const double expnt = N - 1.0 - alpha;

  if (c == 0.0) {
    return SN * integrate_power_weighted(g, expnt, 0.0, R, quad_);
  }

  auto capped = [&](double s) {
    const double t0 = (s * s + c * c - R * R) / (2.0 * s * c);
    return g(s) * cap_fraction(N, t0);
  };
  double total = 0.0;
  if (c < R) {
    // Spheres of radius s <= R - c lie entirely inside the ball.
    total += SN * integrate_power_weighted(g, expnt, 0.0, R - c, quad_);
    total += SN * integrate_power_weighted(capped, expnt, R - c, R + c, quad_);
  } else {
    total = SN * integrate_power_weighted(capped, expnt, c - R, c + R, quad_);
  }
  return total;
}

double GeometryContext::rho(const Ball& ball) const {
  const int N = params_.dimension();
  const double alpha = (params_.gamma() - params_.beta()) * N / 2.0;
  const double integral = mu(alpha, ball);
  return std::pow(integral, 2.0 / N);
}

double GeometryContext::rho_inverse(double center_norm, double s) const {
  if (!(s > 0.0)) throw DomainError("rho_inverse: s must be positive");
  // Initial guess from the two-sided bound rho ~ R^2 (R v |x0|)^{beta-gamma}.
  const double sigma = params_.sigma();
  double guess;
  if (center_norm == 0.0) {
    guess = std::pow(s, 1.0 / sigma);
  } else {
    const double small = std::sqrt(s) * std::pow(center_norm, 0.5 * (params_.gamma() - params_.beta()));
    guess = (small <= center_norm) ? small : std::pow(s, 1.0 / sigma);
  }
  auto rho_at = [&](double r) { return rho(Ball{center_norm, r}); };
  double lo = guess, hi = guess;
  int guard = 0;
  while (rho_at(hi) < s) {
    hi *= 2.0;
    if (++guard > 200) throw DomainError("rho_inverse: bracket growth failed");
  }
  guard = 0;
  while (rho_at(lo) > s) {
    lo *= 0.5;
    if (++guard > 200) throw DomainError("rho_inverse: bracket shrink failed");
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (rho_at(mid) < s) lo = mid; else hi = mid;
    if ((hi - lo) <= 1e-12 * hi) break;
  }
  return 0.5 * (lo + hi);
}

double GeometryContext::doubling_gamma() const {
  if (doubling_) return *doubling_;
  const double centers[] = {0.0, 0.3, 1.0, 3.7, 12.0, 80.0};
  const double radii[] = {0.1, 0.5, 1.0, 2.0, 9.0};
  double worst = 1.0;
  for (double c : centers)
    for (double R : radii) {
      const double ratio = mu_gamma(Ball{c, 2.0 * R}) / mu_gamma(Ball{c, R});
      worst = std::max(worst, ratio);
    }
  doubling_ = worst;
  return worst;
}

double GeometryContext::h_sigma(double R0, double R1, double center_norm) const {
  if (!(0.0 < R1 && R1 < R0)) throw GeometryError("h_sigma: requires 0 < R1 < R0");
  const double sigma = params_.sigma();
  const double c = center_norm;
  if (sigma < 2.0) {
    return std::pow((R0 + c) / (R0 - R1), 2.0 - sigma);
  }
  if (c < R1) {
    return std::max(1.0, std::pow((R0 - R1) / (R1 - c), sigma - 2.0));
  }
  if (c > R0) {
    return std::max(1.0, std::pow((R0 - R1) / (c - R0), sigma - 2.0));
  }
  throw GeometryError("h_sigma: annulus closure contains the origin with sigma >= 2");
}

double GeometryContext::quasi_distance(double t1, double x1, double t2,
                                       double x2) const {
  const double space = std::abs(x1 - x2);
  const double dt = std::abs(t1 - t2);
  if (dt == 0.0) return space;
  const double mid = std::abs(x1 + x2) / 2.0;
  return std::max(space, rho_inverse(mid, dt));
}

double GeometryContext::standard_quasi_distance(double t1, double x1, double t2,
                                                double x2) const {
  const double sigma = params_.sigma();
  const double expo = 1.0 / std::max(2.0, sigma);
  return std::abs(x1 - x2) + std::pow(std::abs(t1 - t2), expo);
}

Cylinder GeometryContext::make_cylinder(CylinderKind kind, double t_end,
                                        const Ball& ball) const {
  Cylinder cyl;
  cyl.kind = kind;
  cyl.t_end = t_end;
  cyl.ball = ball;
  cyl.rho = rho(ball);
  return cyl;
}

} // namespace wfde
