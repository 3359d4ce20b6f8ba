#include "wfde/functional.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wfde/errors.hpp"
#include "wfde/quadrature.hpp"

namespace wfde {

namespace {

// integral_0^infty s^e g(s) ds for decaying g: exact-power head on [0,1] plus
// the s = 1/v mapped tail.
double radial_integral_global(const std::function<double(double)>& g, double e) {
  const double head = integrate_power_weighted(g, e, 0.0, 1.0);
  auto tail_integrand = [&](double v) {
    if (v <= 0.0) return 0.0;
    return g(1.0 / v) * std::pow(v, -e - 2.0);
  };
  const double tail = integrate(tail_integrand, 0.0, 1.0);
  return head + tail;
}

double lp_norm_global(const GeometryContext& geom, const TestFunction& f,
                      double p, double alpha) {
  const int N = geom.params().dimension();
  const double e = N - 1.0 - alpha;
  auto g = [&](double s) { return std::pow(std::abs(f.f(s)), p); };
  double integral;
  if (f.support_radius > 0.0)
    integral = integrate_power_weighted(g, e, 0.0, f.support_radius);
  else
    integral = radial_integral_global(g, e);
  return std::pow(sphere_area(N) * integral, 1.0 / p);
}

double grad_norm_global(const GeometryContext& geom, const TestFunction& f,
                        double alpha) {
  const int N = geom.params().dimension();
  const double e = N - 1.0 - alpha;
  auto g = [&](double s) { const double d = f.df(s); return d * d; };
  double integral;
  if (f.support_radius > 0.0)
    integral = integrate_power_weighted(g, e, 0.0, f.support_radius);
  else
    integral = radial_integral_global(g, e);
  return std::sqrt(sphere_area(N) * integral);
}

double lp_norm_ball(const GeometryContext& geom, const TestFunction& f, double p,
                    double alpha, const Ball& ball) {
  auto g = [&](double s) { return std::pow(std::abs(f.f(s)), p); };
  return std::pow(geom.integrate_ball(alpha, g, ball), 1.0 / p);
}

double grad_norm_ball(const GeometryContext& geom, const TestFunction& f,
                      double alpha, const Ball& ball) {
  auto g = [&](double s) { const double d = f.df(s); return d * d; };
  return std::sqrt(geom.integrate_ball(alpha, g, ball));
}

TestFunction scale_to_radius(const TestFunction& f, double R) {
  if (f.support_radius <= 0.0) return f;
  TestFunction out;
  const double k = f.support_radius / R;
  out.name = f.name + "@R=" + std::to_string(R);
  out.support_radius = R;
  auto ff = f.f;
  auto fdf = f.df;
  out.f = [ff, k](double r) { return ff(r * k); };
  out.df = [fdf, k](double r) { return fdf(r * k) * k; };
  return out;
}

} // namespace

double ckn_ratio(const GeometryContext& geom, const TestFunction& f) {
  const ExponentSet e = exponents(geom.params());
  const double num = lp_norm_global(geom, f, e.r_star, geom.params().gamma());
  const double den = grad_norm_global(geom, f, geom.params().beta());
  if (!(den > 0.0)) throw DomainError("ckn_ratio: gradient norm vanishes");
  return num / den;
}

CheckReport ckn_on_ball(const GeometryContext& geom, const TestFunction& f,
                        const Ball& ball, double S_installed) {
  const ExponentSet e = exponents(geom.params());
  const double mu = geom.mu_gamma(ball);
  const double lhs = lp_norm_ball(geom, f, e.r_star, geom.params().gamma(), ball);
  const double grad = grad_norm_ball(geom, f, geom.params().beta(), ball);
  const double l2 = lp_norm_ball(geom, f, 2.0, geom.params().gamma(), ball);
  const double Ngamma = geom.params().dimension() - geom.params().gamma();
  const double rhs0 = grad + std::pow(mu, -e.sigma / (2.0 * Ngamma)) * l2;
  std::ostringstream ctx;
  ctx << "ckn_ball;f=" << f.name << ";c=" << ball.center_norm << ";R=" << ball.radius;
  CheckReport rep = CheckReport::make("ckn_on_ball", lhs, S_installed * rhs0,
                                      rhs0 > 0.0 ? lhs / rhs0 : 0.0, ctx.str());
  return rep;
}

CheckReport poincare_on_ball(const GeometryContext& geom, const TestFunction& f,
                             const Ball& ball, double P_installed) {
  const double mu_g = geom.mu_gamma(ball);
  const double mu_b = geom.mu_beta(ball);
  const double mean = geom.integrate_ball(geom.params().gamma(), f.f, ball) / mu_g;
  auto dev2 = [&](double s) { const double d = f.f(s) - mean; return d * d; };
  const double lhs = std::sqrt(geom.integrate_ball(geom.params().gamma(), dev2, ball) / mu_g);
  auto grad2 = [&](double s) { const double d = f.df(s); return d * d; };
  const double rhs0 = ball.radius *
      std::sqrt(geom.integrate_ball(geom.params().beta(), grad2, ball) / mu_b);
  std::ostringstream ctx;
  ctx << "poincare;f=" << f.name << ";c=" << ball.center_norm << ";R=" << ball.radius;
  return CheckReport::make("poincare_on_ball", lhs, P_installed * rhs0,
                           rhs0 > 0.0 ? lhs / rhs0 : 0.0, ctx.str());
}

CheckReport iterative_ckn(const GeometryContext& geom,
                          const std::function<double(double, double)>& f,
                          const std::function<double(double, double)>& df,
                          const Ball& ball, double T0, double T1, double a,
                          double S_installed) {
  const ExponentSet e = exponents(geom.params());
  if (!(a >= 1.0 && a <= e.r_star / 2.0 + 1e-12))
    throw DomainError("iterative_ckn: a must lie in [1, r*/2]");
  if (!(T1 > T0)) throw DomainError("iterative_ckn: T1 > T0 required");
  const double gamma = geom.params().gamma();
  const double beta = geom.params().beta();
  const double mu = geom.mu_gamma(ball);

  auto space_time = [&](const std::function<double(double, double)>& h,
                        double alpha) {
    auto inner = [&](double t) {
      return geom.integrate_ball(alpha, [&](double s) { return h(t, s); }, ball);
    };
    return integrate(inner, T0, T1, QuadratureOptions{1e-9, 1e-300, 40});
  };

  const double lhs = space_time(
      [&](double t, double s) { return std::pow(std::abs(f(t, s)), 2.0 * a); }, gamma);
  const double term_f2 = space_time(
      [&](double t, double s) { const double v = f(t, s); return v * v; }, gamma);
  const double term_grad = space_time(
      [&](double t, double s) { const double v = df(t, s); return v * v; }, beta);
  const double Ngamma = geom.params().dimension() - gamma;

  double sup_term = 0.0;
  const int nt = 33;
  for (int i = 0; i <= nt; ++i) {
    const double t = T0 + (T1 - T0) * i / nt;
    const double val = geom.integrate_ball(
        gamma,
        [&](double s) { return std::pow(std::abs(f(t, s)), 2.0 * (a - 1.0) * e.q); },
        ball) / mu;
    sup_term = std::max(sup_term, std::pow(val, 1.0 / e.q));
  }

  const double rhs0 =
      (term_f2 + std::pow(mu, e.sigma / Ngamma) * term_grad) * sup_term;
  const double rhs = 2.0 * S_installed * S_installed * rhs0;
  const double measured = rhs0 > 0.0 ? std::sqrt(lhs / (2.0 * rhs0)) : 0.0;
  std::ostringstream ctx;
  ctx << "iterative_ckn;a=" << a << ";c=" << ball.center_norm << ";R=" << ball.radius
      << ";T0=" << T0 << ";T1=" << T1;
  CheckReport rep = CheckReport::make("iterative_ckn", lhs, rhs, measured, ctx.str());
  rep.tolerance = 1e-6;
  rep.pass = lhs <= rhs * (1.0 + rep.tolerance);
  return rep;
}

BMOReport bmo_gamma(const GeometryContext& geom,
                    const std::function<double(double)>& field, const Ball& ball,
                    int depth) {
  BMOReport rep;
  rep.depth = depth;
  const double gamma = geom.params().gamma();
  for (int level = 1; level <= depth; ++level) {
    const double rho = ball.radius * std::pow(2.0, -level);
    const double span = ball.radius - rho;
    const int steps = std::max(1, static_cast<int>(std::floor(2.0 * span / rho)));
    for (int j = 0; j <= steps; ++j) {
      const double pos = ball.center_norm - span + 2.0 * span * j / steps;
      const Ball sub{std::abs(pos), rho};
      const double mu = geom.mu_gamma(sub);
      const double mean = geom.integrate_ball(gamma, field, sub) / mu;
      const double osc = geom.integrate_ball(
          gamma, [&](double s) { return std::abs(field(s) - mean); }, sub) / mu;
      rep.entries.push_back({sub.center_norm, rho, osc});
      rep.bmo_norm = std::max(rep.bmo_norm, osc);
    }
  }
  return rep;
}

CheckReport reverse_holder(const GeometryContext& geom,
                           const std::function<double(double)>& field,
                           const Ball& ball, double s, double kappa6,
                           double kappa7, int bmo_depth) {
  if (!(s > 0.0)) throw DomainError("reverse_holder: s must be positive");
  auto logf = [&](double r) {
    const double v = field(r);
    if (!(v > 0.0)) throw DomainError("reverse_holder: field must be positive");
    return std::log(v);
  };
  const BMOReport bmo = bmo_gamma(geom, logf, ball, bmo_depth);
  if (bmo.bmo_norm > 0.0 && s >= 1.0 / (kappa6 * bmo.bmo_norm))
    throw ThresholdExceeded("reverse_holder: s above the admissible window 1/(kappa6 |log u|_BMO)");

  const double gamma = geom.params().gamma();
  const double mu = geom.mu_gamma(ball);
  const double pos = geom.integrate_ball(
      gamma, [&](double r) { return std::pow(field(r), s); }, ball);
  const double neg = geom.integrate_ball(
      gamma, [&](double r) { return std::pow(field(r), -s); }, ball);
  const double lhs = std::pow(pos, 1.0 / s);
  const double norm_neg = std::pow(neg, -1.0 / s);
  const double rhs = std::pow(kappa7, 2.0 / s) * std::pow(mu, 2.0 / s) * norm_neg;
  const double measured =
      std::pow(lhs / (std::pow(mu, 2.0 / s) * norm_neg), s / 2.0);
  std::ostringstream ctx;
  ctx << "reverse_holder;s=" << s << ";c=" << ball.center_norm << ";R=" << ball.radius
      << ";bmo=" << bmo.bmo_norm;
  return CheckReport::make("reverse_holder", lhs, rhs, measured, ctx.str());
}

namespace {

// Quintic smoothstep and derivatives.
double smoothstep(double t) { return t * t * t * (10.0 + t * (-15.0 + 6.0 * t)); }
double smoothstep_d(double t) { return 30.0 * t * t * (1.0 - t) * (1.0 - t); }
double smoothstep_dd(double t) { return 60.0 * t * (1.0 - t) * (1.0 - 2.0 * t); }

} // namespace

double kappa10_test_function(const GeometryContext& geom, const Ball& ball,
                             double b) {
  const Params& P = geom.params();
  const double m = P.m();
  const double sigma = P.sigma();
  const double R = ball.radius;
  const double c = ball.center_norm;
  if (b < 0.0) b = 2.0 / (1.0 - m);
  if (!(b >= 2.0 / (1.0 - m) - 1e-12))
    throw DomainError("kappa10_test_function: b >= 2/(1-m) required");

  // The lemma's two cutoff choices keep the origin away from the support of
  // L phi in both cases.
  double w1, w2;
  if (c <= 1.5 * R) { w1 = 1.75 * R; w2 = 2.0 * R; }
  else { w1 = 1.0 * R; w2 = 1.25 * R; }
  const double u1 = std::pow(w1 / R, sigma);
  const double u2 = std::pow(w2 / R, sigma);

  auto psi = [&](double u, double& d1, double& d2) {
    if (u <= u1) { d1 = 0.0; d2 = 0.0; return 1.0; }
    if (u >= u2) { d1 = 0.0; d2 = 0.0; return 0.0; }
    const double h = u2 - u1;
    const double t = (u - u1) / h;
    d1 = -smoothstep_d(t) / h;
    d2 = -smoothstep_dd(t) / (h * h);
    return 1.0 - smoothstep(t);
  };

  const int N = P.dimension();
  const double gb = P.gamma() - P.beta();
  const double beta = P.beta();
  const double inv1m = 1.0 / (1.0 - m);

  double sup_e = 0.0;
  const int nw = 800, na = 32;
  for (int i = 1; i < nw; ++i) {
    const double w = w1 + (w2 - w1) * i / nw;
    const double u = std::pow(w / R, sigma);
    double p1, p2;
    const double ps = psi(u, p1, p2);
    if (ps <= 0.0) continue;
    const double du = sigma * std::pow(w, sigma - 1.0) / std::pow(R, sigma);
    const double ddu = sigma * (sigma - 1.0) * std::pow(w, sigma - 2.0) / std::pow(R, sigma);
    // Phi(w) = psi(u)^b
    const double phi = std::pow(ps, b);
    const double Phi1 = b * std::pow(ps, b - 1.0) * p1 * du;
    const double Phi2 = b * (b - 1.0) * std::pow(ps, b - 2.0) * p1 * p1 * du * du +
                        b * std::pow(ps, b - 1.0) * (p2 * du * du + p1 * ddu);
    const int n_ang = (c == 0.0) ? 0 : na;
    for (int j = 0; j <= n_ang; ++j) {
      const double ct = (c == 0.0) ? 1.0 : -1.0 + 2.0 * j / na;
      const double s2 = c * c + w * w + 2.0 * c * w * ct;
      if (s2 <= 0.0) continue;
      const double s = std::sqrt(s2);
      const double lap = Phi2 + (N - 1.0) * Phi1 / w;
      const double drift = beta * Phi1 * (w + c * ct) / s2;
      const double L = std::pow(s, gb) * (lap - drift);
      const double E = std::pow(phi, -m * inv1m) * std::pow(std::abs(L), inv1m);
      sup_e = std::max(sup_e, E);
    }
  }
  const double rho = geom.rho(ball);
  return std::pow(sup_e, 1.0 - m) * rho;
}

double measure_ckn_global_constant(const GeometryContext& geom,
                                   const ProbeFamily& fam) {
  double worst = 0.0;
  for (const auto& f : fam.global) worst = std::max(worst, ckn_ratio(geom, f));
  for (const auto& f : fam.compact) worst = std::max(worst, ckn_ratio(geom, f));
  return worst;
}

double measure_ckn_ball_constant(const GeometryContext& geom,
                                 const ProbeFamily& fam,
                                 const std::vector<Ball>& balls) {
  double worst = 0.0;
  for (const Ball& ball : balls) {
    for (const auto& probe : fam.compact) {
      const TestFunction f = scale_to_radius(probe, ball.radius);
      const CheckReport rep = ckn_on_ball(geom, f, ball, 1.0);
      worst = std::max(worst, rep.measured_constant);
    }
    // Constant probe: the inequality collapses to an identity with S = 1.
    TestFunction one;
    one.name = "const_one";
    one.f = [](double) { return 1.0; };
    one.df = [](double) { return 0.0; };
    worst = std::max(worst, ckn_on_ball(geom, one, ball, 1.0).measured_constant);
  }
  return worst;
}

double measure_poincare_constant(const GeometryContext& geom,
                                 const ProbeFamily& fam,
                                 const std::vector<Ball>& balls) {
  double worst = 0.0;
  for (const Ball& ball : balls) {
    for (const auto& probe : fam.compact) {
      const TestFunction f = scale_to_radius(probe, ball.radius);
      worst = std::max(worst, poincare_on_ball(geom, f, ball, 1.0).measured_constant);
    }
    TestFunction ramp = linear_ramp(2.0 * ball.radius);
    worst = std::max(worst, poincare_on_ball(geom, ramp, ball, 1.0).measured_constant);
  }
  return worst;
}

double measure_sobolev_interpolation_constant(const GeometryContext& geom,
                                              const ProbeFamily& fam,
                                              const std::vector<Ball>& balls,
                                              double q) {
  const Params& P = geom.params();
  const ExponentSet e = exponents(P);
  const double m = P.m();
  if (!(q > std::max(e.p_c, 1.0)))
    throw DomainError("interpolation constant: q > p_c v 1 required");
  const double s = 2.0 * q / (q + m - 1.0);
  const double theta = e.p_c / q;
  const double Ngamma = P.dimension() - P.gamma();
  const double mu_exp = (e.sigma / (2.0 * Ngamma)) * (1.0 - theta);
  double worst = 0.0;
  for (const Ball& ball : balls) {
    const double mu_fac = std::pow(geom.mu_gamma(ball), mu_exp);
    for (const auto& probe : fam.compact) {
      const TestFunction f = scale_to_radius(probe, ball.radius);
      const double num = lp_norm_ball(geom, f, s, P.gamma(), ball);
      const double den = mu_fac * grad_norm_ball(geom, f, P.beta(), ball);
      if (den > 0.0) worst = std::max(worst, num / den);
    }
  }
  return worst;
}

double measure_john_nirenberg_kappa6(const GeometryContext& geom,
                                     const ProbeFamily& fam, const Ball& ball) {
  const double gamma = geom.params().gamma();
  const double kappa5 = std::exp(1.0); // conventional normalization
  double worst = 0.0;
  for (const auto& probe : fam.positive) {
    auto logf = [&](double r) { return std::log(std::max(probe.f(r), 1e-300)); };
    const BMOReport bmo = bmo_gamma(geom, logf, ball, 3);
    if (!(bmo.bmo_norm > 0.0)) continue;
    // Exponential mean on dyadic sub-balls; find the largest admissible s.
    for (int level = 1; level <= 2; ++level) {
      const double rho = ball.radius * std::pow(2.0, -level);
      for (double frac : {-0.5, 0.0, 0.5}) {
        const Ball sub{std::abs(ball.center_norm + frac * (ball.radius - rho)), rho};
        const double mu = geom.mu_gamma(sub);
        const double mean = geom.integrate_ball(gamma, logf, sub) / mu;
        auto exp_mean = [&](double s) {
          return geom.integrate_ball(
                     gamma,
                     [&](double r) { return std::exp(s * std::abs(logf(r) - mean)); },
                     sub) / mu;
        };
        double lo = 0.0, hi = 1.0 / bmo.bmo_norm;
        while (exp_mean(hi) < kappa5 && hi < 1e6 / bmo.bmo_norm) hi *= 2.0;
        for (int it = 0; it < 50; ++it) {
          const double mid = 0.5 * (lo + hi);
          if (exp_mean(mid) < kappa5) lo = mid; else hi = mid;
        }
        const double s_max = 0.5 * (lo + hi);
        if (s_max > 0.0) worst = std::max(worst, 1.0 / (s_max * bmo.bmo_norm));
      }
    }
  }
  return worst;
}

double measure_reverse_holder_kappa7(const GeometryContext& geom,
                                     const ProbeFamily& fam, const Ball& ball,
                                     double kappa6) {
  double worst = 1.0; // the constant-field case is exactly 1
  for (const auto& probe : fam.positive) {
    auto logf = [&](double r) { return std::log(std::max(probe.f(r), 1e-300)); };
    const BMOReport bmo = bmo_gamma(geom, logf, ball, 3);
    const double window =
        bmo.bmo_norm > 0.0 ? 1.0 / (kappa6 * bmo.bmo_norm) : 1.0;
    for (double frac : {0.25, 0.5, 0.9}) {
      const double s = frac * window;
      if (!(s > 0.0)) continue;
      try {
        const CheckReport rep = reverse_holder(
            geom, [&](double r) { return std::max(probe.f(r), 1e-300); }, ball, s,
            kappa6, 1.0, 3);
        worst = std::max(worst, rep.measured_constant);
      } catch (const ThresholdExceeded&) {
        continue;
      }
    }
  }
  return worst;
}

} // namespace wfde
