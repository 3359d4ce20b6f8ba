#include "wfde/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "wfde/errors.hpp"

namespace wfde {

namespace {

double theta_for(const Params& params, double p) {
  // Defined for any p != p_c; negative below the critical exponent, which is
  // exactly what the counterexample checks exercise.
  const double sigma = params.sigma();
  const double pc = params.p_critical();
  return 1.0 / (sigma * (p - pc));
}

double mass_p_in_ball(const WeightedGrid& grid, const std::vector<double>& v,
                      double p, double R) {
  double s = 0.0;
  for (int i = 0; i < grid.cells(); ++i) {
    const double mass = grid.gamma_mass_in_ball(i, R);
    if (mass > 0.0) s += std::pow(v[i], p) * mass;
  }
  return s;
}

// Sum over interior edges with radius <= R of tau_k (v_k - v_{k-1})^2: the
// discrete mu_beta gradient energy.
double gradient_energy(const WeightedGrid& grid, const std::vector<double>& v,
                       double R) {
  const auto& tau = grid.transmissibility();
  const auto& edges = grid.edges();
  double s = 0.0;
  for (int k = 1; k < grid.cells(); ++k) {
    if (edges[k] > R) break;
    const double d = v[k] - v[k - 1];
    s += tau[k] * d * d;
  }
  return s;
}

std::vector<const Snapshot*> snapshots_between(const Trajectory& traj, double a,
                                               double b) {
  std::vector<const Snapshot*> out;
  for (const auto& s : traj.snapshots)
    if (s.time >= a - 1e-12 * std::max(1.0, std::abs(a)) &&
        s.time <= b + 1e-12 * std::max(1.0, std::abs(b)))
      out.push_back(&s);
  return out;
}

double time_integral(const std::vector<const Snapshot*>& snaps,
                     const std::function<double(const Snapshot&)>& f) {
  if (snaps.size() < 2) throw DomainError("time integral: need at least two snapshots in window");
  double total = 0.0;
  double prev_val = f(*snaps[0]);
  for (std::size_t i = 1; i < snaps.size(); ++i) {
    const double val = f(*snaps[i]);
    total += 0.5 * (val + prev_val) * (snaps[i]->time - snaps[i - 1]->time);
    prev_val = val;
  }
  return total;
}

std::function<double(double)> interpolated_field(const Trajectory& traj,
                                                 const Snapshot& snap) {
  const auto grid = traj.grid;
  const auto values = snap.values;
  return [grid, values](double r) { return grid->interpolate(values, r); };
}

} // namespace

HpQuantities compute_Hp(const GeometryContext& geom, const WeightedGrid& grid,
                        const std::vector<double>& datum, const Ball& ball,
                        double p) {
  if (ball.center_norm != 0.0) {
    auto f = [&grid, &datum](double r) { return grid.interpolate(datum, r); };
    return compute_Hp_profile(geom, f, ball, p);
  }
  const double R = ball.radius;
  const double I1 = mass_p_in_ball(grid, datum, 1.0, R);
  if (!(I1 > 0.0)) throw ZeroDatum("compute_Hp: datum vanishes on the ball");
  const double Ip = mass_p_in_ball(grid, datum, p, R);
  const Params& P = geom.params();
  const double theta = theta_for(P, p);
  const double sigma = P.sigma();
  const double mu = geom.mu_gamma(ball); // center 0: equals mu(B_R(0))
  HpQuantities H;
  H.p = p;
  H.ball = ball;
  const double bracket = mu * std::pow(Ip, 1.0 / p) / (std::pow(mu, 1.0 / p) * I1);
  H.H_p = std::pow(bracket, p * sigma * theta);
  // |x0|/R v 1 = 1 at the origin
  H.H_p_tilde = 1.0 + std::pow(H.H_p, 1.0 - P.m());
  return H;
}

HpQuantities compute_Hp_profile(const GeometryContext& geom,
                                const std::function<double(double)>& datum,
                                const Ball& ball, double p) {
  const Params& P = geom.params();
  const double gamma = P.gamma();
  const double I1 = geom.integrate_ball(gamma, datum, ball);
  if (!(I1 > 0.0)) throw ZeroDatum("compute_Hp: datum vanishes on the ball");
  const double Ip = geom.integrate_ball(
      gamma, [&](double r) { return std::pow(std::max(datum(r), 0.0), p); }, ball);
  const double theta = theta_for(P, p);
  const double sigma = P.sigma();
  const double mu_x = geom.mu_gamma(ball);
  const double mu_0 = geom.mu_gamma(Ball{0.0, ball.radius});
  HpQuantities H;
  H.p = p;
  H.ball = ball;
  const double prefac = std::pow(mu_x / mu_0, sigma * theta);
  const double bracket = mu_x * std::pow(Ip, 1.0 / p) / (std::pow(mu_x, 1.0 / p) * I1);
  H.H_p = prefac * std::pow(bracket, p * sigma * theta);
  const double geom_fac =
      std::pow(std::max(ball.center_norm / ball.radius, 1.0), P.beta() - P.gamma());
  H.H_p_tilde = 1.0 + geom_fac * std::pow(H.H_p, 1.0 - P.m());
  return H;
}

double minimal_life_time(const GeometryContext& geom, const ConstantLedger& ledger,
                         const WeightedGrid& grid, const std::vector<double>& datum,
                         const Ball& ball) {
  const double l1 = mass_p_in_ball(grid, datum, 1.0, ball.radius);
  if (!(l1 > 0.0)) return 0.0;
  const double kappa_star = ledger.get("kappa_star");
  const double mu = geom.mu_gamma(ball);
  const Params& P = geom.params();
  return kappa_star * std::pow(ball.radius, P.sigma()) *
         std::pow(l1 / mu, 1.0 - P.m());
}

Trajectory sample_trajectory(const ExactSolution& sol,
                             std::shared_ptr<const WeightedGrid> grid,
                             const std::vector<double>& times) {
  Trajectory traj(sol.params(), grid);
  traj.bc = BcKind::exact_trace;
  for (double t : times) {
    Snapshot s;
    s.time = t;
    s.values.resize(grid->cells());
    for (int i = 0; i < grid->cells(); ++i)
      s.values[i] = sol.value(t, grid->centers()[i]);
    traj.snapshots.push_back(std::move(s));
  }
  return traj;
}

CheckReport check_smoothing(const GeometryContext& geom, const ConstantLedger& ledger,
                            const Trajectory& traj, const Ball& ball, double p,
                            double t) {
  const Params& P = geom.params();
  const WeightedGrid& grid = *traj.grid;
  const double R = ball.radius;
  if (ball.center_norm != 0.0)
    throw DomainError("check_smoothing: solver checks are radial (center 0)");
  if (2.0 * R > grid.r_max() * (1.0 + 1e-12))
    throw DomainError("check_smoothing: 2R ball exceeds the computational domain");
  if (grid.cells_in_ball(R) < 16)
    throw DomainError("check_smoothing: need >= 16 cells inside the probed ball");

  const Snapshot& snap = traj.at_time(t);
  const Snapshot& datum = traj.snapshots.front();
  const double theta = theta_for(P, p);
  const double Ngamma = P.dimension() - P.gamma();
  const double lhs = grid.sup_in_ball(snap.values, R);
  const double norm_p_pow = mass_p_in_ball(grid, datum.values, p, 2.0 * R);
  const double term1 =
      std::pow(t, -Ngamma * theta) * std::pow(norm_p_pow, P.sigma() * theta);
  const double mu_ratio = geom.mu_beta(ball) / geom.mu_gamma(ball);
  const double term2 = std::pow(mu_ratio * t / (R * R), 1.0 / (1.0 - P.m()));

  const double k1 = ledger.get("kappa1");
  const double k2 = ledger.get("kappa2");
  const double rhs = k1 * term1 + k2 * term2;
  const double measured = lhs / (term1 + term2);
  std::ostringstream ctx;
  ctx << "smoothing;p=" << p << ";t=" << t << ";R=" << R << ";theta_p=" << theta
      << ";p_c=" << P.p_critical();
  return CheckReport::make("check_smoothing", lhs, rhs, measured, ctx.str());
}

CheckReport check_herrero_pierre(const GeometryContext& geom,
                                 const ConstantLedger& ledger, const Trajectory& traj,
                                 const Ball& ball, double t, double tau) {
  const Params& P = geom.params();
  const WeightedGrid& grid = *traj.grid;
  const double R = ball.radius;
  if (2.0 * R > grid.r_max() * (1.0 + 1e-12))
    throw DomainError("check_herrero_pierre: 2R ball exceeds the domain");
  const double one_minus_m = 1.0 - P.m();
  const double lhs =
      std::pow(mass_p_in_ball(grid, traj.at_time(t).values, 1.0, R), one_minus_m);
  const double base = std::pow(
      mass_p_in_ball(grid, traj.at_time(tau).values, 1.0, 2.0 * R), one_minus_m);
  const double mu = geom.mu_gamma(ball);
  const double shape = std::pow(mu, one_minus_m) * std::abs(t - tau) /
                       std::pow(R, P.sigma());
  const double k10p = ledger.get("kappa10_prime");
  const double rhs = base + k10p * shape;
  const double measured = shape > 0.0 ? std::max(0.0, (lhs - base) / shape) : 0.0;
  std::ostringstream ctx;
  ctx << "herrero_pierre;t=" << t << ";tau=" << tau << ";R=" << R;
  return CheckReport::make("check_herrero_pierre", lhs, rhs, measured, ctx.str());
}

CheckReport check_lp_stability(const GeometryContext& geom,
                               const ConstantLedger& ledger, const Trajectory& traj,
                               double R1, double R0, double p, double t, double tau) {
  const Params& P = geom.params();
  if (!(p > 1.0)) throw RegularityError("check_lp_stability: requires p > 1");
  if (!(0.0 < R1 && R1 < R0)) throw GeometryError("check_lp_stability: need 0 < R1 < R0");
  if (!(t >= tau)) throw DomainError("check_lp_stability: requires t >= tau");
  const WeightedGrid& grid = *traj.grid;
  const double one_minus_m = 1.0 - P.m();
  const double lhs =
      std::pow(mass_p_in_ball(grid, traj.at_time(t).values, p, R1), one_minus_m / p);
  const double base =
      std::pow(mass_p_in_ball(grid, traj.at_time(tau).values, p, R0), one_minus_m / p);
  const double h = geom.h_sigma(R0, R1, 0.0);
  const double annulus =
      geom.mu_gamma(Ball{0.0, R0}) - geom.mu_gamma(Ball{0.0, R1});
  const double shape = h / std::pow(R0 - R1, P.sigma()) *
                       std::pow(annulus, one_minus_m / p) * (t - tau);
  const double cp = ledger.get("c_lp_stability");
  const double rhs = base + cp * shape;
  const double measured = shape > 0.0 ? std::max(0.0, (lhs - base) / shape) : 0.0;
  std::ostringstream ctx;
  ctx << "lp_stability;p=" << p << ";R1=" << R1 << ";R0=" << R0 << ";t=" << t
      << ";tau=" << tau;
  return CheckReport::make("check_lp_stability", lhs, rhs, measured, ctx.str());
}

CheckReport check_energy_upper(const GeometryContext& geom,
                               const ConstantLedger& ledger, const Trajectory& traj,
                               const SpaceTimeBox& box, double p) {
  const Params& P = geom.params();
  if (!(p > 1.0)) throw RegularityError("check_energy_upper: p = 1 is excluded");
  const WeightedGrid& grid = *traj.grid;
  const double em = 0.5 * (p + P.m() - 1.0);

  const auto inner = snapshots_between(traj, box.T1, box.T2);
  if (inner.size() < 2) throw DomainError("check_energy_upper: too few snapshots");
  double sup_term = 0.0;
  for (const Snapshot* s : inner)
    sup_term = std::max(sup_term, mass_p_in_ball(grid, s->values, p, box.R1));
  std::vector<double> v(grid.cells());
  const double grad_term = time_integral(inner, [&](const Snapshot& s) {
    for (int i = 0; i < grid.cells(); ++i) v[i] = std::pow(s.values[i], em);
    return gradient_energy(grid, v, box.R1);
  });
  const double lhs = sup_term + grad_term;

  const auto outer = snapshots_between(traj, box.T0, box.T2);
  const double src = time_integral(outer, [&](const Snapshot& s) {
    return mass_p_in_ball(grid, s.values, p + P.m() - 1.0, box.R0) +
           mass_p_in_ball(grid, s.values, p, box.R0);
  });
  const double shape = (geom.h_sigma(box.R0, box.R1, 0.0) /
                            std::pow(box.R0 - box.R1, P.sigma()) +
                        1.0 / (box.T1 - box.T0)) * src;
  const double c1 = ledger.get("c_energy_upper");
  std::ostringstream ctx;
  ctx << "energy_upper;p=" << p << ";R1=" << box.R1 << ";R0=" << box.R0
      << ";T=" << box.T0 << "," << box.T1 << "," << box.T2;
  return CheckReport::make("check_energy_upper", lhs, c1 * shape,
                           shape > 0.0 ? lhs / shape : 0.0, ctx.str());
}

CheckReport check_energy_lower(const GeometryContext& geom,
                               const ConstantLedger& ledger, const Trajectory& traj,
                               const SpaceTimeBox& box, double p) {
  const Params& P = geom.params();
  if (!(p > 0.0 && p < 1.0 - P.m()))
    throw RegularityError("check_energy_lower: requires p in (0, 1-m)");
  const WeightedGrid& grid = *traj.grid;
  const double em = 0.5 * (p + P.m() - 1.0); // negative exponent: u >= delta needed
  for (double x : traj.snapshots.front().values)
    if (!(x > 0.0))
      throw RegularityError("check_energy_lower: positive (lifted) solution required");

  const auto head = snapshots_between(traj, box.T0, box.T1);
  if (head.size() < 2) throw DomainError("check_energy_lower: too few snapshots");
  std::vector<double> v(grid.cells());
  const double grad_term = time_integral(head, [&](const Snapshot& s) {
    for (int i = 0; i < grid.cells(); ++i) v[i] = std::pow(s.values[i], em);
    return gradient_energy(grid, v, box.R1);
  });
  const double lhs =
      mass_p_in_ball(grid, traj.at_time(box.T0).values, p, box.R1) + grad_term;

  const auto outer = snapshots_between(traj, box.T0, box.T2);
  const double src = time_integral(outer, [&](const Snapshot& s) {
    return mass_p_in_ball(grid, s.values, p + P.m() - 1.0, box.R0) +
           mass_p_in_ball(grid, s.values, p, box.R0);
  });
  const double shape = (geom.h_sigma(box.R0, box.R1, 0.0) /
                            std::pow(box.R0 - box.R1, P.sigma()) +
                        1.0 / (box.T2 - box.T1)) * src;
  const double c2 = ledger.get("c_energy_lower");
  std::ostringstream ctx;
  ctx << "energy_lower;p=" << p << ";R1=" << box.R1 << ";R0=" << box.R0;
  return CheckReport::make("check_energy_lower", lhs, c2 * shape,
                           shape > 0.0 ? lhs / shape : 0.0, ctx.str());
}

CheckReport check_caccioppoli(const GeometryContext& geom,
                              const ConstantLedger& ledger, const Trajectory& traj,
                              const SpaceTimeBox& box) {
  const Params& P = geom.params();
  const WeightedGrid& grid = *traj.grid;
  const double m = P.m();
  for (double x : traj.snapshots.front().values)
    if (!(x > 0.0))
      throw RegularityError("check_caccioppoli: positive (lifted) solution required");

  // psi = 1 on B_{R1}, linear cutoff to 0 at R0.
  auto psi = [&](double r) {
    if (r <= box.R1) return 1.0;
    if (r >= box.R0) return 0.0;
    return (box.R0 - r) / (box.R0 - box.R1);
  };
  std::vector<double> psi_c(grid.cells());
  for (int i = 0; i < grid.cells(); ++i) psi_c[i] = psi(grid.centers()[i]);

  auto weighted_mass = [&](const Snapshot& s) {
    double acc = 0.0;
    for (int i = 0; i < grid.cells(); ++i)
      acc += std::pow(s.values[i], 1.0 - m) * psi_c[i] * psi_c[i] *
             grid.gamma_mass()[i];
    return acc;
  };
  auto log_energy = [&](const Snapshot& s) {
    const auto& tau = grid.transmissibility();
    double acc = 0.0;
    for (int k = 1; k < grid.cells(); ++k) {
      const double pe = 0.5 * (psi_c[k] + psi_c[k - 1]);
      const double d = std::log(s.values[k]) - std::log(s.values[k - 1]);
      acc += tau[k] * pe * pe * d * d;
    }
    return acc;
  };
  double psi_grad = 0.0;
  {
    const auto& tau = grid.transmissibility();
    for (int k = 1; k < grid.cells(); ++k) {
      const double d = psi_c[k] - psi_c[k - 1];
      psi_grad += tau[k] * d * d;
    }
  }

  const auto window = snapshots_between(traj, box.T0, box.T2);
  if (window.size() < 2) throw DomainError("check_caccioppoli: too few snapshots");
  const double log_term = time_integral(window, log_energy);
  const double lhs = weighted_mass(traj.at_time(box.T0)) +
                     0.5 * m * m * (1.0 - m) * log_term;
  const double shape = 2.0 * (1.0 - m) * (box.T2 - box.T0) * psi_grad +
                       weighted_mass(traj.at_time(box.T2));
  const double c3 = ledger.get("c_caccioppoli");
  std::ostringstream ctx;
  ctx << "caccioppoli;R1=" << box.R1 << ";R0=" << box.R0 << ";tau=" << box.T0
      << ";t=" << box.T2;
  return CheckReport::make("check_caccioppoli", lhs, c3 * shape,
                           shape > 0.0 ? lhs / shape : 0.0, ctx.str());
}

CheckReport check_lower_bound(const GeometryContext& geom,
                              const ConstantLedger& ledger, const Trajectory& traj,
                              const Ball& ball) {
  const Params& P = geom.params();
  const WeightedGrid& grid = *traj.grid;
  const double R = ball.radius;
  if (4.0 * R > grid.r_max() * (1.0 + 1e-12))
    throw DomainError("check_lower_bound: 4R ball exceeds the domain");
  const double t_star = minimal_life_time(geom, ledger, grid,
                                          traj.snapshots.front().values, ball);
  if (t_star == 0.0) {
    return CheckReport::make("check_lower_bound", 0.0, 0.0, 0.0,
                             "lower_bound;zero datum;vacuous", 1e-9);
  }
  const double mu_ratio = geom.mu_beta(ball) / geom.mu_gamma(ball);
  const double expnt = 1.0 / (1.0 - P.m());
  double min_ratio = std::numeric_limits<double>::infinity();
  double min_inf = std::numeric_limits<double>::infinity();
  int used = 0;
  const double t_hi = traj.extinction_time ? std::min(*traj.extinction_time, t_star)
                                           : t_star;
  for (const auto& s : traj.snapshots) {
    if (!(s.time > 0.0) || s.time > t_hi * (1.0 + 1e-12)) continue;
    const double inf = grid.inf_in_ball(s.values, 2.0 * R);
    const double factor = std::pow(mu_ratio * s.time / (R * R), expnt);
    min_inf = std::min(min_inf, inf);
    if (factor > 0.0) min_ratio = std::min(min_ratio, inf / factor);
    ++used;
  }
  if (used < 3) throw DomainError("check_lower_bound: too few snapshots in (0, t*]");
  const double installed = ledger.get("kappa_lower");
  std::ostringstream ctx;
  ctx << "lower_bound;R=" << R << ";t_star=" << t_star << ";samples=" << used
      << ";min_inf=" << min_inf;
  CheckReport rep = CheckReport::make("check_lower_bound", installed, min_ratio,
                                      min_ratio, ctx.str(), 1e-9);
  rep.pass = rep.pass && min_inf > 0.0;
  return rep;
}

CheckReport check_extinction_bounds(const GeometryContext& geom,
                                    const ConstantLedger& ledger,
                                    const Trajectory& traj, const Ball& ball,
                                    double q, double detected_T) {
  const Params& P = geom.params();
  const WeightedGrid& grid = *traj.grid;
  const double m = P.m();
  if (!(q > std::max(P.p_critical(), 1.0)))
    throw DomainError("check_extinction_bounds: q > p_c v 1 required");
  const double t_star = minimal_life_time(geom, ledger, grid,
                                          traj.snapshots.front().values, ball);
  std::ostringstream key;
  key << "kappa13@q=" << q;
  const double k13 = ledger.get(key.str());
  const double kq0 =
      4.0 * (q - 1.0) * (1.0 - m) / (k13 * k13 * (q + m - 1.0) * (q + m - 1.0));

  double mu_dom = 0.0;
  for (double w : grid.gamma_mass()) mu_dom += w;
  const double norm_q = std::pow(
      mass_p_in_ball(grid, traj.snapshots.front().values, q, grid.r_max()),
      1.0 / q);
  const double Ngamma = P.dimension() - P.gamma();
  const double upper = std::pow(mu_dom, P.sigma() / Ngamma - (1.0 - m) / q) *
                       std::pow(norm_q, 1.0 - m) / kq0;
  std::ostringstream ctx;
  ctx << "extinction_bounds;q=" << q << ";t_star=" << t_star << ";T=" << detected_T
      << ";upper=" << upper;
  CheckReport rep = CheckReport::make("check_extinction_bounds", detected_T, upper,
                                      t_star, ctx.str(), 1e-9);
  rep.pass = rep.pass && t_star <= detected_T * (1.0 + 1e-9);
  return rep;
}

CheckReport harnack_quotient(const GeometryContext& geom, const ConstantLedger& ledger,
                             const Trajectory& traj, const Ball& ball, double t,
                             double theta) {
  const WeightedGrid& grid = *traj.grid;
  const double R = ball.radius;
  if (8.0 * R > grid.r_max() * (1.0 + 1e-12))
    throw DomainError("harnack_quotient: 8R ball exceeds the domain");
  const Snapshot& num = traj.at_time(t);
  const Snapshot& den = traj.at_time(t + theta);
  const double sup = grid.sup_in_ball(num.values, R);
  const double inf = grid.inf_in_ball(den.values, R);
  if (!(inf > 0.0)) throw ZeroInfimum("harnack_quotient: infimum vanished (positivity failure)");
  const double quotient = sup / inf;
  const double k3 = ledger.get("kappa3");
  std::ostringstream ctx;
  ctx << "harnack;t=" << t << ";theta=" << theta << ";R=" << R;
  (void)geom;
  return CheckReport::make("harnack_quotient", quotient, k3, quotient, ctx.str());
}

HolderFit holder_exponent(const GeometryContext& geom,
                          const std::function<double(double, double)>& u,
                          const Cylinder& cyl, int n_points, unsigned seed) {
  std::mt19937 rng(seed);
  const double t0 = cyl.t_start();
  const double t1 = cyl.t_stop();
  const double rad = cyl.spatial_radius();
  const double c = cyl.ball.center_norm;
  std::uniform_real_distribution<double> ut(t0, t1);
  std::uniform_real_distribution<double> ux(std::max(c - rad, -(c + rad)), c + rad);

  struct Pt { double t, x, v; };
  std::vector<Pt> pts;
  pts.reserve(n_points);
  double scale = 0.0;
  for (int i = 0; i < n_points; ++i) {
    Pt p;
    p.t = ut(rng);
    p.x = ux(rng);
    p.v = u(p.t, std::abs(p.x));
    scale = std::max(scale, std::abs(p.v));
    pts.push_back(p);
  }

  double dmin = std::numeric_limits<double>::infinity(), dmax = 0.0;
  std::vector<std::pair<double, double>> pairs; // (distance, oscillation)
  pairs.reserve(static_cast<std::size_t>(n_points) * (n_points - 1) / 2);
  for (int i = 0; i < n_points; ++i)
    for (int j = i + 1; j < n_points; ++j) {
      const double d =
          geom.standard_quasi_distance(pts[i].t, pts[i].x, pts[j].t, pts[j].x);
      if (!(d > 0.0)) continue;
      pairs.emplace_back(d, std::abs(pts[i].v - pts[j].v));
      dmin = std::min(dmin, d);
      dmax = std::max(dmax, d);
    }
  if (pairs.size() < 16) throw InsufficientSamples("holder_exponent: too few pairs");

  HolderFit fit;
  if (scale == 0.0 || dmax <= dmin) {
    fit.constrained = false;
    return fit;
  }
  const int nbins = 24;
  const double ld0 = std::log(dmin), ld1 = std::log(dmax);
  std::vector<double> bin_max(nbins, 0.0);
  for (const auto& [d, osc] : pairs) {
    int b = static_cast<int>((std::log(d) - ld0) / (ld1 - ld0) * nbins);
    b = std::clamp(b, 0, nbins - 1);
    bin_max[b] = std::max(bin_max[b], osc);
  }
  // Least squares of log(max osc) vs log(bin center distance).
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int used = 0;
  for (int b = 0; b < nbins; ++b) {
    if (bin_max[b] <= 1e-13 * scale) continue;
    const double lx = ld0 + (b + 0.5) * (ld1 - ld0) / nbins;
    const double ly = std::log(bin_max[b]);
    sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    ++used;
  }
  if (used < 4) {
    fit.constrained = false;
    return fit;
  }
  fit.exponent = (used * sxy - sx * sy) / (used * sxx - sx * sx);
  fit.constrained = true;
  fit.bins_used = used;
  return fit;
}

HolderFit holder_exponent(const GeometryContext& geom, const Trajectory& traj,
                          const Cylinder& cyl, int n_points, unsigned seed) {
  auto grid = traj.grid;
  auto u = [&traj, grid](double t, double r) {
    // linear interpolation between bracketing snapshots
    const auto& snaps = traj.snapshots;
    if (t <= snaps.front().time) return grid->interpolate(snaps.front().values, r);
    if (t >= snaps.back().time) return grid->interpolate(snaps.back().values, r);
    std::size_t hi = 1;
    while (snaps[hi].time < t) ++hi;
    const auto& a = snaps[hi - 1];
    const auto& b = snaps[hi];
    const double w = (t - a.time) / (b.time - a.time);
    return (1.0 - w) * grid->interpolate(a.values, r) +
           w * grid->interpolate(b.values, r);
  };
  return holder_exponent(geom, u, cyl, n_points, seed);
}

std::vector<CheckReport> check_bmo_window(const GeometryContext& geom,
                                          const ConstantLedger& ledger,
                                          const Trajectory& traj, const Ball& ball,
                                          double t, double tau_star) {
  const Params& P = geom.params();
  const WeightedGrid& grid = *traj.grid;
  const Snapshot& snap = traj.at_time(t);
  for (double v : snap.values)
    if (!(v > 0.0)) throw DomainError("check_bmo_window: positive field required");

  auto field = interpolated_field(traj, snap);
  auto logf = [field](double r) { return std::log(field(r)); };
  const BMOReport bmo = bmo_gamma(geom, logf, ball, 4);

  // Structural scale: M_p(t) = 2 kappa12 ||u0||_{p,B_R0}^{p sigma theta} t^{-(N-gamma)theta} + 2 delta.
  const double p = P.p();
  const double theta = theta_for(P, p);
  const double k12 = ledger.get("kappa12");
  const double norm_p = std::pow(
      mass_p_in_ball(grid, traj.snapshots.front().values, p, grid.r_max()), 1.0 / p);
  double delta = 0.0;
  if (traj.bc == BcKind::delta_mdp && !traj.snapshots.empty()) {
    delta = *std::min_element(traj.snapshots.front().values.begin(),
                              traj.snapshots.front().values.end());
  }
  const double Ngamma = P.dimension() - P.gamma();
  const double Mp = 2.0 * k12 * std::pow(norm_p, p * P.sigma() * theta) *
                        std::pow(t, -Ngamma * theta) + 2.0 * delta;
  const double geom_fac =
      std::pow(std::max(ball.center_norm / ball.radius, 1.0), P.beta() - P.gamma());
  const double shape = std::sqrt(
      1.0 + std::pow(ball.radius, P.sigma()) / t * geom_fac *
                std::pow(Mp, 1.0 - P.m()));
  const double k14 = ledger.get("kappa14");
  std::ostringstream ctx;
  ctx << "bmo_window;t=" << t << ";R=" << ball.radius << ";tau_star=" << tau_star
      << ";bmo=" << bmo.bmo_norm;
  std::vector<CheckReport> out;
  out.push_back(CheckReport::make("check_bmo_shape", bmo.bmo_norm, k14 * shape,
                                  shape > 0.0 ? bmo.bmo_norm / shape : 0.0,
                                  ctx.str()));

  const double k6 = ledger.get("kappa6");
  const double k7 = ledger.get("kappa7");
  const double window = bmo.bmo_norm > 0.0
                            ? 1.0 / (k6 * bmo.bmo_norm)
                            : 1.0;
  const double s = 0.5 * window;
  out.push_back(reverse_holder(geom, field, ball, s, k6, k7, 3));
  return out;
}

double smallest_passing(const std::function<bool(double)>& passes, double hint) {
  double hi = std::max(hint, 1e-12);
  int guard = 0;
  while (!passes(hi)) {
    hi *= 2.0;
    if (++guard > 200) throw DomainError("smallest_passing: no passing constant found");
  }
  double lo = hi;
  guard = 0;
  while (passes(lo) && lo > 1e-300) {
    lo *= 0.5;
    if (++guard > 2000) break;
  }
  for (int i = 0; i < 200 && (hi - lo) > 1e-4 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (passes(mid)) hi = mid; else lo = mid;
  }
  return hi;
}

} // namespace wfde
