#include "wfde/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wfde/errors.hpp"

namespace wfde {

BoundaryCondition BoundaryCondition::mdp(double support_radius) {
  BoundaryCondition bc;
  bc.kind = BcKind::mdp;
  bc.support_radius = support_radius;
  return bc;
}

BoundaryCondition BoundaryCondition::delta_mdp(double delta) {
  if (!(delta > 0.0)) throw DomainError("delta_mdp: delta must be positive");
  BoundaryCondition bc;
  bc.kind = BcKind::delta_mdp;
  bc.delta = delta;
  return bc;
}

BoundaryCondition BoundaryCondition::exact_trace(std::shared_ptr<const ExactSolution> sol) {
  BoundaryCondition bc;
  bc.kind = BcKind::exact_trace;
  bc.trace = std::move(sol);
  return bc;
}

BoundaryCondition BoundaryCondition::zero_flux() { return BoundaryCondition{}; }

const Snapshot& Trajectory::at_time(double t, double rel_tol) const {
  const double scale = std::max(std::abs(t), 1e-300);
  for (const auto& s : snapshots)
    if (std::abs(s.time - t) <= rel_tol * std::max(scale, std::abs(s.time)) + 1e-300)
      return s;
  throw DomainError("trajectory: no snapshot stored at requested time");
}

const Snapshot& Trajectory::nearest(double t) const {
  if (snapshots.empty()) throw DomainError("trajectory: empty");
  const Snapshot* best = &snapshots.front();
  for (const auto& s : snapshots)
    if (std::abs(s.time - t) < std::abs(best->time - t)) best = &s;
  return *best;
}

double Trajectory::sup(const Snapshot& s) const {
  double v = 0.0;
  for (double x : s.values) v = std::max(v, x);
  return v;
}

namespace {

struct FaceValues {
  bool left_dirichlet = false;
  bool right_dirichlet = false;
  double left_value = 0.0;
  double right_value = 0.0;
};

FaceValues boundary_values(const ProblemSpec& spec, double t_new) {
  FaceValues fv;
  const auto& bc = spec.bc;
  const auto& grid = *spec.grid;
  switch (bc.kind) {
    case BcKind::zero_flux:
      break;
    case BcKind::mdp:
      fv.right_dirichlet = true;
      fv.right_value = 0.0;
      break;
    case BcKind::delta_mdp:
      fv.right_dirichlet = true;
      fv.right_value = bc.delta;
      break;
    case BcKind::exact_trace:
      fv.right_dirichlet = true;
      fv.right_value = bc.trace->value(t_new, grid.r_max());
      if (grid.r_min() > 0.0) {
        fv.left_dirichlet = true;
        fv.left_value = bc.trace->value(t_new, grid.r_min());
      }
      break;
  }
  return fv;
}

double positivity_floor(const ProblemSpec& spec) {
  if (spec.bc.kind == BcKind::delta_mdp) return spec.bc.delta;
  return 0.0;
}

void solve_tridiagonal(std::vector<double>& lower, std::vector<double>& diag,
                       std::vector<double>& upper, std::vector<double>& rhs) {
  const int n = static_cast<int>(diag.size());
  for (int i = 1; i < n; ++i) {
    const double w = lower[i] / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  rhs[n - 1] /= diag[n - 1];
  for (int i = n - 2; i >= 0; --i) rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
}

} // namespace

Snapshot step_implicit(const ProblemSpec& spec, const Snapshot& from, double dt) {
  const auto& grid = *spec.grid;
  const int n = grid.cells();
  if (static_cast<int>(from.values.size()) != n)
    throw NonphysicalState("step: snapshot size does not match grid");
  const double m = spec.params.m();
  const double t_new = from.time + dt;
  const FaceValues fv = boundary_values(spec, t_new);
  const auto& tau = grid.transmissibility();
  const auto& w = grid.gamma_mass();
  const double floor = positivity_floor(spec);

  // Transmissibilities at Dirichlet faces; zero-flux faces drop out.
  const double tauL = fv.left_dirichlet ? tau.front() : 0.0;
  const double tauR = fv.right_dirichlet ? tau.back() : 0.0;

  const double phiL = fv.left_dirichlet ? std::pow(fv.left_value, m) : 0.0;
  const double phiR = fv.right_dirichlet ? std::pow(fv.right_value, m) : 0.0;

  std::vector<double> u = from.values;
  for (double& x : u) x = std::max(x, floor);

  double sup_scale = std::max(fv.left_value, fv.right_value);
  for (double x : from.values) sup_scale = std::max(sup_scale, x);
  sup_scale = std::max(sup_scale, 1e-300);
  // phi'(u) = m u^{m-1} blows up at zero; evaluate at a tiny positive floor so
  // the Jacobian stays finite (large diagonal, vanishing update: the
  // degenerate limit).
  const double dphi_floor = 1e-13 * sup_scale;

  auto phi = [m](double x) { return x <= 0.0 ? 0.0 : std::pow(x, m); };
  auto dphi = [m, dphi_floor](double x) {
    return m * std::pow(std::max(x, dphi_floor), m - 1.0);
  };

  std::vector<double> phi_u(n), G(n);
  auto assemble_residual = [&](const std::vector<double>& v) {
    for (int i = 0; i < n; ++i) phi_u[i] = phi(v[i]);
    for (int i = 0; i < n; ++i) {
      double flux_hi, flux_lo;
      if (i == n - 1)
        flux_hi = tauR * (phiR - phi_u[i]);
      else
        flux_hi = tau[i + 1] * (phi_u[i + 1] - phi_u[i]);
      if (i == 0)
        flux_lo = tauL * (phi_u[i] - phiL);
      else
        flux_lo = tau[i] * (phi_u[i] - phi_u[i - 1]);
      G[i] = (w[i] / dt) * (v[i] - from.values[i]) - (flux_hi - flux_lo);
    }
  };
  auto residual_norm = [&]() {
    double r = 0.0;
    for (double g : G) r = std::max(r, std::abs(g));
    return r;
  };

  double res_scale = 0.0;
  for (int i = 0; i < n; ++i) res_scale = std::max(res_scale, w[i] * sup_scale / dt);
  const double tol_abs = spec.newton.tol * res_scale;

  assemble_residual(u);
  double res = residual_norm();
  std::vector<double> lower(n), diag(n), upper(n), rhs(n), trial(n);
  int iter = 0;
  while (res > tol_abs) {
    if (++iter > spec.newton.max_iter)
      throw NewtonDivergence("newton: iteration budget exhausted, residual " +
                             std::to_string(res));
    for (int i = 0; i < n; ++i) {
      const double dp = dphi(u[i]);
      double d = w[i] / dt;
      if (i == n - 1) d += tauR * dp; else d += tau[i + 1] * dp;
      if (i == 0) d += tauL * dp; else d += tau[i] * dp;
      diag[i] = d;
      lower[i] = (i > 0) ? -tau[i] * dphi(u[i - 1]) : 0.0;
      upper[i] = (i < n - 1) ? -tau[i + 1] * dphi(u[i + 1]) : 0.0;
      rhs[i] = -G[i];
    }
    solve_tridiagonal(lower, diag, upper, rhs);

    double lambda = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 25; ++ls) {
      for (int i = 0; i < n; ++i) trial[i] = std::max(u[i] + lambda * rhs[i], floor);
      assemble_residual(trial);
      const double res_trial = residual_norm();
      if (res_trial < res || res_trial <= tol_abs) {
        u = trial;
        res = res_trial;
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!accepted)
      throw NewtonDivergence("newton: line search stalled, residual " + std::to_string(res));
  }

  // Reconstitute from the converged implicit fluxes: interior fluxes
  // telescope, so zero-flux mass is conserved to summation roundoff.
  Snapshot out;
  out.time = t_new;
  out.values.resize(n);
  for (int i = 0; i < n; ++i) phi_u[i] = phi(u[i]);
  for (int i = 0; i < n; ++i) {
    double flux_hi, flux_lo;
    if (i == n - 1) flux_hi = tauR * (phiR - phi_u[i]);
    else flux_hi = tau[i + 1] * (phi_u[i + 1] - phi_u[i]);
    if (i == 0) flux_lo = tauL * (phi_u[i] - phiL);
    else flux_lo = tau[i] * (phi_u[i] - phi_u[i - 1]);
    double v = from.values[i] + (dt / w[i]) * (flux_hi - flux_lo);
    if (v < floor) v = floor;
    if (!std::isfinite(v)) throw NonphysicalState("step: non-finite state");
    out.values[i] = v;
  }
  return out;
}

namespace {

Trajectory run_single(const ProblemSpec& spec) {
  const auto& tc = spec.time;
  Trajectory traj(spec.params, spec.grid);
  traj.bc = spec.bc.kind;

  std::vector<double> record = tc.record_times;
  std::sort(record.begin(), record.end());
  record.erase(std::unique(record.begin(), record.end()), record.end());

  Snapshot state;
  state.time = tc.t_start;
  state.values = spec.initial;
  if (spec.bc.kind == BcKind::delta_mdp)
    for (double& v : state.values) v = std::max(v, spec.bc.delta);
  traj.snapshots.push_back(state);

  std::size_t next_rec = 0;
  while (next_rec < record.size() && record[next_rec] <= state.time * (1 + 1e-14))
    ++next_rec;

  double dt = tc.dt_init;
  const double dt_floor = tc.dt_floor_rel * (tc.t_end - tc.t_start);
  const double dt_cap = tc.dt_max > 0.0 ? tc.dt_max : std::numeric_limits<double>::infinity();

  while (state.time < tc.t_end * (1.0 - 1e-14)) {
    double target = tc.t_end;
    if (next_rec < record.size()) target = std::min(target, record[next_rec]);
    double step_dt = std::min({dt, dt_cap, target - state.time});
    bool hit_target = (step_dt >= target - state.time - 1e-14 * target);
    if (hit_target) step_dt = target - state.time;

    Snapshot next;
    bool ok = false;
    int halvings = 0;
    while (!ok) {
      try {
        next = step_implicit(spec, state, step_dt);
        ok = true;
      } catch (const NewtonDivergence&) {
        step_dt *= 0.5;
        hit_target = false;
        if (step_dt < dt_floor || ++halvings > 60)
          throw NewtonDivergence("run: dt floor reached at t = " + std::to_string(state.time));
      }
    }

    StepDiagnostics diag;
    diag.t_new = next.time;
    diag.dt = step_dt;
    traj.diagnostics.push_back(diag);

    state = std::move(next);

    const bool at_record = next_rec < record.size() &&
        std::abs(state.time - record[next_rec]) <= 1e-12 * std::max(1.0, record[next_rec]);
    if (at_record) ++next_rec;
    if (at_record || tc.record_every_step ||
        state.time >= tc.t_end * (1.0 - 1e-14))
      traj.snapshots.push_back(state);

    // Base the next dt on the halved value after a Newton failure; a clip to
    // land on a record time is not a failure and keeps the previous dt.
    if (halvings > 0) dt = step_dt * tc.growth;
    else dt = std::min(std::max(step_dt, dt) * tc.growth, dt_cap);
    dt = std::min(dt, dt_cap);
  }
  return traj;
}

} // namespace

Trajectory run(const ProblemSpec& spec) {
  if (spec.params.is_linear())
    throw RegimeError("solver: nonlinear m in (0,1) required");
  if (spec.bc.kind != BcKind::mdp) return run_single(spec);

  // MDP: the support condition, then delta-continuation mirroring the lifted
  // problem, with pointwise Richardson extrapolation of snapshots to delta=0.
  if (spec.bc.support_radius > 0.0 &&
      !(4.0 * spec.bc.support_radius <= spec.grid->r_max() * (1 + 1e-12)))
    throw DomainError("mdp: datum support condition 4R <= R0 violated");

  double sup0 = 0.0;
  for (double v : spec.initial) sup0 = std::max(sup0, v);
  if (sup0 <= 0.0) return run_single(spec); // zero datum: the zero solution

  std::vector<double> deltas = spec.continuation_deltas;
  std::sort(deltas.rbegin(), deltas.rend());
  if (deltas.size() < 2) throw DomainError("mdp: need at least two continuation deltas");

  std::vector<Trajectory> family;
  family.reserve(deltas.size());
  for (double drel : deltas) {
    ProblemSpec lifted = spec;
    lifted.bc = BoundaryCondition::delta_mdp(drel * sup0);
    lifted.time.record_every_step = false; // snapshots must align across the family
    family.push_back(run_single(lifted));
  }

  // Snapshots are recorded at identical times across the family (same record
  // set; per-step extras are disabled for continuation runs by construction
  // of the record list).  Extrapolate the two smallest deltas linearly.
  const Trajectory& a = family[family.size() - 2]; // delta
  const Trajectory& b = family[family.size() - 1]; // delta/2 (smaller)
  Trajectory traj(spec.params, spec.grid);
  traj.bc = BcKind::mdp;
  const std::size_t ns = std::min(a.snapshots.size(), b.snapshots.size());
  for (std::size_t k = 0; k < ns; ++k) {
    const Snapshot& sa = a.snapshots[k];
    const Snapshot& sb = b.snapshots[k];
    Snapshot s;
    s.time = sb.time;
    s.values.resize(sb.values.size());
    const double da = deltas[deltas.size() - 2] * sup0;
    const double db = deltas[deltas.size() - 1] * sup0;
    const double wa = -db / (da - db);
    const double wb = da / (da - db);
    for (std::size_t i = 0; i < s.values.size(); ++i)
      s.values[i] = std::max(0.0, wa * sa.values[i] + wb * sb.values[i]);
    traj.snapshots.push_back(std::move(s));
  }
  traj.deltas = deltas;
  for (double& d : traj.deltas) d *= sup0;
  traj.delta_family = std::move(family);
  return traj;
}

std::optional<double> detect_extinction(const ProblemSpec& spec,
                                        const Trajectory& traj, double tol) {
  if (spec.bc.kind == BcKind::zero_flux || spec.bc.kind == BcKind::delta_mdp)
    throw DomainError("detect_extinction: Dirichlet-type bc required");
  if (traj.snapshots.empty()) throw DomainError("detect_extinction: empty trajectory");

  double sup0 = traj.sup(traj.snapshots.front());
  if (tol <= 0.0) tol = 1e-8 * std::max(sup0, 1e-300);
  if (sup0 <= tol) return traj.snapshots.front().time;

  auto bracket = [&](const Trajectory& t) -> std::optional<std::pair<double, double>> {
    for (std::size_t k = 1; k < t.snapshots.size(); ++k)
      if (t.sup(t.snapshots[k]) <= tol)
        return std::make_pair(t.snapshots[k - 1].time, t.snapshots[k].time);
    return std::nullopt;
  };

  auto br = bracket(traj);
  if (!br) return std::nullopt;

  double lo = br->first, hi = br->second;
  for (int level = 0; level < 3 && (hi - lo) > 1e-6 * hi; ++level) {
    ProblemSpec refined = spec;
    refined.time.t_end = hi;
    refined.time.record_times.clear();
    for (int j = 0; j <= 32; ++j)
      refined.time.record_times.push_back(lo + (hi - lo) * j / 32.0);
    refined.time.dt_max = (hi - lo) / 16.0;
    refined.time.record_every_step = false;
    const Trajectory fine = run(refined);
    auto fb = bracket(fine);
    if (!fb) break;
    lo = fb->first;
    hi = fb->second;
  }
  return 0.5 * (lo + hi);
}

} // namespace wfde
