#ifndef WFDE_SOLVER_HPP
#define WFDE_SOLVER_HPP

#include <memory>
#include <optional>
#include <vector>

#include "wfde/exact_solutions.hpp"
#include "wfde/grid.hpp"

namespace wfde {

enum class BcKind { mdp, delta_mdp, exact_trace, zero_flux };

struct BoundaryCondition {
  BcKind kind = BcKind::zero_flux;
  double delta = 0.0;                          // delta_mdp lift
  std::shared_ptr<const ExactSolution> trace;  // exact_trace boundary values
  double support_radius = 0.0;                 // mdp: datum support R, 4R < R0

  static BoundaryCondition mdp(double support_radius);
  static BoundaryCondition delta_mdp(double delta);
  static BoundaryCondition exact_trace(std::shared_ptr<const ExactSolution> sol);
  static BoundaryCondition zero_flux();
};

struct TimeControls {
  double t_end = 1.0;
  double t_start = 0.0;
  double dt_init = 1e-4;
  double dt_max = 0.0;   // 0: no cap
  double growth = 1.2;
  double dt_floor_rel = 1e-12;
  std::vector<double> record_times; // snapshots stored at these times exactly
  bool record_every_step = false;
};

struct NewtonControls {
  double tol = 1e-14; // relative residual
  int max_iter = 40;
};

struct ProblemSpec {
  Params params;
  std::shared_ptr<const WeightedGrid> grid;
  BoundaryCondition bc;
  std::vector<double> initial;
  TimeControls time;
  NewtonControls newton;
  // MDP runs are solved by delta-continuation: lifted problems at these
  // deltas (relative to the datum sup), then Richardson extrapolation of the
  // snapshots to delta = 0.
  std::vector<double> continuation_deltas = {4e-3, 2e-3, 1e-3};

  ProblemSpec(const Params& p, std::shared_ptr<const WeightedGrid> g)
      : params(p), grid(std::move(g)) {}
};

struct Snapshot {
  double time = 0.0;
  std::vector<double> values;
};

struct StepDiagnostics {
  double t_new = 0.0;
  double dt = 0.0;
  int newton_iters = 0;
  double residual = 0.0;
};

struct Trajectory {
  Params params;
  std::shared_ptr<const WeightedGrid> grid;
  BcKind bc = BcKind::zero_flux;
  std::vector<Snapshot> snapshots;
  std::optional<double> extinction_time;
  std::vector<StepDiagnostics> diagnostics;
  // For MDP continuation runs: the lifted trajectories, largest delta first.
  std::vector<Trajectory> delta_family;
  std::vector<double> deltas;

  Trajectory(const Params& p, std::shared_ptr<const WeightedGrid> g)
      : params(p), grid(std::move(g)) {}

  const Snapshot& at_time(double t, double rel_tol = 1e-9) const;
  const Snapshot& nearest(double t) const;
  double sup(const Snapshot& s) const;
};

// One implicit Euler step by damped Newton on the tridiagonal system
//   w_i (u_i - u_i^old)/dt = tau_{i+1/2}(phi_{i+1}-phi_i) - tau_{i-1/2}(phi_i-phi_{i-1}),
// phi(u) = u^m, with Dirichlet faces taking boundary values at the new time.
// After convergence the state is reconstituted from the implicit fluxes so
// that zero-flux runs conserve the discrete mu_gamma mass to roundoff.
Snapshot step_implicit(const ProblemSpec& spec, const Snapshot& from, double dt);

// Adaptive-dt run: halve on Newton failure, grow by <= `growth` on success,
// land exactly on record times.  MDP runs go through delta-continuation.
Trajectory run(const ProblemSpec& spec);

// First time with sup u <= tol, refined by re-running with denser recording
// between the bracketing snapshots.  Empty when t_end is reached while still
// above tol.  Default tol: 1e-8 x initial sup.
std::optional<double> detect_extinction(const ProblemSpec& spec,
                                        const Trajectory& traj, double tol = -1.0);

} // namespace wfde

#endif
