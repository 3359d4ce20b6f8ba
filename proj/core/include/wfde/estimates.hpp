#ifndef WFDE_ESTIMATES_HPP
#define WFDE_ESTIMATES_HPP

#include <functional>
#include <optional>
#include <vector>

#include "wfde/check_report.hpp"
#include "wfde/functional.hpp"
#include "wfde/geometry.hpp"
#include "wfde/ledger.hpp"
#include "wfde/solver.hpp"

namespace wfde {

// Datum shape functionals.  H_p is scaling invariant; H_1 does not depend on
// the datum at all.
struct HpQuantities {
  double H_p = 0.0;
  double H_p_tilde = 1.0;
  double p = 1.0;
  Ball ball;
};

HpQuantities compute_Hp(const GeometryContext& geom, const WeightedGrid& grid,
                        const std::vector<double>& datum, const Ball& ball,
                        double p);

HpQuantities compute_Hp_profile(const GeometryContext& geom,
                                const std::function<double(double)>& datum,
                                const Ball& ball, double p);

// t* = kappa_star R^sigma ( ||datum||_{L1_gamma(B_R)} / mu_gamma(B_R) )^{1-m},
// kappa_star = 2^m / (5 kappa10'); zero datum gives 0.
double minimal_life_time(const GeometryContext& geom, const ConstantLedger& ledger,
                         const WeightedGrid& grid, const std::vector<double>& datum,
                         const Ball& ball);

// Builds a trajectory by sampling an exact solution on a grid (cell-center
// values) at the given times.
Trajectory sample_trajectory(const ExactSolution& sol,
                             std::shared_ptr<const WeightedGrid> grid,
                             const std::vector<double>& times);

// --- upper bounds -----------------------------------------------------------

// sup_{B_R} u(t) <= k1 t^{-(N-gamma)theta_p} ||u0||_{p,gamma,B_2R}^{p sigma theta_p}
//                   + k2 [ (mu_beta/mu_gamma)(B_R) t/R^2 ]^{1/(1-m)}.
// The measured constant is the smallest s with LHS <= s (term1 + term2): the
// smallest passing (k1,k2) pair along the diagonal ray.
CheckReport check_smoothing(const GeometryContext& geom, const ConstantLedger& ledger,
                            const Trajectory& traj, const Ball& ball, double p,
                            double t);

CheckReport check_herrero_pierre(const GeometryContext& geom,
                                 const ConstantLedger& ledger, const Trajectory& traj,
                                 const Ball& ball, double t, double tau);

CheckReport check_lp_stability(const GeometryContext& geom,
                               const ConstantLedger& ledger, const Trajectory& traj,
                               double R1, double R0, double p, double t, double tau);

struct SpaceTimeBox {
  double R1 = 0.0; // inner radius
  double R0 = 0.0; // outer radius
  double T0 = 0.0;
  double T1 = 0.0; // inner time
  double T2 = 0.0; // end
};

CheckReport check_energy_upper(const GeometryContext& geom,
                               const ConstantLedger& ledger, const Trajectory& traj,
                               const SpaceTimeBox& box, double p);
CheckReport check_energy_lower(const GeometryContext& geom,
                               const ConstantLedger& ledger, const Trajectory& traj,
                               const SpaceTimeBox& box, double p);
CheckReport check_caccioppoli(const GeometryContext& geom,
                              const ConstantLedger& ledger, const Trajectory& traj,
                              const SpaceTimeBox& box);

// --- lower bounds / Harnack / continuity ------------------------------------

// Lower-bound checks report lhs = installed constant and rhs = the observed
// minimum of inf / structural factor; pass means the installed constant is
// admissible and the infimum stays strictly positive on (0, t* ^ T].
CheckReport check_lower_bound(const GeometryContext& geom,
                              const ConstantLedger& ledger, const Trajectory& traj,
                              const Ball& ball);

CheckReport check_extinction_bounds(const GeometryContext& geom,
                                    const ConstantLedger& ledger,
                                    const Trajectory& traj, const Ball& ball,
                                    double q, double detected_T);

// sup_{B_R} u(t) / inf_{B_R} u(t + theta); theta < 0 backward, 0 elliptic,
// > 0 forward.  Throws ZeroInfimum when the infimum vanishes.
CheckReport harnack_quotient(const GeometryContext& geom, const ConstantLedger& ledger,
                             const Trajectory& traj, const Ball& ball, double t,
                             double theta);

struct HolderFit {
  double exponent = 0.0;
  bool constrained = false; // false: oscillation vanished, exponent unconstrained
  int bins_used = 0;
};

// Least-squares slope of log(max oscillation) against log(quasi-distance)
// over binned point pairs sampled in the cylinder, using the (2 v sigma)
// branch quasi-distance.
HolderFit holder_exponent(const GeometryContext& geom,
                          const std::function<double(double, double)>& u,
                          const Cylinder& cyl, int n_points = 500,
                          unsigned seed = 12345);

HolderFit holder_exponent(const GeometryContext& geom, const Trajectory& traj,
                          const Cylinder& cyl, int n_points = 500,
                          unsigned seed = 12345);

// BMO_gamma norm of log u(t) against the structural bound
//   kappa14 [ 1 + (R^sigma/t)(|x0|/R v 1)^{beta-gamma} M_p(t)^{1-m} ]^{1/2},
// then a reverse-Hoelder run inside the admissible window.  Returns the two
// reports, structural bound first.
std::vector<CheckReport> check_bmo_window(const GeometryContext& geom,
                                          const ConstantLedger& ledger,
                                          const Trajectory& traj, const Ball& ball,
                                          double t, double tau_star = 0.2);

// --- ledger construction -----------------------------------------------------

struct LedgerBuildOptions {
  int grid_cells = 160;
  double run_t_end_factor = 1.2; // in units of t*
  bool verbose = false;
};

// Measures every ledger constant from the versioned probe family, the
// geometry sampling plan, and a fixed set of reference runs.  Deterministic:
// identical options produce identical ledgers.
ConstantLedger build_reference_ledger(const Params& params,
                                      const LedgerBuildOptions& opt = {});

// Geometry-only subset (kappa16..kappa19, doubling, cylinder inclusion factor,
// quasi-metric comparability), recorded into an existing ledger.
void measure_geometry_constants(const GeometryContext& geom, ConstantLedger& ledger);

// Functional-inequality subset over the probe family.
void measure_functional_constants(const GeometryContext& geom,
                                  const ProbeFamily& fam, ConstantLedger& ledger,
                                  const std::vector<double>& kappa13_orders);

// Generic smallest-passing-constant search by bisection on the multiplier,
// 1e-4 relative tolerance.
double smallest_passing(const std::function<bool(double)>& passes, double hint);

} // namespace wfde

#endif
