#ifndef WFDE_FUNCTIONAL_HPP
#define WFDE_FUNCTIONAL_HPP

#include <functional>
#include <vector>

#include "wfde/check_report.hpp"
#include "wfde/geometry.hpp"
#include "wfde/probes.hpp"

namespace wfde {

// ||f||_{L^{r*}_gamma(R^N)} / ||grad f||_{L^2_beta(R^N)} by radial quadrature.
double ckn_ratio(const GeometryContext& geom, const TestFunction& f);

// ||f||_{r*,gamma,B} <= S ( ||grad f||_{2,beta,B} + mu_gamma(B)^{-sigma/(2(N-gamma))} ||f||_{2,gamma,B} )
CheckReport ckn_on_ball(const GeometryContext& geom, const TestFunction& f,
                        const Ball& ball, double S_installed);

// mu_gamma-mean-zero oscillation bound with factor P * R * (mu_beta-normalized
// gradient).
CheckReport poincare_on_ball(const GeometryContext& geom, const TestFunction& f,
                             const Ball& ball, double P_installed);

// Space-time iterative CKN with exponent a in [1, r*/2]:
//   int int f^{2a} dmu_gamma dt
//     <= 2 S^2 [ int int f^2 + mu_gamma(B)^{sigma/(N-gamma)} int int |grad f|^2 dmu_beta ]
//        sup_t ( mu_gamma(B)^{-1} int f^{2(a-1)q} )^{1/q}
CheckReport iterative_ckn(const GeometryContext& geom,
                          const std::function<double(double, double)>& f,
                          const std::function<double(double, double)>& df,
                          const Ball& ball, double T0, double T1, double a,
                          double S_installed);

struct BMOReport {
  struct Entry {
    double center_norm;
    double radius;
    double oscillation;
  };
  std::vector<Entry> entries;
  double bmo_norm = 0.0;
  int depth = 0;
};

// sup over a dyadic family of sub-balls (depth levels, centers on the radial
// lattice) of the mu_gamma-normalized mean oscillation.
BMOReport bmo_gamma(const GeometryContext& geom,
                    const std::function<double(double)>& field, const Ball& ball,
                    int depth = 5);

// ||u||_{L^s_gamma(B)} <= kappa7^{2/s} mu_gamma(B)^{2/s} ||u||_{L^{-s}_gamma(B)}
// for 0 < s < 1/(kappa6 ||log u||_BMO); ThresholdExceeded above the window.
CheckReport reverse_holder(const GeometryContext& geom,
                           const std::function<double(double)>& field,
                           const Ball& ball, double s, double kappa6,
                           double kappa7, int bmo_depth = 5);

// Cut-off phi = psi(|x-x0|^sigma/R^sigma)^b of the test-function lemma;
// returns the measured sup of
//   [ phi^{-m/(1-m)} |L_{gamma,beta} phi|^{1/(1-m)} ]^{1-m} * rho_{x0}(R),
// the constant in the mass-displacement normalization.  Requires
// b >= 2/(1-m).
double kappa10_test_function(const GeometryContext& geom, const Ball& ball,
                             double b = -1.0);

// Measurement sweeps over the versioned probe family (largest observed
// ratio, i.e. the smallest constant making every probe pass).
double measure_ckn_global_constant(const GeometryContext& geom,
                                   const ProbeFamily& fam);
double measure_ckn_ball_constant(const GeometryContext& geom,
                                 const ProbeFamily& fam,
                                 const std::vector<Ball>& balls);
double measure_poincare_constant(const GeometryContext& geom,
                                 const ProbeFamily& fam,
                                 const std::vector<Ball>& balls);

// Interpolation constant of ||f||_{L^s_gamma} <= k13 mu_gamma(B)^{(sigma/2(N-gamma))(1-pc/q)} ||grad f||_{2,beta}
// with s = 2q/(q+m-1), measured over compactly supported probes.
double measure_sobolev_interpolation_constant(const GeometryContext& geom,
                                              const ProbeFamily& fam,
                                              const std::vector<Ball>& balls,
                                              double q);

// John-Nirenberg: with kappa5 := e fixed, the smallest kappa6 such that the
// exponential mean stays below kappa5 for all s <= 1/(kappa6 ||f||_BMO).
double measure_john_nirenberg_kappa6(const GeometryContext& geom,
                                     const ProbeFamily& fam, const Ball& ball);

double measure_reverse_holder_kappa7(const GeometryContext& geom,
                                     const ProbeFamily& fam, const Ball& ball,
                                     double kappa6);

} // namespace wfde

#endif
