#ifndef WFDE_GEOMETRY_HPP
#define WFDE_GEOMETRY_HPP

#include <functional>
#include <optional>

#include "wfde/params.hpp"
#include "wfde/quadrature.hpp"

namespace wfde {

// Rotational symmetry makes only the center magnitude |x0| relevant.
struct Ball {
  double center_norm = 0.0;
  double radius = 0.0;
};

enum class Scenario { S1, S2, S3, Out };

// S1: centered at the origin.  S2: small ball far from the origin with
// |x0|/32 <= R <= |x0|/16.  S3: large ball engulfing the origin with
// (5/2)|x0| <= R <= 4|x0|.
Scenario classify_scenario(const Ball& ball);

enum class CylinderKind { full, forward, backward };

// Space-time box sized by the scale function rho at its ball:
//   full:     (t_end - rho, t_end]          x  B_{2R}(x0)
//   forward:  (t_end - rho/4, t_end]        x  B_{R/2}(x0)
//   backward: (t_end - 7rho/8, t_end-5rho/8] x B_{R/2}(x0)
struct Cylinder {
  CylinderKind kind;
  double t_end;
  Ball ball;
  double rho;

  double t_start() const;
  double t_stop() const;
  double spatial_radius() const;
  double time_depth() const { return t_stop() - t_start(); }
};

// Immutable evaluator of weighted measures, the scale function rho^{gamma,beta}
// and its inverse, and the annulus geometry factor h_sigma.  Off-center balls
// reduce to 1D radial integrals through the spherical-cap area fraction.
class GeometryContext {
public:
  explicit GeometryContext(const Params& params, QuadratureOptions quad = {});

  const Params& params() const { return params_; }

  // mu_alpha(B) = integral_B |x|^{-alpha} dx, exact closed form at x0 = 0.
  double mu(double alpha, const Ball& ball) const;
  double mu_gamma(const Ball& ball) const { return mu(params_.gamma(), ball); }
  double mu_beta(const Ball& ball) const { return mu(params_.beta(), ball); }

  // integral_B g(|x|) |x|^{-alpha} dx for a radial profile g.
  double integrate_ball(double alpha, const std::function<double(double)>& g,
                        const Ball& ball) const;

  // rho^{gamma,beta}_{x0}(R) = ( integral_{B_R(x0)} |x|^{(beta-gamma)N/2} dx )^{2/N}
  double rho(const Ball& ball) const;

  // Inverse of R -> rho_{x0}(R) by monotone bisection.
  double rho_inverse(double center_norm, double s) const;

  // Measured doubling constant of mu_gamma over a fixed deterministic family
  // of balls; computed on first use.
  double doubling_gamma() const;

  // Annulus geometry factor of the energy estimates, piecewise by sigma and
  // the position of the origin.
  double h_sigma(double R0, double R1, double center_norm) const;

  // d_{gamma,beta}((t,x),(s,y)) = |x-y| or rho_{(x+y)/2}^{-1}(|t-s|),
  // whichever is larger; points carry signed radial coordinates.
  double quasi_distance(double t1, double x1, double t2, double x2) const;

  // The more standard quasi-distance |x-y| + |t-s|^{1/(2 v sigma)}.
  double standard_quasi_distance(double t1, double x1, double t2, double x2) const;

  Cylinder make_cylinder(CylinderKind kind, double t_end, const Ball& ball) const;

private:
  Params params_;
  QuadratureOptions quad_;
  mutable std::optional<double> doubling_;
};

} // namespace wfde

#endif
