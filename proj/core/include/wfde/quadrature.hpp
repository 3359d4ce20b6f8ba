#ifndef WFDE_QUADRATURE_HPP
#define WFDE_QUADRATURE_HPP

#include <functional>

namespace wfde {

struct QuadratureOptions {
  double rel_tol = 1e-11;
  double abs_tol = 1e-300;
  int max_depth = 52;
};

// Adaptive Gauss-Kronrod (G7,K15) with recursive bisection.  Throws
// QuadratureNonConvergence when the depth budget is exhausted with the local
// error estimate still above tolerance.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opt = {});

// integral_a^b s^e g(s) ds with e > -1.  When a == 0 the integrable endpoint
// singularity is removed by the substitution t = s^{e+1}, which is exact for
// constant g.
double integrate_power_weighted(const std::function<double(double)>& g,
                                double exponent, double a, double b,
                                const QuadratureOptions& opt = {});

// integral_0^infty f via the compactifying map r = s/(1-s).
double integrate_to_infinity(const std::function<double(double)>& f,
                             const QuadratureOptions& opt = {});

// Surface area of the unit sphere S^{N-1}.
double sphere_area(int N);

// Fraction of S^{N-1} within angle acos(cos_theta) of a fixed pole.
double cap_fraction(int N, double cos_theta);

} // namespace wfde

#endif
