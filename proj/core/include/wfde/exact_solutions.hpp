#ifndef WFDE_EXACT_SOLUTIONS_HPP
#define WFDE_EXACT_SOLUTIONS_HPP

#include <memory>

#include "wfde/params.hpp"

namespace wfde {

// A closed-form radial solution u(t, r) of the weighted equation, usable as
// boundary trace and as an oracle.
class ExactSolution {
public:
  virtual ~ExactSolution() = default;
  virtual double value(double t, double r) const = 0;
  virtual const Params& params() const = 0;
};

// U(t,x) = c (T-t)^{1/(1-m)} |x|^{-sigma/(1-m)}, the counterexample to the
// L^p -> L^infty smoothing below the critical integrability exponent.  Only
// defined in the regime where the amplitude equation
//   c^{1-m} = m sigma (N-2-beta - m sigma/(1-m))
// has a positive right-hand side.  Evaluation at r = 0 is rejected; values
// for t >= T are identically zero.
class SeparableSolution final : public ExactSolution {
public:
  SeparableSolution(const Params& params, double extinction_time);

  double value(double t, double r) const override;
  const Params& params() const override { return params_; }

  double extinction_time() const { return T_; }
  double amplitude() const { return c_; }
  double radial_exponent() const { return decay_; } // sigma/(1-m)

private:
  Params params_;
  double T_;
  double c_;
  double decay_;
};

// Self-similar profile B(t,x) = t^a F(|x| t^{-b}) with
//   F(r) = A (D + r^sigma)^{1/(m-1)},  b = 1/(sigma - (N-gamma)(1-m)),
//   a = -(N-gamma) b,  A = (m sigma / ((1-m) b))^{1/(1-m)},
// defined in the good fast diffusion range m > m_c, where b > 0.  The
// mu_gamma mass is conserved in time.
class BarenblattSolution final : public ExactSolution {
public:
  BarenblattSolution(const Params& params, double D);

  double value(double t, double r) const override;
  const Params& params() const override { return params_; }

  double profile(double xi) const; // F
  double a() const { return a_; }
  double b() const { return b_; }
  double A() const { return A_; }
  double D() const { return D_; }

  // Conserved mu_gamma mass, by quadrature of the profile.
  double mass() const;

private:
  Params params_;
  double D_;
  double a_;
  double b_;
  double A_;
};

// Root-finds D so that the conserved mass matches a target.  Plumbing on top
// of the D-parameterized constructor.
BarenblattSolution barenblatt_with_mass(const Params& params, double mass);

// Finite-difference residual of u_t - |x|^gamma div(|x|^{-beta} grad u^m) at
// (t, r), Richardson-extrapolated from central differences at h and h/2
// (leading error O(h^4)).  The oracle for "this closed form solves the PDE".
double pde_residual(const ExactSolution& sol, double t, double r, double h);

// Observed convergence order of the plain central-difference residual between
// steps h and h/2 (expected ~2 for an exact solution, since the residual is
// pure discretization error).
double pde_residual_order(const ExactSolution& sol, double t, double r, double h);

} // namespace wfde

#endif
