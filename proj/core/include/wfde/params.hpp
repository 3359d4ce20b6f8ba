#ifndef WFDE_PARAMS_HPP
#define WFDE_PARAMS_HPP

#include <cmath>

#include "wfde/errors.hpp"

namespace wfde {

// Admissible parameter quadruple (N, gamma, beta, m) plus the integrability
// order p of the datum.  The diffusion equation is
//
//   u_t = |x|^gamma div( |x|^{-beta} grad u^m ),   0 < m < 1,
//
// and the range
//
//   gamma < N,   gamma - 2 < beta <= (N-2) gamma / N
//
// is enforced strictly on construction (the Hardy endpoint beta = gamma - 2,
// where sigma = 0 and the smoothing fails, is rejected with absolute
// tolerance 1e-12).  m = 1 is accepted only in linear mode, which the
// functional-inequality and linear-exponent paths use; the nonlinear solver
// refuses it.
class Params {
public:
  enum class Mode { nonlinear, linear };

  Params(int N, double gamma, double beta, double m, double p);

  static Params linear(int N, double gamma, double beta, double p = 1.0);

  int dimension() const { return N_; }
  double gamma() const { return gamma_; }
  double beta() const { return beta_; }
  double m() const { return m_; }
  double p() const { return p_; }
  Mode mode() const { return mode_; }
  bool is_linear() const { return mode_ == Mode::linear; }

  double sigma() const { return 2.0 + beta_ - gamma_; }
  double m_critical() const { return (N_ - (2.0 + beta_)) / (N_ - gamma_); }
  double p_critical() const { return (1.0 - m_) * (N_ - gamma_) / sigma(); }
  bool very_fast_range() const { return m_ <= m_critical(); }

  Params with_p(double p) const { return Params(N_, gamma_, beta_, m_, p); }
  Params with_m(double m) const { return Params(N_, gamma_, beta_, m, p_); }

private:
  Params(int N, double gamma, double beta, double m, double p, Mode mode);

  int N_;
  double gamma_;
  double beta_;
  double m_;
  double p_;
  Mode mode_;
};

// Derived exponents, all by closed formula.
struct ExponentSet {
  double sigma;    // 2 + beta - gamma
  double m_c;      // (N - (2+beta)) / (N - gamma)
  double p_c;      // (1-m)(N-gamma)/sigma
  double theta_p;  // 1 / (sigma p - (N-gamma)(1-m)) = 1/(sigma (p - p_c))
  double r_star;   // 2(N-gamma)/(N-(2+beta))
  double q;        // r*/(r*-2) = (N-gamma)/sigma
};

ExponentSet exponents(const Params& params);

// Exponents of the finite lower iteration.  s_eps = (r*/2)^{k_eps} eps with
// k_eps the smallest positive integer pushing the product above 1-m.
struct IterationExponents {
  double epsilon;
  int k_eps;
  double s_eps;    // > 1-m
  double eta_eps;  // < 0
  double zeta_eps; // < 0
  double nu0;      // reverse-Hoelder threshold
};

// nu0 = nu0_coefficient * tau_star^{sigma p theta_p} m (1-m) / sqrt(Hp_tilde).
// The coefficient (1/kappa_15') is a measured constant owned by the estimate
// layer; callers without a ledger get coefficient 1.
IterationExponents iteration_exponents(const Params& params, double epsilon,
                                       double tau_star, double Hp_tilde,
                                       double nu0_coefficient = 1.0);

// The iteration threshold alone, without fixing epsilon.
double nu0_threshold(const Params& params, double tau_star, double Hp_tilde,
                     double nu0_coefficient = 1.0);

// Default epsilon choice eps0 = (2/r*)^{k0} (1-m) with k0 the smallest
// integer making eps0 < nu0.
double auto_epsilon(const Params& params, double nu0);

// Hoelder exponent of the linear theory:
//   alpha = log_A( H / (H-1) ),  H = kappa_ell^{1/lambda0 + lambda1},
// with kappa_ell >= 2 and A > 4.
double linear_holder_exponent(double kappa_ell, double lambda0, double lambda1,
                              double A);

} // namespace wfde

#endif
