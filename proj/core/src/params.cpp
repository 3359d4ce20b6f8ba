#include "wfde/params.hpp"

#include <sstream>

namespace wfde {

namespace {

constexpr double kStrictTol = 1e-12;

[[noreturn]] void reject(const std::string& inequality, double lhs, double rhs) {
  std::ostringstream os;
  os << "parameter range violation: " << inequality << " fails (" << lhs
     << " vs " << rhs << ")";
  throw RangeViolation(os.str());
}

} // namespace

Params::Params(int N, double gamma, double beta, double m, double p)
    : Params(N, gamma, beta, m, p, Mode::nonlinear) {}

Params::Params(int N, double gamma, double beta, double m, double p, Mode mode)
    : N_(N), gamma_(gamma), beta_(beta), m_(m), p_(p), mode_(mode) {
  if (N < 3) reject("N >= 3", static_cast<double>(N), 3.0);
  if (!(N - gamma > kStrictTol)) reject("gamma < N", gamma, static_cast<double>(N));
  // Strict lower end: the Hardy endpoint beta = gamma - 2 gives sigma = 0.
  if (!(beta - (gamma - 2.0) > kStrictTol)) reject("gamma - 2 < beta", gamma - 2.0, beta);
  if (!(beta <= (N - 2.0) * gamma / N + kStrictTol))
    reject("beta <= (N-2) gamma / N", beta, (N - 2.0) * gamma / N);
  if (sigma() <= 0.0) reject("sigma > 0", sigma(), 0.0);

  if (mode_ == Mode::nonlinear) {
    if (!(m > 0.0 && m < 1.0)) reject("m in (0,1)", m, 1.0);
  } else {
    if (m != 1.0) reject("linear mode requires m = 1", m, 1.0);
  }
  if (!(p >= 1.0)) reject("p >= 1", p, 1.0);
  if (mode_ == Mode::nonlinear && m <= m_critical() && !(p > p_critical()))
    reject("p > p_c when m <= m_c", p, p_critical());
}

Params Params::linear(int N, double gamma, double beta, double p) {
  return Params(N, gamma, beta, 1.0, p, Mode::linear);
}

ExponentSet exponents(const Params& params) {
  ExponentSet e;
  const double N = params.dimension();
  e.sigma = params.sigma();
  e.m_c = params.m_critical();
  e.p_c = params.p_critical();
  e.r_star = 2.0 * (N - params.gamma()) / (N - (2.0 + params.beta()));
  e.q = (N - params.gamma()) / e.sigma;
  if (params.is_linear()) {
    // p_c = 0 in the linear limit; theta_p degenerates to 1/(sigma p).
    e.theta_p = 1.0 / (e.sigma * params.p());
  } else {
    e.theta_p = 1.0 / (e.sigma * (params.p() - e.p_c));
  }
  return e;
}

double nu0_threshold(const Params& params, double tau_star, double Hp_tilde,
                     double nu0_coefficient) {
  if (!(tau_star > 0.0 && tau_star <= 1.0))
    throw DomainError("nu0_threshold: tau_star must lie in (0,1]");
  if (!(Hp_tilde >= 1.0)) throw DomainError("nu0_threshold: Hp_tilde must be >= 1");
  const ExponentSet e = exponents(params);
  const double m = params.m();
  return nu0_coefficient * std::pow(tau_star, e.sigma * params.p() * e.theta_p) *
         m * (1.0 - m) / std::sqrt(Hp_tilde);
}

double auto_epsilon(const Params& params, double nu0) {
  const ExponentSet e = exponents(params);
  const double one_minus_m = 1.0 - params.m();
  if (!(nu0 > 0.0)) throw DomainError("auto_epsilon: nu0 must be positive");
  double eps = one_minus_m;
  const double shrink = 2.0 / e.r_star;
  int k = 0;
  while (!(eps < nu0)) {
    eps *= shrink;
    if (++k > 4096) throw DomainError("auto_epsilon: no admissible epsilon found");
  }
  if (k == 0) eps *= shrink; // k0 >= 1: eps must sit strictly below 1-m
  return eps;
}

IterationExponents iteration_exponents(const Params& params, double epsilon,
                                       double tau_star, double Hp_tilde,
                                       double nu0_coefficient) {
  const ExponentSet e = exponents(params);
  const double m = params.m();
  const double one_minus_m = 1.0 - m;
  IterationExponents it;
  it.nu0 = nu0_threshold(params, tau_star, Hp_tilde, nu0_coefficient);
  if (std::isnan(epsilon)) epsilon = auto_epsilon(params, it.nu0);
  if (!(epsilon > 0.0 && epsilon < one_minus_m))
    throw DomainError("iteration_exponents: epsilon must lie in (0, 1-m)");
  it.epsilon = epsilon;

  // Smallest positive integer k with (r*/2)^k eps > 1-m.  Equality within
  // 1e-12 relative counts as "not greater": the default epsilon lands exactly
  // on the lattice (2/r*)^k (1-m) and must be pushed one step further.
  const double ratio = e.r_star / 2.0;
  int k = 1;
  double s = epsilon * ratio;
  while (!(s > one_minus_m * (1.0 + 1e-12))) {
    s *= ratio;
    if (++k > 4096) throw DomainError("iteration_exponents: iteration count overflow");
  }
  it.k_eps = k;
  it.s_eps = s;
  it.eta_eps = -(1.0 / (s + m - 1.0)) * ((params.dimension() - params.gamma()) / e.sigma + 1.0);
  const double two_over_rstar = 2.0 / e.r_star;
  it.zeta_eps = -(1.0 / epsilon) * (1.0 - std::pow(two_over_rstar, k)) / (1.0 - two_over_rstar);
  return it;
}

double linear_holder_exponent(double kappa_ell, double lambda0, double lambda1,
                              double A) {
  if (!(kappa_ell >= 2.0)) throw DomainError("linear_holder_exponent: kappa_ell >= 2 required");
  if (!(lambda0 > 0.0 && lambda1 >= lambda0))
    throw DomainError("linear_holder_exponent: need 0 < lambda0 <= lambda1");
  if (!(A > 4.0)) throw DomainError("linear_holder_exponent: A > 4 required");
  const double exponent = 1.0 / lambda0 + lambda1;
  // H = kappa_ell^exponent may overflow; alpha -> 0 from above in that case.
  const double logH = exponent * std::log(kappa_ell);
  double log_ratio; // log(H/(H-1)) = -log1p(-1/H)
  if (logH > 700.0) {
    log_ratio = std::exp(-logH); // 1/H to first order
  } else {
    const double H = std::exp(logH);
    log_ratio = -std::log1p(-1.0 / H);
  }
  return log_ratio / std::log(A);
}

} // namespace wfde
