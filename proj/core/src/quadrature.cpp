#include "wfde/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "wfde/errors.hpp"

namespace wfde {

namespace {

// Kronrod-15 abscissae and weights, with the embedded Gauss-7 rule.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};

constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct GkResult {
  double kronrod;
  double error;
};

GkResult gk15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double fsum = f(center - dx) + f(center + dx);
    resk += kWgk[j] * fsum;
    if (j % 2 == 1) resg += kWg[j / 2] * fsum;
  }
  GkResult r;
  r.kronrod = resk * half;
  r.error = std::abs((resk - resg) * half);
  return r;
}

double adapt(const std::function<double(double)>& f, double a, double b,
             double tol_abs, int depth, const QuadratureOptions& opt) {
  const GkResult r = gk15(f, a, b);
  // Roundoff floor: once the local error sits at machine level relative to the
  // local value, further bisection cannot improve it.
  const double floor_tol = 1e-14 * std::abs(r.kronrod) + 1e-300;
  if (r.error <= tol_abs || r.error <= opt.abs_tol || r.error <= floor_tol)
    return r.kronrod;
  if (depth >= opt.max_depth)
    throw QuadratureNonConvergence("adaptive quadrature: depth exhausted, error " +
                                   std::to_string(r.error));
  const double mid = 0.5 * (a + b);
  return adapt(f, a, mid, 0.5 * tol_abs, depth + 1, opt) +
         adapt(f, mid, b, 0.5 * tol_abs, depth + 1, opt);
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opt) {
  if (a == b) return 0.0;
  const GkResult first = gk15(f, a, b);
  const double scale = std::max(std::abs(first.kronrod), 1e-300);
  const double tol = std::max(opt.abs_tol, opt.rel_tol * scale);
  if (first.error <= tol) return first.kronrod;
  const double mid = 0.5 * (a + b);
  return adapt(f, a, mid, 0.5 * tol, 1, opt) + adapt(f, mid, b, 0.5 * tol, 1, opt);
}

double integrate_power_weighted(const std::function<double(double)>& g,
                                double exponent, double a, double b,
                                const QuadratureOptions& opt) {
  if (!(exponent > -1.0))
    throw DomainError("integrate_power_weighted: exponent must exceed -1");
  if (b <= a) return 0.0;
  if (a > 0.0) {
    return integrate([&](double s) { return std::pow(s, exponent) * g(s); }, a, b, opt);
  }
  // t = s^{e+1}:  ds s^e = dt / (e+1).
  const double e1 = exponent + 1.0;
  const double upper = std::pow(b, e1);
  auto h = [&](double t) { return g(std::pow(t, 1.0 / e1)); };
  return integrate(h, 0.0, upper, opt) / e1;
}

double integrate_to_infinity(const std::function<double(double)>& f,
                             const QuadratureOptions& opt) {
  auto mapped = [&](double s) {
    const double r = s / (1.0 - s);
    const double jac = 1.0 / ((1.0 - s) * (1.0 - s));
    return f(r) * jac;
  };
  return integrate(mapped, 0.0, 1.0 - 1e-14, opt);
}

double sphere_area(int N) {
  // |S^{N-1}| = 2 pi^{N/2} / Gamma(N/2)
  return 2.0 * std::pow(std::numbers::pi, 0.5 * N) / std::tgamma(0.5 * N);
}

double cap_fraction(int N, double cos_theta) {
  if (cos_theta <= -1.0) return 1.0;
  if (cos_theta >= 1.0) return 0.0;
  if (N == 3) return 0.5 * (1.0 - cos_theta);
  const double theta = std::acos(cos_theta);
  auto integrand = [N](double phi) { return std::pow(std::sin(phi), N - 2); };
  const double numer = integrate(integrand, 0.0, theta);
  const double denom = std::sqrt(std::numbers::pi) *
                       std::tgamma(0.5 * (N - 1)) / std::tgamma(0.5 * N);
  return numer / denom;
}

} // namespace wfde
