#include "wfde/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wfde/errors.hpp"
#include "wfde/quadrature.hpp"

namespace wfde {

namespace {

// integral_a^b s^{N-1-alpha} ds, exact.
double power_mass(double a, double b, double N, double alpha) {
  const double e = N - alpha;
  return (std::pow(b, e) - std::pow(a, e)) / e;
}

} // namespace

WeightedGrid::WeightedGrid(const Params& params, std::vector<double> edges)
    : params_(params), edges_(std::move(edges)) {
  const int n = static_cast<int>(edges_.size()) - 1;
  if (n < 4) throw GradingError("grid: at least 4 cells required");
  if (edges_.front() < 0.0) throw GradingError("grid: r_min must be >= 0");
  for (int i = 0; i < n; ++i)
    if (!(edges_[i + 1] > edges_[i]))
      throw GradingError("grid: edges must be strictly increasing");

  const double N = params_.dimension();
  const double gamma = params_.gamma();
  const double beta = params_.beta();
  const double SN = sphere_area(params_.dimension());

  centers_.resize(n);
  gamma_mass_.resize(n);
  beta_mass_.resize(n);
  for (int i = 0; i < n; ++i) {
    centers_[i] = 0.5 * (edges_[i] + edges_[i + 1]);
    gamma_mass_[i] = SN * power_mass(edges_[i], edges_[i + 1], N, gamma);
    beta_mass_[i] = SN * power_mass(edges_[i], edges_[i + 1], N, beta);
  }

  trans_.resize(n + 1);
  for (int k = 0; k <= n; ++k) {
    const double r = edges_[k];
    double dist;
    if (k == 0) dist = centers_[0] - edges_[0];
    else if (k == n) dist = edges_[n] - centers_[n - 1];
    else dist = centers_[k] - centers_[k - 1];
    trans_[k] = (r == 0.0) ? 0.0 : SN * std::pow(r, N - 1.0 - beta) / dist;
  }
}

double WeightedGrid::gamma_mass_in_ball(int i, double R) const {
  const double a = edges_[i];
  const double b = edges_[i + 1];
  if (R <= a) return 0.0;
  if (R >= b) return gamma_mass_[i];
  return sphere_area(params_.dimension()) *
         power_mass(a, R, params_.dimension(), params_.gamma());
}

double WeightedGrid::total_gamma_mass(const std::vector<double>& values) const {
  double s = 0.0;
  for (int i = 0; i < cells(); ++i) s += values[i] * gamma_mass_[i];
  return s;
}

double WeightedGrid::lp_norm_gamma(const std::vector<double>& values, double p,
                                   double R) const {
  double s = 0.0;
  for (int i = 0; i < cells(); ++i) {
    const double mass = gamma_mass_in_ball(i, R);
    if (mass > 0.0) s += std::pow(values[i], p) * mass;
  }
  return std::pow(s, 1.0 / p);
}

double WeightedGrid::sup_in_ball(const std::vector<double>& values, double R) const {
  double v = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < cells(); ++i)
    if (centers_[i] <= R) v = std::max(v, values[i]);
  return v;
}

double WeightedGrid::inf_in_ball(const std::vector<double>& values, double R) const {
  double v = std::numeric_limits<double>::infinity();
  for (int i = 0; i < cells(); ++i)
    if (centers_[i] <= R) v = std::min(v, values[i]);
  return v;
}

int WeightedGrid::cells_in_ball(double R) const {
  int n = 0;
  for (int i = 0; i < cells(); ++i)
    if (centers_[i] <= R) ++n;
  return n;
}

double WeightedGrid::interpolate(const std::vector<double>& values, double r) const {
  if (r <= centers_.front()) return values.front();
  if (r >= centers_.back()) return values.back();
  const auto it = std::upper_bound(centers_.begin(), centers_.end(), r);
  const int j = static_cast<int>(it - centers_.begin());
  const double t = (r - centers_[j - 1]) / (centers_[j] - centers_[j - 1]);
  return (1.0 - t) * values[j - 1] + t * values[j];
}

std::shared_ptr<const WeightedGrid> build_grid(const Params& params, double r_min,
                                               double r_max, int n_cells,
                                               Grading grading, double ratio) {
  if (!(r_min >= 0.0 && r_max > r_min)) throw GradingError("build_grid: need 0 <= r_min < r_max");
  if (n_cells < 4) throw GradingError("build_grid: n_cells >= 4 required");
  std::vector<double> edges(n_cells + 1);
  if (grading == Grading::uniform || ratio == 1.0) {
    const double h = (r_max - r_min) / n_cells;
    for (int i = 0; i <= n_cells; ++i) edges[i] = r_min + i * h;
  } else {
    if (!(ratio > 0.0)) throw GradingError("build_grid: geometric ratio must be positive");
    const double w0 = (r_max - r_min) * (ratio - 1.0) / (std::pow(ratio, n_cells) - 1.0);
    edges[0] = r_min;
    double w = w0;
    for (int i = 1; i <= n_cells; ++i) {
      edges[i] = edges[i - 1] + w;
      w *= ratio;
    }
  }
  edges[n_cells] = r_max; // exact endpoint
  return std::make_shared<const WeightedGrid>(params, std::move(edges));
}

} // namespace wfde
