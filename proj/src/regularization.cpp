#include "gfk/regularization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "gfk/error.hpp"
#include "gfk/model.hpp"

namespace gfk::regularization {

double wkb_bound_count(double v0, double alpha) {
  if (!(v0 > 0.0) || !(alpha > 0.0)) throw RangeError("wkb_bound_count needs v0 > 0 and alpha > 0");
  return 2.0 / std::sqrt(std::numbers::pi) * std::sqrt(v0 / alpha) + 0.5;
}

namespace {

// Number of eigenvalues below `lambda` of the tridiagonal matrix with the
// given diagonal and constant off-diagonal (Sturm sequence / LDL^T inertia).
std::size_t count_below(const std::vector<double>& diag, double off, double lambda) {
  const double off_sq = off * off;
  std::size_t negatives = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    q = diag[i] - lambda - (i == 0 ? 0.0 : off_sq / q);
    if (q == 0.0) q = -std::numeric_limits<double>::epsilon() * (std::abs(diag[i]) + std::abs(off));
    if (q < 0.0) ++negatives;
  }
  return negatives;
}

// Solves (T - shift) x = rhs for the symmetric tridiagonal T (Thomas algorithm).
std::vector<double> solve_shifted(const std::vector<double>& diag, double off, double shift,
                                  const std::vector<double>& rhs) {
  const std::size_t n = diag.size();
  std::vector<double> c(n), d(n), x(n);
  double denom = diag[0] - shift;
  c[0] = off / denom;
  d[0] = rhs[0] / denom;
  for (std::size_t i = 1; i < n; ++i) {
    denom = diag[i] - shift - off * c[i - 1];
    c[i] = off / denom;
    d[i] = (rhs[i] - off * d[i - 1]) / denom;
  }
  x[n - 1] = d[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
  return x;
}

}  // namespace

BoundState gaussian_well_ground_state(double g_eff, double sigma, double spacing, double extent) {
  if (!(g_eff > 0.0) || !(sigma > 0.0) || !(spacing > 0.0) || !(extent > spacing))
    throw RangeError("invalid grid or well parameters");

  const auto half = static_cast<std::size_t>(std::floor(extent / spacing));
  const std::size_t n = 2 * half + 1;
  std::vector<double> r(n), diag(n);
  const double kinetic = 1.0 / (spacing * spacing);
  double v_min = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    r[i] = (static_cast<double>(i) - static_cast<double>(half)) * spacing;
    const double v = -g_eff * gaussian_delta(r[i], sigma);
    v_min = std::min(v_min, v);
    diag[i] = 2.0 * kinetic + v;
  }
  const double off = -kinetic;

  BoundState state;
  state.grid_points = n;
  state.spacing = spacing;
  if (count_below(diag, off, 0.0) == 0) return state;

  double lo = v_min;
  double hi = 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (count_below(diag, off, mid) >= 1) hi = mid; else lo = mid;
  }
  state.bound = true;
  state.energy = 0.5 * (lo + hi);

  // Inverse iteration for the eigenvector, shifted just below the eigenvalue.
  const double shift = state.energy - 1e-9 * std::max(1.0, std::abs(state.energy));
  std::vector<double> v(n, 1.0);
  for (int it = 0; it < 4; ++it) {
    v = solve_shifted(diag, off, shift, v);
    double norm = 0.0;
    for (double vi : v) norm += vi * vi;
    norm = std::sqrt(norm);
    for (double& vi : v) vi /= norm;
  }
  double r2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) r2 += v[i] * v[i] * r[i] * r[i];
  state.mean_r_sq = r2;
  return state;
}

BoundState converged_ground_state(double g_eff, double sigma, double relative_tolerance) {
  // The sharp-delta bound state decays as exp(-g |r| / 2); the walls sit 20
  // decay lengths out (and never closer than 20 sigma).
  const double extent = std::max(20.0 * sigma, 40.0 / g_eff);
  double spacing = sigma / 8.0;
  constexpr int kMaxRefinements = 4;

  BoundState coarse = gaussian_well_ground_state(g_eff, sigma, spacing, extent);
  for (int level = 0; level < kMaxRefinements; ++level) {
    spacing *= 0.5;
    BoundState fine = gaussian_well_ground_state(g_eff, sigma, spacing, extent);
    if (!fine.bound && !coarse.bound) return fine;
    if (fine.bound && coarse.bound &&
        std::abs(fine.energy - coarse.energy) <= relative_tolerance * std::abs(fine.energy))
      return fine;
    coarse = fine;
  }
  std::ostringstream os;
  os << "grid diagonalization for g_eff=" << g_eff << ", sigma=" << sigma
     << " did not converge to " << relative_tolerance << " relative after " << kMaxRefinements
     << " refinements";
  throw GridNotConverged(os.str());
}

Report check_regularization(double g_eff, double sigma) {
  if (!(g_eff > 0.0) || !(sigma > 0.0)) throw RangeError("check_regularization needs g_eff > 0 and sigma > 0");
  Report report;
  report.g_eff = g_eff;
  report.sigma = sigma;
  report.v0 = g_eff / (std::sqrt(2.0 * std::numbers::pi) * sigma);
  report.alpha = 1.0 / (sigma * sigma);
  report.count = wkb_bound_count(report.v0, report.alpha);
  report.bound_state = converged_ground_state(g_eff, sigma);
  report.single_bound_state = report.count < 1.5;
  report.shallower_than_well =
      report.bound_state.bound && std::abs(report.bound_state.energy) < report.v0;
  report.ok = report.single_bound_state && report.shallower_than_well;
  return report;
}

}  // namespace gfk::regularization
