#pragma once

// Checks that the Gaussian pair well -g delta_sigma(r) is a faithful stand-in
// for a contact interaction: a single bound state, bound less deeply than the
// well itself.

#include <cstddef>

namespace gfk::regularization {

// WKB quantum number of the last bound state of -V0 exp(-alpha x^2 / 2) at E = 0:
// (2 / sqrt(pi)) sqrt(V0 / alpha) + 1/2.
double wkb_bound_count(double v0, double alpha);

struct BoundState {
  bool bound = false;  // false when no negative eigenvalue exists on the grid
  double energy = 0.0;
  double mean_r_sq = 0.0;
  std::size_t grid_points = 0;
  double spacing = 0.0;
};

// Lowest eigenpair of the relative-coordinate Hamiltonian -d^2/dr^2 - g delta_sigma(r)
// (reduced mass 1/2) by finite differences on [-extent, extent], Dirichlet walls.
BoundState gaussian_well_ground_state(double g_eff, double sigma, double spacing, double extent);

// Refines the grid until halving the spacing moves the energy by at most
// `relative_tolerance`; throws GridNotConverged otherwise.
BoundState converged_ground_state(double g_eff, double sigma, double relative_tolerance = 1e-3);

struct Report {
  double g_eff = 0.0;
  double sigma = 0.0;
  double v0 = 0.0;     // g / (sqrt(2 pi) sigma)
  double alpha = 0.0;  // 1 / sigma^2
  double count = 0.0;
  BoundState bound_state;
  bool single_bound_state = false;  // count < 1.5
  bool shallower_than_well = false;
  bool ok = false;
};

Report check_regularization(double g_eff, double sigma);

}  // namespace gfk::regularization
