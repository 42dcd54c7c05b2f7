#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nsconv/force.hpp"
#include "nsconv/grid.hpp"

namespace nsconv {

struct OracleReport {
  std::string name;
  std::string params;
  double rel_error_l2 = 0.0;
  double rel_error_max = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

std::ostream& operator<<(std::ostream& os, const OracleReport& r);

/// Pure diffusion of a Gaussian e^(-mu^2 r^2) via the spectral integrating
/// factor, against the closed-form spreading solution
///   exp(-mu^2 r^2 / (4 mu^2 nu t + 1)) / (4 mu^2 nu t + 1).
OracleReport heat_oracle(const GridSpec& grid, const TimeGrid& tg, double nu,
                         double mu = 2.0);

/// Order of the trapezoidal Duhamel quadrature, measured on a driven problem
/// with per-mode closed-form solution: the force (0, G(x) cos(wt)) with G a
/// Gaussian profile is divergence-free and its time modulation keeps the
/// quadrature error nonvanishing.  Returns the least-squares slope of
/// log(error) vs log(dt) over the given step counts.
double heat_order_slope(const GridSpec& grid, double t_final, double nu, double mu,
                        const std::vector<int>& step_counts,
                        std::vector<double>* errors = nullptr);

/// stokes_solve against the exact single-mode response
///   u(t) = A (1 - e^(-nu |k|^2 t)) / (nu |k|^2) cos(k.x) e_perp
/// for a constant-in-time force at grid mode (mx, my).
OracleReport single_mode_oracle(int mx, int my, double nu, const TimeGrid& tg,
                                const GridSpec& grid = GridSpec(8.0, 32));

/// First iterate recomputed with second-order centered finite differences,
/// explicit Euler diffusion and a pressure-Poisson projection; compares the
/// space-time max of |u1| against the spectral solver on a reference grid.
/// The time grid must satisfy dt <= dx^2/(4 nu).
OracleReport fd_oracle(const ForceParams& p, const GridSpec& coarse,
                       const TimeGrid& tg, int reference_resolution = 256);

/// Discrepancy of fd_oracle at several resolutions (each run at a quarter of
/// its stability bound) and the least-squares slope vs dx; expected ~2.
struct FdStudy {
  std::vector<int> resolutions;
  std::vector<double> discrepancies;
  double slope = 0.0;
};

FdStudy fd_refinement_study(const ForceParams& p, double half_width,
                            const std::vector<int>& resolutions, double t_final,
                            int reference_resolution = 256);

/// Runs every oracle at its reference parameters, streaming reports; true iff
/// all pass.
bool run_all_oracles(std::ostream& os);

}  // namespace nsconv
