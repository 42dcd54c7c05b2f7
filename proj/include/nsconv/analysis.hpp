#pragma once

#include <optional>
#include <utility>
#include <vector>

namespace nsconv {

/// Border of the convergence region: mu such that F/(mu^4 nu) = 1.
double border_mu(double amplitude, double viscosity);

/// Strict criterion F/(mu^4 nu) < 1; points on the border are excluded.
bool convergence_predicate(double amplitude, double width, double viscosity);

struct BorderPoint {
  double amplitude = 0.0;
  double viscosity = 0.0;
  double mu_border = 0.0;
};

BorderPoint make_border_point(double amplitude, double viscosity);

/// The sweep protocol's parameter families: amplitudes F = 10^k/n for modes
/// n = 1..5, k = 0..3, and the six reference viscosities.
struct SampleSet {
  std::vector<std::pair<int, double>> amplitudes;  // (n, F), n-major then k
  std::vector<double> viscosities;
};

SampleSet reference_sample_set();

/// Width placed on (margin = 1) or inside (margin > 1) the nu = 0.01 border.
double dot_set_mu(double amplitude, double margin);

/// One row of the sweep output.
struct SweepRecord {
  int mode = 0;          // n
  double exponent = 0.0; // k with F = 10^k/n (fractional for ad-hoc points)
  double amplitude = 0.0;
  double width = 0.0;
  double viscosity = 0.0;
  double mu_border = 0.0;
  bool predicted_convergent = false;
  double max_u1 = 0.0;
  double max_u2star = 0.0;
  std::optional<double> ratio;
  bool degenerate = false;
};

}  // namespace nsconv
