#include "nsconv/analysis.hpp"

#include <cmath>
#include <stdexcept>

namespace nsconv {

double border_mu(double amplitude, double viscosity) {
  if (!(amplitude > 0.0) || !(viscosity > 0.0))
    throw std::invalid_argument("border_mu: amplitude and viscosity must be positive");
  return std::pow(amplitude / viscosity, 0.25);
}

bool convergence_predicate(double amplitude, double width, double viscosity) {
  if (!(amplitude > 0.0) || !(width > 0.0) || !(viscosity > 0.0))
    throw std::invalid_argument("convergence_predicate: inputs must be positive");
  const double mu2 = width * width;
  return amplitude / (mu2 * mu2 * viscosity) < 1.0;
}

BorderPoint make_border_point(double amplitude, double viscosity) {
  return BorderPoint{amplitude, viscosity, border_mu(amplitude, viscosity)};
}

SampleSet reference_sample_set() {
  SampleSet s;
  for (int n = 1; n <= 5; ++n)
    for (int k = 0; k <= 3; ++k)
      s.amplitudes.emplace_back(n, std::pow(10.0, k) / n);
  s.viscosities = {0.01, 0.1, 0.3, 0.75, 1.0, 1.5};
  return s;
}

double dot_set_mu(double amplitude, double margin) {
  if (!(margin >= 1.0))
    throw std::invalid_argument("dot_set_mu: margin must be >= 1");
  return margin * border_mu(amplitude, 0.01);
}

}  // namespace nsconv
