#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nsconv/analysis.hpp"
#include "nsconv/oracles.hpp"
#include "nsconv/picard.hpp"
#include "nsconv/spectral.hpp"
#include "nsconv/version.hpp"

namespace py = pybind11;
using namespace nsconv;

namespace {

py::array_t<double> to_array(const ScalarField& f) {
  const int n = f.grid.resolution;
  py::array_t<double> out({n, n});
  std::copy(f.v.begin(), f.v.end(), out.mutable_data());
  return out;
}

ScalarField from_array(const py::array_t<double>& a, const GridSpec& g) {
  auto buf = a.request();
  if (buf.ndim != 2 || buf.shape[0] != g.resolution || buf.shape[1] != g.resolution)
    throw std::invalid_argument("expected a square array matching the grid resolution");
  ScalarField f(g);
  auto r = a.unchecked<2>();
  for (int i = 0; i < g.resolution; ++i)
    for (int j = 0; j < g.resolution; ++j) f.at(i, j) = r(i, j);
  return f;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "spectral two-step iteration solver for the forced 2-D incompressible flow problem";
  m.attr("__version__") = kVersion;

  m.def("border_mu", &border_mu, py::arg("F"), py::arg("nu"),
        "width of the convergence border, (F/nu)^(1/4)");
  m.def("convergence_predicate", &convergence_predicate, py::arg("F"), py::arg("mu"),
        py::arg("nu"), "true iff F/(mu^4 nu) < 1 strictly");
  m.def("dot_set_mu", &dot_set_mu, py::arg("F"), py::arg("margin") = 1.0);
  m.def(
      "reference_sample_set",
      []() {
        SampleSet s = reference_sample_set();
        return py::make_tuple(s.amplitudes, s.viscosities);
      },
      "the (n, F) amplitude pairs and reference viscosities of the sweep protocol");

  m.def(
      "evaluate_force",
      [](int n, double F, double mu, double nu, double t, double L, int N) {
        VectorField f = evaluate_force(ForceParams(n, F, mu, nu), t, GridSpec(L, N));
        return py::make_tuple(to_array(f.x), to_array(f.y));
      },
      py::arg("n"), py::arg("F"), py::arg("mu"), py::arg("nu"), py::arg("t") = 0.0,
      py::arg("L") = 8.0, py::arg("N") = 256,
      "radial force components on the grid as two (N, N) arrays, index [i, j] = (x_i, y_j)");

  m.def(
      "convective_term",
      [](py::array_t<double> ux, py::array_t<double> uy, double L) {
        const int n = static_cast<int>(ux.request().shape[0]);
        GridSpec g(L, n);
        VectorField u(g);
        u.x = from_array(ux, g);
        u.y = from_array(uy, g);
        VectorField c = convective_term_physical(u);
        return py::make_tuple(to_array(c.x), to_array(c.y));
      },
      py::arg("ux"), py::arg("uy"), py::arg("L"),
      "(u.grad)u computed pseudo-spectrally with 2/3-rule dealiasing");

  m.def(
      "run_point",
      [](int n, double F, double mu, double nu, double L, int N, double t_final, int steps,
         int stride) {
        IterationResult res =
            run_iteration(ForceParams(n, F, mu, nu), GridSpec(L, N), TimeGrid(t_final, steps),
                          stride);
        py::dict out;
        out["max_u1"] = res.max_u1;
        out["max_u2star"] = res.max_u2star;
        out["ratio"] = res.ratio ? py::object(py::float_(*res.ratio)) : py::none();
        out["degenerate"] = res.degenerate;
        out["mu_border"] = border_mu(F, nu);
        out["predicted_convergent"] = convergence_predicate(F, mu, nu);
        return out;
      },
      py::arg("n"), py::arg("F"), py::arg("mu"), py::arg("nu"), py::arg("L") = 8.0,
      py::arg("N") = 256, py::arg("t_final") = 1.0, py::arg("steps") = 200,
      py::arg("stride") = 5,
      "run the two-step iteration at one parameter point and report the maxima");

  m.def(
      "profiles",
      [](int n, double F, double mu, double nu, std::vector<double> radii,
         std::vector<double> angles, double L, int N, double t_final, int steps, int stride) {
        IterationResult res =
            run_iteration(ForceParams(n, F, mu, nu), GridSpec(L, N), TimeGrid(t_final, steps),
                          stride);
        std::vector<std::tuple<double, double, double, double>> rows;
        for (const ProfileSample& s : extract_profiles(res, radii, angles))
          rows.emplace_back(s.radius, s.angle, s.amp1, s.amp2);
        return rows;
      },
      py::arg("n"), py::arg("F"), py::arg("mu"), py::arg("nu"), py::arg("radii"),
      py::arg("angles"), py::arg("L") = 8.0, py::arg("N") = 256, py::arg("t_final") = 1.0,
      py::arg("steps") = 200, py::arg("stride") = 5,
      "final-time |u1| and |u2*| sampled at polar points, rows (r, phi, amp1, amp2)");
}
