#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tomokernel/errors.hpp"
#include "tomokernel/inverse.hpp"
#include "tomokernel/kernel.hpp"
#include "tomokernel/quadrature.hpp"
#include "tomokernel/states.hpp"
#include "tomokernel/transform.hpp"

namespace py = pybind11;
using namespace tomokernel;

namespace {

using SampleArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::vector<QuadratureSample> to_samples(const SampleArray& arr) {
  if (arr.ndim() != 2 || arr.shape(1) != 2) throw DomainError("samples must have shape (n, 2)");
  auto view = arr.unchecked<2>();
  std::vector<QuadratureSample> out(static_cast<std::size_t>(arr.shape(0)));
  for (py::ssize_t i = 0; i < arr.shape(0); ++i) out[i] = {view(i, 0), view(i, 1)};
  return out;
}

SampleArray from_samples(const std::vector<QuadratureSample>& samples) {
  SampleArray arr({static_cast<py::ssize_t>(samples.size()), py::ssize_t{2}});
  auto view = arr.mutable_unchecked<2>();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    view(i, 0) = samples[i].theta;
    view(i, 1) = samples[i].x;
  }
  return arr;
}

QuadratureScheme scheme_for(const DensityMatrix& rho, std::optional<QuadratureScheme> scheme) {
  return scheme ? *scheme : QuadratureScheme::for_dim(rho.dim());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Husimi function from homodyne statistics via an explicit kernel";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<TruncationError>(m, "TruncationError", base.ptr());
  py::register_exception<NumericError>(m, "NumericError", base.ptr());

  m.attr("DEFAULT_DIM") = kDefaultDim;

  py::class_<DensityMatrix>(m, "DensityMatrix")
      .def(py::init(&DensityMatrix::from_matrix), py::arg("elems"))
      .def_property_readonly("dim", &DensityMatrix::dim)
      .def_property_readonly("elems", [](const DensityMatrix& r) { return Eigen::MatrixXcd(r.elems()); })
      .def("purity", &DensityMatrix::purity)
      .def("__repr__", [](const DensityMatrix& r) { return "<DensityMatrix dim=" + std::to_string(r.dim()) + ">"; });

  m.def("number_state", &make_number_state, py::arg("n"), py::arg("dim") = kDefaultDim);
  m.def("coherent_state", &make_coherent_state, py::arg("z"), py::arg("dim") = kDefaultDim);
  m.def("thermal_state", &make_thermal_state, py::arg("nbar"), py::arg("dim") = kDefaultDim);
  m.def(
      "superposition",
      [](const std::vector<std::pair<int, Complex>>& amps, int dim) { return make_superposition(amps, dim); },
      py::arg("amplitudes"), py::arg("dim") = kDefaultDim);
  m.def(
      "mixture",
      [](const std::vector<double>& w, const std::vector<DensityMatrix>& c) { return make_mixture(w, c); },
      py::arg("weights"), py::arg("components"));

  m.def("hermite_function", &hermite_function, py::arg("n"), py::arg("x"));
  m.def(
      "husimi_direct", [](const DensityMatrix& r, double q, double p) { return husimi_direct(r, {q, p}); },
      py::arg("rho"), py::arg("q"), py::arg("p"));
  m.def(
      "wigner", [](const DensityMatrix& r, double q, double p) { return wigner(r, {q, p}); }, py::arg("rho"),
      py::arg("q"), py::arg("p"));

  m.def("quad_density", &quad_density, py::arg("rho"), py::arg("theta"), py::arg("x"));
  m.def(
      "sample_eht",
      [](const DensityMatrix& r, std::int64_t n, std::uint64_t seed, unsigned threads) {
        std::vector<QuadratureSample> s;
        {
          py::gil_scoped_release release;
          s = sample_eht(r, n, seed, {}, threads);
        }
        return from_samples(s);
      },
      py::arg("rho"), py::arg("n"), py::arg("seed"), py::arg("threads") = 0,
      "Draw n (theta, x) homodyne outcomes as an (n, 2) array.");

  m.def("dawson", &dawson, py::arg("x"));
  m.def(
      "kernel_closed",
      [](double q, double p, double theta, double x) { return kernel_closed({q, p}, theta, x); }, py::arg("q"),
      py::arg("p"), py::arg("theta"), py::arg("x"));
  m.def(
      "kernel_series",
      [](double q, double p, double theta, double x, int k_max) { return kernel_series({q, p}, theta, x, k_max); },
      py::arg("q"), py::arg("p"), py::arg("theta"), py::arg("x"), py::arg("k_max") = 48);

  py::class_<QuadratureScheme>(m, "QuadratureScheme")
      .def(py::init([](int t, int n, double l) { return QuadratureScheme{t, n, l}; }), py::arg("theta_nodes") = 128,
           py::arg("x_nodes") = 160, py::arg("x_limit") = 0.0)
      .def_static("for_dim", &QuadratureScheme::for_dim)
      .def_readwrite("theta_nodes", &QuadratureScheme::theta_nodes)
      .def_readwrite("x_nodes", &QuadratureScheme::x_nodes)
      .def_readwrite("x_limit", &QuadratureScheme::x_limit);

  m.def(
      "husimi_from_kernel",
      [](const DensityMatrix& r, double q, double p, std::optional<QuadratureScheme> scheme) {
        return husimi_from_kernel(r, {q, p}, scheme_for(r, scheme));
      },
      py::arg("rho"), py::arg("q"), py::arg("p"), py::arg("scheme") = py::none());
  m.def(
      "husimi_mc_estimate",
      [](const SampleArray& samples, double q, double p) {
        const auto s = to_samples(samples);
        const MCEstimate e = husimi_mc_estimate(s, {q, p});
        return py::make_tuple(e.mean, e.std_error, e.n);
      },
      py::arg("samples"), py::arg("q"), py::arg("p"), "Returns (mean, stderr, n).");
  m.def(
      "coherent_identity_check",
      [](Complex z, Complex w, std::optional<QuadratureScheme> scheme) {
        return coherent_identity_check(z, w, scheme ? *scheme : QuadratureScheme::for_dim(kDefaultDim));
      },
      py::arg("z"), py::arg("w"), py::arg("scheme") = py::none());

  m.def("partial_inverse_integral", &partial_inverse_integral, py::arg("theta"), py::arg("x"), py::arg("u"),
        py::arg("v"), py::arg("R"));
  m.def(
      "divergence_scan",
      [](double theta, double x, double u, double v, const std::vector<double>& radii) {
        return divergence_scan(theta, x, u, v, radii).magnitudes;
      },
      py::arg("theta"), py::arg("x"), py::arg("u"), py::arg("v"), py::arg("radii"),
      "Magnitudes of the truncated inverse-kernel integral at each radius.");
}
