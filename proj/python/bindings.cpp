#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "multiphase/baselines.hpp"
#include "multiphase/cli.hpp"
#include "multiphase/cq_bounds.hpp"
#include "multiphase/exact_qfi.hpp"
#include "multiphase/fock.hpp"
#include "multiphase/loss_channel.hpp"
#include "multiphase/probes.hpp"

namespace py = pybind11;
using namespace multiphase;

namespace {

std::vector<std::vector<int>> basis_states(const FockBasis& basis) {
  std::vector<std::vector<int>> out;
  out.reserve(basis.size());
  for (const auto& s : basis.states()) out.push_back(s.counts);
  return out;
}

PureState custom_probe_py(int modes, int n, const std::vector<std::pair<std::vector<int>, double>>& terms) {
  std::vector<std::pair<ModeOccupation, double>> t;
  for (const auto& [counts, amp] : terms) t.emplace_back(ModeOccupation{counts}, amp);
  return custom_probe(build_basis(modes, n, BasisKind::FixedTotal), t);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Precision bounds for simultaneous multi-phase estimation under photon loss";

  py::register_exception<SingularBoundError>(m, "SingularBoundError", PyExc_ArithmeticError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def("basis_states", [](int modes, int n_max, bool fixed_total) {
    return basis_states(*build_basis(modes, n_max, fixed_total ? BasisKind::FixedTotal : BasisKind::AtMostTotal));
  }, py::arg("modes"), py::arg("n_max"), py::arg("fixed_total") = true,
     "Occupations of a Fock basis in index order");

  py::class_<PureState>(m, "PureState")
      .def_property_readonly("amplitudes", &PureState::amplitudes)
      .def_property_readonly("phases", &PureState::phases)
      .def_property_readonly("is_real", &PureState::is_real)
      .def_property_readonly("states", [](const PureState& s) { return basis_states(s.basis()); });

  py::class_<DensityOperator>(m, "DensityOperator")
      .def_property_readonly("matrix", &DensityOperator::matrix)
      .def_property_readonly("states", [](const DensityOperator& r) { return basis_states(r.basis()); });

  py::class_<Moments>(m, "Moments")
      .def_readonly("mean_i", &Moments::mean_i)
      .def_readonly("second_ij", &Moments::second_ij)
      .def_readonly("cov_ij", &Moments::cov_ij);
  m.def("moments", &moments, py::arg("state"), py::arg("i"), py::arg("j"));

  m.def("generalized_noon", &generalized_noon, py::arg("d"), py::arg("n"));
  m.def("custom_probe", &custom_probe_py, py::arg("modes"), py::arg("n"), py::arg("terms"));
  m.def("ie_two_mode", &ie_two_mode, py::arg("m"), py::arg("coefficients"));

  m.def("apply_loss", [](const PureState& probe, const std::vector<double>& eta) {
    return apply_loss(probe, LossChannel(eta));
  }, py::arg("probe"), py::arg("eta"), "Lossy state; eta holds one value per mode, reference first");

  m.def("ab_coefficients", [](double eta, double delta) {
    const auto c = ab_coefficients(eta, delta);
    return py::make_tuple(c.a, c.b);
  }, py::arg("eta"), py::arg("delta"));

  py::class_<CqBound>(m, "CqBound")
      .def_readonly("matrix", &CqBound::matrix)
      .def_property_readonly("delta", [](const CqBound& b) { return b.delta.delta; })
      .def_readonly("trace_inverse", &CqBound::trace_inverse);

  m.def("cq_matrix", [](const PureState& probe, const std::vector<double>& eta, const std::vector<double>& delta) {
    return cq_matrix(probe, eta, DeltaGauge{delta});
  }, py::arg("probe"), py::arg("eta"), py::arg("delta"));
  m.def("bound_total_variance", &bound_total_variance, py::arg("bound"));
  m.def("optimize_delta", [](const PureState& probe, double eta, bool uniform) {
    const auto opt = optimize_delta(probe, eta, uniform);
    return py::make_tuple(opt.delta_star, opt.bound);
  }, py::arg("probe"), py::arg("eta"), py::arg("uniform") = true);
  m.def("optimize_delta_noon", [](int d, int n, double eta) {
    const auto opt = optimize_delta(generalized_noon_moments(d, n), eta);
    return py::make_tuple(opt.delta_star, opt.bound);
  }, py::arg("d"), py::arg("n"), py::arg("eta"), "Moment-only optimization for the generalized N00N state");

  py::class_<QfiResult>(m, "QfiResult")
      .def_readonly("matrix", &QfiResult::matrix)
      .def_readonly("trace_inverse", &QfiResult::trace_inverse)
      .def_readonly("saturation_residual", &QfiResult::saturation_residual);
  m.def("qfi_pure", &qfi_pure, py::arg("probe"));
  m.def("qfi_mixed", &qfi_mixed, py::arg("rho"), py::arg("d"));
  m.def("sld_and_residual", [](const DensityOperator& rho, int d) {
    auto r = sld_and_residual(rho, d);
    return py::make_tuple(r.sld, r.residual);
  }, py::arg("rho"), py::arg("d"));

  m.def("single_phase_bound", [](double mean, double variance, double eta) {
    return single_phase_bound(mean, variance, eta).information;
  }, py::arg("mean"), py::arg("variance"), py::arg("eta"), "Loss-limited information C; the variance bound is 1/C");
  m.def("ie_total_variance", [](int d, int n, double eta) {
    return ie_total_variance(d, n, eta).total;
  }, py::arg("d"), py::arg("n"), py::arg("eta"));
  m.def("se_asymptotic", &se_asymptotic, py::arg("d"), py::arg("n"), py::arg("eta"));
  m.def("psi_s_asymptotic", [](int d, int n, double eta) {
    const auto r = psi_s_asymptotic(d, n, eta);
    return py::make_tuple(r.value, r.delta);
  }, py::arg("d"), py::arg("n"), py::arg("eta"));
  m.def("regime_classify", [](int n, double eta) { return std::string(to_string(regime_classify(n, eta))); },
        py::arg("n"), py::arg("eta"));

  m.def("compare_csv", [](int d, double eta, const std::string& n_range) {
    SweepConfig c;
    c.d = d;
    c.eta = eta;
    c.axis = SweepAxis::PhotonNumber;
    c.range = parse_range(n_range);
    c.strict_dense = false;
    return format_csv(run_sweep(c));
  }, py::arg("d"), py::arg("eta"), py::arg("n_range"), "CSV of all strategies over an N grid");
}
