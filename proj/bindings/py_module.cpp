#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qar/dynamics.hpp"
#include "qar/errors.hpp"
#include "qar/fcs.hpp"
#include "qar/reduced.hpp"
#include "qar/thermo.hpp"

namespace py = pybind11;
using namespace qar;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Collective-spin quantum absorption refrigerator simulator";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    py::enum_<Role>(m, "Role")
        .value("cold", Role::cold)
        .value("hot", Role::hot)
        .value("work", Role::work);

    py::enum_<CouplingKind>(m, "CouplingKind")
        .value("jx", CouplingKind::jx)
        .value("jx2_over_n", CouplingKind::jx2_over_n);

    py::class_<SpinSector>(m, "SpinSector")
        .def_readonly("n_spins", &SpinSector::n_spins)
        .def_readonly("omega", &SpinSector::omega)
        .def_readonly("dim", &SpinSector::dim)
        .def_readonly("energies", &SpinSector::energies)
        .def_readonly("jx", &SpinSector::jx)
        .def_readonly("jx2", &SpinSector::jx2)
        .def("label", &SpinSector::label);

    m.def("ladder_coefficient", &ladder_coefficient, py::arg("n_spins"),
          py::arg("a"), py::arg("sign"));
    m.def("build_sector", &build_sector, py::arg("n_spins"), py::arg("omega") = 1.0);

    py::class_<ReservoirSpec>(m, "ReservoirSpec")
        .def(py::init(&ReservoirSpec::thermal), py::arg("role"),
             py::arg("gamma_bar"), py::arg("epsilon"), py::arg("delta"),
             py::arg("beta"))
        .def_readwrite("role", &ReservoirSpec::role)
        .def_readwrite("coupling", &ReservoirSpec::coupling)
        .def_readwrite("gamma_bar", &ReservoirSpec::gamma_bar)
        .def_readwrite("epsilon", &ReservoirSpec::epsilon)
        .def_readwrite("delta", &ReservoirSpec::delta)
        .def_readwrite("beta", &ReservoirSpec::beta)
        .def("validate", &ReservoirSpec::validate);

    m.def("spectral_density", &spectral_density, py::arg("spec"), py::arg("w"));
    m.def("bose", &bose, py::arg("beta"), py::arg("w"));
    m.def("gamma_rate", &gamma_rate, py::arg("spec"), py::arg("w"));

    py::class_<RcMapResult>(m, "RcMapResult")
        .def_readonly("omega_rc", &RcMapResult::omega_rc)
        .def_readonly("lambda_sq", &RcMapResult::lambda_sq)
        .def_readonly("residual_scale", &RcMapResult::residual_scale)
        .def_readonly("residual_pole", &RcMapResult::residual_pole)
        .def_readonly("cutoff", &RcMapResult::cutoff)
        .def("residual_density", &RcMapResult::residual_density);

    m.def("rc_map_closed_form", &rc_map_closed_form, py::arg("gamma_bar"),
          py::arg("epsilon"), py::arg("delta"), py::arg("cutoff"));
    m.def(
        "rc_map_numeric",
        [](const std::function<double(double)>& density, double abs_tol,
           double rel_tol, int max_depth) {
            QuadratureControls controls;
            controls.abs_tol = abs_tol;
            controls.rel_tol = rel_tol;
            controls.max_depth = max_depth;
            return rc_map_numeric(density, controls);
        },
        py::arg("density"), py::arg("abs_tol") = 1e-9, py::arg("rel_tol") = 1e-9,
        py::arg("max_depth") = 18);

    py::class_<ReservoirBlock>(m, "ReservoirBlock")
        .def_readonly("role", &ReservoirBlock::role)
        .def_readonly("beta", &ReservoirBlock::beta)
        .def_readonly("rates", &ReservoirBlock::rates);

    py::class_<RateMatrix>(m, "RateMatrix")
        .def_readonly("dim", &RateMatrix::dim)
        .def_readonly("energies", &RateMatrix::energies)
        .def_readonly("omega", &RateMatrix::omega)
        .def_readonly("total", &RateMatrix::total)
        .def("has", &RateMatrix::has)
        .def("block", &RateMatrix::block, py::return_value_policy::reference_internal)
        .def("closed_block", &RateMatrix::closed_block);

    m.def("build_rate_matrix",
          py::overload_cast<const SpinSector&, const std::vector<ReservoirSpec>&>(
              &build_rate_matrix),
          py::arg("sector"), py::arg("reservoirs"));

    py::class_<CountingMatrices>(m, "CountingMatrices")
        .def_readonly("counted", &CountingMatrices::counted)
        .def_readonly("w1", &CountingMatrices::w1)
        .def_readonly("w2", &CountingMatrices::w2);
    m.def("counting_moment_matrices", &counting_moment_matrices, py::arg("rm"),
          py::arg("counted"));

    m.def("gibbs_populations", &gibbs_populations, py::arg("energies"),
          py::arg("beta"));

    m.def("steady_state",
          [](const RateMatrix& rm) { return steady_state(rm); });
    m.def("energy_current",
          py::overload_cast<const RateMatrix&, Role>(&energy_current),
          py::arg("rm"), py::arg("counted"));
    m.def("energy_noise", py::overload_cast<const RateMatrix&, Role>(&energy_noise),
          py::arg("rm"), py::arg("counted"));
    m.def("cgf_dominant_eigenvalue", &cgf_dominant_eigenvalue, py::arg("rm"),
          py::arg("counted"), py::arg("chi"));
    m.def("cgf_current_fd", &cgf_current_fd, py::arg("rm"), py::arg("counted"),
          py::arg("step") = 2e-3);
    m.def("cgf_noise_fd", &cgf_noise_fd, py::arg("rm"), py::arg("counted"),
          py::arg("step") = 2e-3);

    py::class_<ReservoirCurrent>(m, "ReservoirCurrent")
        .def_readonly("role", &ReservoirCurrent::role)
        .def_readonly("beta", &ReservoirCurrent::beta)
        .def_readonly("current", &ReservoirCurrent::current);

    py::class_<FcsResult>(m, "FcsResult")
        .def_readonly("rho", &FcsResult::rho)
        .def_readonly("currents", &FcsResult::currents)
        .def_readonly("counted", &FcsResult::counted)
        .def_readonly("noise", &FcsResult::noise)
        .def_readonly("activity", &FcsResult::activity)
        .def("current", &FcsResult::current);
    m.def("solve_fcs", &solve_fcs, py::arg("rm"), py::arg("counted") = Role::cold);

    py::class_<ThermoReport>(m, "ThermoReport")
        .def_readonly("entropy_production", &ThermoReport::entropy_production)
        .def_readonly("cop", &ThermoReport::cop)
        .def_readonly("cop_carnot", &ThermoReport::cop_carnot)
        .def_readonly("cop_tur_bound", &ThermoReport::cop_tur_bound)
        .def_readonly("tur", &ThermoReport::tur)
        .def_readonly("cooling", &ThermoReport::cooling)
        .def_readonly("pumping", &ThermoReport::pumping)
        .def_readonly("ordered", &ThermoReport::ordered)
        .def("bounds_valid", &ThermoReport::bounds_valid);
    m.def("thermo_report", &thermo_report, py::arg("fcs"));
    m.def("tur_ratio", &tur_ratio, py::arg("noise"), py::arg("entropy_production"),
          py::arg("current"));
    m.def("noise_to_signal", &noise_to_signal, py::arg("noise"), py::arg("current"),
          py::arg("dt"));

    py::class_<EffectiveRates>(m, "EffectiveRates")
        .def_readonly("cold", &EffectiveRates::cold)
        .def_readonly("hot", &EffectiveRates::hot)
        .def_readonly("work", &EffectiveRates::work);
    m.def("effective_rates", &effective_rates, py::arg("n_spins"), py::arg("gbar_c"),
          py::arg("gbar_h"), py::arg("gbar_w"));

    py::class_<ReducedModelParams>(m, "ReducedModelParams")
        .def_static("at_resonance", &ReducedModelParams::at_resonance,
                    py::arg("n_spins"), py::arg("gbar_c"), py::arg("gbar_h"),
                    py::arg("gbar_w"), py::arg("beta_c"), py::arg("beta_h"),
                    py::arg("beta_w"), py::arg("omega") = 1.0)
        .def_readwrite("omega", &ReducedModelParams::omega)
        .def_readwrite("gamma_c", &ReducedModelParams::gamma_c)
        .def_readwrite("gamma_h", &ReducedModelParams::gamma_h)
        .def_readwrite("gamma_w", &ReducedModelParams::gamma_w)
        .def_readwrite("n_c", &ReducedModelParams::n_c)
        .def_readwrite("n_h", &ReducedModelParams::n_h)
        .def_readwrite("n_w", &ReducedModelParams::n_w)
        .def_readwrite("gamma_laser", &ReducedModelParams::gamma_laser);
    m.def("reduced_rate_matrix", &reduced_rate_matrix, py::arg("params"));
    m.def("laser_block", &laser_block, py::arg("gamma_laser"));
    m.def("analytic_current", &analytic_current, py::arg("params"));
    m.def("analytic_noise", &analytic_noise, py::arg("params"));
    m.def("two_level_current", &two_level_current, py::arg("gamma_c_eff"),
          py::arg("gamma_w_eff"), py::arg("n_c"), py::arg("n_w"), py::arg("omega"));

    m.def("propagate", &propagate, py::arg("rm"), py::arg("rho0"), py::arg("t"));
    m.def("relative_entropy", &relative_entropy, py::arg("p"), py::arg("q"));

    py::class_<OhmicBath>(m, "OhmicBath")
        .def(py::init([](double cutoff, double beta, double amplitude) {
                 OhmicBath bath;
                 bath.cutoff = cutoff;
                 bath.beta = beta;
                 bath.amplitude = amplitude;
                 return bath;
             }),
             py::arg("cutoff") = 100.0, py::arg("beta") = 1.0,
             py::arg("amplitude") = 1.0)
        .def_readwrite("cutoff", &OhmicBath::cutoff)
        .def_readwrite("beta", &OhmicBath::beta)
        .def_readwrite("amplitude", &OhmicBath::amplitude)
        .def("density", &OhmicBath::density)
        .def("gamma", &OhmicBath::gamma);

    m.def("thermalization_time", &thermalization_time, py::arg("n_spins"),
          py::arg("omega"), py::arg("bath"), py::arg("beta_init"),
          py::arg("threshold") = 1e-6, py::arg("t_max") = 1e6);
    m.def("cascade_rates", &cascade_rates, py::arg("n_spins"), py::arg("omega"),
          py::arg("density"), py::arg("a0"));
    m.def("waiting_time_mean", &waiting_time_mean, py::arg("n_spins"),
          py::arg("omega"), py::arg("density"), py::arg("a0"));

#ifdef QARSIM_VERSION
#define QARSIM_STR2(x) #x
#define QARSIM_STR(x) QARSIM_STR2(x)
    m.attr("__version__") = QARSIM_STR(QARSIM_VERSION);
#else
    m.attr("__version__") = "dev";
#endif
}
