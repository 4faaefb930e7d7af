#ifndef QAR_THERMO_HPP
#define QAR_THERMO_HPP

#include <vector>

#include "qar/fcs.hpp"

namespace qar {

/// Thermodynamic diagnostics of one steady state.  Bounds are meaningful
/// only when the validity flags hold (machine operates as a refrigerator
/// with ordered temperatures); sweeps deliberately cross that boundary, so
/// out-of-regime points carry flags instead of raising.
struct ThermoReport {
    double entropy_production = 0.0;  // sigma_i = -sum_nu beta_nu I_nu
    double cop = 0.0;                 // kappa = I_c / I_w
    double cop_carnot = 0.0;          // beta_h / (beta_c - beta_h)
    double cop_tur_bound = 0.0;       // TUR-tightened bound on kappa
    double tur = 0.0;                 // S sigma_i / I_c^2
    bool cooling = false;             // I_c > 0
    bool pumping = false;             // I_w > 0
    bool ordered = false;             // beta_c >= beta_h >= beta_w

    bool bounds_valid() const { return cooling && pumping && ordered; }
};

/// Entropy production rate -sum_nu beta_nu I_nu.  Throws ConsistencyError
/// when the currents violate the first law beyond tolerance; `abs_floor`
/// should carry the roundoff scale of the currents (activity * 1e-13 or so)
/// so that equilibrium points, whose currents are pure cancellation noise,
/// are not rejected.
double entropy_production(const std::vector<ReservoirCurrent>& flows,
                          double abs_floor = 0.0, double rel_tol = 1e-8);

/// TUR ratio S sigma_i / I^2; >= 2 for every valid model.  Infinite at I = 0.
double tur_ratio(double noise, double entropy_production, double current);

/// Width of the energy fluctuations over the energy transferred in a
/// window dt: sqrt(S dt) / (I dt).  Requires I > 0 and dt > 0.
double noise_to_signal(double noise, double current, double dt);

/// Full report for a three-reservoir solve.  Requires cold, hot and work
/// currents present in `fcs`; `fcs.noise` must refer to the cold reservoir
/// for the TUR-tightened bound of the report to apply.
ThermoReport thermo_report(const FcsResult& fcs);

} // namespace qar

#endif
