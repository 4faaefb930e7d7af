#ifndef QAR_REDUCED_HPP
#define QAR_REDUCED_HPP

#include <Eigen/Dense>
#include <optional>

#include "qar/rate_matrix.hpp"

namespace qar {

/// Squared sector matrix elements of the three lowest transitions times the
/// bare peak couplings.  With x = N/2 (N/2 + 1):
///   Gamma_c = gbar_c/4 (x - 3/4),  Gamma_w = gbar_w/4 (x - 15/4),
///   Gamma_h = gbar_h/(16 N^2) (x - 3/4)(x - 15/4).
struct EffectiveRates {
    double cold = 0.0;
    double hot = 0.0;
    double work = 0.0;
};

/// Requires N odd and >= 5 (the third level must exist).
EffectiveRates effective_rates(int n_spins, double gbar_c, double gbar_h,
                               double gbar_w);

/// Three-level refrigerator: cold drives 1/2 <-> 3/2 at 2 Omega, work drives
/// 3/2 <-> 5/2 at 4 Omega, hot drives 1/2 <-> 5/2 at 6 Omega.  Defined at
/// exact resonance; peak heights stand in for the density at the gap.
/// gamma_laser, when set, replaces the thermal work block by a symmetric
/// (infinite-temperature) drive of that strength.
struct ReducedModelParams {
    double omega = 1.0;
    double gamma_c = 0.0, gamma_h = 0.0, gamma_w = 0.0;  // effective bare rates
    double n_c = 0.0, n_h = 0.0, n_w = 0.0;              // occupations at the gaps
    double beta_c = 0.0, beta_h = 0.0, beta_w = 0.0;     // for bookkeeping
    std::optional<double> gamma_laser;

    /// Build from system size, bare peak couplings and inverse temperatures,
    /// with occupations evaluated at the resonant gaps 2, 6, 4 Omega.
    static ReducedModelParams at_resonance(int n_spins, double gbar_c, double gbar_h,
                                           double gbar_w, double beta_c, double beta_h,
                                           double beta_w, double omega = 1.0);
};

/// Symmetric laser work block (equal absorption and emission).
Eigen::MatrixXd laser_block(double gamma_laser);

/// The 3x3 rate matrix R_c + R_h + R_w with per-reservoir blocks, compatible
/// with the fcs and thermo modules.
RateMatrix reduced_rate_matrix(const ReducedModelParams& params);

/// Closed-form current from the cold reservoir in the infinite-temperature
/// work limit (coarse-grained two-level form):
///   I = 2 Omega Gc Gh (n_c - n_h) / (Gc (1 + 3 n_c) + Gh (1 + 3 n_h)).
double analytic_current(const ReducedModelParams& params);

/// Closed-form cold-current noise in the same limit.
double analytic_noise(const ReducedModelParams& params);

/// Two-reservoir (no hot bath) cold current through the lowest transition:
///   I = -2 Omega Gc Gw (n_w - n_c) / (Gc (1 + 2 n_c) + Gw (1 + 2 n_w)),
/// antisymmetric under swapping the thermal biases.
double two_level_current(double gamma_c_eff, double gamma_w_eff, double n_c,
                         double n_w, double omega);

} // namespace qar

#endif
