#ifndef QAR_DYNAMICS_HPP
#define QAR_DYNAMICS_HPP

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "qar/rate_matrix.hpp"

namespace qar {

/// Populations exp(R(0) t) rho0 via the dense scaling-and-squaring matrix
/// exponential.  rho0 must be a probability vector and t >= 0; the result is
/// checked to remain one (NumericalError otherwise).
Eigen::VectorXd propagate(const RateMatrix& rm, const Eigen::VectorXd& rho0,
                          double t);

/// Kullback-Leibler divergence sum_a p_a (ln p_a - ln q_a) with 0 ln 0 = 0.
/// DomainError if q vanishes on the support of p.
double relative_entropy(const Eigen::VectorXd& p, const Eigen::VectorXd& q);

/// Ohmic heat bath Gamma(w) = amplitude * w exp(-w/cutoff) at inverse
/// temperature beta.
struct OhmicBath {
    double cutoff = 100.0;
    double beta = 1.0;
    double amplitude = 1.0;

    double density(double w) const;  // odd continuation of w exp(-w/cutoff)
    double gamma(double w) const;    // emission/absorption kernel
    ReservoirChannel channel(Role role = Role::cold) const;
};

struct TrajectoryResult {
    std::vector<double> times;
    Eigen::MatrixXd populations;     // one column per time point
    std::vector<double> entropies;   // S(rho(t) || rho_beta)
    double t_th = 0.0;               // first crossing below the threshold (or -1)
};

/// Populations and relative entropy against the bath Gibbs state on a given
/// time grid, for a single Jx-coupled Ohmic bath.  Starts from the thermal
/// state at beta_init.
TrajectoryResult relaxation_trajectory(int n_spins, double omega,
                                       const OhmicBath& bath, double beta_init,
                                       const std::vector<double>& times,
                                       double threshold = 1e-6);

/// First time with S(rho(t) || rho_beta) <= threshold, bracketed on a
/// doubling time grid and then bisected to 1e-6 relative.  Contractivity of
/// the dynamics makes the crossing unique.  NumericalError with the final
/// entropy if the threshold is not reached before t_max.
double thermalization_time(int n_spins, double omega, const OhmicBath& bath,
                           double beta_init, double threshold = 1e-6,
                           double t_max = 1e6);

/// Zero-temperature cascade from |v_a0+>: per-step decay rates
/// R_{a-1,a} = Gamma((2a-1) Omega)/4 [N/2(N/2+1) - a(a-1)] for a = 3/2..a0.
/// The waiting density of each step is exponential, R exp(-R tau).
std::vector<double> cascade_rates(int n_spins, double omega,
                                  const std::function<double(double)>& density,
                                  double a0);

/// Mean total relaxation time of the cascade: sum of the inverse step rates.
double waiting_time_mean(int n_spins, double omega,
                         const std::function<double(double)>& density, double a0);

} // namespace qar

#endif
