#include "qar/reduced.hpp"

#include <cmath>
#include <string>

#include "qar/errors.hpp"

namespace qar {

EffectiveRates effective_rates(int n_spins, double gbar_c, double gbar_h,
                               double gbar_w) {
    if (n_spins < 5 || n_spins % 2 == 0)
        throw DomainError("effective_rates: N must be odd and >= 5, got " +
                          std::to_string(n_spins));
    if (!(gbar_c >= 0.0) || !(gbar_h >= 0.0) || !(gbar_w >= 0.0))
        throw DomainError("effective_rates: couplings must be non-negative");
    const double j = 0.5 * n_spins;
    const double x = j * (j + 1.0);
    EffectiveRates rates;
    rates.cold = 0.25 * gbar_c * (x - 0.75);
    rates.work = 0.25 * gbar_w * (x - 3.75);
    rates.hot = gbar_h * (x - 0.75) * (x - 3.75) /
                (16.0 * static_cast<double>(n_spins) * n_spins);
    return rates;
}

ReducedModelParams ReducedModelParams::at_resonance(int n_spins, double gbar_c,
                                                    double gbar_h, double gbar_w,
                                                    double beta_c, double beta_h,
                                                    double beta_w, double omega) {
    const EffectiveRates rates = effective_rates(n_spins, gbar_c, gbar_h, gbar_w);
    ReducedModelParams p;
    p.omega = omega;
    p.gamma_c = rates.cold;
    p.gamma_h = rates.hot;
    p.gamma_w = rates.work;
    p.n_c = bose(beta_c, 2.0 * omega);
    p.n_h = bose(beta_h, 6.0 * omega);
    p.n_w = bose(beta_w, 4.0 * omega);
    p.beta_c = beta_c;
    p.beta_h = beta_h;
    p.beta_w = beta_w;
    return p;
}

Eigen::MatrixXd laser_block(double gamma_laser) {
    if (!(gamma_laser >= 0.0)) throw DomainError("laser_block: negative drive");
    Eigen::MatrixXd blk = Eigen::MatrixXd::Zero(3, 3);
    blk(1, 2) = gamma_laser;
    blk(2, 1) = gamma_laser;
    return blk;
}

RateMatrix reduced_rate_matrix(const ReducedModelParams& p) {
    if (p.gamma_c < 0.0 || p.gamma_h < 0.0 || p.gamma_w < 0.0 || p.n_c < 0.0 ||
        p.n_h < 0.0 || p.n_w < 0.0)
        throw DomainError("reduced_rate_matrix: rates and occupations must be >= 0");

    Eigen::VectorXd energies(3);
    energies << 0.25 * p.omega, 2.25 * p.omega, 6.25 * p.omega;

    ReservoirBlock cold;
    cold.role = Role::cold;
    cold.beta = p.beta_c;
    cold.rates = Eigen::MatrixXd::Zero(3, 3);
    cold.rates(0, 1) = p.gamma_c * (1.0 + p.n_c);
    cold.rates(1, 0) = p.gamma_c * p.n_c;

    ReservoirBlock hot;
    hot.role = Role::hot;
    hot.beta = p.beta_h;
    hot.rates = Eigen::MatrixXd::Zero(3, 3);
    hot.rates(0, 2) = p.gamma_h * (1.0 + p.n_h);
    hot.rates(2, 0) = p.gamma_h * p.n_h;

    ReservoirBlock work;
    work.role = Role::work;
    if (p.gamma_laser) {
        work.beta = 0.0;  // infinite temperature: absorption = emission
        work.rates = laser_block(*p.gamma_laser);
    } else {
        work.beta = p.beta_w;
        work.rates = Eigen::MatrixXd::Zero(3, 3);
        work.rates(1, 2) = p.gamma_w * (1.0 + p.n_w);
        work.rates(2, 1) = p.gamma_w * p.n_w;
    }

    return assemble_rate_matrix(energies, {cold, hot, work});
}

double analytic_current(const ReducedModelParams& p) {
    const double denom =
        p.gamma_c * (1.0 + 3.0 * p.n_c) + p.gamma_h * (1.0 + 3.0 * p.n_h);
    return 2.0 * p.omega * p.gamma_c * p.gamma_h * (p.n_c - p.n_h) / denom;
}

double analytic_noise(const ReducedModelParams& p) {
    const double fc = p.gamma_c * (1.0 + 3.0 * p.n_c);
    const double fh = p.gamma_h * (1.0 + 3.0 * p.n_h);
    const double denom = fc + fh;
    const double a = (fc * fc + fh * fh) * (p.n_c + p.n_h + 2.0 * p.n_c * p.n_h);
    const double b = p.n_c * (1.0 + p.n_c) + p.n_h * (1.0 + p.n_h) +
                     12.0 * p.n_c * p.n_h +
                     15.0 * p.n_c * p.n_h * (p.n_c + p.n_h) +
                     18.0 * p.n_c * p.n_c * p.n_h * p.n_h;
    return 4.0 * p.omega * p.omega * p.gamma_c * p.gamma_h *
           (a + 2.0 * p.gamma_c * p.gamma_h * b) / (denom * denom * denom);
}

double two_level_current(double gamma_c_eff, double gamma_w_eff, double n_c,
                         double n_w, double omega) {
    if (gamma_c_eff < 0.0 || gamma_w_eff < 0.0)
        throw DomainError("two_level_current: rates must be >= 0");
    const double denom =
        gamma_c_eff * (1.0 + 2.0 * n_c) + gamma_w_eff * (1.0 + 2.0 * n_w);
    return -2.0 * omega * gamma_c_eff * gamma_w_eff * (n_w - n_c) / denom;
}

} // namespace qar
