#include "qar/dynamics.hpp"

#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>
#include <sstream>

#include "qar/errors.hpp"
#include "qar/spin_sector.hpp"

namespace qar {

namespace {

void check_probability_vector(const Eigen::VectorXd& rho, const char* who) {
    if (rho.minCoeff() < -1e-9 || std::abs(rho.sum() - 1.0) > 1e-9)
        throw DomainError(std::string(who) + ": not a probability vector");
}

// S(rho || gibbs(beta)) evaluated from ln q = -beta (E - E_min) - ln Z so that
// deep Boltzmann tails never underflow inside the logarithm.
double entropy_vs_gibbs(const Eigen::VectorXd& rho, const Eigen::VectorXd& energies,
                        double beta) {
    const double e_min = energies.minCoeff();
    const double log_z = std::log((-beta * (energies.array() - e_min)).exp().sum());
    double s = 0.0;
    for (int a = 0; a < rho.size(); ++a) {
        if (rho(a) <= 0.0) continue;
        const double log_q = -beta * (energies(a) - e_min) - log_z;
        s += rho(a) * (std::log(rho(a)) - log_q);
    }
    return s;
}

} // namespace

Eigen::VectorXd propagate(const RateMatrix& rm, const Eigen::VectorXd& rho0,
                          double t) {
    if (!(t >= 0.0)) throw DomainError("propagate: t must be >= 0");
    check_probability_vector(rho0, "propagate");
    if (t == 0.0) return rho0;
    const Eigen::MatrixXd propagator = (rm.total * t).exp();
    Eigen::VectorXd rho = propagator * rho0;
    if (std::abs(rho.sum() - 1.0) > 1e-9 || rho.minCoeff() < -1e-9) {
        std::ostringstream msg;
        msg << "propagate: matrix exponential lost probability normalization "
            << "(sum = " << rho.sum() << ", min = " << rho.minCoeff()
            << ", ||R t|| = " << (rm.total * t).norm() << ")";
        throw NumericalError(msg.str());
    }
    return rho;
}

double relative_entropy(const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
    if (p.size() != q.size()) throw DomainError("relative_entropy: size mismatch");
    double s = 0.0;
    for (int a = 0; a < p.size(); ++a) {
        if (p(a) < -1e-9) throw DomainError("relative_entropy: negative probability");
        if (p(a) <= 0.0) continue;
        if (!(q(a) > 0.0))
            throw DomainError("relative_entropy: q vanishes on the support of p");
        s += p(a) * (std::log(p(a)) - std::log(q(a)));
    }
    return s;
}

double OhmicBath::density(double w) const {
    return amplitude * w * std::exp(-std::abs(w) / cutoff);
}

double OhmicBath::gamma(double w) const {
    if (w == 0.0) throw DomainError("OhmicBath::gamma: undefined at w = 0");
    if (w > 0.0) return density(w) * (1.0 + bose(beta, w));
    return density(-w) * bose(beta, -w);
}

ReservoirChannel OhmicBath::channel(Role role) const {
    ReservoirChannel ch;
    ch.role = role;
    ch.beta = beta;
    ch.coupling = CouplingKind::jx;
    ch.gamma = [bath = *this](double w) { return bath.gamma(w); };
    return ch;
}

TrajectoryResult relaxation_trajectory(int n_spins, double omega,
                                       const OhmicBath& bath, double beta_init,
                                       const std::vector<double>& times,
                                       double threshold) {
    const SpinSector sector = build_sector(n_spins, omega);
    const RateMatrix rm = build_rate_matrix(sector, {bath.channel()});
    const Eigen::VectorXd rho0 = gibbs_populations(sector.energies, beta_init);

    TrajectoryResult out;
    out.times = times;
    out.populations.resize(sector.dim, static_cast<int>(times.size()));
    out.entropies.reserve(times.size());
    out.t_th = -1.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const Eigen::VectorXd rho = propagate(rm, rho0, times[i]);
        out.populations.col(static_cast<int>(i)) = rho;
        const double s = entropy_vs_gibbs(rho.cwiseMax(0.0), sector.energies, bath.beta);
        out.entropies.push_back(s);
        if (out.t_th < 0.0 && s <= threshold) out.t_th = times[i];
    }
    return out;
}

double thermalization_time(int n_spins, double omega, const OhmicBath& bath,
                           double beta_init, double threshold, double t_max) {
    if (!(threshold > 0.0))
        throw DomainError("thermalization_time: threshold must be > 0");
    const SpinSector sector = build_sector(n_spins, omega);
    const RateMatrix rm = build_rate_matrix(sector, {bath.channel()});
    const Eigen::VectorXd rho0 = gibbs_populations(sector.energies, beta_init);

    auto entropy_at = [&](double t) {
        const Eigen::VectorXd rho = propagate(rm, rho0, t);
        return entropy_vs_gibbs(rho.cwiseMax(0.0), sector.energies, bath.beta);
    };

    if (entropy_at(0.0) <= threshold) return 0.0;

    // exponential bracketing, then bisection; contractivity gives uniqueness
    double t_lo = 0.0;
    double t_hi = 1e-6 / omega;
    double s_hi = entropy_at(t_hi);
    while (s_hi > threshold) {
        t_lo = t_hi;
        t_hi *= 2.0;
        if (t_hi > t_max) {
            std::ostringstream msg;
            msg << "thermalization_time: threshold " << threshold
                << " not reached before t_max = " << t_max
                << " (entropy still " << s_hi << ")";
            throw NumericalError(msg.str());
        }
        s_hi = entropy_at(t_hi);
    }
    while (t_hi - t_lo > 1e-6 * t_hi) {
        const double t_mid = 0.5 * (t_lo + t_hi);
        if (entropy_at(t_mid) > threshold)
            t_lo = t_mid;
        else
            t_hi = t_mid;
    }
    return 0.5 * (t_lo + t_hi);
}

std::vector<double> cascade_rates(int n_spins, double omega,
                                  const std::function<double(double)>& density,
                                  double a0) {
    if (n_spins < 3 || n_spins % 2 == 0)
        throw DomainError("cascade_rates: N must be odd and >= 3");
    const double two_a0 = 2.0 * a0;
    if (std::abs(two_a0 - std::round(two_a0)) > 1e-9 ||
        static_cast<long>(std::llround(two_a0)) % 2 == 0)
        throw DomainError("cascade_rates: a0 must be half-integer");
    if (a0 < 1.5 || a0 > 0.5 * n_spins + 1e-12)
        throw DomainError("cascade_rates: a0 outside [3/2, N/2]");
    const double j = 0.5 * n_spins;
    const double x = j * (j + 1.0);
    std::vector<double> rates;
    for (double a = 1.5; a <= a0 + 1e-9; a += 1.0) {
        const double gap = (2.0 * a - 1.0) * omega;
        rates.push_back(0.25 * density(gap) * (x - a * (a - 1.0)));
    }
    return rates;
}

double waiting_time_mean(int n_spins, double omega,
                         const std::function<double(double)>& density, double a0) {
    double mean = 0.0;
    for (const double rate : cascade_rates(n_spins, omega, density, a0)) {
        if (!(rate > 0.0))
            throw DomainError("waiting_time_mean: vanishing cascade rate");
        mean += 1.0 / rate;
    }
    return mean;
}

} // namespace qar
