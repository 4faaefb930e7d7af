#include "qar/spin_sector.hpp"

#include <cmath>
#include <string>

#include "qar/errors.hpp"

namespace qar {

double ladder_coefficient(int n_spins, double a, int sign) {
    if (n_spins < 1)
        throw DomainError("ladder_coefficient: need at least one spin");
    if (sign != 1 && sign != -1)
        throw DomainError("ladder_coefficient: sign must be +1 or -1");
    const double j = 0.5 * n_spins;
    const double two_a = 2.0 * a;
    if (std::abs(two_a - std::round(two_a)) > 1e-9)
        throw DomainError("ladder_coefficient: label a must be (half-)integer, got " +
                          std::to_string(a));
    if (std::abs(a) > j + 1e-12 || std::abs(a + sign) > j + 1.0 + 1e-12)
        throw DomainError("ladder_coefficient: label a = " + std::to_string(a) +
                          " outside multiplet of N = " + std::to_string(n_spins));
    const double arg = j * (j + 1.0) - a * (a + sign);
    return arg > 0.0 ? std::sqrt(arg) : 0.0;
}

SpinSector build_sector(int n_spins, double omega) {
    if (n_spins < 3 || n_spins % 2 == 0)
        throw DomainError("build_sector: N must be odd and >= 3, got " +
                          std::to_string(n_spins));
    if (!(omega > 0.0))
        throw DomainError("build_sector: omega must be positive");

    const int full = n_spins + 1;      // Dicke basis |j,m>, m = -j..j
    const double j = 0.5 * n_spins;

    Eigen::MatrixXd jx_full = Eigen::MatrixXd::Zero(full, full);
    for (int k = 0; k + 1 < full; ++k) {
        const double m = -j + k;
        const double amp = 0.5 * ladder_coefficient(n_spins, m, +1);
        jx_full(k + 1, k) = amp;
        jx_full(k, k + 1) = amp;
    }
    const Eigen::MatrixXd jx2_full = jx_full * jx_full;

    SpinSector sector;
    sector.n_spins = n_spins;
    sector.omega = omega;
    sector.dim = (n_spins + 1) / 2;

    // projector columns are |v_a+> = (|j,a> + |j,-a>)/sqrt(2), a = k + 1/2
    Eigen::MatrixXd proj = Eigen::MatrixXd::Zero(full, sector.dim);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int k = 0; k < sector.dim; ++k) {
        const double a = k + 0.5;
        proj(static_cast<int>(a + j + 0.5), k) = inv_sqrt2;
        proj(static_cast<int>(-a + j + 0.5), k) = inv_sqrt2;
    }

    sector.jx = proj.transpose() * jx_full * proj;
    sector.jx2 = proj.transpose() * jx2_full * proj;
    sector.energies.resize(sector.dim);
    for (int k = 0; k < sector.dim; ++k) {
        const double a = k + 0.5;
        sector.energies(k) = omega * a * a;
    }
    return sector;
}

} // namespace qar
