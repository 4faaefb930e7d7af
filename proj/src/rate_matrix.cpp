#include "qar/rate_matrix.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "qar/errors.hpp"

namespace qar {

ReservoirChannel ReservoirChannel::from_spec(const ReservoirSpec& spec) {
    spec.validate();
    ReservoirChannel ch;
    ch.role = spec.role;
    ch.beta = spec.beta;
    ch.coupling = spec.coupling;
    ch.gamma = [spec](double w) { return gamma_rate(spec, w); };
    return ch;
}

bool RateMatrix::has(Role role) const {
    for (const auto& b : blocks)
        if (b.role == role) return true;
    return false;
}

const ReservoirBlock& RateMatrix::block(Role role) const {
    for (const auto& b : blocks)
        if (b.role == role) return b;
    throw DomainError(std::string("rate matrix has no '") + role_name(role) +
                      "' reservoir");
}

Eigen::MatrixXd RateMatrix::closed_block(Role role) const {
    Eigen::MatrixXd closed = block(role).rates;
    closed.diagonal() = -closed.colwise().sum();
    return closed;
}

RateMatrix build_rate_matrix(const SpinSector& sector,
                             const std::vector<ReservoirChannel>& channels) {
    const int dim = sector.dim;
    RateMatrix rm;
    rm.dim = dim;
    rm.energies = sector.energies;
    rm.omega.resize(dim, dim);
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b)
            rm.omega(a, b) = sector.energies(a) - sector.energies(b);

    const double min_gap = 2.0 * sector.omega - 1e-12;
    rm.total = Eigen::MatrixXd::Zero(dim, dim);
    for (const auto& ch : channels) {
        ReservoirBlock blk;
        blk.role = ch.role;
        blk.beta = ch.beta;
        blk.rates = Eigen::MatrixXd::Zero(dim, dim);
        const bool scaled = (ch.coupling == CouplingKind::jx2_over_n);
        const Eigen::MatrixXd& op = scaled ? sector.jx2 : sector.jx;
        const double scale = scaled ? 1.0 / sector.n_spins : 1.0;
        for (int a = 0; a < dim; ++a) {
            for (int b = 0; b < dim; ++b) {
                if (a == b) continue;
                const double element = op(a, b) * scale;
                if (element == 0.0) continue;
                const double w = sector.energies(b) - sector.energies(a);
                if (std::abs(w) < min_gap)
                    throw NumericalError("build_rate_matrix: transition frequency "
                                         "below the sector gap 2*Omega");
                blk.rates(a, b) = ch.gamma(w) * element * element;
            }
        }
        rm.total += blk.rates;
        rm.blocks.push_back(std::move(blk));
    }
    rm.total.diagonal() = -rm.total.colwise().sum();
    return rm;
}

RateMatrix build_rate_matrix(const SpinSector& sector,
                             const std::vector<ReservoirSpec>& specs) {
    std::vector<ReservoirChannel> channels;
    channels.reserve(specs.size());
    for (const auto& spec : specs) channels.push_back(ReservoirChannel::from_spec(spec));
    return build_rate_matrix(sector, channels);
}

RateMatrix assemble_rate_matrix(const Eigen::VectorXd& energies,
                                std::vector<ReservoirBlock> blocks) {
    const int dim = static_cast<int>(energies.size());
    RateMatrix rm;
    rm.dim = dim;
    rm.energies = energies;
    rm.omega.resize(dim, dim);
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b)
            rm.omega(a, b) = energies(a) - energies(b);
    rm.total = Eigen::MatrixXd::Zero(dim, dim);
    for (auto& blk : blocks) {
        if (blk.rates.rows() != dim || blk.rates.cols() != dim)
            throw DomainError("assemble_rate_matrix: block dimension mismatch");
        blk.rates.diagonal().setZero();
        if ((blk.rates.array() < 0.0).any())
            throw DomainError("assemble_rate_matrix: negative transition rate");
        rm.total += blk.rates;
    }
    rm.blocks = std::move(blocks);
    rm.total.diagonal() = -rm.total.colwise().sum();
    return rm;
}

CountingMatrices counting_moment_matrices(const RateMatrix& rm, Role counted) {
    const ReservoirBlock& blk = rm.block(counted);
    CountingMatrices cm;
    cm.counted = counted;
    cm.w1 = rm.omega.cwiseProduct(blk.rates);
    cm.w2 = rm.omega.cwiseProduct(cm.w1);
    cm.w1.diagonal().setZero();
    cm.w2.diagonal().setZero();
    return cm;
}

Eigen::VectorXd gibbs_populations(const Eigen::VectorXd& energies, double beta) {
    if (!(beta > 0.0)) throw DomainError("gibbs_populations: beta must be > 0");
    const double e_min = energies.minCoeff();
    Eigen::VectorXd pop = (-beta * (energies.array() - e_min)).exp();
    return pop / pop.sum();
}

} // namespace qar
