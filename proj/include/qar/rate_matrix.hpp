#ifndef QAR_RATE_MATRIX_HPP
#define QAR_RATE_MATRIX_HPP

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "qar/reservoir.hpp"
#include "qar/spin_sector.hpp"

namespace qar {

/// A reservoir reduced to what the rate equation needs: its role, inverse
/// temperature, coupling operator and rate kernel gamma(w).  ReservoirSpec
/// supplies the thermal peaked-density kernel; the dynamics module supplies
/// an Ohmic one.  beta = 0 marks a non-thermal (laser-like) channel.
struct ReservoirChannel {
    Role role = Role::cold;
    double beta = 1.0;
    CouplingKind coupling = CouplingKind::jx;
    std::function<double(double)> gamma;

    static ReservoirChannel from_spec(const ReservoirSpec& spec);
};

/// Per-reservoir off-diagonal rate block.  rates(a, b) is the transition
/// rate from state b to state a; the diagonal is zero.
struct ReservoirBlock {
    Role role = Role::cold;
    double beta = 1.0;
    Eigen::MatrixXd rates;
};

/// Pauli rate matrix in the sector basis: per-reservoir blocks, the closed
/// total R(0) (columns sum to zero), and the transition-frequency table
/// omega(a, b) = E_a - E_b.  Immutable after construction.
struct RateMatrix {
    int dim = 0;
    Eigen::VectorXd energies;
    Eigen::MatrixXd omega;
    std::vector<ReservoirBlock> blocks;
    Eigen::MatrixXd total;

    bool has(Role role) const;
    const ReservoirBlock& block(Role role) const;  // DomainError if absent

    /// Block of `role` with its own closing diagonal; each of these
    /// generators thermalizes the system to its reservoir's Gibbs state.
    Eigen::MatrixXd closed_block(Role role) const;
};

/// Assemble R from rates R^nu_{ab} = gamma_nu(E_b - E_a) |<v_a|A_nu|v_b>|^2
/// with A_nu = Jx or Jx^2/N.  Reservoirs enter additively.  Diagonal
/// coupling elements never contribute (they sit at zero frequency); a
/// defensive check rejects any contributing transition with |omega| < 2 Omega.
RateMatrix build_rate_matrix(const SpinSector& sector,
                             const std::vector<ReservoirChannel>& channels);
RateMatrix build_rate_matrix(const SpinSector& sector,
                             const std::vector<ReservoirSpec>& specs);

/// Assemble directly from energies and prebuilt blocks (used by the reduced
/// three-level models).
RateMatrix assemble_rate_matrix(const Eigen::VectorXd& energies,
                                std::vector<ReservoirBlock> blocks);

/// Real first and second energy-moment matrices of the counted reservoir:
/// W1(a,b) = omega(a,b) R^nu(a,b) and W2(a,b) = omega(a,b)^2 R^nu(a,b),
/// zero diagonal.  Energy entering the system counts positive.  These are
/// the counting-field derivatives -i R'(0) and -R''(0) in real form.
struct CountingMatrices {
    Role counted = Role::cold;
    Eigen::MatrixXd w1;
    Eigen::MatrixXd w2;
};

CountingMatrices counting_moment_matrices(const RateMatrix& rm, Role counted);

/// Normalized Gibbs populations exp(-beta E_a)/Z over the given energies.
Eigen::VectorXd gibbs_populations(const Eigen::VectorXd& energies, double beta);

} // namespace qar

#endif
