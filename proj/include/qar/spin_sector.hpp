#ifndef QAR_SPIN_SECTOR_HPP
#define QAR_SPIN_SECTOR_HPP

#include <Eigen/Dense>

namespace qar {

/// Even-parity, maximum-angular-momentum sector of H = Omega * Jz^2 for an
/// odd number of spins.  States are |v_a+> = (|j,a> + |j,-a>)/sqrt(2) with
/// half-integer labels a = 1/2, 3/2, ..., N/2 stored at index k = a - 1/2.
/// Immutable after construction; safe to share between threads.
struct SpinSector {
    int n_spins = 0;           // N, odd
    double omega = 1.0;        // energy scale
    int dim = 0;               // (N+1)/2
    Eigen::VectorXd energies;  // E_k = omega * (k + 1/2)^2
    Eigen::MatrixXd jx;        // <v_a+| Jx |v_b+>
    Eigen::MatrixXd jx2;       // <v_a+| Jx^2 |v_b+>

    /// Physical half-integer label of sector index k.
    double label(int k) const { return k + 0.5; }
};

/// Ladder amplitude alpha_a^{+-} = sqrt(N/2 (N/2+1) - a(a +- 1)).
/// `sign` is +1 for raising, -1 for lowering.  Exactly zero at the sector
/// edge (a = +-N/2 with matching sign).  Throws DomainError for labels
/// outside the spin multiplet.
double ladder_coefficient(int n_spins, double a, int sign);

/// Construct the sector by building Jx in the full (N+1)-dimensional Dicke
/// basis from ladder amplitudes, squaring it, and projecting both operators
/// onto the even-parity vectors.  Throws DomainError unless N is odd, >= 3,
/// and omega > 0.
SpinSector build_sector(int n_spins, double omega);

} // namespace qar

#endif
