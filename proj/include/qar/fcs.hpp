#ifndef QAR_FCS_HPP
#define QAR_FCS_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "qar/rate_matrix.hpp"

namespace qar {

struct SolverDiagnostics {
    double residual = 0.0;           // ||R(0) rho||_2 of the returned solution
    int nullspace_dim = 0;           // singular values below threshold
    double singular_ratio = 0.0;     // sigma_min / sigma_max of R(0)
};

/// Stationary populations: least-squares solution of the rectangular system
/// [R(0); 1^T] rho = [0; 1] by column-pivoted QR.  The kernel of R(0) must be
/// one-dimensional (checked through the SVD at a 1e-8 threshold on normalized
/// singular values), otherwise DegeneracyError.  NumericalError if the
/// residual exceeds 1e-10 ||R|| or a population drops below -1e-10.
Eigen::VectorXd steady_state(const RateMatrix& rm, SolverDiagnostics* diag = nullptr);

/// Stationary energy current into the system from reservoir `counted`:
/// 1^T W1 rho.  Positive when the reservoir feeds energy into the system.
double energy_current(const RateMatrix& rm, Role counted);
double energy_current(const RateMatrix& rm, Role counted, const Eigen::VectorXd& rho);

/// Long-time energy-current noise of reservoir `counted`:
///   S = 1^T W2 rho + 2 1^T W1 sigma,
/// where the real auxiliary vector solves [R(0); 1^T] sigma = [I rho - W1 rho; 0].
double energy_noise(const RateMatrix& rm, Role counted);
double energy_noise(const RateMatrix& rm, Role counted, const Eigen::VectorXd& rho,
                    Eigen::VectorXd* sigma_out = nullptr);

struct ReservoirCurrent {
    Role role = Role::cold;
    double beta = 0.0;
    double current = 0.0;
};

/// One steady-state solve with everything downstream needs: populations,
/// every reservoir current, and the counted reservoir's noise.
struct FcsResult {
    Eigen::VectorXd rho;
    std::vector<ReservoirCurrent> currents;
    Role counted = Role::cold;
    double noise = 0.0;
    double activity = 0.0;  // sum_nu 1^T |W1^nu| rho, the roundoff scale of currents
    SolverDiagnostics diagnostics;

    double current(Role role) const;
};

FcsResult solve_fcs(const RateMatrix& rm, Role counted);

/// Dominant eigenvalue of the counting-field-dressed generator R(chi), i.e.
/// the branch continuously connected to 0 at chi = 0.  Off-diagonals of the
/// counted block carry exp(i chi omega(a,b)); the diagonal keeps its chi = 0
/// value.  The branch is followed by continuation with adaptive step
/// subdivision; OracleError if two eigenvalue candidates cannot be told
/// apart.  Validation oracle only; production paths stay real.
std::complex<double> cgf_dominant_eigenvalue(const RateMatrix& rm, Role counted,
                                             double chi);

/// Current and noise from 4th-order central differences of the dominant
/// eigenvalue at steps {h, 2h}, using lambda(-chi) = conj(lambda(chi)).
double cgf_current_fd(const RateMatrix& rm, Role counted, double step = 2e-3);
double cgf_noise_fd(const RateMatrix& rm, Role counted, double step = 2e-3);

} // namespace qar

#endif
