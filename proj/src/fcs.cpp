#include "qar/fcs.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "qar/errors.hpp"

namespace qar {

namespace {

// rank floor: normalized singular values below dim * eps are treated as
// zero.  The slow top-sector modes of peaked-bath models sit around 1e-10
// of sigma_max, so any looser threshold would misread them as extra
// steady states.
constexpr double k_residual_tol = 1e-10;

// Neumaier-compensated dot of the column sums of (weight o block) with rho:
// sum_{a != b} weight(a,b) block(a,b) rho(b).  The up/down flows nearly
// cancel, so the summation error is kept at one rounding of the total
// activity rather than growing with the number of terms.
double compensated_flow(const Eigen::MatrixXd& weight, const Eigen::MatrixXd& block,
                        const Eigen::VectorXd& rho) {
    double sum = 0.0, comp = 0.0;
    const int dim = static_cast<int>(rho.size());
    for (int b = 0; b < dim; ++b) {
        for (int a = 0; a < dim; ++a) {
            if (a == b) continue;
            const double term = weight(a, b) * block(a, b) * rho(b);
            const double t = sum + term;
            comp += (std::abs(sum) >= std::abs(term)) ? (sum - t) + term
                                                      : (term - t) + sum;
            sum = t;
        }
    }
    return sum + comp;
}

Eigen::VectorXd solve_augmented(const Eigen::MatrixXd& generator,
                                const Eigen::VectorXd& rhs_top, double rhs_bottom) {
    const int dim = static_cast<int>(generator.rows());
    Eigen::MatrixXd aug(dim + 1, dim);
    aug.topRows(dim) = generator;
    aug.row(dim).setOnes();
    Eigen::VectorXd rhs(dim + 1);
    rhs.head(dim) = rhs_top;
    rhs(dim) = rhs_bottom;
    return aug.colPivHouseholderQr().solve(rhs);
}

} // namespace

Eigen::VectorXd steady_state(const RateMatrix& rm, SolverDiagnostics* diag) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(rm.total);
    const auto& sv = svd.singularValues();
    const double sv_max = sv(0);
    const double rank_floor =
        rm.dim * std::numeric_limits<double>::epsilon() * sv_max;
    int null_dim = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) <= rank_floor) ++null_dim;
    if (diag) {
        diag->nullspace_dim = null_dim;
        diag->singular_ratio = sv(sv.size() - 1) / sv_max;
    }
    if (null_dim != 1) {
        std::ostringstream msg;
        msg << "steady_state: nullspace dimension " << null_dim
            << " (rate graph disconnected or degenerate steady state)";
        throw DegeneracyError(msg.str());
    }

    Eigen::VectorXd rho =
        solve_augmented(rm.total, Eigen::VectorXd::Zero(rm.dim), 1.0);

    const double residual = (rm.total * rho).norm();
    const double norm_r = rm.total.norm();
    if (diag) diag->residual = residual;
    if (residual > k_residual_tol * norm_r) {
        std::ostringstream msg;
        msg << "steady_state: residual " << residual << " exceeds " << k_residual_tol
            << " * ||R|| = " << k_residual_tol * norm_r;
        throw NumericalError(msg.str());
    }
    // Deep Boltzmann-tail populations sit far below the solve's dynamic
    // range and come back as least-squares noise of order eps * cond; only
    // negatives beyond that band indicate a broken solve.
    const double noise_band = 1e-8 * rho.maxCoeff();
    if (rho.minCoeff() < -noise_band)
        throw NumericalError("steady_state: negative population beyond tolerance");
    rho = rho.cwiseMax(0.0);
    rho /= rho.sum();
    return rho;
}

double energy_current(const RateMatrix& rm, Role counted) {
    return energy_current(rm, counted, steady_state(rm));
}

double energy_current(const RateMatrix& rm, Role counted, const Eigen::VectorXd& rho) {
    return compensated_flow(rm.omega, rm.block(counted).rates, rho);
}

double energy_noise(const RateMatrix& rm, Role counted) {
    return energy_noise(rm, counted, steady_state(rm));
}

double energy_noise(const RateMatrix& rm, Role counted, const Eigen::VectorXd& rho,
                    Eigen::VectorXd* sigma_out) {
    const CountingMatrices cm = counting_moment_matrices(rm, counted);
    const double current = energy_current(rm, counted, rho);

    Eigen::VectorXd rhs = current * rho - cm.w1 * rho;
    Eigen::VectorXd sigma = solve_augmented(rm.total, rhs, 0.0);
    if (std::abs(sigma.sum()) > 1e-12 * std::max(1.0, sigma.cwiseAbs().maxCoeff()))
        throw NumericalError("energy_noise: auxiliary vector is not traceless");
    if (sigma_out) *sigma_out = sigma;

    const Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(rm.dim, rm.dim);
    const double s2 = compensated_flow(rm.omega.cwiseProduct(rm.omega),
                                       rm.block(counted).rates, rho);
    const double s1 = compensated_flow(ones, cm.w1, sigma);
    return s2 + 2.0 * s1;
}

double FcsResult::current(Role role) const {
    for (const auto& c : currents)
        if (c.role == role) return c.current;
    throw DomainError(std::string("no current for reservoir '") + role_name(role) +
                      "'");
}

FcsResult solve_fcs(const RateMatrix& rm, Role counted) {
    FcsResult out;
    out.counted = counted;
    out.rho = steady_state(rm, &out.diagnostics);
    for (const auto& blk : rm.blocks) {
        ReservoirCurrent rc;
        rc.role = blk.role;
        rc.beta = blk.beta;
        rc.current = energy_current(rm, blk.role, out.rho);
        out.currents.push_back(rc);
        out.activity +=
            (rm.omega.cwiseAbs().cwiseProduct(blk.rates) * out.rho).sum();
    }
    out.noise = energy_noise(rm, counted, out.rho);
    return out;
}

namespace {

Eigen::MatrixXcd dressed_generator(const RateMatrix& rm, Role counted, double chi) {
    Eigen::MatrixXcd gen = rm.total.cast<std::complex<double>>();
    const Eigen::MatrixXd& rates = rm.block(counted).rates;
    for (int b = 0; b < rm.dim; ++b) {
        for (int a = 0; a < rm.dim; ++a) {
            if (a == b || rates(a, b) == 0.0) continue;
            const std::complex<double> phase =
                std::exp(std::complex<double>(0.0, chi * rm.omega(a, b)));
            gen(a, b) += rates(a, b) * (phase - 1.0);
        }
    }
    return gen;
}

// One continuation step: eigenvalues at chi, pick the one nearest to the
// branch value at the previous chi.  If the runner-up is not clearly
// farther, bisect the step; give up after max_depth halvings.
std::complex<double> track_branch(const RateMatrix& rm, Role counted,
                                  double chi_from, std::complex<double> lambda_from,
                                  double chi_to, int depth) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(
        dressed_generator(rm, counted, chi_to), /*computeEigenvectors=*/false);
    const auto& values = solver.eigenvalues();
    int best = 0;
    double d1 = std::abs(values(0) - lambda_from);
    double d2 = std::numeric_limits<double>::infinity();
    for (int i = 1; i < values.size(); ++i) {
        const double d = std::abs(values(i) - lambda_from);
        if (d < d1) {
            d2 = d1;
            d1 = d;
            best = i;
        } else if (d < d2) {
            d2 = d;
        }
    }
    if (values.size() > 1 && d1 >= 0.4 * d2) {
        if (depth <= 0)
            throw OracleError("cgf_dominant_eigenvalue: eigenvalue branch ambiguous "
                              "(two candidates within tracking tolerance)");
        const double chi_mid = 0.5 * (chi_from + chi_to);
        const std::complex<double> lambda_mid =
            track_branch(rm, counted, chi_from, lambda_from, chi_mid, depth - 1);
        return track_branch(rm, counted, chi_mid, lambda_mid, chi_to, depth - 1);
    }
    return values(best);
}

} // namespace

std::complex<double> cgf_dominant_eigenvalue(const RateMatrix& rm, Role counted,
                                             double chi) {
    (void)rm.block(counted);
    if (chi == 0.0) return {0.0, 0.0};
    return track_branch(rm, counted, 0.0, {0.0, 0.0}, chi, /*depth=*/14);
}

double cgf_current_fd(const RateMatrix& rm, Role counted, double step) {
    const std::complex<double> l1 = cgf_dominant_eigenvalue(rm, counted, step);
    const std::complex<double> l2 = cgf_dominant_eigenvalue(rm, counted, 2.0 * step);
    return (8.0 * l1.imag() - l2.imag()) / (6.0 * step);
}

double cgf_noise_fd(const RateMatrix& rm, Role counted, double step) {
    const std::complex<double> l1 = cgf_dominant_eigenvalue(rm, counted, step);
    const std::complex<double> l2 = cgf_dominant_eigenvalue(rm, counted, 2.0 * step);
    return (l2.real() - 16.0 * l1.real()) / (6.0 * step * step);
}

} // namespace qar
