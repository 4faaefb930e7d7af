#ifndef QAR_RESERVOIR_HPP
#define QAR_RESERVOIR_HPP

#include <functional>
#include <string>
#include <utility>

namespace qar {

enum class Role { cold, hot, work };

/// Which system operator a reservoir couples to: Jx (dipole-like) or Jx^2/N
/// (two-particle flip, scaled to keep dissipation balanced for large N).
enum class CouplingKind { jx, jx2_over_n };

const char* role_name(Role role);
Role parse_role(const std::string& name);

/// One thermal reservoir with the peaked spectral density
///   Gamma(w) = 4 gbar eps delta^2 w / ([(w-eps)^2+delta^2][(w+eps)^2+delta^2]).
struct ReservoirSpec {
    Role role = Role::cold;
    CouplingKind coupling = CouplingKind::jx;
    double gamma_bar = 1.0;  // peak height
    double epsilon = 1.0;    // peak position
    double delta = 0.1;      // peak width
    double beta = 1.0;       // inverse temperature, strictly positive

    /// Throws DomainError if any parameter is out of range.
    void validate() const;

    /// Spec with the paper's coupling convention: hot uses Jx^2/N, cold and
    /// work use Jx.
    static ReservoirSpec thermal(Role role, double gamma_bar, double epsilon,
                                 double delta, double beta);
};

/// Peaked spectral density of `spec`, continued to negative frequencies as an
/// odd function.  Total function of real w.
double spectral_density(const ReservoirSpec& spec, double w);

/// Bose-Einstein occupation 1/(exp(beta*w) - 1).  Stable for tiny and huge
/// |beta*w|; returns 0 when beta*w > 700 (occupation below double range).
/// Throws DomainError for w = 0.
double bose(double beta, double w);

/// Rate kernel gamma(w) = Gamma(w) (1 + n(w)).  Evaluated as
/// Gamma(-w) n(-w) for w < 0 so that absorption rates never suffer
/// cancellation; this keeps the KMS ratio gamma(-w)/gamma(w) = exp(-beta w)
/// exact to rounding.  Throws DomainError for w = 0.
double gamma_rate(const ReservoirSpec& spec, double w);

/// Reaction-coordinate mapping of a regularized peaked density
/// Gamma_reg(w) = Gamma(w) Delta^2/(Delta^2 + w^2): collective-mode energy,
/// squared system-mode coupling, and the Lorentz-Drude residual density.
struct RcMapResult {
    double omega_rc = 0.0;        // mode energy (tilde Omega)
    double lambda_sq = 0.0;       // squared coupling (tilde lambda^2)
    double residual_scale = 0.0;  // residual density prefactor
    double residual_pole = 0.0;   // residual density pole (Delta + 2 delta)
    double cutoff = 0.0;          // regularization Delta

    /// Residual Lorentz-Drude density scale * w / (w^2 + pole^2); odd in w.
    double residual_density(double w) const {
        return residual_scale * w / (w * w + residual_pole * residual_pole);
    }
};

/// Closed forms: omega_rc^2 = eps^2 + delta^2 + 2 Delta delta and
/// lambda^2 = gbar delta eps Delta^2 / (2 omega_rc (eps^2 + (Delta+delta)^2)).
RcMapResult rc_map_closed_form(double gamma_bar, double epsilon, double delta,
                               double cutoff);

struct QuadratureControls {
    double abs_tol = 1e-9;
    double rel_tol = 1e-9;
    int max_depth = 18;
};

/// Moment integrals of an arbitrary density on [0, inf), mapped to [0, 1)
/// by w = t/(1-t) and integrated by adaptive Gauss-Kronrod:
///   omega_rc^2 = int w^3 G dw / int w G dw,
///   lambda^2   = int w G dw / (2 pi omega_rc).
/// Returns (omega_rc^2, lambda^2).  Serves as the oracle for
/// rc_map_closed_form.  Throws NumericalError with the achieved error
/// estimates when either integral fails to converge (which is the expected
/// outcome for the unregularized peaked density, whose third moment
/// diverges).
std::pair<double, double> rc_map_numeric(const std::function<double(double)>& density,
                                         const QuadratureControls& controls = {});

} // namespace qar

#endif
