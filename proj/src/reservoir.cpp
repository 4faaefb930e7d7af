#include "qar/reservoir.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <sstream>

#include "qar/errors.hpp"

namespace qar {

const char* role_name(Role role) {
    switch (role) {
        case Role::cold: return "cold";
        case Role::hot: return "hot";
        case Role::work: return "work";
    }
    return "?";
}

Role parse_role(const std::string& name) {
    if (name == "cold") return Role::cold;
    if (name == "hot") return Role::hot;
    if (name == "work") return Role::work;
    throw DomainError("unknown reservoir role '" + name + "'");
}

void ReservoirSpec::validate() const {
    if (!(gamma_bar > 0.0)) throw DomainError("reservoir: gamma_bar must be > 0");
    if (!(epsilon > 0.0)) throw DomainError("reservoir: epsilon must be > 0");
    if (!(delta > 0.0)) throw DomainError("reservoir: delta must be > 0");
    if (!(beta > 0.0))
        throw DomainError("reservoir: beta must be > 0 (use a small beta for the "
                          "infinite-temperature limit)");
}

ReservoirSpec ReservoirSpec::thermal(Role role, double gamma_bar, double epsilon,
                                     double delta, double beta) {
    ReservoirSpec spec;
    spec.role = role;
    spec.coupling = (role == Role::hot) ? CouplingKind::jx2_over_n : CouplingKind::jx;
    spec.gamma_bar = gamma_bar;
    spec.epsilon = epsilon;
    spec.delta = delta;
    spec.beta = beta;
    return spec;
}

double spectral_density(const ReservoirSpec& spec, double w) {
    const double dm = (w - spec.epsilon) * (w - spec.epsilon) + spec.delta * spec.delta;
    const double dp = (w + spec.epsilon) * (w + spec.epsilon) + spec.delta * spec.delta;
    return 4.0 * spec.gamma_bar * spec.epsilon * spec.delta * spec.delta * w / (dm * dp);
}

double bose(double beta, double w) {
    if (!(beta > 0.0)) throw DomainError("bose: beta must be > 0");
    if (w == 0.0) throw DomainError("bose: occupation undefined at w = 0");
    const double x = beta * w;
    if (x > 700.0) return 0.0;
    return 1.0 / std::expm1(x);
}

double gamma_rate(const ReservoirSpec& spec, double w) {
    if (w == 0.0) throw DomainError("gamma_rate: undefined at w = 0");
    if (w > 0.0) return spectral_density(spec, w) * (1.0 + bose(spec.beta, w));
    return spectral_density(spec, -w) * bose(spec.beta, -w);
}

RcMapResult rc_map_closed_form(double gamma_bar, double epsilon, double delta,
                               double cutoff) {
    if (!(gamma_bar > 0.0) || !(epsilon > 0.0) || !(delta > 0.0) || !(cutoff > 0.0))
        throw DomainError("rc_map_closed_form: all parameters must be positive");
    RcMapResult out;
    const double omega_sq = epsilon * epsilon + delta * delta + 2.0 * cutoff * delta;
    out.omega_rc = std::sqrt(omega_sq);
    const double shifted = epsilon * epsilon + (cutoff + delta) * (cutoff + delta);
    out.lambda_sq =
        gamma_bar * delta * epsilon * cutoff * cutoff / (2.0 * out.omega_rc * shifted);
    out.residual_scale = 2.0 * (delta / out.omega_rc) * shifted;
    out.residual_pole = cutoff + 2.0 * delta;
    out.cutoff = cutoff;
    return out;
}

namespace {

// int_0^inf w^k G(w) dw with w = t/(1-t); the integrand decays only
// polynomially, so the compactified form is what the subdivision works on.
double moment_integral(const std::function<double(double)>& density, int power,
                       const QuadratureControls& controls, double* err_out) {
    using quadrature = boost::math::quadrature::gauss_kronrod<double, 15>;
    auto integrand = [&](double t) {
        const double u = 1.0 - t;
        const double w = t / u;
        double value = density(w) / (u * u);
        for (int k = 0; k < power; ++k) value *= w;
        return std::isfinite(value) ? value : 0.0;
    };
    double error = 0.0;
    const double result = quadrature::integrate(integrand, 0.0, 1.0,
                                                controls.max_depth, 1e-14, &error);
    if (err_out) *err_out = error;
    return result;
}

} // namespace

std::pair<double, double> rc_map_numeric(const std::function<double(double)>& density,
                                         const QuadratureControls& controls) {
    double err1 = 0.0, err3 = 0.0;
    const double m1 = moment_integral(density, 1, controls, &err1);
    const double m3 = moment_integral(density, 3, controls, &err3);

    const auto converged = [&](double value, double error) {
        return error <= controls.abs_tol + controls.rel_tol * std::abs(value);
    };
    if (!std::isfinite(m1) || !std::isfinite(m3) || !converged(m1, err1) ||
        !converged(m3, err3)) {
        std::ostringstream msg;
        msg << "rc_map_numeric: moment integrals did not converge "
            << "(int w G = " << m1 << " +- " << err1 << ", int w^3 G = " << m3
            << " +- " << err3 << "); the density likely decays too slowly";
        throw NumericalError(msg.str());
    }
    if (!(m1 > 0.0))
        throw NumericalError("rc_map_numeric: first moment must be positive");

    const double omega_sq = m3 / m1;
    const double lambda_sq = m1 / (2.0 * M_PI * std::sqrt(omega_sq));
    return {omega_sq, lambda_sq};
}

} // namespace qar
