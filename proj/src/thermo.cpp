#include "qar/thermo.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "qar/errors.hpp"

namespace qar {

double entropy_production(const std::vector<ReservoirCurrent>& flows,
                          double abs_floor, double rel_tol) {
    if (flows.empty()) throw DomainError("entropy_production: no currents");
    double sum = 0.0, max_abs = 0.0, sigma = 0.0;
    for (const auto& f : flows) {
        sum += f.current;
        max_abs = std::max(max_abs, std::abs(f.current));
        sigma -= f.beta * f.current;
    }
    const double tol = std::max(rel_tol * max_abs, abs_floor);
    if (std::abs(sum) > tol) {
        std::ostringstream msg;
        msg << "entropy_production: first law violated, sum of currents " << sum
            << " exceeds tolerance " << tol;
        throw ConsistencyError(msg.str());
    }
    return sigma;
}

double tur_ratio(double noise, double entropy_production, double current) {
    if (current == 0.0) return std::numeric_limits<double>::infinity();
    return noise * entropy_production / (current * current);
}

double noise_to_signal(double noise, double current, double dt) {
    if (!(current > 0.0)) throw DomainError("noise_to_signal: current must be > 0");
    if (!(dt > 0.0)) throw DomainError("noise_to_signal: dt must be > 0");
    if (noise < 0.0) throw DomainError("noise_to_signal: negative noise");
    return std::sqrt(noise * dt) / (current * dt);
}

ThermoReport thermo_report(const FcsResult& fcs) {
    double beta_c = 0.0, beta_h = 0.0, beta_w = 0.0;
    double i_c = 0.0, i_w = 0.0;
    bool have_c = false, have_h = false, have_w = false;
    for (const auto& f : fcs.currents) {
        switch (f.role) {
            case Role::cold: beta_c = f.beta; i_c = f.current; have_c = true; break;
            case Role::hot: beta_h = f.beta; have_h = true; break;
            case Role::work: beta_w = f.beta; i_w = f.current; have_w = true; break;
        }
    }
    if (!have_c || !have_h || !have_w)
        throw DomainError("thermo_report: needs cold, hot and work reservoirs");
    if (fcs.counted != Role::cold)
        throw DomainError("thermo_report: noise must be counted on the cold reservoir");

    ThermoReport rep;
    rep.entropy_production = entropy_production(fcs.currents, 1e-13 * fcs.activity);
    rep.cooling = i_c > 0.0;
    rep.pumping = i_w > 0.0;
    rep.ordered = beta_c >= beta_h && beta_h >= beta_w;
    rep.cop = (i_w != 0.0) ? i_c / i_w : std::numeric_limits<double>::infinity();
    rep.cop_carnot = (beta_c > beta_h)
                         ? beta_h / (beta_c - beta_h)
                         : std::numeric_limits<double>::infinity();
    if (std::isfinite(rep.cop_carnot) && fcs.noise > 0.0)
        rep.cop_tur_bound =
            rep.cop_carnot / (1.0 + 2.0 * i_c / (fcs.noise * (beta_c - beta_h)));
    else
        rep.cop_tur_bound = rep.cop_carnot;
    rep.tur = tur_ratio(fcs.noise, rep.entropy_production, i_c);
    return rep;
}

} // namespace qar
