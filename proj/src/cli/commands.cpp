#include "qar/cli/commands.hpp"

#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>
#include <vector>

#include "qar/dynamics.hpp"
#include "qar/errors.hpp"
#include "qar/fcs.hpp"
#include "qar/reduced.hpp"
#include "qar/thermo.hpp"

namespace qar::cli {

namespace {

const char* k_point_header =
    "n,omega,I_c,I_h,I_w,S_c,sigma,cop,cop_carnot,cop_bound,tur,"
    "rho_ground,rho_low3,status";

std::string join_row(const std::vector<double>& values, const std::string& status) {
    std::ostringstream row;
    for (const double v : values) row << format_number(v) << ',';
    row << status;
    return row.str();
}

RateMatrix model_rate_matrix(const ModelConfig& model, bool reduced) {
    if (reduced) {
        const ReducedModelParams params = ReducedModelParams::at_resonance(
            model.n_spins, model.cold.gamma_bar, model.hot.gamma_bar,
            model.work.gamma_bar, model.cold.beta, model.hot.beta, model.work.beta,
            model.omega);
        return reduced_rate_matrix(params);
    }
    const SpinSector sector = build_sector(model.n_spins, model.omega);
    return build_rate_matrix(sector, model.reservoirs());
}

std::string evaluate_point(const ModelConfig& model, bool reduced,
                           bool catch_errors) {
    std::vector<double> cols;
    try {
        const RateMatrix rm = model_rate_matrix(model, reduced);
        const FcsResult fcs = solve_fcs(rm, model.counted);
        const ThermoReport rep = thermo_report(fcs);
        const int low = std::min(3, rm.dim);
        cols = {static_cast<double>(model.n_spins),
                model.omega,
                fcs.current(Role::cold),
                fcs.current(Role::hot),
                fcs.current(Role::work),
                fcs.noise,
                rep.entropy_production,
                rep.cop,
                rep.cop_carnot,
                rep.cop_tur_bound,
                rep.tur,
                fcs.rho(0),
                fcs.rho.head(low).sum()};
        return join_row(cols, "ok");
    } catch (const std::exception& err) {
        if (!catch_errors) throw;
        // per-point failure: keep the row, tag it, let the sweep continue
        cols.assign(13, std::nan(""));
        cols[0] = model.n_spins;
        cols[1] = model.omega;
        std::string status = std::string("error:") + err.what();
        for (auto& c : status)
            if (c == ',' || c == '\n') c = ';';
        return join_row(cols, status);
    }
}

ModelConfig model_at(const KeyValueConfig& base, const std::string& param1,
                     double value1, const std::string& param2, double value2) {
    KeyValueConfig cfg = base;
    if (!param1.empty()) cfg.set(param1, format_number(value1));
    if (!param2.empty()) cfg.set(param2, format_number(value2));
    return ModelConfig::from(cfg);
}

GridSpec grid_from(const KeyValueConfig& cfg, const std::string& prefix) {
    GridSpec grid;
    grid.param = cfg.get_string(prefix + ".param", "");
    grid.scale = cfg.get_string(prefix + ".scale", "linear");
    grid.min = cfg.get_double(prefix + ".min", 0.0);
    grid.max = cfg.get_double(prefix + ".max", 0.0);
    grid.count = cfg.get_int(prefix + ".count", 0);
    return grid;
}

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace

int cmd_steady(const KeyValueConfig& cfg, bool reduced, std::ostream& out) {
    const ModelConfig model = ModelConfig::from(cfg);
    out << k_point_header << '\n';
    out << evaluate_point(model, reduced, /*catch_errors=*/false) << '\n';
    return 0;
}

int cmd_sweep(const KeyValueConfig& cfg, bool reduced, std::ostream& out) {
    const GridSpec grid1 = grid_from(cfg, "sweep");
    const std::vector<double> axis1 = grid1.values();
    std::vector<double> axis2;
    GridSpec grid2 = grid_from(cfg, "sweep2");
    const bool two_d = !grid2.param.empty();
    if (two_d) axis2 = grid2.values();

    // flat row-major task list over (axis1, axis2)
    struct Task {
        double v1 = 0.0, v2 = 0.0;
    };
    std::vector<Task> tasks;
    for (const double v1 : axis1) {
        if (!two_d) {
            tasks.push_back({v1, 0.0});
            continue;
        }
        for (const double v2 : axis2) tasks.push_back({v1, v2});
    }

    std::vector<std::string> rows(tasks.size());
    const int workers =
        std::max(1, std::min<int>(cfg.get_int("workers", 1),
                                  static_cast<int>(tasks.size())));
    std::atomic<std::size_t> next{0};
    std::atomic<bool> config_failed{false};
    std::string config_message;
    auto run = [&]() {
        for (std::size_t i = next.fetch_add(1); i < tasks.size();
             i = next.fetch_add(1)) {
            try {
                const ModelConfig model =
                    model_at(cfg, grid1.param, tasks[i].v1,
                             two_d ? grid2.param : std::string(), tasks[i].v2);
                std::string prefix = format_number(tasks[i].v1) + ',';
                if (two_d) prefix += format_number(tasks[i].v2) + ',';
                rows[i] = prefix + evaluate_point(model, reduced,
                                                  /*catch_errors=*/true);
            } catch (const std::exception& err) {
                if (!config_failed.exchange(true)) config_message = err.what();
            }
        }
    };
    if (workers == 1) {
        run();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(run);
        for (auto& t : pool) t.join();
    }
    if (config_failed) throw ConfigError(config_message);

    out << grid1.param;
    if (two_d) out << ',' << grid2.param;
    out << ',' << k_point_header << '\n';
    for (const auto& row : rows) out << row << '\n';
    return 0;
}

int cmd_dynamics(const KeyValueConfig& cfg, std::ostream& out) {
    const double omega = cfg.get_double("omega", 1.0);
    OhmicBath bath;
    bath.cutoff = cfg.get_double("dynamics.cutoff", 100.0) * omega;
    bath.beta = cfg.get_double("dynamics.beta_final", 4.0) / omega;
    const double beta_init = cfg.get_double("dynamics.beta_init", 1.0) / omega;
    const double threshold = cfg.get_double("dynamics.threshold", 1e-6);
    const double t_max = cfg.get_double("dynamics.t_max", 1e6) / omega;

    const int traj_n = cfg.get_int("dynamics.trajectory_n", 0);
    if (traj_n > 0) {
        const double t_th =
            thermalization_time(traj_n, omega, bath, beta_init, threshold, t_max);
        const int points = std::max(2, cfg.get_int("dynamics.trajectory_points", 200));
        std::vector<double> times(points);
        const double t_lo = t_th > 0.0 ? 1e-3 * t_th : 1e-6 / omega;
        const double t_hi = t_th > 0.0 ? 3.0 * t_th : 1.0 / omega;
        for (int i = 0; i < points; ++i)
            times[i] = t_lo * std::exp(std::log(t_hi / t_lo) * i / (points - 1));
        const TrajectoryResult traj =
            relaxation_trajectory(traj_n, omega, bath, beta_init, times, threshold);
        out << "t,entropy\n";
        for (std::size_t i = 0; i < traj.times.size(); ++i)
            out << format_number(traj.times[i]) << ','
                << format_number(traj.entropies[i]) << '\n';
        return 0;
    }

    int n_min = cfg.get_int("dynamics.n_min", 11);
    const int n_max = cfg.get_int("dynamics.n_max", 51);
    if (n_min % 2 == 0) ++n_min;
    if (n_min < 3 || n_max < n_min)
        throw ConfigError("dynamics: need odd 3 <= n_min <= n_max");
    std::vector<double> ns, ts;
    for (int n = n_min; n <= n_max; n += 2) {
        ns.push_back(n);
        ts.push_back(thermalization_time(n, omega, bath, beta_init, threshold, t_max));
    }
    const double slope = ns.size() >= 2 ? fit_loglog_slope(ns, ts) : std::nan("");
    out << "n,t_th,loglog_slope\n";
    for (std::size_t i = 0; i < ns.size(); ++i)
        out << format_number(ns[i]) << ',' << format_number(ts[i]) << ','
            << format_number(slope) << '\n';
    return 0;
}

int cmd_rcmap(const KeyValueConfig& cfg, std::ostream& out) {
    const double gbar = cfg.get_double("rcmap.gamma_bar", 1.0);
    const double eps = cfg.get_double("rcmap.epsilon", 2.0);
    const double delta = cfg.get_double("rcmap.delta", 0.1);
    const double cutoff = cfg.get_double("rcmap.cutoff", 10.0);

    GridSpec grid;
    grid.param = "omega";
    grid.scale = cfg.get_string("rcmap.scale", "linear");
    grid.min = cfg.get_double("rcmap.omega_min", 0.05);
    grid.max = cfg.get_double("rcmap.omega_max", 20.0);
    grid.count = cfg.get_int("rcmap.count", 200);
    const std::vector<double> omegas = grid.values();

    ReservoirSpec density_spec =
        ReservoirSpec::thermal(Role::cold, gbar, eps, delta, 1.0);
    const RcMapResult closed = rc_map_closed_form(gbar, eps, delta, cutoff);
    const auto regularized = [&](double w) {
        return spectral_density(density_spec, w) * cutoff * cutoff /
               (cutoff * cutoff + w * w);
    };
    const auto [omega_sq_quad, lambda_sq_quad] = rc_map_numeric(regularized);
    const double omega_sq_closed = closed.omega_rc * closed.omega_rc;
    const double dev_omega =
        std::abs(omega_sq_closed - omega_sq_quad) / omega_sq_closed;
    const double dev_lambda =
        std::abs(closed.lambda_sq - lambda_sq_quad) / closed.lambda_sq;

    out << "omega,density,density_reg,density_residual,omega_rc_closed,"
           "omega_rc_quad,lambda2_closed,lambda2_quad,rel_dev_omega2,"
           "rel_dev_lambda2\n";
    for (const double w : omegas) {
        out << format_number(w) << ','
            << format_number(spectral_density(density_spec, w)) << ','
            << format_number(regularized(w)) << ','
            << format_number(closed.residual_density(w)) << ','
            << format_number(closed.omega_rc) << ','
            << format_number(std::sqrt(omega_sq_quad)) << ','
            << format_number(closed.lambda_sq) << ','
            << format_number(lambda_sq_quad) << ','
            << format_number(dev_omega) << ',' << format_number(dev_lambda) << '\n';
    }
    return 0;
}

int cmd_reduced(const KeyValueConfig& cfg, std::ostream& out) {
    const ModelConfig model = ModelConfig::from(cfg);
    if (model.n_spins < 5)
        throw ConfigError("reduced model needs n >= 5 (three levels)");
    const ReducedModelParams params = ReducedModelParams::at_resonance(
        model.n_spins, model.cold.gamma_bar, model.hot.gamma_bar,
        model.work.gamma_bar, model.cold.beta, model.hot.beta, model.work.beta,
        model.omega);
    const RateMatrix rm = reduced_rate_matrix(params);
    const FcsResult fcs = solve_fcs(rm, Role::cold);
    const double i_analytic = analytic_current(params);
    const double s_analytic = analytic_noise(params);
    const double i_numeric = fcs.current(Role::cold);
    const double s_numeric = fcs.noise;

    out << "n,gamma_c_eff,gamma_h_eff,gamma_w_eff,n_c,n_h,n_w,I_analytic,"
           "S_analytic,I_numeric,S_numeric,rel_dev_I,rel_dev_S\n";
    out << model.n_spins << ',' << format_number(params.gamma_c) << ','
        << format_number(params.gamma_h) << ',' << format_number(params.gamma_w)
        << ',' << format_number(params.n_c) << ',' << format_number(params.n_h)
        << ',' << format_number(params.n_w) << ',' << format_number(i_analytic)
        << ',' << format_number(s_analytic) << ',' << format_number(i_numeric)
        << ',' << format_number(s_numeric) << ','
        << format_number(std::abs(i_numeric - i_analytic) / std::abs(i_analytic))
        << ','
        << format_number(std::abs(s_numeric - s_analytic) / std::abs(s_analytic))
        << '\n';
    return 0;
}

} // namespace qar::cli
