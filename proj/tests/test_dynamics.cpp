#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "qar/dynamics.hpp"
#include "qar/errors.hpp"
#include "qar/fcs.hpp"
#include "support/models.hpp"

using namespace qar;

namespace {

RateMatrix two_state(double up, double down) {
    Eigen::VectorXd energies(2);
    energies << 0.25, 2.25;
    ReservoirBlock blk{Role::cold, 1.0, Eigen::MatrixXd::Zero(2, 2)};
    blk.rates(0, 1) = down;
    blk.rates(1, 0) = up;
    return assemble_rate_matrix(energies, {blk});
}

} // namespace

TEST_CASE("propagate") {
    const RateMatrix rm = two_state(0.4, 1.1);
    Eigen::VectorXd rho0(2);
    rho0 << 1.0, 0.0;

    SUBCASE("t = 0 is the identity") {
        CHECK((propagate(rm, rho0, 0.0) - rho0).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("two-state relaxation at rate u + d") {
        const double u = 0.4, d = 1.1, t = 0.7;
        const Eigen::VectorXd rho = propagate(rm, rho0, t);
        const double p_ss = d / (u + d);
        const double expected = p_ss + (1.0 - p_ss) * std::exp(-(u + d) * t);
        CHECK(rho(0) == doctest::Approx(expected).epsilon(1e-12));
    }
    SUBCASE("composition") {
        const Eigen::VectorXd one = propagate(rm, propagate(rm, rho0, 0.3), 0.9);
        const Eigen::VectorXd two = propagate(rm, rho0, 1.2);
        CHECK((one - two).cwiseAbs().maxCoeff() < 1e-8);
    }
    SUBCASE("long-time limit meets the steady-state solver") {
        const testing::StudyPoint point;
        const RateMatrix model = point.reduced_model(11);
        Eigen::EigenSolver<Eigen::MatrixXd> eig(model.total);
        double slowest = 0.0;
        for (int i = 0; i < eig.eigenvalues().size(); ++i) {
            const double re = eig.eigenvalues()(i).real();
            if (re < -1e-10 && (slowest == 0.0 || re > slowest)) slowest = re;
        }
        REQUIRE(slowest < 0.0);
        Eigen::VectorXd start = Eigen::VectorXd::Zero(model.dim);
        start(model.dim - 1) = 1.0;
        const Eigen::VectorXd late = propagate(model, start, 1e3 / -slowest);
        CHECK((late - steady_state(model)).cwiseAbs().maxCoeff() < 1e-8);
    }
    SUBCASE("input validation") {
        CHECK_THROWS_AS(propagate(rm, rho0, -1.0), DomainError);
        Eigen::VectorXd bad(2);
        bad << 0.7, 0.7;
        CHECK_THROWS_AS(propagate(rm, bad, 1.0), DomainError);
    }
}

TEST_CASE("relative entropy") {
    Eigen::VectorXd p(2), q(2);
    p << 1.0, 0.0;
    q << 0.5, 0.5;
    CHECK(relative_entropy(p, p) == 0.0);
    CHECK(relative_entropy(p, q) == doctest::Approx(std::log(2.0)).epsilon(1e-14));

    SUBCASE("non-negative on random pairs") {
        testing::SeededRng rng(42);
        for (int trial = 0; trial < 50; ++trial) {
            Eigen::VectorXd a(4), b(4);
            for (int i = 0; i < 4; ++i) {
                a(i) = rng.uniform(1e-3, 1.0);
                b(i) = rng.uniform(1e-3, 1.0);
            }
            a /= a.sum();
            b /= b.sum();
            CHECK(relative_entropy(a, b) >= 0.0);
        }
    }
    SUBCASE("support violation") {
        Eigen::VectorXd r(2);
        r << 0.0, 1.0;
        CHECK_THROWS_AS(relative_entropy(q, r), DomainError);
    }
}

TEST_CASE("thermalization time") {
    OhmicBath bath;
    bath.cutoff = 100.0;
    bath.beta = 4.0;

    SUBCASE("already thermal") {
        CHECK(thermalization_time(11, 1.0, bath, 4.0) == 0.0);
    }
    SUBCASE("doubling the coupling halves the time") {
        const double t1 = thermalization_time(11, 1.0, bath, 1.0);
        OhmicBath twice = bath;
        twice.amplitude = 2.0;
        const double t2 = thermalization_time(11, 1.0, twice, 1.0);
        CHECK(t2 == doctest::Approx(0.5 * t1).epsilon(1e-5));
    }
    SUBCASE("entropy decreases monotonically along the trajectory") {
        const double t_th = thermalization_time(15, 1.0, bath, 1.0);
        std::vector<double> times;
        for (int i = 0; i <= 40; ++i) times.push_back(t_th * 1.2 * i / 40.0);
        const TrajectoryResult traj =
            relaxation_trajectory(15, 1.0, bath, 1.0, times);
        for (std::size_t i = 1; i < traj.entropies.size(); ++i)
            CHECK(traj.entropies[i] <= traj.entropies[i - 1] + 1e-10);
        for (int c = 0; c < traj.populations.cols(); ++c) {
            CHECK(traj.populations.col(c).sum() == doctest::Approx(1.0).epsilon(1e-10));
            CHECK(traj.populations.col(c).minCoeff() >= -1e-12);
        }
        CHECK(traj.t_th > 0.0);
        CHECK(traj.t_th <= t_th * 1.2);
    }
    SUBCASE("unreachable threshold times out") {
        OhmicBath weak = bath;
        weak.amplitude = 1e-12;
        CHECK_THROWS_AS(thermalization_time(11, 1.0, weak, 1.0, 1e-6, 1.0),
                        NumericalError);
    }
    SUBCASE("1/N^2 trend over a short window") {
        std::vector<double> ns, ts;
        for (int n = 11; n <= 21; n += 2) {
            ns.push_back(n);
            ts.push_back(thermalization_time(n, 1.0, bath, 1.0));
        }
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < ns.size(); ++i) {
            sx += std::log(ns[i]);
            sy += std::log(ts[i]);
            sxx += std::log(ns[i]) * std::log(ns[i]);
            sxy += std::log(ns[i]) * std::log(ts[i]);
        }
        const double n = static_cast<double>(ns.size());
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        CHECK(slope == doctest::Approx(-2.0).epsilon(0.08));
    }
}

TEST_CASE("waiting times in the zero-temperature cascade") {
    const auto flat = [](double) { return 1.0; };

    SUBCASE("single step from a0 = 3/2 at N = 3") {
        CHECK(waiting_time_mean(3, 1.0, flat, 1.5) ==
              doctest::Approx(4.0 / 3.0).epsilon(1e-14));
    }
    SUBCASE("each exponential waiting density is normalized with mean 1/R") {
        const std::vector<double> rates = cascade_rates(9, 1.0, flat, 4.5);
        REQUIRE(rates.size() == 4);
        using quadrature = boost::math::quadrature::gauss_kronrod<double, 15>;
        for (const double rate : rates) {
            const auto density = [rate](double tau) {
                return rate * std::exp(-rate * tau);
            };
            const double norm = quadrature::integrate(
                density, 0.0, std::numeric_limits<double>::infinity(), 10, 1e-12);
            const double mean = quadrature::integrate(
                [&](double tau) { return tau * density(tau); }, 0.0,
                std::numeric_limits<double>::infinity(), 10, 1e-12);
            CHECK(norm == doctest::Approx(1.0).epsilon(1e-8));
            CHECK(mean == doctest::Approx(1.0 / rate).epsilon(1e-8));
        }
    }
    SUBCASE("superradiant shortening: N^2 <tau> approaches 16/Gamma(2 Omega)") {
        for (const int n : {1001, 10001}) {
            const double mean = waiting_time_mean(n, 1.0, flat, 1.5);
            CHECK(mean * n * static_cast<double>(n) ==
                  doctest::Approx(16.0).epsilon(8.0 / n));
        }
    }
    SUBCASE("label validation") {
        CHECK_THROWS_AS(waiting_time_mean(3, 1.0, flat, 2.5), DomainError);
        CHECK_THROWS_AS(waiting_time_mean(9, 1.0, flat, 1.0), DomainError);
        CHECK_THROWS_AS(waiting_time_mean(9, 1.0, flat, 0.5), DomainError);
    }
}
