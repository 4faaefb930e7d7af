#include <doctest.h>

#include <cmath>
#include <complex>

#include "qar/errors.hpp"
#include "qar/rate_matrix.hpp"
#include "support/models.hpp"

using namespace qar;

namespace {

ReservoirChannel flat_channel(Role role, double emission, double absorption) {
    ReservoirChannel ch;
    ch.role = role;
    ch.beta = 1.0;
    ch.coupling = CouplingKind::jx;
    ch.gamma = [emission, absorption](double w) {
        return w > 0 ? emission : absorption;
    };
    return ch;
}

} // namespace

TEST_CASE("zero-temperature reservoir only decays") {
    const SpinSector sector = build_sector(7, 1.0);
    const RateMatrix rm = build_rate_matrix(sector, {flat_channel(Role::cold, 1.0, 0.0)});
    const Eigen::MatrixXd& rates = rm.block(Role::cold).rates;
    for (int a = 0; a < rm.dim; ++a)
        for (int b = 0; b < rm.dim; ++b)
            if (rm.energies(a) > rm.energies(b)) CHECK(rates(a, b) == 0.0);
}

TEST_CASE("N=3 downward rate from the sector matrix element") {
    const SpinSector sector = build_sector(3, 1.0);
    const RateMatrix rm = build_rate_matrix(sector, {flat_channel(Role::cold, 1.0, 0.0)});
    // gamma(2 Omega) = 1, |<1/2|Jx|3/2>|^2 = 3/4
    CHECK(rm.block(Role::cold).rates(0, 1) == doctest::Approx(0.75).epsilon(1e-14));
}

TEST_CASE("study-point rate matrix invariants") {
    const testing::StudyPoint point;
    const RateMatrix rm = point.full_model(31);

    SUBCASE("trace preservation and sign structure") {
        const Eigen::VectorXd colsum = rm.total.colwise().sum();
        for (int b = 0; b < rm.dim; ++b) {
            CHECK(std::abs(colsum(b)) <=
                  1e-13 * rm.total.col(b).cwiseAbs().maxCoeff());
            CHECK(rm.total(b, b) <= 0.0);
            for (int a = 0; a < rm.dim; ++a)
                if (a != b) CHECK(rm.total(a, b) >= 0.0);
        }
    }

    SUBCASE("local detailed balance per reservoir") {
        const double scale = rm.total.cwiseAbs().maxCoeff();
        for (const auto& blk : rm.blocks) {
            for (int a = 0; a < rm.dim; ++a) {
                for (int b = a + 1; b < rm.dim; ++b) {
                    // only pairs whose ratio is representable in doubles
                    if (std::min(blk.rates(a, b), blk.rates(b, a)) < 1e-150 * scale)
                        continue;
                    const double expected =
                        std::exp(-blk.beta * (rm.energies(a) - rm.energies(b)));
                    CHECK(blk.rates(a, b) / blk.rates(b, a) ==
                          doctest::Approx(expected).epsilon(1e-12));
                }
            }
        }
    }

    SUBCASE("each closed block leaves its own Gibbs state stationary") {
        for (const auto& blk : rm.blocks) {
            const Eigen::MatrixXd gen = rm.closed_block(blk.role);
            const Eigen::VectorXd weight =
                (-blk.beta * (rm.energies.array() - rm.energies.minCoeff())).exp();
            const Eigen::VectorXd num = (gen * weight.matrix()).cwiseAbs();
            const Eigen::VectorXd den = gen.cwiseAbs() * weight.matrix();
            const double den_max = den.maxCoeff();
            for (int a = 0; a < rm.dim; ++a) {
                if (den(a) < 1e-150 * den_max) continue;  // numerically vacuous row
                CHECK(num(a) / den(a) <= 1e-10);
            }
        }
    }

    SUBCASE("reservoirs enter additively") {
        Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(rm.dim, rm.dim);
        for (const auto& blk : rm.blocks) sum += blk.rates;
        sum.diagonal() = -sum.colwise().sum();
        CHECK((sum - rm.total).cwiseAbs().maxCoeff() == 0.0);

        // dropping a reservoir equals zeroing its block
        auto specs = point.reservoirs();
        specs.erase(specs.begin() + 1);  // remove hot
        const RateMatrix without_hot =
            build_rate_matrix(build_sector(31, 1.0), specs);
        Eigen::MatrixXd expected = rm.total;
        expected.diagonal().setZero();
        expected -= rm.block(Role::hot).rates;
        expected.diagonal() = -expected.colwise().sum();
        CHECK((without_hot.total - expected).cwiseAbs().maxCoeff() < 1e-15);
    }

    SUBCASE("all contributing transitions sit at or above the sector gap") {
        for (const auto& blk : rm.blocks)
            for (int a = 0; a < rm.dim; ++a)
                for (int b = 0; b < rm.dim; ++b)
                    if (blk.rates(a, b) != 0.0)
                        CHECK(std::abs(rm.omega(a, b)) >= 2.0 - 1e-12);
    }
}

TEST_CASE("counting moment matrices") {
    const testing::StudyPoint point;
    const RateMatrix rm = point.reduced_model(31);
    const CountingMatrices cm = counting_moment_matrices(rm, Role::cold);

    SUBCASE("cold block counts only the lowest transition, weight 2 Omega") {
        const double down = rm.block(Role::cold).rates(0, 1);
        const double up = rm.block(Role::cold).rates(1, 0);
        CHECK(cm.w1(0, 1) == doctest::Approx(-2.0 * down));
        CHECK(cm.w1(1, 0) == doctest::Approx(2.0 * up));
        CHECK(cm.w2(0, 1) == doctest::Approx(4.0 * down));
        CHECK(cm.w2(1, 0) == doctest::Approx(4.0 * up));
        CHECK(cm.w1.cwiseAbs().sum() ==
              doctest::Approx(2.0 * (down + up)));
    }

    SUBCASE("w2 = omega o w1 entrywise, w2 non-negative") {
        const RateMatrix full = point.full_model(11);
        for (const Role role : {Role::cold, Role::hot, Role::work}) {
            const CountingMatrices c = counting_moment_matrices(full, role);
            CHECK((c.w2 - full.omega.cwiseProduct(c.w1)).cwiseAbs().maxCoeff() == 0.0);
            CHECK(c.w2.minCoeff() >= 0.0);
        }
    }

    SUBCASE("unknown reservoir role") {
        auto specs = point.reservoirs();
        specs.pop_back();
        const RateMatrix two = build_rate_matrix(build_sector(5, 1.0), specs);
        CHECK_THROWS_AS(counting_moment_matrices(two, Role::work), DomainError);
    }
}

TEST_CASE("counting matrices agree with finite differences of R(chi)") {
    // moderate work temperature: the undressed blocks cancel only to
    // rounding in the finite difference, so their scale sets the noise floor
    testing::StudyPoint point;
    point.beta_w = 0.1;
    const RateMatrix rm = point.full_model(5);
    const CountingMatrices cm = counting_moment_matrices(rm, Role::cold);

    const auto dressed = [&](double chi) {
        Eigen::MatrixXcd gen = Eigen::MatrixXcd::Zero(rm.dim, rm.dim);
        for (const auto& blk : rm.blocks) {
            for (int a = 0; a < rm.dim; ++a)
                for (int b = 0; b < rm.dim; ++b) {
                    if (a == b) continue;
                    std::complex<double> phase = 1.0;
                    if (blk.role == Role::cold)
                        phase = std::exp(std::complex<double>(0, chi * rm.omega(a, b)));
                    gen(a, b) += blk.rates(a, b) * phase;
                }
        }
        return gen;
    };
    const double h = 1e-4;
    const Eigen::MatrixXcd plus = dressed(h), minus = dressed(-h), zero = dressed(0.0);
    // W1 = imag part of (R(h) - R(-h)) / 2h, W2 = -(R(h) - 2R(0) + R(-h)) / h^2
    const Eigen::MatrixXd w1_fd = ((plus - minus) / (2.0 * h)).imag();
    const Eigen::MatrixXd w2_fd =
        -((plus - 2.0 * zero + minus) / (h * h)).real();
    const double scale1 = cm.w1.cwiseAbs().maxCoeff();
    const double scale2 = cm.w2.cwiseAbs().maxCoeff();
    CHECK((w1_fd - cm.w1).cwiseAbs().maxCoeff() < 1e-7 * scale1);
    CHECK((w2_fd - cm.w2).cwiseAbs().maxCoeff() < 1e-7 * scale2);
}

TEST_CASE("gibbs populations") {
    Eigen::VectorXd energies(3);
    energies << 0.25, 2.25, 6.25;
    const Eigen::VectorXd rho = gibbs_populations(energies, 2.0);
    CHECK(rho.sum() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(rho(1) / rho(0) == doctest::Approx(std::exp(-4.0)).epsilon(1e-14));
    CHECK_THROWS_AS(gibbs_populations(energies, 0.0), DomainError);
}
