#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qar/cli/commands.hpp"
#include "qar/cli/config.hpp"
#include "qar/errors.hpp"

using namespace qar;
using namespace qar::cli;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

std::vector<std::string> split_csv(const std::string& row) {
    std::vector<std::string> fields;
    std::istringstream in(row);
    std::string field;
    while (std::getline(in, field, ',')) fields.push_back(field);
    return fields;
}

} // namespace

TEST_CASE("config parsing") {
    SUBCASE("defaults give the scaling-study model") {
        const ModelConfig model = ModelConfig::from(KeyValueConfig::defaults());
        CHECK(model.n_spins == 31);
        CHECK(model.cold.epsilon == doctest::Approx(2.0));
        CHECK(model.hot.epsilon == doctest::Approx(6.0));
        CHECK(model.work.delta == doctest::Approx(1e-3));
        CHECK(model.work.beta == doctest::Approx(1e-3));
        CHECK(model.hot.coupling == CouplingKind::jx2_over_n);
    }
    SUBCASE("file parsing with comments and overrides") {
        const std::string path = "test_config_tmp.cfg";
        {
            std::ofstream out(path);
            out << "# comment line\n"
                << "n = 11\n"
                << "cold.beta = 3.0   # inline comment\n"
                << "\n"
                << "work.delta=0.01\n";
        }
        KeyValueConfig cfg = KeyValueConfig::from_file(path);
        cfg.apply_overrides({"n=15"});
        const ModelConfig model = ModelConfig::from(cfg);
        CHECK(model.n_spins == 15);
        CHECK(model.cold.beta == doctest::Approx(3.0));
        CHECK(model.work.delta == doctest::Approx(0.01));
        std::remove(path.c_str());
    }
    SUBCASE("rejects unknown keys and malformed values") {
        KeyValueConfig cfg;
        CHECK_THROWS_AS(cfg.set("typo_key", "1"), ConfigError);
        cfg.set("n", "abc");
        CHECK_THROWS_AS(ModelConfig::from(cfg), ConfigError);
        KeyValueConfig even;
        even.set("n", "10");
        CHECK_THROWS_AS(ModelConfig::from(even), ConfigError);
    }
    SUBCASE("omega rescales reservoir quantities") {
        KeyValueConfig cfg;
        cfg.set("omega", "2.0");
        const ModelConfig model = ModelConfig::from(cfg);
        CHECK(model.cold.epsilon == doctest::Approx(4.0));   // 2 in units of omega
        CHECK(model.cold.beta == doctest::Approx(1.0));      // 2 / omega
    }
}

TEST_CASE("grids") {
    GridSpec grid;
    grid.param = "cold.delta";
    grid.scale = "log";
    grid.min = 1e-3;
    grid.max = 1e-1;
    grid.count = 3;
    const auto vals = grid.values();
    REQUIRE(vals.size() == 3);
    CHECK(vals[1] == doctest::Approx(1e-2).epsilon(1e-12));

    GridSpec n_grid;
    n_grid.param = "n";
    n_grid.min = 5;
    n_grid.max = 11;
    const auto ns = n_grid.values();
    CHECK(ns == std::vector<double>{5, 7, 9, 11});

    GridSpec bad = grid;
    bad.count = 1;
    CHECK_THROWS_AS(bad.values(), ConfigError);
}

TEST_CASE("number formatting survives a round trip") {
    for (const double x : {0.1, 1.0 / 3.0, 6.02e23, -2.5e-14, 123456.789}) {
        const std::string s = format_number(x);
        CHECK(std::stod(s) == x);
    }
}

TEST_CASE("steady command") {
    KeyValueConfig cfg;
    cfg.set("n", "9");
    std::ostringstream out;
    CHECK(cmd_steady(cfg, false, out) == 0);
    const auto lines = lines_of(out.str());
    REQUIRE(lines.size() == 2);
    CHECK(lines[0].substr(0, 8) == "n,omega,");
    const auto fields = split_csv(lines[1]);
    REQUIRE(fields.size() == 14);
    CHECK(fields[0] == "9");
    CHECK(fields.back() == "ok");
    CHECK(std::stod(fields[2]) > 0.0);  // cooling at the default parameters
}

TEST_CASE("steady with all temperatures equal has no currents") {
    KeyValueConfig cfg;
    cfg.set("n", "7");
    for (const char* key : {"cold.beta", "hot.beta", "work.beta"}) cfg.set(key, "1.0");
    cfg.set("work.delta", "0.1");
    std::ostringstream out;
    cmd_steady(cfg, false, out);
    const auto fields = split_csv(lines_of(out.str())[1]);
    for (int col : {2, 3, 4})
        CHECK(std::abs(std::stod(fields[col])) < 1e-10);
}

TEST_CASE("reduced flag matches the reduced-model analytics to 1%") {
    KeyValueConfig cfg;
    std::ostringstream steady_out, reduced_out;
    cmd_steady(cfg, true, steady_out);
    cmd_reduced(cfg, reduced_out);
    const auto steady_fields = split_csv(lines_of(steady_out.str())[1]);
    const auto ref_fields = split_csv(lines_of(reduced_out.str())[1]);
    const double current = std::stod(steady_fields[2]);
    const double analytic = std::stod(ref_fields[7]);
    CHECK(std::abs(current - analytic) / std::abs(analytic) < 0.01);
    CHECK(std::stod(ref_fields[11]) < 0.01);  // rel_dev_I column
    CHECK(std::stod(ref_fields[12]) < 0.01);  // rel_dev_S column
}

TEST_CASE("sweep command") {
    KeyValueConfig cfg;
    cfg.set("sweep.param", "n");
    cfg.set("sweep.min", "5");
    cfg.set("sweep.max", "13");

    SUBCASE("deterministic output independent of worker count") {
        std::ostringstream serial, parallel;
        cmd_sweep(cfg, false, serial);
        KeyValueConfig cfg4 = cfg;
        cfg4.set("workers", "4");
        cmd_sweep(cfg4, false, parallel);
        CHECK(serial.str() == parallel.str());
        CHECK(lines_of(serial.str()).size() == 1 + 5);
    }

    SUBCASE("full-model current never exceeds the reduced model") {
        std::ostringstream full, reduced;
        cmd_sweep(cfg, false, full);
        cmd_sweep(cfg, true, reduced);
        const auto full_lines = lines_of(full.str());
        const auto red_lines = lines_of(reduced.str());
        for (std::size_t i = 1; i < full_lines.size(); ++i) {
            const double i_full = std::stod(split_csv(full_lines[i])[3]);
            const double i_red = std::stod(split_csv(red_lines[i])[3]);
            CHECK(i_full <= i_red);
            CHECK(i_full > 0.0);
        }
    }

    SUBCASE("2d sweep emits rows in row-major order") {
        KeyValueConfig grid2 = cfg;
        grid2.set("sweep.count", "2");
        grid2.set("sweep2.param", "hot.beta");
        grid2.set("sweep2.scale", "linear");
        grid2.set("sweep2.min", "0.8");
        grid2.set("sweep2.max", "1.2");
        grid2.set("sweep2.count", "3");
        std::ostringstream out;
        cmd_sweep(grid2, false, out);
        const auto lines = lines_of(out.str());
        REQUIRE(lines.size() == 1 + 2 * 3);
        CHECK(split_csv(lines[0])[0] == "n");
        CHECK(split_csv(lines[0])[1] == "hot.beta");
        CHECK(split_csv(lines[1])[1] == split_csv(lines[4])[1]);  // row-major
        CHECK(split_csv(lines[1])[0] == split_csv(lines[2])[0]);
    }

    SUBCASE("a failing point keeps its row and the sweep continues") {
        KeyValueConfig short_grid;
        short_grid.set("sweep.param", "n");
        short_grid.set("sweep.min", "3");
        short_grid.set("sweep.max", "7");
        std::ostringstream out;
        cmd_sweep(short_grid, true, out);  // reduced model needs n >= 5
        const auto lines = lines_of(out.str());
        REQUIRE(lines.size() == 4);
        CHECK(split_csv(lines[1]).back().substr(0, 6) == "error:");
        CHECK(split_csv(lines[2]).back() == "ok");
        CHECK(split_csv(lines[3]).back() == "ok");
    }
}

TEST_CASE("rcmap command") {
    KeyValueConfig cfg;
    cfg.set("rcmap.count", "5");
    std::ostringstream out;
    CHECK(cmd_rcmap(cfg, out) == 0);
    const auto lines = lines_of(out.str());
    REQUIRE(lines.size() == 6);
    const auto fields = split_csv(lines[1]);
    REQUIRE(fields.size() == 10);
    CHECK(std::stod(fields[4]) == doctest::Approx(std::sqrt(6.01)));
    CHECK(std::stod(fields[8]) < 1e-6);  // rel_dev_omega2
    CHECK(std::stod(fields[9]) < 1e-6);  // rel_dev_lambda2
}

TEST_CASE("dynamics command") {
    KeyValueConfig cfg;
    cfg.set("dynamics.n_min", "11");
    cfg.set("dynamics.n_max", "15");
    std::ostringstream out;
    CHECK(cmd_dynamics(cfg, out) == 0);
    const auto lines = lines_of(out.str());
    REQUIRE(lines.size() == 4);
    const double slope = std::stod(split_csv(lines[1])[2]);
    CHECK(slope == doctest::Approx(-2.0).epsilon(0.1));

    SUBCASE("large threshold thermalizes immediately") {
        KeyValueConfig loose = cfg;
        loose.set("dynamics.threshold", "1e6");
        std::ostringstream out2;
        cmd_dynamics(loose, out2);
        for (std::size_t i = 1; i < lines_of(out2.str()).size(); ++i)
            CHECK(std::stod(split_csv(lines_of(out2.str())[i])[1]) == 0.0);
    }
    SUBCASE("trajectory dump is monotone in entropy") {
        KeyValueConfig traj = cfg;
        traj.set("dynamics.trajectory_n", "11");
        traj.set("dynamics.trajectory_points", "25");
        std::ostringstream out2;
        cmd_dynamics(traj, out2);
        const auto rows = lines_of(out2.str());
        REQUIRE(rows.size() == 26);
        double prev = 1e300;
        for (std::size_t i = 1; i < rows.size(); ++i) {
            const double entropy = std::stod(split_csv(rows[i])[1]);
            CHECK(entropy <= prev + 1e-10);
            prev = entropy;
        }
    }
}
