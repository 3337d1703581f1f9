#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <stdexcept>

#include "blowlab/checkpoint.hpp"
#include "blowlab/sobolev.hpp"
#include "blowlab/solver.hpp"
#include "blowlab/spectral_ops.hpp"
#include "blowlab/util.hpp"

using namespace blowlab;
namespace fs = std::filesystem;

TEST_CASE("single-mode norms by hand") {
    Grid g = Grid::cubic(16);

    SpectralField u(g);
    const double a = 0.37;
    u.set_mode_pair(1, 0, 0, {0.0, a, 0.0});
    // |xi| = 1, so every s gives the same value: sqrt(2) * a from the pair
    for (double s : {0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 4.0})
        CHECK(hs_norm(u, s) == doctest::Approx(a * std::sqrt(2.0)).epsilon(1e-15));

    SpectralField v(g);
    v.set_mode_pair(0, 2, 0, {0.0, 0.0, 1.0});
    // |xi|^2 = 4: H1 weight 4 per mode, two modes -> sqrt(8)
    CHECK(hs_norm(v, 1.0) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-15));
    CHECK(hs_norm(v, 0.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(hs_norm(v, 2.0) == doctest::Approx(4.0 * std::sqrt(2.0)).epsilon(1e-15));
    // fractional order: weight |xi|^{2s} = 4^{1.5} = 8 per mode
    CHECK(hs_norm(v, 1.5) == doctest::Approx(std::sqrt(16.0)).epsilon(1e-15));
}

TEST_CASE("taylor-green norm ladder") {
    Grid g = Grid::cubic(16);
    SpectralField u = taylor_green(g, 2.0);
    double n0 = hs_norm(u, 0.0);
    CHECK(n0 * n0 == doctest::Approx(4.0 * 0.25).epsilon(1e-14));
    // every active mode has |xi|^2 = 3, so the ladder is geometric in sqrt(3)
    for (double s : {0.5, 1.0, 1.5, 2.0, 2.5}) {
        double ns = hs_norm(u, s);
        CHECK(ns * ns == doctest::Approx(std::pow(3.0, s) * n0 * n0).epsilon(1e-13));
    }
}

TEST_CASE("norm properties on random fields") {
    Grid g = Grid::cubic(16);
    for (unsigned seed : {2u, 5u, 8u}) {
        CAPTURE(seed);
        SpectralField u = random_smooth(g, seed, 0.2);
        // monotone in s once |xi| >= 1 modes dominate (zero mean: always)
        double prev = hs_norm(u, 0.0);
        for (double s : {0.5, 1.0, 1.5, 2.0, 2.5, 3.0}) {
            double cur = hs_norm(u, s);
            CHECK(cur >= prev * (1.0 - 1e-12));
            prev = cur;
        }
        // log-convex interpolation: |u|_{3/2}^2 <= |u|_1 |u|_2
        CHECK(hs_norm(u, 1.5) * hs_norm(u, 1.5) <=
              hs_norm(u, 1.0) * hs_norm(u, 2.0) * (1.0 + 1e-12));
        // homogeneity
        SpectralField w = u;
        w *= 3.0;
        CHECK(hs_norm(w, 1.5) == doctest::Approx(3.0 * hs_norm(u, 1.5)).epsilon(1e-14));
    }
}

TEST_CASE("order outside the supported window is rejected") {
    Grid g = Grid::cubic(8);
    SpectralField u = taylor_green(g, 1.0);
    CHECK_THROWS_AS(hs_norm(u, -0.5), std::invalid_argument);
    CHECK_THROWS_AS(hs_norm(u, 4.5), std::invalid_argument);
    CHECK_THROWS_AS(hs_norm(u, std::nan("")), std::invalid_argument);
}

TEST_CASE("norm series tracks viscous decay of one mode") {
    Grid g = Grid::cubic(8);
    SpectralField u(g);
    u.set_mode_pair(1, 0, 0, {0.0, 0.25, 0.0});
    fs::path ckpt = fs::temp_directory_path() / "blowlab_sobolev_mode.ckpt";
    write_checkpoint(u, ckpt.string());

    SolverConfig cfg;
    cfg.grid = g;
    cfg.viscosity = 0.4;
    cfg.dt = 1e-3;
    cfg.t_end = 0.2;
    cfg.snapshot_stride = 50;
    cfg.initial_condition = CheckpointInit{ckpt.string()};
    Trajectory traj = simulate(cfg);
    fs::remove(ckpt);

    auto series = norm_series(traj, 1.0);
    REQUIRE(series.size() == 5);
    const double n0 = 0.25 * std::sqrt(2.0);
    for (const auto& smp : series) {
        CHECK(smp.s == 1.0);
        // |xi|^2 = 1: exact decay e^{-nu t}, reproduced by the integrating
        // factor up to roundoff
        CHECK(smp.value ==
              doctest::Approx(n0 * std::exp(-0.4 * smp.t)).epsilon(1e-10));
    }
    CHECK(series.front().t == 0.0);
    CHECK(series.back().t == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("norm series of the zero field") {
    Grid g = Grid::cubic(8);
    SolverConfig cfg;
    cfg.grid = g;
    cfg.t_end = 0.0;
    cfg.initial_condition = TaylorGreenInit{0.0};
    Trajectory traj = simulate(cfg);
    auto series = norm_series(traj, 2.5);
    REQUIRE(series.size() == 1);
    CHECK(series[0].value == 0.0);
}

TEST_CASE("norm series CSV round trip") {
    std::vector<NormSample> samples = {
        {0.0, 1.5, 0.123456789012345678}, {0.1, 1.5, 3.9e-17}, {0.2, 1.5, 7.25}};
    fs::path path = fs::temp_directory_path() / "blowlab_norms.csv";
    write_norm_series_csv(samples, path.string());
    CsvTable t = read_csv(path.string());
    fs::remove(path);
    REQUIRE(t.header.size() == 3);
    CHECK(t.header[0] == "t");
    CHECK(t.header[1] == "s");
    CHECK(t.header[2] == "value");
    REQUIRE(t.rows.size() == 3);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        // %.17g is round-trip exact for doubles
        CHECK(t.rows[i][0] == samples[i].t);
        CHECK(t.rows[i][1] == samples[i].s);
        CHECK(t.rows[i][2] == samples[i].value);
    }
}
