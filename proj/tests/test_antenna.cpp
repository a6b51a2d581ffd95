#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "twr/antenna.hpp"
#include "twr/constants.hpp"
#include "twr/validate.hpp"

using Catch::Approx;
using namespace twr;

TEST_CASE("figure of merit reproduces the verified design rows") {
    // final design: 9.5499 * 0.4444 = 4.244
    CHECK(figure_of_merit({1.87e9, 2.91e9, 2.34e9, 9.8}) == Approx(4.2444).margin(5e-4));
    CHECK(std::abs(figure_of_merit({1.87e9, 2.91e9, 2.34e9, 9.8}) - 4.24) <= 0.005);
    CHECK(std::abs(figure_of_merit({2.23e9, 2.61e9, 2.34e9, 3.2}) - 0.34) <= 0.005);
    // the two-director row computes to 0.6906 from its printed inputs; the
    // published 0.68 is only reachable for gains inside the printed spread
    CHECK(figure_of_merit({2.16e9, 2.60e9, 2.34e9, 5.65}) == Approx(0.69058).margin(5e-4));
    // unity linear gain degenerates to the fractional bandwidth
    CHECK(figure_of_merit({1.0e9, 3.0e9, 2.0e9, 0.0}) == Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(figure_of_merit({1e9, 2e9, 0.0, 3.0}), std::invalid_argument);
    CHECK_THROWS_AS(figure_of_merit({2e9, 1e9, 1.5e9, 3.0}), std::invalid_argument);
}

TEST_CASE("figure of merit matches the cited two-director-design row") {
    CHECK(std::abs(figure_of_merit({4.67e9, 9.89e9, 8.0e9, 6.46}) - 2.89) <= 0.05);
}

TEST_CASE("reference table check reports the reproducible rows") {
    const ValidationCheck check = check_figure_of_merit();
    // 5 of the 12 cited rows reproduce from printed max gain; the spread
    // column rescues most of the rest (detail lines carry the numbers)
    REQUIRE(!check.details.empty());
    CHECK(check.details.back().find("5 of 12") != std::string::npos);
}

TEST_CASE("pattern gain hits the measured boresight and backlobe points") {
    const AntennaModel qy = antenna_preset("quasi-yagi");
    CHECK(pattern_gain(qy, 2.4e9, 0.0) == Approx(8.7).margin(1e-9));
    CHECK(pattern_gain(qy, 2.4e9, kPi) == Approx(8.7 - 25.76).margin(1e-9));
}

TEST_CASE("front-to-back ratio holds by construction for every preset") {
    for (const char* name : {"horn", "vivaldi", "quasi-yagi"}) {
        const AntennaModel m = antenna_preset(name);
        const double f = 2.3e9;
        CHECK(pattern_gain(m, f, 0.0) - pattern_gain(m, f, kPi) == Approx(m.fbr_db).margin(1e-9));
    }
}

TEST_CASE("zero front-to-back ratio degenerates to a constant pattern") {
    AntennaModel iso;
    iso.name = "iso";
    iso.gain_table = {{1e9, 3.0}, {3e9, 3.0}};
    iso.fbr_db = 0.0;
    iso.directivity_dbi = 0.0;
    iso = finalize_model(std::move(iso));
    for (double theta : {0.0, 0.4, 1.2, 2.2, kPi})
        CHECK(pattern_gain(iso, 2e9, theta) == Approx(3.0).margin(1e-9));
}

TEST_CASE("pattern gain is continuous and non-increasing off boresight") {
    const AntennaModel m = antenna_preset("vivaldi");
    double prev = pattern_gain(m, 2.3e9, 0.0);
    for (int i = 1; i <= 256; ++i) {
        const double theta = kPi * static_cast<double>(i) / 256.0;
        const double g = pattern_gain(m, 2.3e9, theta);
        CHECK(g <= prev + 1e-9);
        prev = g;
    }
}

TEST_CASE("pattern exponent reproduces the preset directivity under quadrature") {
    // independent oracle: trapezoid integration of the realized pattern shape
    for (const char* name : {"horn", "vivaldi", "quasi-yagi"}) {
        const AntennaModel m = antenna_preset(name);
        const int n_steps = 20000;
        double integral = 0.0;
        double prev_val = 1.0;  // shape at theta = 0 (peak, linear)
        const double g0 = boresight_gain(m, 2.4e9).dbi;
        for (int i = 1; i <= n_steps; ++i) {
            const double theta = kPi * static_cast<double>(i) / n_steps;
            const double shape = db_to_linear(pattern_gain(m, 2.4e9, theta) - g0);
            const double prev_theta = kPi * static_cast<double>(i - 1) / n_steps;
            integral += 0.5 * (shape * std::sin(theta) + prev_val * std::sin(prev_theta)) *
                        (kPi / n_steps);
            prev_val = shape;
        }
        const double directivity_dbi = linear_to_db(2.0 / integral);
        CHECK(std::abs(directivity_dbi - m.directivity_dbi) < 0.2);
    }
}

TEST_CASE("boresight gain interpolates and clamps with a flag") {
    const AntennaModel qy = antenna_preset("quasi-yagi");
    const GainSample mid = boresight_gain(qy, 2.135e9);  // halfway 1.87 -> 2.4
    CHECK(mid.dbi == Approx(0.5 * (7.8 + 8.7)).margin(1e-9));
    CHECK_FALSE(mid.freq_clamped);
    CHECK(boresight_gain(qy, 1.0e9).freq_clamped);
    CHECK(boresight_gain(qy, 1.0e9).dbi == Approx(7.8));
    CHECK(boresight_gain(qy, 9.0e9).freq_clamped);

    AntennaModel bad;
    bad.gain_table = {};
    CHECK_THROWS_AS(boresight_gain(bad, 2e9), std::invalid_argument);
    bad.gain_table = {{2e9, 1.0}, {1e9, 2.0}};
    CHECK_THROWS_AS(boresight_gain(bad, 2e9), std::invalid_argument);
}

TEST_CASE("vivaldi taper closed forms at the curve origin") {
    VivaldiGeometry g;  // fw = 3.3, W1 = 40
    const auto [xi, yi] = vivaldi_inner_edge(g, 5.0);
    CHECK(xi == Approx(0.5 * g.feed_width_mm + 0.5 * g.aperture_offset_mm).epsilon(1e-12));
    CHECK(xi == Approx(21.65).margin(1e-9));
    CHECK(yi == 5.0);
    const auto [xo, yo] = vivaldi_outer_edge(g, 5.0);
    CHECK(xo == Approx(0.5 * g.aperture_offset_mm - 0.5 * g.feed_width_mm).epsilon(1e-12));
    CHECK(yo == 5.0);
    CHECK(xi - xo == Approx(g.feed_width_mm).epsilon(1e-12));
}

TEST_CASE("vivaldi outer edge at t=10 matches the plug-in arithmetic") {
    VivaldiGeometry g;
    // 20 - 1.65 * e^0.8
    const double expected = 20.0 - 1.65 * std::exp(0.16 * 5.0);
    CHECK(vivaldi_outer_edge(g, 10.0).first == Approx(expected).epsilon(1e-12));
    CHECK(vivaldi_outer_edge(g, 10.0).first == Approx(16.3279).margin(1e-4));
}

TEST_CASE("vivaldi inner edge decreases strictly in t") {
    VivaldiGeometry g;
    double prev = vivaldi_inner_edge(g, g.inner_t_min_mm).first;
    for (double t = g.inner_t_min_mm + 1.0; t <= g.inner_t_max_mm; t += 1.0) {
        const double x = vivaldi_inner_edge(g, t).first;
        CHECK(x < prev);
        prev = x;
    }
}

TEST_CASE("vivaldi edges reject parameters outside their ranges") {
    VivaldiGeometry g;
    CHECK_THROWS_AS(vivaldi_inner_edge(g, 4.9), std::out_of_range);
    CHECK_THROWS_AS(vivaldi_inner_edge(g, 148.1), std::out_of_range);
    CHECK_THROWS_AS(vivaldi_outer_edge(g, 29.5), std::out_of_range);
}

TEST_CASE("taper gap at the origin equals the feed width for random geometry") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> fw(0.5, 10.0), w1(10.0, 80.0), rate(0.01, 0.5);
    for (int i = 0; i < 100; ++i) {
        VivaldiGeometry g;
        g.feed_width_mm = fw(rng);
        g.aperture_offset_mm = w1(rng);
        g.inner_rate_per_mm = rate(rng);
        g.outer_rate_per_mm = rate(rng);
        const double gap = vivaldi_inner_edge(g, 5.0).first - vivaldi_outer_edge(g, 5.0).first;
        CHECK(gap == Approx(g.feed_width_mm).epsilon(1e-12));
    }
}

TEST_CASE("aperture cutoff follows c over 2W") {
    CHECK(aperture_cutoff_hz(0.150) == Approx(0.9993e9).epsilon(1e-6));
    CHECK(aperture_cutoff_hz(0.150) > 0.99e9);
    CHECK(aperture_cutoff_hz(0.150) < 1.01e9);
    CHECK(aperture_cutoff_hz(0.300) == Approx(0.5 * aperture_cutoff_hz(0.150)).epsilon(1e-12));
    // inversion: the width whose cutoff is the sweep start
    const double w = kSpeedOfLight / (2.0 * 2.05e9);
    CHECK(aperture_cutoff_hz(w) == Approx(2.05e9).epsilon(1e-12));
    CHECK_THROWS_AS(aperture_cutoff_hz(0.0), std::invalid_argument);
}

TEST_CASE("director gain table and interpolation") {
    CHECK(director_gain_preset(12).dbi == Approx(8.62));
    CHECK_FALSE(director_gain_preset(12).extrapolated);
    CHECK(director_gain_preset(0).dbi == Approx(3.09));
    CHECK(director_gain_preset(6).dbi == Approx(6.80));
    // between the 2- and 6-director points: a model value, not a measurement
    CHECK(director_gain_preset(4).dbi == Approx(5.85).margin(1e-9));
    CHECK(director_gain_preset(14).extrapolated);
    CHECK_THROWS_AS(director_gain_preset(-1), std::invalid_argument);
}

TEST_CASE("gain table CSV loader round-trips a model") {
    const std::string path = "test_gain_table.csv";
    {
        std::ofstream out(path);
        out << "freq_hz,gain_dbi\n1.0e9,5.0\n2.0e9,7.5\n";
    }
    const AntennaModel m = load_gain_table_csv(path, 20.0, 8.0);
    CHECK(boresight_gain(m, 1.5e9).dbi == Approx(6.25));
    CHECK(m.fbr_db == 20.0);
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_gain_table_csv("does-not-exist.csv"), std::runtime_error);
}
