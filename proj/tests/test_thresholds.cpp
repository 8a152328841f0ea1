#include <doctest.h>

#include "qreduce/noise.hpp"
#include "qreduce/thresholds.hpp"

using namespace qreduce;

TEST_CASE("saturation points") {
    CHECK(std::abs(tau_max(ThresholdKind::bw, 0.1, 0.5) - 0.71794) < 1e-4);
    CHECK(tau_max(ThresholdKind::gs, 0.75, 0.5) == 1.0);
    CHECK(tau_max(ThresholdKind::kv, 2.0 / 3.0, 0.5) == 1.0);
    CHECK(fourth_power_bound(1.0, 0.5) >= 1.0 / 3.0 - 1e-9);
    // Equality case for gs: (√0.5)⁴ = 1/4 = 1 − 3/4.
    ThresholdQuery gs{ThresholdKind::gs, 0.75, 0.5, {}, {}};
    CHECK(condition_rhs(gs, 1.0) == doctest::Approx(condition_lhs(gs)).epsilon(1e-15));
}

TEST_CASE("returned tau is the edge of feasibility") {
    for (auto kind : {ThresholdKind::bw, ThresholdKind::gs, ThresholdKind::kv})
        for (double rate : {0.05, 0.2, 0.4, 0.6})
            for (double rho : {0.2, 0.5, 0.7}) {
                ThresholdQuery q{kind, rate, rho, {}, {}};
                const double t = tau_max(q);
                CHECK(t >= rho);
                CHECK(t <= 1.0);
                CHECK(condition_holds(q, t));
                if (t < 1.0) CHECK_FALSE(condition_holds(q, t + 1e-6));
            }
}

TEST_CASE("right-hand sides come from the noise module") {
    for (double tau : {0.55, 0.7, 0.95}) {
        ThresholdQuery bw{ThresholdKind::bw, 0.3, 0.4, {}, {}};
        ThresholdQuery gs{ThresholdKind::gs, 0.3, 0.4, {}, {}};
        ThresholdQuery kv{ThresholdKind::kv, 0.3, 0.4, {}, {}};
        const double c = center_probability(tau, 0.4);
        CHECK(std::abs(condition_rhs(bw, tau) - c) < 1e-12);
        CHECK(std::abs(condition_rhs(gs, tau) - c * c) < 1e-12);
        CHECK(condition_rhs(kv, tau) == fourth_power_bound(tau, 0.4));
        const auto iv = ThresholdQuery::interval(0.3, 11, 2);
        CHECK(condition_rhs(iv, tau) == fourth_power_bound(11, 2, tau));
    }
}

TEST_CASE("gs dominates bw") {
    for (double rho : {0.1, 0.3, 0.5, 0.8})
        for (double rate = 0.05; rate < 1.0; rate += 0.05)
            CHECK(tau_max(ThresholdKind::gs, rate, rho) >= tau_max(ThresholdKind::bw, rate, rho) - 1e-9);
}

TEST_CASE("classical baseline") {
    CHECK(tau_max(ThresholdKind::classical, 0.234, 0.413) == doctest::Approx(0.55).epsilon(5e-4));
    for (const auto& r : table1_reference())
        CHECK(std::abs(r.rho + r.rate * (1 - r.rho) - r.classical) < 5e-4);
}

TEST_CASE("table 1 matches the published three-decimal values") {
    const auto rows = table1();
    REQUIRE(rows.size() == 6);
    CHECK(table1_max_deviation(rows) <= 5e-4);
    CHECK(rows[1].gs_saturated);
    CHECK(rows[1].kv_saturated);
    CHECK(rows[2].kv_saturated);
    CHECK_FALSE(rows[2].gs_saturated);
}

TEST_CASE("optimizer lands on the published points") {
    const auto bw = optimize_over_rho(ThresholdKind::bw, 0.55);
    CHECK(std::abs(bw.rate - 0.234) < 5e-4);
    CHECK(std::abs(bw.rho - 0.413) < 5e-4);
    CHECK(std::abs(bw.tau - 0.749) < 5e-4);
    const auto gs = optimize_over_rho(ThresholdKind::gs, 0.55);
    CHECK(std::abs(gs.tau - 0.761) < 5e-4);
    const auto kv = optimize_over_rho(ThresholdKind::kv, 0.55);
    CHECK(std::abs(kv.tau - 0.765) < 5e-4);
    CHECK(std::abs(kv.rate - 0.267) < 5e-4);
    CHECK(std::abs(kv.rho - 0.386) < 5e-4);
    // The optimum beats every grid neighbour.
    for (double d : {-0.01, 0.01}) {
        const double rho = gs.rho + d;
        CHECK(tau_max(ThresholdKind::gs, (0.55 - rho) / (1 - rho), rho) <= gs.tau + 1e-9);
    }
}

TEST_CASE("binary corollary") { CHECK(std::abs(binary_threshold(6350.0 / 50000.0) - 0.833) < 5e-4); }

TEST_CASE("curves are monotone and reproduce the table") {
    const auto rows = figure1_curves(0.5, parse_grid("0.05:0.95:0.05"));
    REQUIRE(rows.size() == 19);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i].bw >= rows[i - 1].bw - 1e-9);
        CHECK(rows[i].gs >= rows[i - 1].gs - 1e-9);
        CHECK(rows[i].kv >= rows[i - 1].kv - 1e-9);
        CHECK(rows[i].classical >= rows[i - 1].classical);
    }
    const auto pts = figure1_curves(0.5, {0.1, 0.75, 2.0 / 3.0});
    const auto table = table1();
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(pts[i].bw == table[i].bw);
        CHECK(pts[i].kv == table[i].kv);
    }
    const auto near_one = figure1_curves(0.5, {0.999});
    CHECK(near_one[0].bw > 0.999);
    CHECK(near_one[0].gs == 1.0);
}

TEST_CASE("kv on a prime grid reports the density used") {
    const auto row = threshold_row(0.5, 0.5, "", 251);
    CHECK(row.kv_rho == doctest::Approx(125.0 / 251.0));
    CHECK(std::abs(row.kv - tau_max(ThresholdKind::kv, 0.5, 0.5)) < 0.01);
    CHECK(nearest_interval_radius(11, 0.5) == 2);
}

TEST_CASE("query validation and errors") {
    CHECK_THROWS_AS(tau_max(ThresholdKind::bw, 0.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(tau_max(ThresholdKind::bw, 0.5, 1.0), std::invalid_argument);
    ThresholdQuery bad{ThresholdKind::kv, 0.5, 0.5, 11u, 2u};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    CHECK_THROWS_AS(parse_threshold_kind("xyz"), std::invalid_argument);
    CHECK_THROWS_AS(parse_grid("0.1:0.2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_grid("0.1:0.2:0"), std::invalid_argument);
    CHECK(parse_grid("0.1:0.3:0.1").size() == 3);
}

TEST_CASE("CSV layout") {
    const auto csv = curves_csv(figure1_curves(0.5, {0.5}));
    CHECK(csv == "R,rho,tau_classical,tau_bw,tau_gs,tau_kv\n0.500000,0.500000,0.750000,0.933013,0.955090,0.965302\n");
}
