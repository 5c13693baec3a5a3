#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "aerocap/optimal_control.hpp"
#include "aerocap/rng.hpp"
#include "support/synthetic_switching.hpp"

using namespace aerocap;

namespace {

Costate random_costate(RandomStream& rng) {
    return {rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
}

}  // namespace

TEST_CASE("lift-up switching curve recovers the lift slope") {
    const AeroModel lin = AeroModel::linear_nominal();
    const Costate cs{0.0, 0.0, 1.0};
    CHECK(h_alpha_up(cs, 1.0, lin) == doctest::Approx(-1.62e-2).epsilon(1e-15));
}

TEST_CASE("switching curves vanish with zero costates and are odd in them") {
    const AeroModel lin = AeroModel::linear_nominal();
    CHECK(h_alpha_up({0, 0, 0}, 15000.0, lin) == 0.0);
    CHECK(h_alpha_down({0, 0, 0}, 15000.0, lin) == 0.0);
    RandomStream rng(31);
    for (int i = 0; i < 100; ++i) {
        const Costate cs = random_costate(rng);
        const Costate neg{-cs.lambda_r, -cs.lambda_V, -cs.lambda_gamma};
        const double V = rng.uniform(5000.0, 25000.0);
        CHECK(h_alpha_up(neg, V, lin) == doctest::Approx(-h_alpha_up(cs, V, lin)).epsilon(1e-13));
        CHECK(h_alpha_down(neg, V, lin) ==
              doctest::Approx(-h_alpha_down(cs, V, lin)).epsilon(1e-13));
    }
}

TEST_CASE("branch relations between the lift-up and lift-down curves") {
    const AeroModel lin = AeroModel::linear_nominal();
    RandomStream rng(37);
    for (int i = 0; i < 100; ++i) {
        Costate cs = random_costate(rng);
        const double V = rng.uniform(5000.0, 25000.0);

        // lambda_V = 0: pure lift term, curves are opposite.
        Costate no_v = cs;
        no_v.lambda_V = 0.0;
        CHECK(h_alpha_down(no_v, V, lin) ==
              doctest::Approx(-h_alpha_up(no_v, V, lin)).epsilon(1e-13));

        // lambda_gamma = 0: curves coincide.
        Costate no_g = cs;
        no_g.lambda_gamma = 0.0;
        CHECK(h_alpha_down(no_g, V, lin) ==
              doctest::Approx(h_alpha_up(no_g, V, lin)).epsilon(1e-13));

        // Difference identity: H_up - H_down = 2 lambda_gamma CLa / V.
        const double diff = h_alpha_up(cs, V, lin) - h_alpha_down(cs, V, lin);
        CHECK(diff == doctest::Approx(2.0 * cs.lambda_gamma * lin.CLa / V).epsilon(1e-12));
    }
}

TEST_CASE("bang-bang alpha law with tie-break hold") {
    CHECK(optimal_alpha_linear(1.0, -25.0, -10.0, -17.0) == -25.0);
    CHECK(optimal_alpha_linear(-1.0, -25.0, -10.0, -17.0) == -10.0);
    CHECK(optimal_alpha_linear(0.0, -25.0, -10.0, -17.0) == -17.0);
}

TEST_CASE("continuous control curve with zero velocity costate") {
    // A = -CLa / (2 CLa2), branch independent; frozen from Table-1 arithmetic.
    const AeroModel quad = AeroModel::quadratic_nominal();
    const Costate cs{0.3, 0.0, 1.7};
    const auto up = calligraphic_A(cs, 12000.0, quad, LiftBranch::Up);
    const auto down = calligraphic_A(cs, 12000.0, quad, LiftBranch::Down);
    REQUIRE(up.has_value());
    REQUIRE(down.has_value());
    CHECK(*up == doctest::Approx(-41.107871720).epsilon(1e-9));
    CHECK(*down == doctest::Approx(-41.107871720).epsilon(1e-9));
}

TEST_CASE("continuous control curve with zero gamma costate") {
    const AeroModel quad = AeroModel::quadratic_nominal();
    const Costate cs{0.0, 1.1, 0.0};
    const double expected = -quad.CDa / (2.0 * quad.CDa2);
    for (LiftBranch b : {LiftBranch::Up, LiftBranch::Down}) {
        const auto A = calligraphic_A(cs, 9000.0, quad, b);
        REQUIRE(A.has_value());
        CHECK(*A == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("continuous control curve is scale invariant in the costates") {
    const AeroModel quad = AeroModel::quadratic_nominal();
    RandomStream rng(41);
    for (int i = 0; i < 100; ++i) {
        Costate cs = random_costate(rng);
        const double V = rng.uniform(5000.0, 25000.0);
        const double scale = rng.uniform(0.1, 10.0);
        const Costate scaled{scale * cs.lambda_r, scale * cs.lambda_V,
                             scale * cs.lambda_gamma};
        const auto a1 = calligraphic_A(cs, V, quad, LiftBranch::Up);
        const auto a2 = calligraphic_A(scaled, V, quad, LiftBranch::Up);
        if (a1 && a2) {
            CHECK(*a2 == doctest::Approx(*a1).epsilon(1e-10));
        }
    }
}

TEST_CASE("continuous control curve signals the singular denominator") {
    const AeroModel quad = AeroModel::quadratic_nominal();
    CHECK_FALSE(calligraphic_A({0.0, 0.0, 0.0}, 9000.0, quad, LiftBranch::Up).has_value());
}

TEST_CASE("quadratic alpha law clamps to the admissible interval") {
    CHECK(optimal_alpha_quadratic(-41.1, -25.0, -10.0) == -25.0);
    CHECK(optimal_alpha_quadratic(-17.0, -25.0, -10.0) == -17.0);
    CHECK(optimal_alpha_quadratic(-5.0, -25.0, -10.0) == -10.0);
    RandomStream rng(43);
    for (int i = 0; i < 200; ++i) {
        const double a = optimal_alpha_quadratic(rng.uniform(-200.0, 200.0), -25.0, -10.0);
        CHECK(a >= -25.0);
        CHECK(a <= -10.0);
    }
}

TEST_CASE("sigma switch indicator is the gamma costate") {
    CHECK(sigma_switch_indicator({0.0, 0.0, 0.3}) == 0.3);
    CHECK(sigma_switch_indicator({1.0, -2.0, 0.0}) == 0.0);
    const AeroModel lin = AeroModel::linear_nominal();
    RandomStream rng(47);
    for (int i = 0; i < 100; ++i) {
        const Costate cs = random_costate(rng);
        const double V = rng.uniform(5000.0, 25000.0);
        const double from_curves =
            (h_alpha_up(cs, V, lin) - h_alpha_down(cs, V, lin)) * V / (2.0 * lin.CLa);
        CHECK(sigma_switch_indicator(cs) == doctest::Approx(from_curves).epsilon(1e-11));
    }
}

TEST_CASE("branch intersection happens exactly at the sigma switch") {
    const AeroModel lin = AeroModel::linear_nominal();
    const AeroModel quad = AeroModel::quadratic_nominal();
    RandomStream rng(53);
    for (int i = 0; i < 100; ++i) {
        Costate cs = random_costate(rng);
        const double V = rng.uniform(5000.0, 25000.0);
        if (cs.lambda_gamma != 0.0) {
            CHECK(h_alpha_up(cs, V, lin) != h_alpha_down(cs, V, lin));
        }
        cs.lambda_gamma = 0.0;
        CHECK(h_alpha_up(cs, V, lin) == doctest::Approx(h_alpha_down(cs, V, lin)).epsilon(1e-15));
        const auto up = calligraphic_A(cs, V, quad, LiftBranch::Up);
        const auto down = calligraphic_A(cs, V, quad, LiftBranch::Down);
        if (up && down) {
            CHECK(*up == doctest::Approx(*down).epsilon(1e-12));
        }
    }
}

TEST_CASE("four-phase profile levels") {
    const VehicleModel v = VehicleModel::uop_defaults();
    BangBangProfile p = BangBangProfile::from_vehicle(v, /*phase3_alpha_min=*/false);
    p.ts1 = 100.0;
    p.ts2 = 150.0;
    p.ts3 = 220.0;
    CHECK(p.ordered());

    CHECK(profile_control(p, 50.0) == std::pair{-25.0, 15.0});
    CHECK(profile_control(p, 120.0) == std::pair{-10.0, 15.0});
    CHECK(profile_control(p, 180.0) == std::pair{-10.0, 165.0});
    CHECK(profile_control(p, 300.0) == std::pair{-25.0, 165.0});

    // Boundaries belong to the later phase.
    CHECK(profile_control(p, 100.0) == std::pair{-10.0, 15.0});
    CHECK(profile_control(p, 220.0) == std::pair{-25.0, 165.0});

    // Prose variant commands minimum alpha through phase 3.
    const BangBangProfile q = BangBangProfile::from_vehicle(v, /*phase3_alpha_min=*/true);
    CHECK(q.phase3.first == -25.0);
    CHECK(q.phase3.second == 165.0);
}

TEST_CASE("switching analysis of the canonical three-switch trajectory") {
    const auto rows = testsupport::make_switching_trajectory();
    const SwitchingAnalysis an =
        analyze_switching(rows, AeroModel::linear_nominal(), AeroModel::quadratic_nominal(),
                          VehicleModel::uop_defaults());

    REQUIRE(an.curves.size() == rows.size());

    int sigma_switches = 0;
    int alpha_switches = 0;
    double sigma_switch_t = -1.0;
    std::vector<double> alpha_switch_t;
    for (const auto& e : an.events) {
        if (e.type == "sigma_switch") {
            ++sigma_switches;
            sigma_switch_t = e.t;
        } else {
            ++alpha_switches;
            alpha_switch_t.push_back(e.t);
        }
    }
    CHECK(sigma_switches == 1);
    CHECK(sigma_switch_t == doctest::Approx(100.0).epsilon(1e-12));
    REQUIRE(alpha_switches == 2);
    CHECK(std::abs(alpha_switch_t[0] - 60.0) <= 1.0);
    CHECK(std::abs(alpha_switch_t[1] - 140.0) <= 1.0);

    // Continuous control curves intersect at the sigma switch.
    const SwitchingCurveRow& at_cross = an.curves[100];
    CHECK(at_cross.H_sigma == 0.0);
    CHECK(std::abs(at_cross.A_up - at_cross.A_down) <=
          1e-9 * std::max(std::abs(at_cross.A_up), 1.0));

    // Reconstructed bang-bang alpha matches the trajectory's alpha column.
    // The switch samples themselves (t = 60, 140) sit on the curve zeros where
    // the tie-break applies, so they are checked by the event assertions above.
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i == 60 || i == 140) continue;
        CHECK(an.curves[i].alpha_star_linear == rows[i].alpha);
    }

    // At most two alpha switches when lambda_gamma crosses zero once.
    CHECK(alpha_switches <= 2);
}

TEST_CASE("switching CSV reader validates the schema") {
    const std::string good = "test_switching_ok.csv";
    {
        std::ofstream out(good);
        out << "t,r,V,gamma,lambda_r,lambda_V,lambda_gamma,alpha,u1\n";
        out << "0,2.6e7,20000,0,0,-1,0.5,-25,0.97\n";
        out << "1,2.6e7,20000,0,0,-1,-0.5,-25,0.97\n";
    }
    const auto rows = read_switching_csv(good);
    CHECK(rows.size() == 2);
    CHECK(rows[1].lambda_gamma == doctest::Approx(-0.5));

    const std::string bad_header = "test_switching_bad.csv";
    {
        std::ofstream out(bad_header);
        out << "time,stuff\n0,1\n";
    }
    CHECK_THROWS(read_switching_csv(bad_header));

    const std::string empty = "test_switching_empty.csv";
    {
        std::ofstream out(empty);
        out << "t,r,V,gamma,lambda_r,lambda_V,lambda_gamma,alpha,u1\n";
    }
    CHECK_THROWS(read_switching_csv(empty));
    CHECK_THROWS(read_switching_csv("does_not_exist.csv"));

    std::remove(good.c_str());
    std::remove(bad_header.c_str());
    std::remove(empty.c_str());
}
