#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qwalk/optics.hpp"
#include "qwalk/protocols.hpp"
#include "test_util.hpp"

using namespace qwalk;
namespace tu = qwalk::testutil;

namespace {
constexpr double kDeg = std::numbers::pi / 180.0;

double tabulated_usd_angle(double phi_deg) {
    const double t = std::tan(phi_deg / 2.0 * kDeg);
    return 0.5 * std::acos(std::sqrt(1.0 - t * t)) / kDeg;
}
}  // namespace

TEST_CASE("half-wave plate matrix") {
    CHECK(max_abs_diff(hwp_matrix(45.0), Mat2::sigma_x()) < 1e-15);
    CHECK(max_abs_diff(hwp_matrix(22.5), Mat2::hadamard()) < 1e-15);
    const double r2 = std::sqrt(2.0), r3 = std::sqrt(3.0);
    Mat2 c14{r2 / r3, 1 / r3, 1 / r3, -r2 / r3};
    CHECK(max_abs_diff(hwp_matrix(17.63), c14) < 2e-4);
}

TEST_CASE("quarter-wave plate matrix") {
    Mat2 q0 = qwp_matrix(0.0);
    CHECK(max_abs_diff(q0, Mat2{1.0, 0.0, 0.0, cplx(0, 1)}) < 1e-15);
    Mat2 q45 = qwp_matrix(45.0);
    Mat2 expect{cplx(0.5, 0.5), cplx(0.5, -0.5), cplx(0.5, -0.5), cplx(0.5, 0.5)};
    CHECK(max_abs_diff(q45, expect) < 1e-15);
    // QWP(45) . HWP(52.5) realizes the step-5 coin
    Mat2 prod = qwp_matrix(45.0) * hwp_matrix(52.5);
    Mat2 c05 = sic_coin_schedule().coin(5, 0);
    CHECK(phase_distance(prod, c05) < 1e-4);
    CHECK(std::abs(prod(0, 0) - std::exp(cplx(0, -std::numbers::pi / 3)) / std::sqrt(2.0)) < 1e-4);
}

TEST_CASE("plate involutions") {
    for (double th = -90.0; th < 90.0; th += 0.5) {
        CHECK(max_abs_diff(hwp_matrix(th) * hwp_matrix(th), Mat2::identity()) < 1e-12);
        Mat2 q = qwp_matrix(th);
        CHECK(q.is_unitary(1e-12));
        CHECK(phase_distance(q * q * q * q, Mat2::identity()) < 1e-10);
    }
}

TEST_CASE("coin compilation singles") {
    auto sx = compile_coin(Mat2::sigma_x());
    REQUIRE(sx.size() == 1);
    CHECK(sx[0].kind == PlateKind::hwp);
    CHECK(sx[0].angle_deg == doctest::Approx(45.0).epsilon(1e-10));

    auto usd45 = compile_coin(usd_coin(45.0));
    REQUIRE(usd45.size() == 1);
    CHECK(usd45[0].kind == PlateKind::hwp);
    CHECK(usd45[0].angle_deg == doctest::Approx(tabulated_usd_angle(45.0)).epsilon(1e-8));
    CHECK(usd45[0].angle_deg == doctest::Approx(12.23).epsilon(1e-3));

    auto had = compile_coin(Mat2::hadamard());
    REQUIRE(had.size() == 1);
    CHECK(had[0].angle_deg == doctest::Approx(22.5).epsilon(1e-10));

    CHECK_THROWS_AS(compile_coin(Mat2{1.0, 1.0, 0.0, 1.0}), std::invalid_argument);
}

TEST_CASE("coin compilation pair for the step-5 coin") {
    auto plates = compile_coin(sic_coin_schedule().coin(5, 0));
    REQUIRE(plates.size() == 2);
    CHECK(plates[0].kind == PlateKind::hwp);
    CHECK(plates[0].angle_deg == doctest::Approx(52.5).epsilon(1e-8));
    CHECK(plates[1].kind == PlateKind::qwp);
    CHECK(plates[1].angle_deg == doctest::Approx(45.0).epsilon(1e-8));
}

TEST_CASE("compilation round-trips random unitaries") {
    auto g = tu::rng(41);
    for (int rep = 0; rep < 300; ++rep) {
        Mat2 target = tu::random_su2(g);
        auto plates = compile_coin(target);
        CHECK(plates.size() <= 3);
        CHECK(phase_distance(compose_plates(plates), target) < 1e-8);
    }
}

TEST_CASE("tabulated three-step angles reproduce the scheduled coins") {
    for (double phi : {45.0, 54.0, 63.0, 72.0, 81.0, 90.0}) {
        const double quoted[] = {45.0, tabulated_usd_angle(phi), 22.5};
        auto sched = usd_schedule(phi).schedule;
        CHECK(phase_distance(hwp_matrix(quoted[0]), sched.coin(2, -1)) < 2e-4);
        CHECK(phase_distance(hwp_matrix(quoted[1]), sched.coin(2, 1)) < 2e-4);
        CHECK(phase_distance(hwp_matrix(quoted[2]), sched.coin(3, 0)) < 2e-4);
    }
    // quoted to 0.01 degree in print
    for (auto [phi, printed] : std::initializer_list<std::pair<double, double>>{
             {45, 12.23}, {54, 15.32}, {63, 18.9}, {72, 23.3}, {81, 29.33}, {90, 45}}) {
        CHECK(std::abs(tabulated_usd_angle(phi) - printed) < 0.02);
        CHECK(phase_distance(hwp_matrix(printed), usd_schedule(phi).schedule.coin(2, 1)) < 2e-4);
    }
}

TEST_CASE("tabulated six-step angles reproduce the scheduled coins") {
    auto sched = sic_coin_schedule();
    CHECK(phase_distance(hwp_matrix(-22.5), sched.coin(2, 1)) < 1e-12);
    CHECK(phase_distance(hwp_matrix(45.0), sched.coin(2, -1)) < 1e-12);
    CHECK(phase_distance(hwp_matrix(67.5), sched.coin(3, 0)) < 1e-12);
    CHECK(phase_distance(hwp_matrix(17.63), sched.coin(4, 1)) < 2e-4);
    CHECK(phase_distance(hwp_matrix(45.0), sched.coin(4, -1)) < 1e-12);
    CHECK(phase_distance(qwp_matrix(45.0) * hwp_matrix(52.5), sched.coin(5, 0)) < 2e-4);
    CHECK(phase_distance(hwp_matrix(45.0), sched.coin(6, -1)) < 1e-12);
}

TEST_CASE("compilation regenerates every tabulated angle") {
    struct Row {
        Mat2 coin;
        PlateKind kind;
        double angle;
    };
    auto sched = sic_coin_schedule();
    std::vector<Row> rows{
        {sched.coin(2, 1), PlateKind::hwp, -22.5},  {sched.coin(2, -1), PlateKind::hwp, 45.0},
        {sched.coin(3, 0), PlateKind::hwp, 67.5},   {sched.coin(4, 1), PlateKind::hwp, 17.63},
        {sched.coin(4, -1), PlateKind::hwp, 45.0},  {sched.coin(6, -1), PlateKind::hwp, 45.0},
        {usd_schedule(45).schedule.coin(3, 0), PlateKind::hwp, 22.5},
    };
    for (double phi : {45.0, 54.0, 63.0, 72.0, 81.0, 90.0})
        rows.push_back({usd_coin(phi), PlateKind::hwp, tabulated_usd_angle(phi)});
    for (const auto& row : rows) {
        auto plates = compile_coin(row.coin);
        REQUIRE(plates.size() == 1);
        CHECK(plates[0].kind == row.kind);
        CHECK(std::abs(plates[0].angle_deg - row.angle) < 0.02);
    }
    auto step5 = compile_coin(sched.coin(5, 0));
    REQUIRE(step5.size() == 2);
    CHECK(std::abs(step5[0].angle_deg - 52.5) < 0.02);
    CHECK(std::abs(step5[1].angle_deg - 45.0) < 0.02);
}

TEST_CASE("placement reproduces the three-step layout") {
    auto plan = plan_placement(usd_schedule(45.0).schedule);
    const auto& s2 = plan.plates_at(2);
    REQUIRE(s2.size() == 2);
    CHECK(s2[0].modes == std::vector<int>{-1});
    CHECK(s2[0].angle_deg == doctest::Approx(45.0));
    CHECK(s2[1].modes == std::vector<int>{1});
    CHECK(s2[1].angle_deg == doctest::Approx(12.23).epsilon(1e-3));
    const auto& s3 = plan.plates_at(3);
    REQUIRE(s3.size() == 1);
    CHECK(s3[0].modes == std::vector<int>{0});
    CHECK(s3[0].angle_deg == doctest::Approx(22.5));
}

TEST_CASE("placement handles the crowded fourth step with a cancelling plate") {
    auto plan = plan_placement(sic_coin_schedule());
    const auto& s4 = plan.plates_at(4);
    // HWP 17.63 spanning modes 1 and 3, a second HWP 17.63 on mode 3 alone,
    // and HWP 45 on mode -1
    int spanning = 0, cancelling = 0, lower = 0;
    for (const auto& p : s4) {
        if (p.modes == std::vector<int>{1, 3}) {
            ++spanning;
            CHECK(p.angle_deg == doctest::Approx(17.632).epsilon(1e-3));
        } else if (p.modes == std::vector<int>{3}) {
            ++cancelling;
            CHECK(p.angle_deg == doctest::Approx(17.632).epsilon(1e-3));
        } else if (p.modes == std::vector<int>{-1}) {
            ++lower;
            CHECK(p.angle_deg == doctest::Approx(45.0));
        }
    }
    CHECK(spanning == 1);
    CHECK(cancelling == 1);
    CHECK(lower == 1);

    // every scheduled mode composes to its coin; covered identity modes cancel
    for (const auto& [step, plates] : plan.steps()) {
        for (const auto& p : plates)
            for (int m : p.modes) {
                Mat2 comp = plan.mode_composition(step, m);
                CHECK(phase_distance(comp, sic_coin_schedule().coin(step, m)) < 1e-8);
            }
    }
}

TEST_CASE("empty schedule plans to nothing") {
    auto plan = plan_placement(CoinSchedule{});
    CHECK(plan.empty());
    CHECK(plan.export_text() == "step,modes,kind,angle_deg\n");
}

TEST_CASE("plan export is one record per plate") {
    auto text = plan_placement(sic_coin_schedule()).export_text();
    CHECK(text.find("4,1|3,HWP,17.63") != std::string::npos);
    CHECK(text.find("4,3,HWP,17.63") != std::string::npos);
    CHECK(text.find("5,0,HWP,52.50") != std::string::npos);
    CHECK(text.find("5,0,QWP,45.00") != std::string::npos);
}
