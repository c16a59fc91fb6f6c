#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "ohres/projection.hpp"
#include "support.hpp"

using namespace ohres;
using namespace ohres::projection;
using testsupport::Gen;

namespace {

// Independent evaluation of the swept-area formula, in kW.
double raw_kw(double rho, double r, double cp, double eta, double v)
{
    return 0.5 * rho * std::numbers::pi * r * r * v * v * v * cp * eta / 1000.0;
}

WecPowerMatrix square_matrix()
{
    return WecPowerMatrix({1.0, 2.0}, {6.0, 8.0}, {{100.0, 200.0}, {150.0, 250.0}}, 750.0);
}

WecPowerMatrix fixture_matrix()
{
    std::ifstream in(testsupport::source_path("data/wec_matrix_750kw.csv"));
    REQUIRE(in);
    return WecPowerMatrix::from_csv(in, 750.0);
}

}  // namespace

TEST_CASE("tidal turbine output")
{
    const auto tec = RotorSpec::default_tidal();
    CHECK(raw_kw(1025, 10, 0.40, 0.95, 2.0) == doctest::Approx(489.46).epsilon(1e-5));
    CHECK(swept_area_power(2.0, tec) == doctest::Approx(489.46).epsilon(0.5 / 489.46));
    CHECK(swept_area_power(3.0, tec) == 500.0);
    CHECK(swept_area_power(0.0, tec) == 0.0);
    CHECK(swept_area_power(0.49, tec) == 0.0);
}

TEST_CASE("wind turbine output")
{
    const auto owt = RotorSpec::default_wind();
    CHECK(swept_area_power(10.0, owt) == doctest::Approx(5264.7).epsilon(5.0 / 5264.7));
    CHECK(swept_area_power(10.0, owt) == doctest::Approx(raw_kw(1.225, 80, 0.45, 0.95, 10.0)));
    CHECK(swept_area_power(2.9, owt) == 0.0);
    CHECK(swept_area_power(25.0, owt) == 0.0);
    CHECK(swept_area_power(24.9, owt) == 8000.0);
}

TEST_CASE("rotor spec validation")
{
    auto spec = RotorSpec::default_wind();
    spec.power_coefficient = 0.6;
    CHECK_THROWS_AS(spec.validate(), ParameterError);
    spec = RotorSpec::default_wind();
    spec.cut_out_speed = 2.0;
    CHECK_THROWS_AS(spec.validate(), ParameterError);
    spec = RotorSpec::default_tidal();
    spec.electrical_efficiency = 0.0;
    CHECK_THROWS_AS(spec.validate(), ParameterError);
}

TEST_CASE("log wind profile")
{
    const WindShearSpec shear;
    CHECK(10.0 * std::log(80.0 / 0.0002) / std::log(4.0 / 0.0002) == doctest::Approx(13.02).epsilon(1e-3));
    CHECK(extrapolate_wind_speed(10.0, shear) == doctest::Approx(13.02).epsilon(0.01 / 13.02));
    CHECK(extrapolate_wind_speed(0.0, shear) == 0.0);
    WindShearSpec same{4.0, 4.0, 0.0002};
    CHECK(extrapolate_wind_speed(7.3, same) == doctest::Approx(7.3).epsilon(1e-15));
    WindShearSpec bad{4.0, 2.0, 0.0002};
    CHECK_THROWS_AS(extrapolate_wind_speed(5.0, bad), ParameterError);
}

TEST_CASE("wave converter matrix lookup")
{
    const auto m = square_matrix();
    CHECK(wec_power(0.0, 7.0, m) == 0.0);
    CHECK(wec_power(1.0, 6.0, m) == 100.0);
    CHECK(wec_power(2.0, 8.0, m) == 250.0);
    CHECK(wec_power(1.5, 7.0, m) == doctest::Approx(175.0));
    CHECK(wec_power(9.0, 20.0, m) == 250.0);
    // Below the axis with a nonzero first row clamps to the edge.
    CHECK(wec_power(0.5, 6.0, m) == 100.0);
    CHECK_THROWS_AS(WecPowerMatrix({1.0}, {6.0, 8.0}, {{1.0, 2.0}}, 750.0), ParameterError);
    CHECK_THROWS_AS(WecPowerMatrix({1.0, 1.0}, {6.0, 8.0}, {{1, 2}, {3, 4}}, 750.0), ParameterError);
    CHECK_THROWS_AS(WecPowerMatrix({1.0, 2.0}, {6.0, 8.0}, {{1, 2}, {3, 900}}, 750.0), ParameterError);
}

TEST_CASE("wave converter matrix CSV")
{
    const auto m = fixture_matrix();
    CHECK(m.hs_axis().size() == 12);
    CHECK(m.te_axis().size() == 11);
    for (std::size_t i = 0; i < m.hs_axis().size(); ++i) {
        for (std::size_t j = 0; j < m.te_axis().size(); ++j) {
            CHECK(wec_power(m.hs_axis()[i], m.te_axis()[j], m) == m.cell(i, j));
        }
    }
    std::istringstream ragged("Hs/Te,5,6\n1,2,3\n2,4\n");
    CHECK_THROWS_AS(WecPowerMatrix::from_csv(ragged, 750.0), DataError);
}

TEST_CASE("floating PV scaling")
{
    CHECK(fpv_unit_power(400.0, FpvSpec{0.4, 4000.0}) == doctest::Approx(0.04));
    CHECK(fpv_unit_power(0.0, FpvSpec{}) == 0.0);
    CHECK(fpv_unit_power(0.25, FpvSpec{0.4, 0.4}) == doctest::Approx(0.25));
}

TEST_CASE("generation profiles hour by hour")
{
    ProjectionSpecs specs;
    specs.wec_matrix = square_matrix();
    ResourceProfiles zero{std::vector<double>(24, 0.0), std::vector<double>(24, 0.0), std::vector<double>(24, 0.0),
                          std::vector<double>(24, 0.0), std::vector<double>(24, 0.0)};
    const auto z = build_generation_profiles(zero, specs);
    for (const auto* v : {&z.wec, &z.tec, &z.owt, &z.fpv}) {
        REQUIRE(v->size() == 24);
        for (double x : *v) CHECK(x == 0.0);
    }

    auto in = zero;
    in.wind_speed.assign(24, 10.0);
    in.current_speed[5] = 3.0;
    const auto p = build_generation_profiles(in, specs);
    const double hub = swept_area_power(extrapolate_wind_speed(10.0, specs.shear), specs.owt);
    for (double x : p.owt) CHECK(x == hub);
    CHECK(p.tec[5] == 500.0);
}

TEST_CASE("property: cubic law below the cap")
{
    Gen g(17);
    int checked = 0;
    for (int i = 0; i < 1000; ++i) {
        RotorSpec spec;
        spec.fluid_density = g.uniform(1.0, 1100.0);
        spec.rotor_radius = g.uniform(1.0, 100.0);
        spec.power_coefficient = g.uniform(0.05, kBetzLimit);
        spec.electrical_efficiency = g.uniform(0.5, 1.0);
        spec.rated_power = 1e12;
        spec.cut_in_speed = 0.0;
        const double v = g.uniform(0.01, 20.0);
        const double a = swept_area_power(v, spec);
        const double b = swept_area_power(2.0 * v, spec);
        REQUIRE(a > 0.0);
        CHECK(b / a == doctest::Approx(8.0).epsilon(1e-12));
        ++checked;
    }
    CHECK(checked == 1000);
}

TEST_CASE("property: turbine output is monotone and within the rating")
{
    Gen g(19);
    for (const auto& spec : {RotorSpec::default_tidal(), RotorSpec::default_wind()}) {
        const double top = spec.cut_out_speed.value_or(10.0);
        double prev = 0.0;
        for (double v = spec.cut_in_speed; v < top; v += top / 997.0) {
            const double p = swept_area_power(v, spec);
            CHECK(p >= prev);
            CHECK(p <= spec.rated_power);
            prev = p;
        }
        for (int i = 0; i < 500; ++i) {
            const double p = swept_area_power(g.uniform(0.0, 60.0), spec);
            CHECK(p >= 0.0);
            CHECK(p <= spec.rated_power);
        }
    }
}

TEST_CASE("property: wind extrapolation is linear")
{
    Gen g(23);
    for (int i = 0; i < 500; ++i) {
        WindShearSpec shear{g.uniform(1.0, 10.0), 0.0, g.uniform(1e-5, 0.5)};
        shear.hub_height = shear.measurement_height + g.uniform(0.0, 150.0);
        const double v = g.uniform(0.0, 30.0);
        const double k = g.uniform(0.0, 5.0);
        CHECK(extrapolate_wind_speed(k * v, shear) ==
              doctest::Approx(k * extrapolate_wind_speed(v, shear)).epsilon(1e-12));
    }
}

TEST_CASE("property: matrix interpolation is continuous across cell edges")
{
    const auto m = fixture_matrix();
    const auto& hs = m.hs_axis();
    const auto& te = m.te_axis();
    Gen g(29);
    for (int i = 0; i < 1000; ++i) {
        // A point on an interior period edge, approached from both sides.
        const std::size_t j = static_cast<std::size_t>(g.integer(1, static_cast<int>(te.size()) - 2));
        const double h = g.uniform(hs.front(), hs.back());
        const double eps = 1e-9;
        const double left = wec_power(h, te[j] - eps, m);
        const double right = wec_power(h, te[j] + eps, m);
        const double on = wec_power(h, te[j], m);
        CHECK(left == doctest::Approx(on).epsilon(1e-6));
        CHECK(right == doctest::Approx(on).epsilon(1e-6));

        const std::size_t k = static_cast<std::size_t>(g.integer(1, static_cast<int>(hs.size()) - 2));
        const double t = g.uniform(te.front(), te.back());
        CHECK(wec_power(hs[k] - eps, t, m) == doctest::Approx(wec_power(hs[k], t, m)).epsilon(1e-6));
        CHECK(wec_power(hs[k] + eps, t, m) == doctest::Approx(wec_power(hs[k], t, m)).epsilon(1e-6));
    }
}

TEST_CASE("property: projected profiles never exceed unit ratings")
{
    Gen g(31);
    ProjectionSpecs specs;
    specs.wec_matrix = fixture_matrix();
    for (int trial = 0; trial < 200; ++trial) {
        ResourceProfiles in{g.series(24, 0, 40), g.series(24, 0, 12), g.series(24, 0, 20), g.series(24, 0, 5),
                            g.series(24, 0, 4.2)};
        const auto p = build_generation_profiles(in, specs);
        for (std::size_t h = 0; h < 24; ++h) {
            CHECK(p.owt[h] <= specs.owt.rated_power);
            CHECK(p.tec[h] <= specs.tec.rated_power);
            CHECK(p.wec[h] <= 750.0);
            CHECK(p.fpv[h] <= specs.fpv.panel_rating * 1.05);
            CHECK(std::min({p.owt[h], p.tec[h], p.wec[h], p.fpv[h]}) >= 0.0);
        }
    }
}

TEST_CASE("observation-level series from the fixtures")
{
    std::ifstream met_in(testsupport::source_path("data/ndbc_46001_2022.txt"));
    const auto met = ingest::parse_ndbc(met_in);
    const auto owt = project_owt_series(met, RotorSpec::default_wind(), WindShearSpec{});
    CHECK(owt.size() == met.size());
    const auto wec = project_wec_series(met, fixture_matrix(), WavePeriodChannel::Dominant);
    CHECK(wec.present_count() > 0);
    for (const auto& v : wec.values()) {
        if (v) CHECK(*v <= 750.0);
    }
    CHECK(parse_wave_period_channel("apd") == WavePeriodChannel::Average);
    CHECK_THROWS_AS(parse_wave_period_channel("mwd"), ConfigError);
}
