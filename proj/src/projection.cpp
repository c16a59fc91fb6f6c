#include "ohres/projection.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>

#include "text_util.hpp"

namespace ohres::projection {

namespace {

void require(bool ok, const std::string& what)
{
    if (!ok) throw ParameterError(what);
}

bool strictly_ascending(const std::vector<double>& axis)
{
    return std::adjacent_find(axis.begin(), axis.end(), std::greater_equal<>()) == axis.end();
}

// Index i with axis[i] <= x <= axis[i+1]; x must lie inside the axis range.
std::size_t bracket(const std::vector<double>& axis, double x)
{
    const auto it = std::upper_bound(axis.begin(), axis.end(), x);
    const auto hi = static_cast<std::size_t>(it - axis.begin());
    return std::min(hi == 0 ? 0 : hi - 1, axis.size() - 2);
}

}  // namespace

void RotorSpec::validate() const
{
    require(fluid_density > 0.0, "rotor fluid density must be positive");
    require(rotor_radius > 0.0, "rotor radius must be positive");
    require(power_coefficient > 0.0 && power_coefficient <= kBetzLimit,
            "power coefficient must lie in (0, 16/27]");
    require(electrical_efficiency > 0.0 && electrical_efficiency <= 1.0,
            "electrical efficiency must lie in (0, 1]");
    require(rated_power > 0.0, "rated power must be positive");
    require(cut_in_speed >= 0.0, "cut-in speed must be non-negative");
    if (cut_out_speed) require(cut_in_speed < *cut_out_speed, "cut-in speed must be below cut-out speed");
}

RotorSpec RotorSpec::default_tidal()
{
    return {1025.0, 10.0, 0.40, 0.95, 500.0, 0.5, std::nullopt};
}

RotorSpec RotorSpec::default_wind()
{
    return {1.225, 80.0, 0.45, 0.95, 8000.0, 3.0, 25.0};
}

void WindShearSpec::validate() const
{
    require(roughness_length > 0.0, "roughness length must be positive");
    require(measurement_height > roughness_length, "measurement height must exceed the roughness length");
    require(hub_height >= measurement_height, "hub height must not be below the measurement height");
}

void FpvSpec::validate() const
{
    require(panel_rating > 0.0, "FPV panel rating must be positive");
    require(reference_system_rating > 0.0, "FPV reference system rating must be positive");
}

WecPowerMatrix::WecPowerMatrix(std::vector<double> hs_axis, std::vector<double> te_axis,
                               std::vector<std::vector<double>> cells, double rated_power)
    : hs_(std::move(hs_axis)), te_(std::move(te_axis)), cells_(std::move(cells)), rated_(rated_power)
{
    require(hs_.size() >= 2 && te_.size() >= 2, "WEC power matrix needs at least two rows and two columns");
    require(strictly_ascending(hs_) && strictly_ascending(te_), "WEC matrix axes must be strictly ascending");
    require(rated_ > 0.0, "WEC rated power must be positive");
    require(cells_.size() == hs_.size(), "WEC matrix row count does not match the wave-height axis");
    for (const auto& row : cells_) {
        require(row.size() == te_.size(), "WEC matrix column count does not match the period axis");
        for (double c : row) require(c >= 0.0 && c <= rated_, "WEC matrix cell outside [0, rated power]");
    }
}

WecPowerMatrix WecPowerMatrix::from_csv(std::istream& in, double rated_power, const std::string& source)
{
    std::vector<double> te;
    std::vector<double> hs;
    std::vector<std::vector<double>> cells;
    std::string line;
    std::size_t line_no = 0;
    bool have_axis = false;
    while (std::getline(in, line)) {
        ++line_no;
        const auto body = detail::trim(line);
        if (body.empty() || body.front() == '#') continue;
        const auto fields = detail::split_csv(body);
        if (fields.size() < 2) throw DataError("power matrix row needs at least two cells", source, line_no);
        std::vector<double> values;
        for (std::size_t i = 1; i < fields.size(); ++i) {
            const auto v = detail::parse_double(fields[i]);
            if (!v) throw DataError("non-numeric power matrix cell '" + fields[i] + "'", source, line_no);
            values.push_back(*v);
        }
        if (!have_axis) {
            te = std::move(values);
            have_axis = true;
            continue;
        }
        const auto h = detail::parse_double(fields[0]);
        if (!h) throw DataError("non-numeric wave height '" + fields[0] + "'", source, line_no);
        if (values.size() != te.size()) {
            throw DataError("power matrix row has " + std::to_string(values.size()) + " cells, expected " +
                                std::to_string(te.size()),
                            source, line_no);
        }
        hs.push_back(*h);
        cells.push_back(std::move(values));
    }
    if (!have_axis) throw DataError("empty power matrix file", source);
    return WecPowerMatrix(std::move(hs), std::move(te), std::move(cells), rated_power);
}

double extrapolate_wind_speed(double v_ref, const WindShearSpec& shear)
{
    shear.validate();
    require(v_ref >= 0.0, "wind speed must be non-negative");
    if (shear.hub_height == shear.measurement_height) return v_ref;
    return v_ref * std::log(shear.hub_height / shear.roughness_length) /
           std::log(shear.measurement_height / shear.roughness_length);
}

double swept_area_power(double v, const RotorSpec& spec)
{
    spec.validate();
    require(v >= 0.0, "flow speed must be non-negative");
    if (v < spec.cut_in_speed || v == 0.0) return 0.0;
    if (spec.cut_out_speed && v >= *spec.cut_out_speed) return 0.0;
    const double area = std::numbers::pi * spec.rotor_radius * spec.rotor_radius;
    const double watts = 0.5 * spec.fluid_density * area * v * v * v * spec.power_coefficient *
                         spec.electrical_efficiency;
    return std::min(watts / 1000.0, spec.rated_power);
}

double wec_power(double hs, double te, const WecPowerMatrix& m)
{
    require(hs >= 0.0 && te >= 0.0, "wave height and period must be non-negative");
    if (hs == 0.0 || te == 0.0) return 0.0;

    const auto& hs_axis = m.hs_axis();
    const auto& te_axis = m.te_axis();
    const std::size_t rows = hs_axis.size();
    const std::size_t cols = te_axis.size();

    if (hs < hs_axis.front()) {
        bool first_row_zero = true;
        for (std::size_t j = 0; j < cols; ++j) first_row_zero = first_row_zero && m.cell(0, j) == 0.0;
        if (first_row_zero) return 0.0;
        hs = hs_axis.front();
    }
    if (te < te_axis.front()) {
        bool first_col_zero = true;
        for (std::size_t i = 0; i < rows; ++i) first_col_zero = first_col_zero && m.cell(i, 0) == 0.0;
        if (first_col_zero) return 0.0;
        te = te_axis.front();
    }
    hs = std::min(hs, hs_axis.back());
    te = std::min(te, te_axis.back());

    const std::size_t i = bracket(hs_axis, hs);
    const std::size_t j = bracket(te_axis, te);
    const double fh = (hs - hs_axis[i]) / (hs_axis[i + 1] - hs_axis[i]);
    const double ft = (te - te_axis[j]) / (te_axis[j + 1] - te_axis[j]);
    const double p = (1.0 - fh) * (1.0 - ft) * m.cell(i, j) + (1.0 - fh) * ft * m.cell(i, j + 1) +
                     fh * (1.0 - ft) * m.cell(i + 1, j) + fh * ft * m.cell(i + 1, j + 1);
    return std::clamp(p, 0.0, m.rated_power());
}

double fpv_unit_power(double system_ac, const FpvSpec& spec)
{
    spec.validate();
    require(system_ac >= 0.0, "PV system output must be non-negative");
    return system_ac * (spec.panel_rating / spec.reference_system_rating);
}

WavePeriodChannel parse_wave_period_channel(const std::string& flag)
{
    if (flag == "dpd" || flag == "DPD") return WavePeriodChannel::Dominant;
    if (flag == "apd" || flag == "APD") return WavePeriodChannel::Average;
    throw ConfigError("unknown wave period channel '" + flag + "' (expected dpd or apd)");
}

void ProjectionSpecs::validate() const
{
    tec.validate();
    owt.validate();
    shear.validate();
    fpv.validate();
}

GenerationProfiles build_generation_profiles(const ResourceProfiles& in, const ProjectionSpecs& specs)
{
    specs.validate();
    const std::size_t n = in.wind_speed.size();
    require(in.wave_height.size() == n && in.wave_period.size() == n && in.current_speed.size() == n &&
                in.pv_system_ac.size() == n,
            "resource profiles must all have the same length");
    require(n > 0, "resource profiles are empty");

    GenerationProfiles out;
    out.wec.reserve(n);
    out.tec.reserve(n);
    out.owt.reserve(n);
    out.fpv.reserve(n);
    for (std::size_t h = 0; h < n; ++h) {
        out.owt.push_back(swept_area_power(extrapolate_wind_speed(in.wind_speed[h], specs.shear), specs.owt));
        out.tec.push_back(swept_area_power(in.current_speed[h], specs.tec));
        if (specs.wec_matrix) {
            out.wec.push_back(wec_power(in.wave_height[h], in.wave_period[h], *specs.wec_matrix));
        } else {
            require(in.wave_height[h] == 0.0, "WEC power matrix required for non-zero wave heights");
            out.wec.push_back(0.0);
        }
        out.fpv.push_back(fpv_unit_power(in.pv_system_ac[h], specs.fpv));
    }
    return out;
}

ingest::HourlySeries project_owt_series(std::span<const ingest::MeteoRecord> records, const RotorSpec& owt,
                                        const WindShearSpec& shear)
{
    owt.validate();
    shear.validate();
    return ingest::to_hourly(
        records,
        [&](const ingest::MeteoRecord& r) -> std::optional<double> {
            if (!r.wind_speed) return std::nullopt;
            return swept_area_power(extrapolate_wind_speed(*r.wind_speed, shear), owt);
        },
        ingest::Aggregation::Mean);
}

ingest::HourlySeries project_wec_series(std::span<const ingest::MeteoRecord> records,
                                        const WecPowerMatrix& matrix, WavePeriodChannel period)
{
    return ingest::to_hourly(
        records,
        [&](const ingest::MeteoRecord& r) -> std::optional<double> {
            const auto te = period == WavePeriodChannel::Dominant ? r.dominant_wave_period : r.average_wave_period;
            if (!r.sig_wave_height || !te) return std::nullopt;
            return wec_power(*r.sig_wave_height, *te, matrix);
        },
        ingest::Aggregation::Mean);
}

ingest::HourlySeries project_tec_series(std::span<const ingest::CurrentRecord> records, const RotorSpec& tec)
{
    tec.validate();
    return ingest::to_hourly(
        records, [&](const ingest::CurrentRecord& r) -> std::optional<double> { return swept_area_power(r.speed, tec); },
        ingest::Aggregation::Mean);
}

ingest::HourlySeries project_fpv_series(std::span<const ingest::PvRecord> records, const FpvSpec& fpv)
{
    fpv.validate();
    std::vector<ingest::Observation> obs;
    obs.reserve(records.size());
    for (const auto& r : records) obs.push_back({ingest::pv_timestamp(r), fpv_unit_power(r.ac_output, fpv)});
    return ingest::to_hourly(std::span<const ingest::Observation>(obs), ingest::Aggregation::Mean);
}

}  // namespace ohres::projection
