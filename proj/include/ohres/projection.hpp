#pragma once

// Per-unit electrical output of the four marine generator types: swept-area
// turbines (tidal and wind), the wave converter power matrix, and linear
// scaling of a reference PV system.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ohres/ingest.hpp"

namespace ohres::projection {

/// Swept-area turbine (tidal or wind). A cut-out speed of std::nullopt means
/// the machine never cuts out (tidal converters).
struct RotorSpec {
    double fluid_density = 0.0;          // kg/m^3
    double rotor_radius = 0.0;           // m
    double power_coefficient = 0.0;      // Betz-limited
    double electrical_efficiency = 0.0;  // generator/converter
    double rated_power = 0.0;            // kW
    double cut_in_speed = 0.0;           // m/s
    std::optional<double> cut_out_speed;  // m/s

    /// Throws ParameterError when an invariant fails.
    void validate() const;

    static RotorSpec default_tidal();
    static RotorSpec default_wind();
};

inline constexpr double kBetzLimit = 16.0 / 27.0;

struct WindShearSpec {
    double measurement_height = 4.0;  // m, anemometer height on the buoy
    double hub_height = 80.0;         // m
    double roughness_length = 0.0002;  // m, open sea

    void validate() const;
};

class WecPowerMatrix {
public:
    WecPowerMatrix(std::vector<double> hs_axis, std::vector<double> te_axis,
                   std::vector<std::vector<double>> cells, double rated_power);

    /// Reads the CSV layout: first row holds the period axis (leading cell
    /// ignored), every following row starts with its wave height.
    static WecPowerMatrix from_csv(std::istream& in, double rated_power, const std::string& source = {});

    const std::vector<double>& hs_axis() const noexcept { return hs_; }
    const std::vector<double>& te_axis() const noexcept { return te_; }
    double cell(std::size_t i, std::size_t j) const { return cells_[i][j]; }
    double rated_power() const noexcept { return rated_; }

private:
    std::vector<double> hs_;
    std::vector<double> te_;
    std::vector<std::vector<double>> cells_;
    double rated_;
};

struct FpvSpec {
    double panel_rating = 0.4;               // kW per floating panel
    double reference_system_rating = 4.0;    // kW of the simulated PV system

    void validate() const;
};

/// Log-law extrapolation from measurement height to hub height.
double extrapolate_wind_speed(double v_ref, const WindShearSpec& shear);

/// 1/2 rho pi r^2 v^3 Cp eta in kW, zero outside [cut-in, cut-out), capped
/// at the rating.
double swept_area_power(double v, const RotorSpec& spec);

/// Bilinear lookup in the power matrix, clamped to the grid and the rating.
double wec_power(double hs, double te, const WecPowerMatrix& matrix);

double fpv_unit_power(double system_ac, const FpvSpec& spec);

enum class WavePeriodChannel { Dominant, Average };

WavePeriodChannel parse_wave_period_channel(const std::string& flag);

struct ProjectionSpecs {
    RotorSpec tec = RotorSpec::default_tidal();
    RotorSpec owt = RotorSpec::default_wind();
    WindShearSpec shear;
    FpvSpec fpv;
    std::optional<WecPowerMatrix> wec_matrix;

    void validate() const;
};

/// Hour-by-hour resource profiles (met/ocean units). Every vector has the
/// same length, normally 24.
struct ResourceProfiles {
    std::vector<double> wind_speed;      // m/s at measurement height
    std::vector<double> wave_height;     // m
    std::vector<double> wave_period;     // s
    std::vector<double> current_speed;   // m/s
    std::vector<double> pv_system_ac;    // kW of the reference system
};

struct GenerationProfiles {
    std::vector<double> wec;
    std::vector<double> tec;
    std::vector<double> owt;
    std::vector<double> fpv;
};

GenerationProfiles build_generation_profiles(const ResourceProfiles& inputs, const ProjectionSpecs& specs);

// Observation-level projection: each raw reading is turned into per-unit
// power before any averaging, then bucketed by hour.

ingest::HourlySeries project_owt_series(std::span<const ingest::MeteoRecord> records,
                                        const RotorSpec& owt, const WindShearSpec& shear);
ingest::HourlySeries project_wec_series(std::span<const ingest::MeteoRecord> records,
                                        const WecPowerMatrix& matrix, WavePeriodChannel period);
ingest::HourlySeries project_tec_series(std::span<const ingest::CurrentRecord> records, const RotorSpec& tec);
ingest::HourlySeries project_fpv_series(std::span<const ingest::PvRecord> records, const FpvSpec& fpv);

}  // namespace ohres::projection
