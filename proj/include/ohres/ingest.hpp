#pragma once

// Readers for the three public ocean/solar dataset layouts (NDBC standard
// meteorological history, NOAA CO-OPS current CSV, PVWatts hourly CSV), the
// hourly bucketing step and the hour-of-day averaging that produces a
// typical-day profile.

#include <array>
#include <chrono>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ohres/error.hpp"

namespace ohres::ingest {

using Timestamp = std::chrono::sys_seconds;

/// Builds a UTC timestamp from calendar fields. Throws DataError on an
/// impossible date.
Timestamp make_timestamp(int year, int month, int day, int hour, int minute = 0, int second = 0);

/// Parses "YYYY-MM-DD HH:MM[:SS]" (also '/' separators or an ISO 'T').
std::optional<Timestamp> parse_timestamp(std::string_view text);

std::string format_timestamp(Timestamp t);

/// Hour of day in the file's own clock (no timezone conversion).
int hour_of_day(Timestamp t);

// ---------------------------------------------------------------------------
// NDBC standard meteorological data

struct MeteoRecord {
    Timestamp timestamp;
    std::optional<double> wind_direction;      // WDIR, degT
    std::optional<double> wind_speed;          // WSPD, m/s
    std::optional<double> gust_speed;          // GST, m/s
    std::optional<double> sig_wave_height;     // WVHT, m
    std::optional<double> dominant_wave_period;  // DPD, s
    std::optional<double> average_wave_period;   // APD, s
    // Every other column of the file, in file order (MWD, PRES, ATMP, ...).
    std::vector<std::pair<std::string, std::optional<double>>> extra;

    std::optional<double> channel(std::string_view name) const;

    bool operator==(const MeteoRecord&) const = default;
};

/// Missing-value sentinel NDBC uses for a channel, if one is defined.
std::optional<double> ndbc_sentinel(std::string_view channel);

/// Reads an NDBC historical stdmet file. Columns are matched by header name;
/// WSPD, WVHT and at least one of DPD/APD must be present. Sentinel values
/// become absent. `source` labels error messages.
std::vector<MeteoRecord> parse_ndbc(std::istream& in, const std::string& source = {});

/// Writes records in the modern two-header-line layout. Channel order is the
/// six named channels followed by the first record's extra channels.
void write_ndbc(std::ostream& out, std::span<const MeteoRecord> records);

// ---------------------------------------------------------------------------
// NOAA CO-OPS currents

enum class SpeedUnit { Knots, CentimetersPerSecond, MetersPerSecond };

/// Accepts "knots", "cm_per_s", "m_per_s". Anything else is a ConfigError.
SpeedUnit parse_speed_unit(std::string_view flag);
std::string_view to_string(SpeedUnit unit);
double speed_to_mps(double value, SpeedUnit unit);

struct CurrentRecord {
    Timestamp timestamp;
    double speed = 0.0;      // m/s
    double direction = 0.0;  // degrees true, [0, 360)

    bool operator==(const CurrentRecord&) const = default;
};

std::vector<CurrentRecord> parse_currents(std::istream& in, SpeedUnit unit,
                                          const std::string& source = {});

/// Writes a CSV with speeds in m/s; re-read it with SpeedUnit::MetersPerSecond.
void write_currents(std::ostream& out, std::span<const CurrentRecord> records);

// ---------------------------------------------------------------------------
// PVWatts hourly export

struct PvRecord {
    int month = 1;
    int day = 1;
    int hour = 0;
    double ac_output = 0.0;      // kW
    double system_rating = 0.0;  // kW

    bool operator==(const PvRecord&) const = default;
};

struct PvWattsData {
    std::vector<PvRecord> records;
    double system_rating = 0.0;  // kW
    std::vector<std::string> warnings;
};

inline constexpr double kPvRatingTolerance = 0.05;
inline constexpr std::size_t kHoursPerYear = 8760;

/// Reads a PVWatts hourly CSV. The system rating comes from the
/// "DC System Size (kW)" metadata row when present, else from
/// `configured_rating` (kW); with neither the call fails.
PvWattsData parse_pvwatts(std::istream& in, std::optional<double> configured_rating = std::nullopt,
                          const std::string& source = {});

void write_pvwatts(std::ostream& out, const PvWattsData& data);

/// Places a month/day/hour row on the calendar of `year`.
Timestamp pv_timestamp(const PvRecord& record, int year = 2001);

// ---------------------------------------------------------------------------
// Hourly series and typical day

struct Observation {
    Timestamp time;
    std::optional<double> value;
};

enum class Aggregation { Mean, Last };

/// One slot per clock hour from `start`; std::nullopt marks a gap.
class HourlySeries {
public:
    HourlySeries() = default;
    HourlySeries(Timestamp start, std::vector<std::optional<double>> values);

    Timestamp start() const noexcept { return start_; }
    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }
    Timestamp time_at(std::size_t i) const;
    const std::optional<double>& operator[](std::size_t i) const { return values_[i]; }
    const std::vector<std::optional<double>>& values() const noexcept { return values_; }
    std::size_t present_count() const;

    /// Applies `fn` to every present value, keeping gaps.
    HourlySeries transform(const std::function<double(double)>& fn) const;

private:
    Timestamp start_{};
    std::vector<std::optional<double>> values_;
};

/// Buckets time-ordered observations by clock hour. Absent observation
/// values are ignored; an hour with no present value is a gap.
HourlySeries to_hourly(std::span<const Observation> observations, Aggregation aggregation);

template <typename Record, typename Selector>
HourlySeries to_hourly(std::span<const Record> records, Selector&& select, Aggregation aggregation)
{
    std::vector<Observation> obs;
    obs.reserve(records.size());
    for (const auto& r : records) obs.push_back({r.timestamp, select(r)});
    return to_hourly(std::span<const Observation>(obs), aggregation);
}

inline constexpr std::size_t kHoursPerDay = 24;

struct TypicalDayProfile {
    std::array<double, kHoursPerDay> hour_values{};
    std::array<int, kHoursPerDay> sample_counts{};

    static TypicalDayProfile constant(double value, int samples = 1);
    std::vector<double> as_vector() const { return {hour_values.begin(), hour_values.end()}; }
};

class IncompleteProfileError : public DataError {
public:
    explicit IncompleteProfileError(std::vector<int> missing_hours, const std::string& source = {});
    const std::vector<int>& missing_hours() const noexcept { return missing_; }

private:
    std::vector<int> missing_;
};

/// Averages present values by hour of day. Throws IncompleteProfileError
/// naming every hour of day without a sample.
TypicalDayProfile typical_day(const HourlySeries& series, const std::string& source = {});

/// Profiles document: {name: {"hours": [24 numbers], "samples": [24 ints]}}.
using ProfileSet = std::map<std::string, TypicalDayProfile>;

std::string profiles_to_json(const ProfileSet& profiles, int indent = 2);
ProfileSet profiles_from_json(std::string_view text, const std::string& source = {});

}  // namespace ohres::ingest
