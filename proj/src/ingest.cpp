#include "ohres/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "text_util.hpp"

namespace ohres::ingest {

using detail::parse_double;
using detail::parse_int;
using detail::shortest;
using detail::split_csv;
using detail::split_ws;
using detail::trim;

namespace chr = std::chrono;

// ---------------------------------------------------------------------------
// Timestamps

Timestamp make_timestamp(int year, int month, int day, int hour, int minute, int second)
{
    const chr::year_month_day ymd{chr::year{year}, chr::month{static_cast<unsigned>(month)},
                                  chr::day{static_cast<unsigned>(day)}};
    if (!ymd.ok() || hour < 0 || hour > 23 || minute < 0 || minute > 59 || second < 0 || second > 59) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "invalid date/time %04d-%02d-%02d %02d:%02d:%02d", year, month,
                      day, hour, minute, second);
        throw DataError(buf);
    }
    return chr::sys_days(ymd) + chr::hours(hour) + chr::minutes(minute) + chr::seconds(second);
}

std::optional<Timestamp> parse_timestamp(std::string_view text)
{
    text = trim(text);
    int fields[6] = {0, 0, 0, 0, 0, 0};
    int count = 0;
    std::size_t i = 0;
    while (i < text.size() && count < 6) {
        std::size_t j = i;
        while (j < text.size() && text[j] >= '0' && text[j] <= '9') ++j;
        if (j == i) return std::nullopt;
        const auto v = parse_int(text.substr(i, j - i));
        if (!v) return std::nullopt;
        fields[count++] = static_cast<int>(*v);
        if (j == text.size()) {
            i = j;
            break;
        }
        const char sep = text[j];
        const bool date_sep = count < 3 && (sep == '-' || sep == '/');
        const bool mid_sep = count == 3 && (sep == ' ' || sep == 'T');
        const bool time_sep = count > 3 && sep == ':';
        if (!date_sep && !mid_sep && !time_sep) {
            // Allow a trailing 'Z' on ISO stamps.
            if ((sep == 'Z' || sep == 'z') && j + 1 == text.size()) {
                i = text.size();
                break;
            }
            return std::nullopt;
        }
        i = j + 1;
        if (mid_sep) {
            while (i < text.size() && text[i] == ' ') ++i;
        }
    }
    if (i != text.size() || (count != 3 && count != 5 && count != 6)) return std::nullopt;
    try {
        return make_timestamp(fields[0], fields[1], fields[2], fields[3], fields[4], fields[5]);
    } catch (const DataError&) {
        return std::nullopt;
    }
}

std::string format_timestamp(Timestamp t)
{
    const auto day = chr::floor<chr::days>(t);
    const chr::year_month_day ymd{day};
    const chr::hh_mm_ss hms{t - day};
    char buf[64];
    if (hms.seconds().count() != 0) {
        std::snprintf(buf, sizeof buf, "%04d-%02u-%02u %02d:%02d:%02d", static_cast<int>(ymd.year()),
                      static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                      static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                      static_cast<int>(hms.seconds().count()));
    } else {
        std::snprintf(buf, sizeof buf, "%04d-%02u-%02u %02d:%02d", static_cast<int>(ymd.year()),
                      static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                      static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()));
    }
    return buf;
}

int hour_of_day(Timestamp t)
{
    const auto day = chr::floor<chr::days>(t);
    return static_cast<int>(chr::floor<chr::hours>(t - day).count());
}

// ---------------------------------------------------------------------------
// NDBC

namespace {

struct ChannelInfo {
    const char* name;
    double sentinel;
    const char* sentinel_text;
    const char* unit;
};

// Historical stdmet sentinel convention.
constexpr ChannelInfo kNdbcChannels[] = {
    {"WDIR", 999.0, "999", "degT"}, {"WSPD", 99.0, "99.0", "m/s"},   {"GST", 99.0, "99.0", "m/s"},
    {"WVHT", 99.0, "99.00", "m"},   {"DPD", 99.0, "99.00", "sec"},   {"APD", 99.0, "99.00", "sec"},
    {"MWD", 999.0, "999", "degT"},  {"PRES", 9999.0, "9999.0", "hPa"}, {"ATMP", 999.0, "999.0", "degC"},
    {"WTMP", 999.0, "999.0", "degC"}, {"DEWP", 999.0, "999.0", "degC"}, {"VIS", 99.0, "99.0", "nmi"},
    {"PTDY", 99.0, "99.0", "hPa"},  {"TIDE", 99.0, "99.00", "ft"},
};

const ChannelInfo* channel_info(std::string_view name)
{
    for (const auto& c : kNdbcChannels) {
        if (name == c.name) return &c;
    }
    return nullptr;
}

std::string canonical_channel(std::string_view raw)
{
    if (raw == "WD") return "WDIR";
    if (raw == "BAR") return "PRES";
    return std::string(raw);
}

enum class TimeField { None, Year, Month, Day, Hour, Minute };

TimeField time_field(std::string_view name)
{
    if (name == "YY" || name == "YYYY" || name == "yr") return TimeField::Year;
    if (name == "MM") return TimeField::Month;
    if (name == "DD") return TimeField::Day;
    if (name == "hh") return TimeField::Hour;
    if (name == "mm") return TimeField::Minute;
    return TimeField::None;
}

const std::vector<std::string>& default_ndbc_columns()
{
    static const std::vector<std::string> cols = {"YY",   "MM",   "DD",   "hh",   "mm",  "WDIR",
                                                  "WSPD", "GST",  "WVHT", "DPD",  "APD", "MWD",
                                                  "PRES", "ATMP", "WTMP", "DEWP", "VIS", "TIDE"};
    return cols;
}

bool looks_numeric(std::string_view token)
{
    return parse_double(token).has_value();
}

std::optional<double>* named_slot(MeteoRecord& r, std::string_view name)
{
    if (name == "WDIR") return &r.wind_direction;
    if (name == "WSPD") return &r.wind_speed;
    if (name == "GST") return &r.gust_speed;
    if (name == "WVHT") return &r.sig_wave_height;
    if (name == "DPD") return &r.dominant_wave_period;
    if (name == "APD") return &r.average_wave_period;
    return nullptr;
}

constexpr const char* kNamedChannels[] = {"WDIR", "WSPD", "GST", "WVHT", "DPD", "APD"};

}  // namespace

std::optional<double> ndbc_sentinel(std::string_view channel)
{
    if (const auto* info = channel_info(canonical_channel(channel))) return info->sentinel;
    return std::nullopt;
}

std::optional<double> MeteoRecord::channel(std::string_view name) const
{
    if (name == "WDIR") return wind_direction;
    if (name == "WSPD") return wind_speed;
    if (name == "GST") return gust_speed;
    if (name == "WVHT") return sig_wave_height;
    if (name == "DPD") return dominant_wave_period;
    if (name == "APD") return average_wave_period;
    for (const auto& [n, v] : extra) {
        if (n == name) return v;
    }
    return std::nullopt;
}

std::vector<MeteoRecord> parse_ndbc(std::istream& in, const std::string& source)
{
    std::vector<std::string> columns;
    int header_lines = 0;
    bool saw_any_line = false;
    std::vector<MeteoRecord> records;
    std::string line;
    std::size_t line_no = 0;

    while (std::getline(in, line)) {
        ++line_no;
        const auto body = trim(line);
        if (body.empty()) continue;
        saw_any_line = true;

        if (body.front() == '#') {
            if (!records.empty()) throw DataError("header line after data rows", source, line_no);
            if (++header_lines > 2) throw DataError("more than two header lines", source, line_no);
            if (header_lines == 1) {
                for (auto tok : split_ws(body.substr(1))) columns.emplace_back(tok);
            }
            continue;
        }

        auto tokens = split_ws(body);
        if (records.empty() && columns.empty() && !tokens.empty() && !looks_numeric(tokens.front())) {
            // Pre-2007 files carry an unprefixed names line.
            if (++header_lines > 2) throw DataError("more than two header lines", source, line_no);
            for (auto tok : tokens) columns.emplace_back(tok);
            continue;
        }

        if (columns.empty()) columns = default_ndbc_columns();
        if (tokens.size() != columns.size()) {
            throw DataError("expected " + std::to_string(columns.size()) + " columns, found " +
                                std::to_string(tokens.size()),
                            source, line_no);
        }

        int year = -1, month = -1, day = -1, hour = -1, minute = 0;
        MeteoRecord rec;
        for (std::size_t c = 0; c < columns.size(); ++c) {
            const auto tf = time_field(columns[c]);
            if (tf != TimeField::None) {
                const auto v = parse_int(tokens[c]);
                if (!v) {
                    throw DataError("non-numeric token '" + std::string(tokens[c]) + "' in column " +
                                        columns[c],
                                    source, line_no);
                }
                const int iv = static_cast<int>(*v);
                switch (tf) {
                    case TimeField::Year: year = iv < 100 ? iv + 1900 : iv; break;
                    case TimeField::Month: month = iv; break;
                    case TimeField::Day: day = iv; break;
                    case TimeField::Hour: hour = iv; break;
                    case TimeField::Minute: minute = iv; break;
                    case TimeField::None: break;
                }
                continue;
            }

            const std::string name = canonical_channel(columns[c]);
            std::optional<double> value;
            if (tokens[c] != "MM") {
                value = parse_double(tokens[c]);
                if (!value) {
                    throw DataError("non-numeric token '" + std::string(tokens[c]) + "' in column " + name,
                                    source, line_no);
                }
                if (const auto sentinel = ndbc_sentinel(name); sentinel && *value == *sentinel) {
                    value.reset();
                }
            }
            if (auto* slot = named_slot(rec, name)) {
                *slot = value;
            } else {
                rec.extra.emplace_back(name, value);
            }
        }

        if (year < 0 || month < 0 || day < 0 || hour < 0) {
            throw DataError("row lacks a complete date/time", source, line_no);
        }
        try {
            rec.timestamp = make_timestamp(year, month, day, hour, minute);
        } catch (const DataError& e) {
            throw DataError(e.what(), source, line_no);
        }
        if (rec.wind_speed && *rec.wind_speed < 0.0) throw DataError("negative wind speed", source, line_no);
        if (rec.gust_speed && *rec.gust_speed < 0.0) throw DataError("negative gust speed", source, line_no);
        if (rec.sig_wave_height && *rec.sig_wave_height < 0.0) {
            throw DataError("negative significant wave height", source, line_no);
        }
        records.push_back(std::move(rec));
    }

    if (!saw_any_line) throw DataError("empty NDBC file", source);
    if (records.empty()) throw DataError("NDBC file has no data rows", source);

    auto has = [&](const char* name) {
        return std::any_of(columns.begin(), columns.end(),
                           [&](const std::string& c) { return canonical_channel(c) == name; });
    };
    if (!has("WSPD") || !has("WVHT") || (!has("DPD") && !has("APD"))) {
        throw DataError("NDBC file must provide WSPD, WVHT and DPD or APD columns", source);
    }
    return records;
}

void write_ndbc(std::ostream& out, std::span<const MeteoRecord> records)
{
    std::vector<std::string> channels(std::begin(kNamedChannels), std::end(kNamedChannels));
    if (!records.empty()) {
        for (const auto& [name, v] : records.front().extra) channels.push_back(name);
    }

    out << "#YY  MM DD hh mm";
    for (const auto& c : channels) out << ' ' << c;
    out << "\n#yr  mo dy hr mn";
    for (const auto& c : channels) {
        const auto* info = channel_info(c);
        out << ' ' << (info ? info->unit : "-");
    }
    out << '\n';

    char buf[64];
    for (const auto& r : records) {
        const auto day = chr::floor<chr::days>(r.timestamp);
        const chr::year_month_day ymd{day};
        const chr::hh_mm_ss hms{r.timestamp - day};
        std::snprintf(buf, sizeof buf, "%04d %02u %02u %02d %02d", static_cast<int>(ymd.year()),
                      static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                      static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()));
        out << buf;
        for (const auto& c : channels) {
            const auto v = r.channel(c);
            out << ' ';
            if (v) {
                out << shortest(*v);
            } else if (const auto* info = channel_info(c)) {
                out << info->sentinel_text;
            } else {
                out << "MM";
            }
        }
        out << '\n';
    }
}

// ---------------------------------------------------------------------------
// Currents

SpeedUnit parse_speed_unit(std::string_view flag)
{
    if (flag == "knots") return SpeedUnit::Knots;
    if (flag == "cm_per_s") return SpeedUnit::CentimetersPerSecond;
    if (flag == "m_per_s") return SpeedUnit::MetersPerSecond;
    throw ConfigError("unknown current speed unit '" + std::string(flag) +
                      "' (expected knots, cm_per_s or m_per_s)");
}

std::string_view to_string(SpeedUnit unit)
{
    switch (unit) {
        case SpeedUnit::Knots: return "knots";
        case SpeedUnit::CentimetersPerSecond: return "cm_per_s";
        case SpeedUnit::MetersPerSecond: return "m_per_s";
    }
    return "?";
}

double speed_to_mps(double value, SpeedUnit unit)
{
    switch (unit) {
        case SpeedUnit::Knots: return value * 0.514444;
        case SpeedUnit::CentimetersPerSecond: return value * 0.01;
        case SpeedUnit::MetersPerSecond: return value;
    }
    return value;
}

std::vector<CurrentRecord> parse_currents(std::istream& in, SpeedUnit unit, const std::string& source)
{
    std::string line;
    std::size_t line_no = 0;
    std::vector<CurrentRecord> out;
    bool have_header = false;
    std::size_t time_col = 0, speed_col = 1, dir_col = 2;

    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto cells = split_csv(line);

        if (!have_header) {
            have_header = true;
            if (cells.size() < 3) throw DataError("currents header needs 3 columns", source, line_no);
            std::optional<std::size_t> t, s, d;
            for (std::size_t i = 0; i < cells.size(); ++i) {
                const auto name = detail::lower(cells[i]);
                if (!t && (name.find("date") != std::string::npos || name.find("time") != std::string::npos)) t = i;
                else if (!s && (name.find("speed") != std::string::npos || name.find("spd") != std::string::npos)) s = i;
                else if (!d && name.find("dir") != std::string::npos) d = i;
            }
            if (t && s && d) {
                time_col = *t;
                speed_col = *s;
                dir_col = *d;
            }
            continue;
        }

        const std::size_t needed = std::max({time_col, speed_col, dir_col}) + 1;
        if (cells.size() < needed) {
            throw DataError("expected at least " + std::to_string(needed) + " columns", source, line_no);
        }
        const auto ts = parse_timestamp(cells[time_col]);
        if (!ts) throw DataError("unparseable timestamp '" + cells[time_col] + "'", source, line_no);
        const auto speed = parse_double(cells[speed_col]);
        if (!speed) throw DataError("non-numeric speed '" + cells[speed_col] + "'", source, line_no);
        auto dir = parse_double(cells[dir_col]);
        if (!dir) throw DataError("non-numeric direction '" + cells[dir_col] + "'", source, line_no);
        if (*speed < 0.0) throw DataError("negative current speed", source, line_no);
        if (*dir == 360.0) dir = 0.0;
        if (*dir < 0.0 || *dir >= 360.0) throw DataError("direction outside [0, 360)", source, line_no);
        out.push_back({*ts, speed_to_mps(*speed, unit), *dir});
    }
    if (!have_header) throw DataError("empty currents file", source);
    return out;
}

void write_currents(std::ostream& out, std::span<const CurrentRecord> records)
{
    out << "Date Time, Speed (m/s), Dir (true)\n";
    for (const auto& r : records) {
        out << format_timestamp(r.timestamp) << ", " << shortest(r.speed) << ", " << shortest(r.direction)
            << '\n';
    }
}

// ---------------------------------------------------------------------------
// PVWatts

namespace {

bool is_ac_column(const std::string& cell)
{
    const auto name = detail::lower(cell);
    return name.rfind("ac", 0) == 0 && name.find("(w)") != std::string::npos;
}

std::optional<std::size_t> find_column(const std::vector<std::string>& cells, std::string_view wanted)
{
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (detail::lower(cells[i]) == wanted) return i;
    }
    return std::nullopt;
}

// Watt value whose kW conversion reproduces `kw` bit for bit.
std::string watts_text(double kw)
{
    double w = kw * 1000.0;
    for (int step = 0; step < 8; ++step) {
        if (w / 1000.0 == kw) return shortest(w);
        w = (w / 1000.0 < kw) ? std::nextafter(w, HUGE_VAL) : std::nextafter(w, -HUGE_VAL);
    }
    return shortest(kw * 1000.0);
}

}  // namespace

PvWattsData parse_pvwatts(std::istream& in, std::optional<double> configured_rating, const std::string& source)
{
    PvWattsData data;
    std::optional<double> meta_rating;
    std::string line;
    std::size_t line_no = 0;
    bool in_body = false;
    std::size_t month_col = 0, day_col = 1, hour_col = 2, ac_col = 0;
    double rating = 0.0;

    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto cells = split_csv(line);

        if (!in_body) {
            const auto ac = std::find_if(cells.begin(), cells.end(), is_ac_column);
            if (ac == cells.end()) {
                if (cells.size() >= 2 && detail::lower(cells[0]).find("dc system size") != std::string::npos) {
                    meta_rating = parse_double(cells[1]);
                    if (!meta_rating || *meta_rating <= 0.0) {
                        throw DataError("invalid DC system size '" + cells[1] + "'", source, line_no);
                    }
                }
                continue;
            }
            ac_col = static_cast<std::size_t>(ac - cells.begin());
            const auto m = find_column(cells, "month");
            const auto d = find_column(cells, "day");
            const auto h = find_column(cells, "hour");
            if (!m || !d || !h) throw DataError("PVWatts header lacks Month/Day/Hour", source, line_no);
            month_col = *m;
            day_col = *d;
            hour_col = *h;
            if (meta_rating) {
                rating = *meta_rating;
            } else if (configured_rating && *configured_rating > 0.0) {
                rating = *configured_rating;
            } else {
                throw ConfigError("PVWatts system rating missing from file metadata and configuration");
            }
            in_body = true;
            continue;
        }

        if (detail::lower(cells.front()) == "totals") continue;
        const std::size_t needed = std::max({month_col, day_col, hour_col, ac_col}) + 1;
        if (cells.size() < needed) {
            throw DataError("expected at least " + std::to_string(needed) + " columns", source, line_no);
        }
        const auto month = parse_int(cells[month_col]);
        const auto day = parse_int(cells[day_col]);
        const auto hour = parse_int(cells[hour_col]);
        const auto ac_w = parse_double(cells[ac_col]);
        if (!month || !day || !hour || !ac_w) throw DataError("non-numeric PVWatts row", source, line_no);
        if (*month < 1 || *month > 12 || *day < 1 || *day > 31 || *hour < 0 || *hour > 23) {
            throw DataError("month/day/hour out of range", source, line_no);
        }
        const double kw = *ac_w / 1000.0;
        if (kw < 0.0) throw DataError("negative AC output", source, line_no);
        if (kw > rating * (1.0 + kPvRatingTolerance)) {
            throw DataError("AC output " + shortest(kw) + " kW exceeds system rating " + shortest(rating) + " kW",
                            source, line_no);
        }
        data.records.push_back(
            {static_cast<int>(*month), static_cast<int>(*day), static_cast<int>(*hour), kw, rating});
    }

    if (line_no == 0) throw DataError("empty PVWatts file", source);
    if (!in_body) throw DataError("PVWatts file has no AC output column (W)", source);
    data.system_rating = rating;
    if (data.records.size() != kHoursPerYear) {
        data.warnings.push_back("expected " + std::to_string(kHoursPerYear) + " hourly rows, found " +
                                std::to_string(data.records.size()));
    }
    return data;
}

void write_pvwatts(std::ostream& out, const PvWattsData& data)
{
    out << "\"DC System Size (kW):\",\"" << shortest(data.system_rating) << "\"\n";
    out << "\"Month\",\"Day\",\"Hour\",\"AC System Output (W)\"\n";
    for (const auto& r : data.records) {
        out << r.month << ',' << r.day << ',' << r.hour << ',' << watts_text(r.ac_output) << '\n';
    }
}

Timestamp pv_timestamp(const PvRecord& record, int year)
{
    return make_timestamp(year, record.month, record.day, record.hour);
}

// ---------------------------------------------------------------------------
// Hourly series

HourlySeries::HourlySeries(Timestamp start, std::vector<std::optional<double>> values)
    : start_(chr::floor<chr::hours>(start)), values_(std::move(values))
{
}

Timestamp HourlySeries::time_at(std::size_t i) const
{
    return start_ + chr::hours(static_cast<long>(i));
}

std::size_t HourlySeries::present_count() const
{
    return static_cast<std::size_t>(
        std::count_if(values_.begin(), values_.end(), [](const auto& v) { return v.has_value(); }));
}

HourlySeries HourlySeries::transform(const std::function<double(double)>& fn) const
{
    std::vector<std::optional<double>> out;
    out.reserve(values_.size());
    for (const auto& v : values_) out.push_back(v ? std::optional<double>(fn(*v)) : std::nullopt);
    return HourlySeries(start_, std::move(out));
}

HourlySeries to_hourly(std::span<const Observation> observations, Aggregation aggregation)
{
    if (observations.empty()) return {};
    for (std::size_t i = 1; i < observations.size(); ++i) {
        if (observations[i].time < observations[i - 1].time) {
            throw DataError("observations are not time-ordered at index " + std::to_string(i));
        }
    }
    const auto first = chr::floor<chr::hours>(observations.front().time);
    const auto last = chr::floor<chr::hours>(observations.back().time);
    const auto slots = static_cast<std::size_t>((last - first).count()) + 1;

    std::vector<double> sums(slots, 0.0);
    std::vector<std::size_t> counts(slots, 0);
    std::vector<std::optional<double>> values(slots);
    for (const auto& o : observations) {
        if (!o.value) continue;
        const auto slot = static_cast<std::size_t>((chr::floor<chr::hours>(o.time) - first).count());
        sums[slot] += *o.value;
        ++counts[slot];
        if (aggregation == Aggregation::Last) values[slot] = *o.value;
    }
    if (aggregation == Aggregation::Mean) {
        for (std::size_t s = 0; s < slots; ++s) {
            if (counts[s] > 0) values[s] = sums[s] / static_cast<double>(counts[s]);
        }
    }
    return HourlySeries(first, std::move(values));
}

// ---------------------------------------------------------------------------
// Typical day

TypicalDayProfile TypicalDayProfile::constant(double value, int samples)
{
    TypicalDayProfile p;
    p.hour_values.fill(value);
    p.sample_counts.fill(samples);
    return p;
}

namespace {

std::string missing_hours_message(const std::vector<int>& hours)
{
    std::string msg = "incomplete typical-day profile: no samples for hour(s)";
    for (std::size_t i = 0; i < hours.size(); ++i) msg += (i ? ", " : " ") + std::to_string(hours[i]);
    return msg;
}

}  // namespace

IncompleteProfileError::IncompleteProfileError(std::vector<int> missing_hours, const std::string& source)
    : DataError(missing_hours_message(missing_hours), source), missing_(std::move(missing_hours))
{
}

TypicalDayProfile typical_day(const HourlySeries& series, const std::string& source)
{
    std::array<double, kHoursPerDay> sums{};
    TypicalDayProfile profile;
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (!series[i]) continue;
        const auto h = static_cast<std::size_t>(hour_of_day(series.time_at(i)));
        sums[h] += *series[i];
        ++profile.sample_counts[h];
    }
    std::vector<int> missing;
    for (std::size_t h = 0; h < kHoursPerDay; ++h) {
        if (profile.sample_counts[h] == 0) {
            missing.push_back(static_cast<int>(h));
        } else {
            profile.hour_values[h] = sums[h] / profile.sample_counts[h];
        }
    }
    if (!missing.empty()) throw IncompleteProfileError(std::move(missing), source);
    return profile;
}

std::string profiles_to_json(const ProfileSet& profiles, int indent)
{
    nlohmann::json doc = nlohmann::json::object();
    for (const auto& [name, p] : profiles) {
        doc[name] = {{"hours", p.hour_values}, {"samples", p.sample_counts}};
    }
    return doc.dump(indent);
}

ProfileSet profiles_from_json(std::string_view text, const std::string& source)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("invalid profiles JSON: ") + e.what(), source);
    }
    if (!doc.is_object()) throw DataError("profiles document must be a JSON object", source);
    ProfileSet out;
    for (const auto& [name, entry] : doc.items()) {
        const auto where = "profile '" + name + "'";
        if (!entry.is_object() || !entry.contains("hours")) throw DataError(where + " lacks \"hours\"", source);
        const auto& hours = entry["hours"];
        if (!hours.is_array() || hours.size() != kHoursPerDay) {
            throw DataError(where + " must have 24 hourly values", source);
        }
        TypicalDayProfile p;
        p.sample_counts.fill(1);
        for (std::size_t h = 0; h < kHoursPerDay; ++h) {
            if (!hours[h].is_number()) throw DataError(where + " has a non-numeric hour value", source);
            p.hour_values[h] = hours[h].get<double>();
        }
        if (entry.contains("samples")) {
            const auto& samples = entry["samples"];
            if (!samples.is_array() || samples.size() != kHoursPerDay) {
                throw DataError(where + " must have 24 sample counts", source);
            }
            for (std::size_t h = 0; h < kHoursPerDay; ++h) {
                if (!samples[h].is_number_integer() || samples[h].get<long long>() < 0) {
                    throw DataError(where + " has an invalid sample count", source);
                }
                p.sample_counts[h] = samples[h].get<int>();
            }
        }
        out.emplace(name, p);
    }
    return out;
}

}  // namespace ohres::ingest
