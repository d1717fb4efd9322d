#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wrangle/cell.hpp"
#include "wrangle/table.hpp"

namespace wrangle::weather {

/// One observation. Every measured field may be absent independently.
struct WxRep {
  std::optional<std::string> wind_dir;           // D
  std::optional<double> gust;                    // G
  std::optional<double> humidity;                // H
  std::optional<double> pressure;                // P
  std::optional<double> wind_speed;              // S
  std::optional<double> temperature;             // T
  std::optional<double> visibility;              // V
  std::optional<std::int64_t> weather_code;      // W
  std::optional<std::string> pressure_tendency;  // Pt
  std::optional<double> dew_point;               // Dp
  int minutes_after_midnight = 0;                // $

  bool operator==(const WxRep&) const = default;
};

struct WxPeriod {
  std::string type = "Day";
  Date date;
  std::vector<WxRep> reps;

  bool operator==(const WxPeriod&) const = default;
};

struct WxLocation {
  std::string id;
  double lat = 0;
  double lon = 0;
  std::string name;
  std::string country;
  std::string continent;
  std::optional<double> elevation_m;
  std::vector<WxPeriod> periods;

  bool operator==(const WxLocation&) const = default;
};

struct WeatherDoc {
  Timestamp data_date;
  std::string doc_type = "Obs";
  std::vector<WxLocation> locations;
  /// Rep keys outside the known parameter set; skipped rather than rejected.
  std::size_t unknown_fields = 0;

  bool operator==(const WeatherDoc& other) const {
    return data_date == other.data_date && doc_type == other.doc_type &&
           locations == other.locations;
  }
};

/// Column order of flatten_weather's output.
inline constexpr std::array<std::string_view, 18> kFlatColumns = {
    "SiteID", "SiteName", "Lat", "Lon", "Elevation", "Country", "ObsDate", "ObsTime", "D",
    "G",      "H",        "P",   "S",   "T",         "V",       "W",       "Pt",      "Dp"};

/// Reads a SiteRep observation document, either wrapped in `{"SiteRep": ...}`
/// or starting at the object that holds `DV`. Values may be JSON strings or
/// numbers. A bare object where a list is expected counts as a one-element
/// list. Throws MalformedJson, MissingField, or RangeError.
WeatherDoc parse_weather_json(std::string_view bytes);

/// One row per (location, period, rep) in document order.
Table flatten_weather(const WeatherDoc& doc);

}  // namespace wrangle::weather
