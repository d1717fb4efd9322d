#pragma once

#include <set>
#include <string>

#include "wrangle/table.hpp"

namespace wrangle::spacetime {

inline constexpr double kEarthRadiusM = 6'371'000.0;
inline constexpr double kStatuteMileM = 1609.34;

/// Great-circle distance in meters. Throws RangeError for coordinates
/// outside [-90, 90] x [-180, 180].
double haversine_m(double lat1, double lon1, double lat2, double lon2);

struct SpaceTimeParams {
  double space_buffer_m = kStatuteMileM;
  std::int64_t time_buffer_s = 1800;

  std::string traffic_lat = "Lat";
  std::string traffic_lon = "Lon";
  /// When set, a Timestamp column; otherwise the Date + TimeOfDay pair below.
  std::string traffic_timestamp;
  std::string traffic_date = "Date";
  std::string traffic_time = "Hours";

  std::string weather_lat = "Lat";
  std::string weather_lon = "Lon";
  std::string weather_date = "ObsDate";
  std::string weather_time = "ObsTime";

  /// Throws InvalidParams unless both buffers are positive.
  void validate() const;
};

inline constexpr std::string_view kWeatherPrefix = "wx_";

/// For each traffic row, picks the weather row within both buffers that is
/// nearest in space, then nearest in time, then earliest in the weather
/// table, and appends its columns under the "wx_" prefix. Traffic rows with
/// no candidate keep Null weather cells; row count and order are unchanged.
Table time_space_join(const Table& traffic, const Table& weather, const SpaceTimeParams& params);

struct WetCodeSet {
  /// Met Office significant-weather codes for drizzle and rain.
  std::set<std::int64_t> codes = {9, 10, 11, 12, 13, 14, 15};
};

inline constexpr std::string_view kWeatherCodeColumn = "wx_W";
inline constexpr std::string_view kConditionColumn = "weatherCond";

/// Appends Text column `weatherCond`: "wet" when wx_W is in the set, "dry"
/// when present and not, Null when wx_W is Null.
Table add_weather_condition(const Table& t, const WetCodeSet& wet = {});

}  // namespace wrangle::spacetime
