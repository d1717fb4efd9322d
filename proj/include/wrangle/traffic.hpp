#pragma once

#include <set>
#include <string>
#include <vector>

#include "wrangle/table.hpp"

namespace wrangle::traffic {

/// Speeds are in mph and link lengths in meters; this is the only place the
/// unit assumption lives.
inline constexpr double kMetersPerSecondPerMph = 0.44704;

struct LinkMeasure {
  std::string site_id;
  double mean_speed = 0;   // mph
  double link_length = 0;  // meters

  bool operator==(const LinkMeasure&) const = default;
};

/// Strips leading apostrophes then leading zeros from each cell of a Text
/// column. An id made only of zeros becomes "0".
Table clean_site_id(const Table& t, const std::string& col);

/// Replaces Timestamp column `col`, in place, with `Date` (Date) and `Hours`
/// (TimeOfDay, fractional seconds preserved).
Table separate_datetime(const Table& t, const std::string& col);

/// Keeps rows whose Date or Timestamp in `date_col` falls on one of `days`.
Table filter_weekdays(const Table& t, const std::string& date_col, const std::set<Weekday>& days);

struct MeasureColumns {
  std::string site = "Site.ID";
  std::string length = "LinkLength";
  std::string speed = "mean_speed";
};

/// One measure per row. Throws NonPositiveSpeed for a Null or non-positive
/// speed, RangeError for a Null or negative length.
std::vector<LinkMeasure> extract_speed_and_length(const Table& t, const MeasureColumns& cols = {});

/// Sum over links of length / (speed * 0.44704), in seconds.
double journey_time_s(const std::vector<LinkMeasure>& measures);

/// Wraps the journey time as a one-cell table `journey_time_s`.
Table journey_time_table(double seconds);

/// Mean of `speed_col` per weatherCond value ("avg_speed"), rows with a Null
/// condition excluded first.
Table average_speed_by_condition(const Table& t, const std::string& speed_col);

}  // namespace wrangle::traffic
