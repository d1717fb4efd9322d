#include "wrangle/spacetime.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "wrangle/error.hpp"

namespace wrangle::spacetime {

namespace {

double radians(double deg) { return deg * std::numbers::pi / 180.0; }

void check_coordinate(double lat, double lon) {
  if (!(lat >= -90 && lat <= 90) || !(lon >= -180 && lon <= 180)) {
    fail(ErrorKind::RangeError,
         "coordinate out of range: (" + std::to_string(lat) + ", " + std::to_string(lon) + ")");
  }
}

const Column& column_of_kind(const Table& t, const std::string& name, bool numeric,
                             CellKind kind = CellKind::Real) {
  const Column& col = t.column(name);
  bool ok = numeric ? is_numeric(col.kind) : col.kind == kind;
  if (!ok) {
    fail(ErrorKind::TypeMismatch, "column '" + name + "' is " +
                                      std::string(to_string(col.kind)) + ", expected " +
                                      (numeric ? "a numeric column"
                                               : std::string(to_string(kind))));
  }
  return col;
}

struct Located {
  std::optional<double> lat, lon;
  std::optional<std::int64_t> centis;
};

std::vector<Located> locate(const Table& t, const std::string& lat, const std::string& lon,
                            const std::string& stamp, const std::string& date,
                            const std::string& time) {
  const Column& lat_col = column_of_kind(t, lat, true);
  const Column& lon_col = column_of_kind(t, lon, true);
  const Column* stamp_col = nullptr;
  const Column* date_col = nullptr;
  const Column* time_col = nullptr;
  if (!stamp.empty()) {
    stamp_col = &column_of_kind(t, stamp, false, CellKind::Timestamp);
  } else {
    date_col = &column_of_kind(t, date, false, CellKind::Date);
    time_col = &column_of_kind(t, time, false, CellKind::TimeOfDay);
  }
  std::vector<Located> out(t.row_count());
  for (std::size_t r = 0; r < out.size(); ++r) {
    out[r].lat = numeric_value(lat_col.cells[r]);
    out[r].lon = numeric_value(lon_col.cells[r]);
    if (stamp_col) {
      if (auto* ts = std::get_if<Timestamp>(&stamp_col->cells[r])) {
        out[r].centis = ts->centis_since_epoch();
      }
    } else {
      auto* d = std::get_if<Date>(&date_col->cells[r]);
      auto* tod = std::get_if<TimeOfDay>(&time_col->cells[r]);
      if (d && tod) out[r].centis = d->days_since_epoch() * TimeOfDay::kCentisPerDay + tod->centis;
    }
    if (out[r].lat && out[r].lon) check_coordinate(*out[r].lat, *out[r].lon);
  }
  return out;
}

}  // namespace

double haversine_m(double lat1, double lon1, double lat2, double lon2) {
  check_coordinate(lat1, lon1);
  check_coordinate(lat2, lon2);
  double dlat = radians(lat2 - lat1);
  double dlon = radians(lon2 - lon1);
  double a = std::sin(dlat / 2) * std::sin(dlat / 2) +
             std::cos(radians(lat1)) * std::cos(radians(lat2)) * std::sin(dlon / 2) *
                 std::sin(dlon / 2);
  a = std::clamp(a, 0.0, 1.0);
  return 2 * kEarthRadiusM * std::asin(std::sqrt(a));
}

void SpaceTimeParams::validate() const {
  if (!(space_buffer_m > 0)) fail(ErrorKind::InvalidParams, "space_buffer_m must be positive");
  if (time_buffer_s <= 0) fail(ErrorKind::InvalidParams, "time_buffer_s must be positive");
}

Table time_space_join(const Table& traffic, const Table& weather, const SpaceTimeParams& params) {
  params.validate();
  auto tloc = locate(traffic, params.traffic_lat, params.traffic_lon, params.traffic_timestamp,
                     params.traffic_date, params.traffic_time);
  auto wloc = locate(weather, params.weather_lat, params.weather_lon, "", params.weather_date,
                     params.weather_time);

  // Weather rows with complete coordinates, ordered by time for windowing.
  std::vector<std::size_t> by_time;
  for (std::size_t w = 0; w < wloc.size(); ++w) {
    if (wloc[w].lat && wloc[w].lon && wloc[w].centis) by_time.push_back(w);
  }
  std::stable_sort(by_time.begin(), by_time.end(), [&](std::size_t a, std::size_t b) {
    return *wloc[a].centis < *wloc[b].centis;
  });

  const std::int64_t window = params.time_buffer_s * 100;
  std::vector<std::optional<std::size_t>> match(traffic.row_count());
  for (std::size_t r = 0; r < tloc.size(); ++r) {
    const Located& t = tloc[r];
    if (!t.lat || !t.lon || !t.centis) continue;
    auto lo = std::lower_bound(by_time.begin(), by_time.end(), *t.centis - window,
                               [&](std::size_t w, std::int64_t v) { return *wloc[w].centis < v; });
    double best_dist = 0;
    std::int64_t best_dt = 0;
    std::optional<std::size_t> best;
    for (auto it = lo; it != by_time.end() && *wloc[*it].centis <= *t.centis + window; ++it) {
      std::size_t w = *it;
      double dist = haversine_m(*t.lat, *t.lon, *wloc[w].lat, *wloc[w].lon);
      if (dist > params.space_buffer_m) continue;
      std::int64_t dt = std::abs(*wloc[w].centis - *t.centis);
      bool better = !best || dist < best_dist ||
                    (dist == best_dist && (dt < best_dt || (dt == best_dt && w < *best)));
      if (better) {
        best = w;
        best_dist = dist;
        best_dt = dt;
      }
    }
    match[r] = best;
  }

  auto columns = traffic.release();
  for (const auto& src : weather.columns()) {
    Column col{std::string(kWeatherPrefix) + src.name, src.kind, {}};
    if (traffic.find(col.name)) {
      fail(ErrorKind::SchemaMismatch, "traffic table already has a column '" + col.name + "'");
    }
    col.cells.reserve(match.size());
    for (const auto& m : match) col.cells.push_back(m ? src.cells[*m] : Cell{});
    columns.push_back(std::move(col));
  }
  return Table(std::move(columns));
}

Table add_weather_condition(const Table& t, const WetCodeSet& wet) {
  if (wet.codes.empty()) fail(ErrorKind::InvalidParams, "wet code set is empty");
  const Column& code = t.column(kWeatherCodeColumn);
  if (code.kind != CellKind::Int) {
    fail(ErrorKind::TypeMismatch, std::string(kWeatherCodeColumn) + " must be Int, is " +
                                      std::string(to_string(code.kind)));
  }
  if (t.find(kConditionColumn)) {
    fail(ErrorKind::SchemaMismatch, "table already has a weatherCond column");
  }
  Column cond{std::string(kConditionColumn), CellKind::Text, {}};
  cond.cells.reserve(t.row_count());
  for (const auto& cell : code.cells) {
    if (auto* w = std::get_if<std::int64_t>(&cell)) {
      cond.cells.emplace_back(std::string(wet.codes.contains(*w) ? "wet" : "dry"));
    } else {
      cond.cells.emplace_back();
    }
  }
  auto columns = t.release();
  columns.push_back(std::move(cond));
  return Table(std::move(columns));
}

}  // namespace wrangle::spacetime
