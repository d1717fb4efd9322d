#include <gtest/gtest.h>

#include <cmath>

#include "../oracle/geo.hpp"
#include "../oracle/spacetime.hpp"
#include "../support/random_tables.hpp"
#include "wrangle/error.hpp"
#include "wrangle/spacetime.hpp"

using namespace wrangle;
using namespace wrangle::spacetime;

namespace {

double law_of_cosines_m(double lat1, double lon1, double lat2, double lon2) {
  const double k = M_PI / 180.0;
  double c = std::sin(lat1 * k) * std::sin(lat2 * k) +
             std::cos(lat1 * k) * std::cos(lat2 * k) * std::cos((lon2 - lon1) * k);
  return 6371000.0 * std::acos(std::min(1.0, std::max(-1.0, c)));
}

Cell tod(int h, int m) { return Cell{TimeOfDay::from_hms(h, m, 0)}; }
Cell day(int y, int m, int d) { return Cell{Date{y, static_cast<unsigned>(m), static_cast<unsigned>(d)}}; }

Table traffic_at(double lat, double lon, Cell date, Cell time) {
  return Table({Column{"Lat", CellKind::Real, {Cell{lat}}}, Column{"Lon", CellKind::Real, {Cell{lon}}},
                Column{"Date", CellKind::Date, {date}}, Column{"Hours", CellKind::TimeOfDay, {time}}});
}

Table weather_rows(std::vector<double> lats, std::vector<Cell> times, std::vector<std::int64_t> codes) {
  Column lat{"Lat", CellKind::Real, {}}, lon{"Lon", CellKind::Real, {}}, d{"ObsDate", CellKind::Date, {}},
      t{"ObsTime", CellKind::TimeOfDay, {}}, w{"W", CellKind::Int, {}};
  for (std::size_t i = 0; i < lats.size(); ++i) {
    lat.cells.push_back(Cell{lats[i]});
    lon.cells.push_back(Cell{-0.854});
    d.cells.push_back(day(2016, 6, 20));
    t.cells.push_back(times[i]);
    w.cells.push_back(Cell{codes[i]});
  }
  return Table({lat, lon, d, t, w});
}

}  // namespace

TEST(Haversine, IdentitySymmetryAndOracles) {
  EXPECT_EQ(haversine_m(60.749, -0.854, 60.749, -0.854), 0.0);
  double d = haversine_m(60.749, -0.854, 60.759, -0.854);
  EXPECT_NEAR(d, law_of_cosines_m(60.749, -0.854, 60.759, -0.854), d * 1e-3);
  testsupport::Gen g(9);
  for (int i = 0; i < 200; ++i) {
    double a = g.real(-90, 90), b = g.real(-180, 180), c = g.real(-90, 90), e = g.real(-180, 180);
    EXPECT_EQ(haversine_m(a, b, c, e), haversine_m(c, e, a, b));
    EXPECT_NEAR(haversine_m(a, b, c, e), oracle::sphere_distance_m(a, b, c, e), 1e-3);
  }
  EXPECT_THROW(haversine_m(91, 0, 0, 0), Error);
  EXPECT_THROW(haversine_m(0, 181, 0, 0), Error);
}

TEST(SpaceTimeJoin, BaltasoundTenPastFour) {
  Table traffic = traffic_at(60.749, -0.854, day(2016, 6, 20), tod(16, 10));
  Table weather = weather_rows({60.749}, {tod(16, 0)}, {8});
  Table j = time_space_join(traffic, weather, {});
  ASSERT_EQ(j.row_count(), 1u);
  EXPECT_EQ(std::get<std::int64_t>(j.at(0, j.index_of("wx_W"))), 8);
  Table late = time_space_join(traffic_at(60.749, -0.854, day(2016, 6, 20), tod(16, 31)), weather, {});
  EXPECT_TRUE(is_null(late.at(0, late.index_of("wx_W"))));
}

TEST(SpaceTimeJoin, NearestInSpaceThenTime) {
  Table traffic = traffic_at(60.749, -0.854, day(2016, 6, 20), tod(16, 10));
  Table weather = weather_rows({60.752, 60.750, 60.750}, {tod(16, 0), tod(16, 30), tod(16, 0)}, {1, 2, 3});
  Table j = time_space_join(traffic, weather, {});
  EXPECT_EQ(std::get<std::int64_t>(j.at(0, j.index_of("wx_W"))), 3);
}

TEST(SpaceTimeJoin, EmptyWeatherGivesNullColumns) {
  Table traffic = traffic_at(60.749, -0.854, day(2016, 6, 20), tod(16, 10));
  Table weather = weather_rows({}, {}, {});
  Table j = time_space_join(traffic, weather, {});
  EXPECT_EQ(j.row_count(), 1u);
  ASSERT_EQ(j.column_count(), traffic.column_count() + weather.column_count());
  for (std::size_t c = traffic.column_count(); c < j.column_count(); ++c) {
    EXPECT_EQ(j.column(c).name.rfind("wx_", 0), 0u);
    EXPECT_TRUE(is_null(j.at(0, c)));
  }
}

TEST(SpaceTimeJoin, RandomAgainstScanAndMonotone) {
  for (int seed = 0; seed < 60; ++seed) {
    testsupport::Gen g(500 + seed);
    auto table = [&](std::size_t n, const char* date, const char* time) {
      Column lat{"Lat", CellKind::Real, {}}, lon{"Lon", CellKind::Real, {}}, d{date, CellKind::Date, {}},
          t{time, CellKind::TimeOfDay, {}};
      for (std::size_t i = 0; i < n; ++i) {
        lat.cells.push_back(Cell{53.45 + g.real(0, 0.04)});
        lon.cells.push_back(Cell{-2.25 + g.real(0, 0.04)});
        d.cells.push_back(g.coin(0.05) ? Cell{} : day(2018, 2, g.range(1, 2)));
        t.cells.push_back(tod(g.range(0, 23), g.range(0, 59)));
      }
      return std::vector<Column>{lat, lon, d, t};
    };
    Table traffic(table(static_cast<std::size_t>(g.range(0, 50)), "Date", "Hours"));
    auto wcols = table(static_cast<std::size_t>(g.range(0, 50)), "ObsDate", "ObsTime");
    Column w{"W", CellKind::Int, {}};
    for (std::size_t i = 0; i < wcols[0].cells.size(); ++i) w.cells.push_back(Cell{std::int64_t{g.range(0, 15)}});
    wcols.push_back(w);
    Table weather(wcols);
    SpaceTimeParams p;
    p.space_buffer_m = g.real(200, 3000);
    p.time_buffer_s = g.range(60, 7200);
    Table got = time_space_join(traffic, weather, p);
    EXPECT_EQ(got, oracle::space_time_scan(traffic, weather, p.space_buffer_m, p.time_buffer_s)) << seed;

    auto matched = [](const Table& t) {
      std::size_t n = 0;
      for (const auto& c : t.column("wx_W").cells) n += !is_null(c);
      return n;
    };
    SpaceTimeParams q = p;
    q.space_buffer_m /= 2;
    q.time_buffer_s = std::max<std::int64_t>(1, q.time_buffer_s / 2);
    EXPECT_LE(matched(time_space_join(traffic, weather, q)), matched(got));
  }
}

TEST(SpaceTimeJoin, BadParams) {
  SpaceTimeParams p;
  p.space_buffer_m = 0;
  EXPECT_THROW(p.validate(), Error);
  Table traffic = traffic_at(60.749, -0.854, day(2016, 6, 20), tod(16, 10));
  EXPECT_THROW(time_space_join(traffic, Table({Column{"Lat", CellKind::Real, {}}}), {}), Error);
}

TEST(WeatherCondition, Labels) {
  Table t({Column{"wx_W", CellKind::Int, {Cell{std::int64_t{8}}, Cell{std::int64_t{12}}, Cell{}}}});
  Table l = add_weather_condition(t);
  ASSERT_EQ(l.row_count(), 3u);
  EXPECT_EQ(std::get<std::string>(l.at(0, 1)), "dry");
  EXPECT_EQ(std::get<std::string>(l.at(1, 1)), "wet");
  EXPECT_TRUE(is_null(l.at(2, 1)));
  EXPECT_EQ(std::get<std::string>(add_weather_condition(t, WetCodeSet{{8}}).at(0, 1)), "wet");
  EXPECT_THROW(add_weather_condition(Table({Column{"W", CellKind::Int, {}}})), Error);
}
