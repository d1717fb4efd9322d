#include <gtest/gtest.h>

#include "../oracle/calendar.hpp"
#include "wrangle/chart.hpp"
#include "wrangle/csv.hpp"
#include "wrangle/error.hpp"
#include "wrangle/traffic.hpp"

using namespace wrangle;
using namespace wrangle::traffic;
using namespace wrangle::chart;

namespace {

Table csv(const std::string& text) { return infer_column_types(parse_csv(text)); }

ErrorKind kind_thrown(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::NodeFailure;
}

}  // namespace

TEST(CleanSiteId, Cases) {
  Table t = parse_csv("Site ID\n'000000001083\n1083\n'000\n\n");
  Table c = clean_site_id(t, "Site ID");
  EXPECT_EQ(std::get<std::string>(c.at(0, 0)), "1083");
  EXPECT_EQ(std::get<std::string>(c.at(1, 0)), "1083");
  EXPECT_EQ(std::get<std::string>(c.at(2, 0)), "0");
  EXPECT_TRUE(is_null(c.at(3, 0)));
  EXPECT_EQ(clean_site_id(c, "Site ID"), c);
  EXPECT_EQ(infer_column_types(c).column(0).kind, CellKind::Int);
}

TEST(SeparateDatetime, SplitsInPlace) {
  Table t = csv("a,Date,b\n1,2018-02-01 00:00:01.18,x\n2,2018-02-01 00:00:00,y\n");
  Table s = separate_datetime(t, "Date");
  EXPECT_EQ(s.column_names(), (std::vector<std::string>{"a", "Date", "Hours", "b"}));
  EXPECT_EQ(format_cell(s.at(0, 1)), "2018-02-01");
  EXPECT_EQ(format_cell(s.at(0, 2)), "00:00:01.18");
  EXPECT_EQ(format_cell(s.at(1, 2)), "00:00:00");
  EXPECT_EQ(kind_thrown([&] { separate_datetime(t, "b"); }), ErrorKind::TypeMismatch);
}

TEST(FilterWeekdays, Fridays) {
  Table t = csv("Date\n2018-02-02\n2018-02-01\n2018-02-09\n");
  Table ts = csv("Date\n2018-02-02 08:00:00\n2018-02-01 08:00:00\n");
  EXPECT_EQ(filter_weekdays(t, "Date", {Weekday::Friday}).row_count(), 2u);
  Table f = filter_weekdays(ts, "Date", {Weekday::Friday});
  ASSERT_EQ(f.row_count(), 1u);
  EXPECT_EQ(format_cell(f.at(0, 0)), "2018-02-02 08:00:00");
  std::set<Weekday> all;
  for (int d = 0; d < 7; ++d) all.insert(static_cast<Weekday>(d));
  EXPECT_EQ(filter_weekdays(ts, "Date", all), ts);
}

TEST(FilterWeekdays, WholeYearAgainstCalendar) {
  std::string text = "Date\n";
  int fridays = 0;
  for (int m = 1; m <= 12; ++m) {
    for (int d = 1; d <= oracle::days_in_month(2018, m); ++d) {
      char buf[16];
      std::snprintf(buf, sizeof buf, "2018-%02d-%02d", m, d);
      text += std::string(buf) + "\n";
      fridays += oracle::sakamoto(2018, m, d) == 5;
    }
  }
  Table t = csv(text);
  EXPECT_EQ(filter_weekdays(t, "Date", {Weekday::Friday}).row_count(), static_cast<std::size_t>(fridays));
}

TEST(Measures, ExtractAndErrors) {
  Table t = csv("Site.ID,LinkLength,mean_speed\n1083,500,30\n1084,800,25\n");
  auto m = extract_speed_and_length(t);
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m[0], (LinkMeasure{"1083", 30, 500}));
  EXPECT_EQ(m[1], (LinkMeasure{"1084", 25, 800}));
  EXPECT_TRUE(extract_speed_and_length(Table(empty_like(t))).empty());
  EXPECT_EQ(kind_thrown([] { extract_speed_and_length(csv("Site.ID,LinkLength,mean_speed\n1,500,\n")); }),
            ErrorKind::NonPositiveSpeed);
  EXPECT_EQ(kind_thrown([] { extract_speed_and_length(csv("Site.ID,LinkLength,mean_speed\n1,500,0\n")); }),
            ErrorKind::NonPositiveSpeed);
  EXPECT_EQ(kind_thrown([] { extract_speed_and_length(csv("Site.ID,LinkLength,mean_speed\n1,-1,3\n")); }),
            ErrorKind::RangeError);
}

TEST(JourneyTime, Arithmetic) {
  double one = journey_time_s({LinkMeasure{"1", 30, 500}});
  EXPECT_DOUBLE_EQ(one, 500.0 / (30 * 0.44704));
  EXPECT_NEAR(one, 37.28227, 1e-5);
  EXPECT_EQ(journey_time_s({LinkMeasure{"1", 30, 0}}), 0.0);
  EXPECT_EQ(journey_time_s({LinkMeasure{"1", 30, 500}, LinkMeasure{"2", 30, 500}}), 2 * one);
  Table t = journey_time_table(one);
  EXPECT_EQ(t.column_names(), (std::vector<std::string>{"journey_time_s"}));
  EXPECT_EQ(std::get<double>(t.at(0, 0)), one);
}

TEST(AverageSpeed, ByCondition) {
  Table t = csv("weatherCond,Speed\nwet,20\ndry,40\nwet,30\n,99\n");
  Table a = average_speed_by_condition(t, "Speed");
  ASSERT_EQ(a.row_count(), 2u);
  EXPECT_EQ(std::get<std::string>(a.at(0, 0)), "wet");
  EXPECT_DOUBLE_EQ(std::get<double>(a.at(0, 1)), 25.0);
  EXPECT_EQ(std::get<std::string>(a.at(1, 0)), "dry");
  EXPECT_DOUBLE_EQ(std::get<double>(a.at(1, 1)), 40.0);
  Table nulls({Column{"weatherCond", CellKind::Text, {Cell{}, Cell{}}},
               Column{"Speed", CellKind::Real, {Cell{1.0}, Cell{2.0}}}});
  EXPECT_EQ(average_speed_by_condition(nulls, "Speed").row_count(), 0u);
  EXPECT_EQ(average_speed_by_condition(csv("weatherCond,Speed\ndry,1\ndry,3\n"), "Speed").row_count(), 1u);
}

namespace {

double bar_height(const std::string& svg, const std::string& label) {
  // each bar's rect comes just before its category label
  auto at = svg.find(">" + label + "</text>");
  if (at == std::string::npos) return -1;
  auto start = svg.rfind("<rect class=\"bar\"", at);
  auto h = svg.find("height=\"", start);
  return std::stod(svg.substr(h + 8));
}

}  // namespace

TEST(Chart, BarHeightsAndLabels) {
  Table t = csv("weatherCond,avg_speed\nwet,25\ndry,40\n");
  ChartSpec spec{"weatherCond", "avg_speed", "Speed by condition", 640, 480};
  std::string svg = render_bar_chart(t, spec);
  EXPECT_NE(svg.find("<svg xmlns"), std::string::npos);
  EXPECT_NE(svg.find(">wet<"), std::string::npos);
  EXPECT_NE(svg.find(">dry<"), std::string::npos);
  EXPECT_NE(svg.find(">25.00<"), std::string::npos);
  EXPECT_NE(svg.find(">40.00<"), std::string::npos);
  double wet = bar_height(svg, "wet"), dry = bar_height(svg, "dry");
  ASSERT_GT(dry, 0);
  EXPECT_NEAR(wet / dry, 25.0 / 40.0, 1e-3);
  EXPECT_NEAR(dry, 0.9 * (480 - kMarginTop - kMarginBottom), 1e-2);
}

TEST(Chart, Errors) {
  ChartSpec spec{"c", "v", "", 640, 480};
  EXPECT_EQ(kind_thrown([&] { render_bar_chart(csv("c,v\n"), spec); }), ErrorKind::EmptyTable);
  EXPECT_EQ(kind_thrown([&] { render_bar_chart(csv("c,v\na,-1\n"), spec); }), ErrorKind::NegativeValue);
  EXPECT_EQ(kind_thrown([&] { render_bar_chart(csv("c,v\na,b\n"), spec); }), ErrorKind::TypeMismatch);
  EXPECT_EQ(kind_thrown([&] { render_bar_chart(csv("c,w\na,1\n"), spec); }), ErrorKind::UnknownColumn);
}
