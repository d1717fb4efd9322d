#include "wrangle/traffic.hpp"

#include "wrangle/error.hpp"
#include "wrangle/relops.hpp"
#include "wrangle/spacetime.hpp"

namespace wrangle::traffic {

namespace {

std::string kind_name(CellKind k) { return std::string(to_string(k)); }

}  // namespace

Table clean_site_id(const Table& t, const std::string& col) {
  std::size_t idx = t.index_of(col);
  auto columns = t.release();
  Column& target = columns[idx];
  if (target.kind != CellKind::Text) {
    fail(ErrorKind::TypeMismatch,
         "clean_site_id needs a Text column, '" + col + "' is " + kind_name(target.kind));
  }
  for (auto& cell : target.cells) {
    auto* s = std::get_if<std::string>(&cell);
    if (!s) continue;
    std::size_t start = s->find_first_not_of('\'');
    if (start == std::string::npos) {
      s->clear();
      continue;
    }
    std::size_t digits = s->find_first_not_of('0', start);
    if (digits == std::string::npos) {
      *s = "0";
    } else {
      s->erase(0, digits);
    }
  }
  return Table(std::move(columns));
}

Table separate_datetime(const Table& t, const std::string& col) {
  std::size_t idx = t.index_of(col);
  const Column& src = t.column(idx);
  if (src.kind != CellKind::Timestamp) {
    fail(ErrorKind::TypeMismatch,
         "separate_datetime needs a Timestamp column, '" + col + "' is " + kind_name(src.kind));
  }
  for (const char* name : {"Date", "Hours"}) {
    auto existing = t.find(name);
    if (existing && *existing != idx) {
      fail(ErrorKind::SchemaMismatch, std::string("table already has a column '") + name + "'");
    }
  }
  Column date{"Date", CellKind::Date, {}};
  Column hours{"Hours", CellKind::TimeOfDay, {}};
  for (const auto& cell : src.cells) {
    if (auto* ts = std::get_if<Timestamp>(&cell)) {
      date.cells.emplace_back(ts->date);
      hours.cells.emplace_back(ts->time);
    } else {
      date.cells.emplace_back();
      hours.cells.emplace_back();
    }
  }
  std::vector<Column> out;
  for (std::size_t c = 0; c < t.column_count(); ++c) {
    if (c == idx) {
      out.push_back(std::move(date));
      out.push_back(std::move(hours));
    } else {
      out.push_back(t.column(c));
    }
  }
  return Table(std::move(out));
}

Table filter_weekdays(const Table& t, const std::string& date_col, const std::set<Weekday>& days) {
  if (days.empty()) fail(ErrorKind::InvalidParams, "filter_weekdays needs at least one day");
  const Column& col = t.column(date_col);
  if (col.kind != CellKind::Date && col.kind != CellKind::Timestamp) {
    fail(ErrorKind::TypeMismatch, "filter_weekdays needs a Date or Timestamp column, '" +
                                      date_col + "' is " + kind_name(col.kind));
  }
  std::vector<std::size_t> rows;
  for (std::size_t r = 0; r < col.cells.size(); ++r) {
    const Date* d = std::get_if<Date>(&col.cells[r]);
    if (auto* ts = std::get_if<Timestamp>(&col.cells[r])) d = &ts->date;
    if (d && days.contains(d->weekday())) rows.push_back(r);
  }
  return take_rows(t, rows);
}

std::vector<LinkMeasure> extract_speed_and_length(const Table& t, const MeasureColumns& cols) {
  const Column& site = t.column(cols.site);
  const Column& length = t.column(cols.length);
  const Column& speed = t.column(cols.speed);
  for (const Column* c : {&length, &speed}) {
    // all-null columns carry no kind evidence; the per-row checks report them
    if (!is_numeric(c->kind) && !c->all_null()) {
      fail(ErrorKind::TypeMismatch, "column '" + c->name + "' must be numeric");
    }
  }
  std::vector<LinkMeasure> out;
  out.reserve(t.row_count());
  for (std::size_t r = 0; r < t.row_count(); ++r) {
    LinkMeasure m;
    m.site_id = format_cell(site.cells[r]);
    auto v = numeric_value(speed.cells[r]);
    if (!v || !(*v > 0)) {
      fail(ErrorKind::NonPositiveSpeed, "site " + m.site_id + " has no positive mean speed");
    }
    m.mean_speed = *v;
    auto len = numeric_value(length.cells[r]);
    if (!len || *len < 0) {
      fail(ErrorKind::RangeError, "site " + m.site_id + " has no valid link length");
    }
    m.link_length = *len;
    out.push_back(std::move(m));
  }
  return out;
}

double journey_time_s(const std::vector<LinkMeasure>& measures) {
  if (measures.empty()) fail(ErrorKind::EmptyInput, "journey time needs at least one link");
  double total = 0;
  for (const auto& m : measures) {
    if (!(m.mean_speed > 0)) {
      fail(ErrorKind::NonPositiveSpeed, "site " + m.site_id + " has a non-positive speed");
    }
    total += m.link_length / (m.mean_speed * kMetersPerSecondPerMph);
  }
  return total;
}

Table journey_time_table(double seconds) {
  return Table({Column{"journey_time_s", CellKind::Real, {Cell{seconds}}}});
}

Table average_speed_by_condition(const Table& t, const std::string& speed_col) {
  const Column& cond = t.column(spacetime::kConditionColumn);
  t.column(speed_col);
  std::vector<std::size_t> rows;
  for (std::size_t r = 0; r < cond.cells.size(); ++r) {
    if (!is_null(cond.cells[r])) rows.push_back(r);
  }
  return relops::group_summarise(take_rows(t, rows), {std::string(spacetime::kConditionColumn)},
                                 {AggSpec{"avg_speed", AggFunc::Mean, speed_col}});
}

}  // namespace wrangle::traffic
