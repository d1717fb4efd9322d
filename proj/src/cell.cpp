#include "wrangle/cell.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>

namespace wrangle {

namespace {

constexpr std::array<std::string_view, 7> kWeekdayNames = {
    "Monday", "Tuesday", "Wednesday", "Thursday", "Friday", "Saturday", "Sunday"};

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

int to_int(std::string_view digits) {
  int value = 0;
  std::from_chars(digits.data(), digits.data() + digits.size(), value);
  return value;
}

// -?(0|[1-9][0-9]*)
std::size_t scan_integer_part(std::string_view s, std::size_t pos) {
  if (pos < s.size() && s[pos] == '-') ++pos;
  if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos]))) return 0;
  if (s[pos] == '0') return pos + 1;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
  return pos;
}

std::optional<std::int64_t> parse_int(std::string_view s) {
  if (s == "-0") return std::nullopt;
  std::size_t end = scan_integer_part(s, 0);
  if (end == 0 || end != s.size()) return std::nullopt;
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

// -?(0|[1-9][0-9]*)(\.[0-9]+)?([eE][+-]?[0-9]+)?
std::optional<double> parse_real(std::string_view s) {
  std::size_t pos = scan_integer_part(s, 0);
  if (pos == 0) return std::nullopt;
  if (pos < s.size() && s[pos] == '.') {
    std::size_t start = ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) return std::nullopt;
  }
  if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
    ++pos;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) return std::nullopt;
  }
  if (pos != s.size()) return std::nullopt;
  double value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

std::string format_real(double value) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  std::string out(buf.data(), ptr);
  if (out.find_first_of(".eEn") == std::string::npos) out += ".0";
  return out;
}

}  // namespace

std::string_view to_string(Weekday day) { return kWeekdayNames[static_cast<int>(day)]; }

std::optional<Weekday> parse_weekday(std::string_view name) {
  for (std::size_t i = 0; i < kWeekdayNames.size(); ++i) {
    std::string_view candidate = kWeekdayNames[i];
    if (candidate.size() != name.size()) continue;
    bool same = true;
    for (std::size_t k = 0; k < name.size() && same; ++k) {
      same = std::tolower(static_cast<unsigned char>(name[k])) ==
             std::tolower(static_cast<unsigned char>(candidate[k]));
    }
    if (same) return static_cast<Weekday>(i);
  }
  return std::nullopt;
}

std::optional<Date> Date::parse(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  auto y = text.substr(0, 4), m = text.substr(5, 2), d = text.substr(8, 2);
  if (!all_digits(y) || !all_digits(m) || !all_digits(d)) return std::nullopt;
  Date date{to_int(y), static_cast<unsigned>(to_int(m)), static_cast<unsigned>(to_int(d))};
  std::chrono::year_month_day ymd{std::chrono::year{date.year}, std::chrono::month{date.month},
                                  std::chrono::day{date.day}};
  if (!ymd.ok()) return std::nullopt;
  return date;
}

Date Date::from_days(std::int64_t days_since_epoch) {
  std::chrono::year_month_day ymd{
      std::chrono::sys_days{std::chrono::days{days_since_epoch}}};
  return Date{static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
              static_cast<unsigned>(ymd.day())};
}

std::int64_t Date::days_since_epoch() const {
  std::chrono::sys_days days{std::chrono::year_month_day{
      std::chrono::year{year}, std::chrono::month{month}, std::chrono::day{day}}};
  return days.time_since_epoch().count();
}

Weekday Date::weekday() const {
  std::chrono::weekday wd{std::chrono::sys_days{std::chrono::days{days_since_epoch()}}};
  // iso_encoding: Monday = 1 .. Sunday = 7
  return static_cast<Weekday>(wd.iso_encoding() - 1);
}

std::string Date::to_string() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", year, month, day);
  return buf;
}

std::optional<TimeOfDay> TimeOfDay::parse(std::string_view text) {
  if (text.size() < 8 || text[2] != ':' || text[5] != ':') return std::nullopt;
  auto h = text.substr(0, 2), m = text.substr(3, 2), s = text.substr(6, 2);
  if (!all_digits(h) || !all_digits(m) || !all_digits(s)) return std::nullopt;
  int hours = to_int(h), minutes = to_int(m), seconds = to_int(s);
  if (hours > 23 || minutes > 59 || seconds > 59) return std::nullopt;
  int centiseconds = 0;
  std::uint8_t digits = 0;
  if (text.size() > 8) {
    if (text[8] != '.') return std::nullopt;
    auto frac = text.substr(9);
    if (frac.empty() || frac.size() > 2 || !all_digits(frac)) return std::nullopt;
    digits = static_cast<std::uint8_t>(frac.size());
    centiseconds = to_int(frac) * (digits == 1 ? 10 : 1);
  }
  return from_hms(hours, minutes, seconds, centiseconds, digits);
}

TimeOfDay TimeOfDay::from_hms(int hours, int minutes, int seconds, int centiseconds,
                              std::uint8_t frac_digits) {
  TimeOfDay t;
  t.centis = ((static_cast<std::int64_t>(hours) * 60 + minutes) * 60 + seconds) * 100 +
             centiseconds;
  t.frac_digits = frac_digits;
  return t;
}

std::string TimeOfDay::to_string() const {
  char buf[32];
  int n = std::snprintf(buf, sizeof buf, "%02d:%02d:%02d", hours(), minutes(), seconds());
  int frac = static_cast<int>(centis % 100);
  if (frac_digits == 1) {
    std::snprintf(buf + n, sizeof buf - n, ".%d", frac / 10);
  } else if (frac_digits >= 2) {
    std::snprintf(buf + n, sizeof buf - n, ".%02d", frac);
  }
  return buf;
}

std::optional<Timestamp> Timestamp::parse(std::string_view text) {
  if (text.size() < 19 || text[10] != ' ') return std::nullopt;
  auto date = Date::parse(text.substr(0, 10));
  if (!date) return std::nullopt;
  auto time = TimeOfDay::parse(text.substr(11));
  if (!time) return std::nullopt;
  return Timestamp{*date, *time};
}

std::string Timestamp::to_string() const { return date.to_string() + " " + time.to_string(); }

std::optional<CellKind> kind_of(const Cell& cell) {
  if (is_null(cell)) return std::nullopt;
  return static_cast<CellKind>(cell.index() - 1);
}

std::string_view to_string(CellKind kind) {
  switch (kind) {
    case CellKind::Text: return "Text";
    case CellKind::Int: return "Int";
    case CellKind::Real: return "Real";
    case CellKind::Date: return "Date";
    case CellKind::TimeOfDay: return "TimeOfDay";
    case CellKind::Timestamp: return "Timestamp";
    case CellKind::Bool: return "Bool";
  }
  return "?";
}

std::optional<CellKind> parse_kind(std::string_view name) {
  for (auto kind : {CellKind::Text, CellKind::Int, CellKind::Real, CellKind::Date,
                    CellKind::TimeOfDay, CellKind::Timestamp, CellKind::Bool}) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

std::string format_cell(const Cell& cell) {
  struct Formatter {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_real(v); }
    std::string operator()(const Date& d) const { return d.to_string(); }
    std::string operator()(const TimeOfDay& t) const { return t.to_string(); }
    std::string operator()(const Timestamp& t) const { return t.to_string(); }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
  };
  return std::visit(Formatter{}, cell);
}

std::optional<Cell> parse_cell(std::string_view text, CellKind kind) {
  switch (kind) {
    case CellKind::Text:
      return Cell{std::string(text)};
    case CellKind::Int:
      if (auto v = parse_int(text)) return Cell{*v};
      return std::nullopt;
    case CellKind::Real:
      if (auto v = parse_real(text)) return Cell{*v};
      return std::nullopt;
    case CellKind::Date:
      if (auto v = Date::parse(text)) return Cell{*v};
      return std::nullopt;
    case CellKind::TimeOfDay:
      if (auto v = TimeOfDay::parse(text)) return Cell{*v};
      return std::nullopt;
    case CellKind::Timestamp:
      if (auto v = Timestamp::parse(text)) return Cell{*v};
      return std::nullopt;
    case CellKind::Bool:
      if (text == "true") return Cell{true};
      if (text == "false") return Cell{false};
      return std::nullopt;
  }
  return std::nullopt;
}

std::optional<double> numeric_value(const Cell& cell) {
  if (auto* i = std::get_if<std::int64_t>(&cell)) return static_cast<double>(*i);
  if (auto* d = std::get_if<double>(&cell)) return *d;
  return std::nullopt;
}

}  // namespace wrangle
