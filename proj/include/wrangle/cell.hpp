#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace wrangle {

enum class Weekday { Monday, Tuesday, Wednesday, Thursday, Friday, Saturday, Sunday };

std::string_view to_string(Weekday day);
/// Accepts full English day names, case-insensitively.
std::optional<Weekday> parse_weekday(std::string_view name);

/// Proleptic Gregorian calendar date.
struct Date {
  int year = 1970;
  unsigned month = 1;
  unsigned day = 1;

  /// Strict `YYYY-MM-DD`; rejects impossible dates such as 2018-02-30.
  static std::optional<Date> parse(std::string_view text);
  static Date from_days(std::int64_t days_since_epoch);

  std::int64_t days_since_epoch() const;
  Weekday weekday() const;
  std::string to_string() const;

  auto operator<=>(const Date&) const = default;
};

/// Time since midnight with up to two fractional-second digits. The number
/// of digits written in the source text is kept so that `00:00:08.00`
/// prints back as `00:00:08.00` and `17:00:00` as `17:00:00`.
struct TimeOfDay {
  static constexpr std::int64_t kCentisPerDay = 24LL * 3600 * 100;

  std::int64_t centis = 0;
  std::uint8_t frac_digits = 0;

  /// Strict `HH:MM:SS` with optional `.f` or `.ff`.
  static std::optional<TimeOfDay> parse(std::string_view text);
  static TimeOfDay from_hms(int hours, int minutes, int seconds, int centiseconds = 0,
                            std::uint8_t frac_digits = 0);

  int hours() const { return static_cast<int>(centis / 360000); }
  int minutes() const { return static_cast<int>(centis / 6000 % 60); }
  int seconds() const { return static_cast<int>(centis / 100 % 60); }
  double seconds_since_midnight() const { return static_cast<double>(centis) / 100.0; }

  std::string to_string() const;

  bool operator==(const TimeOfDay&) const = default;
};

struct Timestamp {
  Date date;
  TimeOfDay time;

  /// `YYYY-MM-DD HH:MM:SS[.f|.ff]`, no timezone.
  static std::optional<Timestamp> parse(std::string_view text);

  std::int64_t centis_since_epoch() const {
    return date.days_since_epoch() * TimeOfDay::kCentisPerDay + time.centis;
  }
  std::string to_string() const;

  bool operator==(const Timestamp&) const = default;
};

enum class CellKind { Text, Int, Real, Date, TimeOfDay, Timestamp, Bool };

/// A nullable table cell. Alternative order matches CellKind offset by one
/// (index 0 is Null).
using Cell = std::variant<std::monostate, std::string, std::int64_t, double, Date, TimeOfDay,
                          Timestamp, bool>;

inline bool is_null(const Cell& cell) { return cell.index() == 0; }
std::optional<CellKind> kind_of(const Cell& cell);
inline bool is_numeric(CellKind kind) { return kind == CellKind::Int || kind == CellKind::Real; }

std::string_view to_string(CellKind kind);
std::optional<CellKind> parse_kind(std::string_view name);

/// Canonical text form; Null formats as the empty string. Reals always carry
/// a decimal point or exponent so they never read back as Int.
std::string format_cell(const Cell& cell);

/// Interprets `text` as a value of `kind`, or nullopt if it does not match.
std::optional<Cell> parse_cell(std::string_view text, CellKind kind);

/// Numeric view of an Int or Real cell.
std::optional<double> numeric_value(const Cell& cell);

}  // namespace wrangle
