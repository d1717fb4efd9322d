#pragma once

#include <random>
#include <string>
#include <vector>

#include "wrangle/table.hpp"

namespace testsupport {

using wrangle::Cell;
using wrangle::CellKind;
using wrangle::Column;
using wrangle::Table;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  int range(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

  /// Awkward text: delimiters, quotes, newlines, apostrophes, empties.
  std::string text(bool small_domain) {
    if (small_domain) {
      static const char* words[] = {"alpha", "beta", "gamma", "delta", "eps"};
      return words[range(0, 4)];
    }
    static const std::string pieces[] = {"a", "Zed", " ", ",", "\"", "'0001", "x\ny", "\r\n",
                                         "é", "日本", "tab\t", "naN", "q"};
    std::string s = "t";  // always contains a letter so it never infers as a number
    int n = range(0, 4);
    for (int i = 0; i < n; ++i) s += pieces[range(0, 12)];
    if (coin(0.1)) s = "";
    return s;
  }

  Cell cell(CellKind kind, bool small_domain = false) {
    switch (kind) {
      case CellKind::Text: return Cell{text(small_domain)};
      case CellKind::Int:
        return Cell{static_cast<std::int64_t>(small_domain ? range(0, 6) : range(-100000, 100000))};
      case CellKind::Real: {
        if (small_domain) return Cell{range(0, 8) * 0.5};
        double v = real(-1e4, 1e4);
        if (coin(0.2)) v = std::ldexp(real(1, 2), range(-40, 40));
        if (coin(0.1)) v = static_cast<double>(range(-50, 50));
        return Cell{v};
      }
      case CellKind::Date:
        return Cell{wrangle::Date::from_days(range(small_domain ? 17560 : 0, small_domain ? 17564 : 25000))};
      case CellKind::TimeOfDay: {
        int digits = range(0, 2);
        std::int64_t c = range(0, 86399) * 100LL;
        if (digits == 1) c += range(0, 9) * 10;
        if (digits == 2) c += range(0, 99);
        return Cell{wrangle::TimeOfDay{c, static_cast<std::uint8_t>(digits)}};
      }
      case CellKind::Timestamp: {
        auto t = std::get<wrangle::TimeOfDay>(cell(CellKind::TimeOfDay));
        return Cell{wrangle::Timestamp{wrangle::Date::from_days(range(0, 25000)), t}};
      }
      case CellKind::Bool: return Cell{coin()};
    }
    return Cell{};
  }

  Column column(std::string name, CellKind kind, std::size_t rows, double null_rate,
                bool small_domain = false) {
    Column c{std::move(name), kind, {}};
    for (std::size_t r = 0; r < rows; ++r) {
      c.cells.push_back(coin(null_rate) ? Cell{} : cell(kind, small_domain));
    }
    return c;
  }

  CellKind any_kind() { return static_cast<CellKind>(range(0, 6)); }

  std::mt19937_64 rng;
};

}  // namespace testsupport
