#pragma once

// Reference day-of-week formulas, kept apart from the library's chrono-based
// implementation.

namespace oracle {

/// Sakamoto's method. 0 = Sunday.
inline int sakamoto(int y, int m, int d) {
  static const int t[] = {0, 3, 2, 5, 0, 3, 5, 1, 4, 6, 2, 4};
  if (m < 3) y -= 1;
  return (y + y / 4 - y / 100 + y / 400 + t[m - 1] + d) % 7;
}

/// Zeller's congruence for the Gregorian calendar. 0 = Saturday.
inline int zeller(int y, int m, int d) {
  if (m < 3) {
    m += 12;
    y -= 1;
  }
  int k = y % 100;
  int j = y / 100;
  return (d + 13 * (m + 1) / 5 + k + k / 4 + j / 4 + 5 * j) % 7;
}

/// ISO numbering, 1 = Monday .. 7 = Sunday.
inline int iso_from_sakamoto(int s) { return s == 0 ? 7 : s; }
inline int iso_from_zeller(int z) { return (z + 5) % 7 + 1; }

inline bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

inline int days_in_month(int y, int m) {
  static const int days[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  return m == 2 && is_leap(y) ? 29 : days[m - 1];
}

}  // namespace oracle
