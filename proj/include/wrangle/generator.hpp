#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wrangle/cell.hpp"

namespace wrangle::gen {

struct GenConfig {
  std::uint64_t seed = 42;
  int sites = 2;
  int rows_per_site = 1000;
  Date start{2018, 2, 1};
  Date end{2018, 2, 28};
  /// Defaults to one station beside each site when negative.
  int weather_locations = -1;

  /// Throws InvalidParams.
  void validate() const;
};

/// Column names of the generated traffic exports, in file order.
const std::vector<std::string>& traffic_header();

struct GeneratedFile {
  std::string name;
  std::string content;
};

/// Produces `site_<k>.csv` for k = 1..sites, `sites.csv` and `weather.json`.
/// Equal configs give byte-identical files. Site ids start at 1083 and are
/// written apostrophe-prefixed and zero-padded to twelve digits. Each day is
/// wet or dry for every station; vehicle speeds are drawn from a slower
/// distribution when the hourly observation nearest the passage is wet, and
/// at least one Friday of each kind is guaranteed when the range has two.
std::vector<GeneratedFile> generate(const GenConfig& config);

}  // namespace wrangle::gen
