#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "wrangle/table.hpp"
#include "wrangle/weather.hpp"

namespace wrangle::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitWorkflow = 3;

/// Whole file as bytes. Throws Io.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

/// Parsed and type-inferred; errors are prefixed with the file name.
Table load_table_csv(const std::filesystem::path& path);
weather::WeatherDoc load_weather_json(const std::filesystem::path& path);

/// Entry point behind the `wrangle` executable. `args` excludes the program
/// name. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wrangle::cli
