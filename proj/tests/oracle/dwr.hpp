#pragma once

// Recomputes the two bundled requests straight from the generated files,
// reading the CSV lines and the weather JSON by hand.

#include <cstdio>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "calendar.hpp"
#include "geo.hpp"
#include "rawcsv.hpp"

namespace oracle {

struct RawPassage {
  std::string site;
  int y = 0, m = 0, d = 0;
  long long centis = 0;  // since midnight
  std::string direction;
  std::optional<double> speed;
};

struct RawSite {
  double lat = 0, lon = 0, length = 0;
};

inline std::string strip_site(std::string s) {
  std::size_t i = 0;
  while (i < s.size() && s[i] == '\'') ++i;
  std::size_t j = i;
  while (j < s.size() && s[j] == '0') ++j;
  if (j == s.size() && j > i) return "0";
  return s.substr(j);
}

inline std::size_t field_index(const std::vector<std::string>& header, const std::string& name) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  return static_cast<std::size_t>(-1);
}

inline std::vector<RawPassage> read_passages(const std::string& path) {
  auto lines = lines_of(slurp(path));
  auto header = split_fields(lines.at(0));
  std::size_t site = field_index(header, "Site ID"), date = field_index(header, "Date"),
              dir = field_index(header, "Direction Name"), speed = field_index(header, "Speed");
  std::vector<RawPassage> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto f = split_fields(lines[i]);
    RawPassage p;
    p.site = strip_site(f.at(site));
    int hh, mm, ss;
    char frac[8] = {0};
    int n = std::sscanf(f.at(date).c_str(), "%d-%d-%d %d:%d:%d.%7s", &p.y, &p.m, &p.d, &hh, &mm,
                        &ss, frac);
    long long cs = 0;
    if (n == 7) {
      cs = (frac[0] - '0') * 10 + (frac[1] ? frac[1] - '0' : 0);
    }
    p.centis = ((hh * 60LL + mm) * 60 + ss) * 100 + cs;
    p.direction = f.at(dir);
    if (!f.at(speed).empty()) p.speed = std::stod(f.at(speed));
    out.push_back(p);
  }
  return out;
}

inline std::map<std::string, RawSite> read_sites(const std::string& path) {
  auto lines = lines_of(slurp(path));
  auto header = split_fields(lines.at(0));
  std::size_t id = field_index(header, "Site.ID"), lat = field_index(header, "Lat"),
              lon = field_index(header, "Lon"), len = field_index(header, "LinkLength");
  std::map<std::string, RawSite> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto f = split_fields(lines[i]);
    out[f.at(id)] = {std::stod(f.at(lat)), std::stod(f.at(lon)), std::stod(f.at(len))};
  }
  return out;
}

inline bool is_friday(int y, int m, int d) { return sakamoto(y, m, d) == 5; }

/// Friday, [17:00, 18:00), southbound; per-site mean speed; sum of
/// length / (speed * 0.44704).
inline double journey_time(const std::vector<std::string>& traffic_files,
                           const std::string& sites_file) {
  auto sites = read_sites(sites_file);
  std::map<std::string, std::pair<double, long long>> per_site;
  for (const auto& file : traffic_files) {
    for (const auto& p : read_passages(file)) {
      if (!is_friday(p.y, p.m, p.d)) continue;
      if (p.centis < 17 * 360000LL || p.centis >= 18 * 360000LL) continue;
      if (p.direction != "South" || !p.speed) continue;
      if (!sites.count(p.site)) continue;
      per_site[p.site].first += *p.speed;
      per_site[p.site].second += 1;
    }
  }
  double total = 0;
  for (const auto& [site, acc] : per_site) {
    double mean = acc.first / static_cast<double>(acc.second);
    total += sites[site].length / (mean * 0.44704);
  }
  return total;
}

// Days from 1970-01-01 by counting whole years and months.
inline long long day_number(int y, int m, int d) {
  long long n = 0;
  for (int yy = 1970; yy < y; ++yy) n += is_leap(yy) ? 366 : 365;
  for (int mm = 1; mm < m; ++mm) n += days_in_month(y, mm);
  return n + d - 1;
}

struct RawRep {
  double lat, lon;
  long long centis;  // since epoch
  std::optional<long long> code;
};

inline const nlohmann::json& as_list(const nlohmann::json& j, nlohmann::json& holder) {
  if (j.is_array()) return j;
  holder = nlohmann::json::array({j});
  return holder;
}

inline double json_number(const nlohmann::json& j) {
  return j.is_string() ? std::stod(j.get<std::string>()) : j.get<double>();
}

inline std::vector<RawRep> read_reps(const std::string& path) {
  auto doc = nlohmann::json::parse(slurp(path));
  const auto& dv = doc.contains("SiteRep") ? doc["SiteRep"]["DV"] : doc["DV"];
  std::vector<RawRep> out;
  nlohmann::json h1, h2, h3;
  for (const auto& loc : as_list(dv["Location"], h1)) {
    double lat = json_number(loc["lat"]), lon = json_number(loc["lon"]);
    for (const auto& period : as_list(loc["Period"], h2)) {
      int y, m, d;
      std::sscanf(period["value"].get<std::string>().c_str(), "%d-%d-%d", &y, &m, &d);
      for (const auto& rep : as_list(period["Rep"], h3)) {
        RawRep r{lat, lon, 0, std::nullopt};
        long long minutes = static_cast<long long>(json_number(rep["$"]));
        r.centis = day_number(y, m, d) * 8640000LL + minutes * 6000;
        if (rep.contains("W")) r.code = static_cast<long long>(json_number(rep["W"]));
        out.push_back(r);
      }
    }
  }
  return out;
}

struct WetDry {
  std::optional<double> wet, dry;
  long long wet_n = 0, dry_n = 0;
};

/// Fridays only; each passage takes the observation nearest in space, then
/// in time, then earliest in the document, within one mile and 30 minutes.
inline WetDry wet_dry_means(const std::string& traffic_file, const std::string& sites_file,
                            const std::string& weather_file) {
  auto sites = read_sites(sites_file);
  auto reps = read_reps(weather_file);
  double wet_sum = 0, dry_sum = 0;
  WetDry out;
  for (const auto& p : read_passages(traffic_file)) {
    if (!is_friday(p.y, p.m, p.d) || !sites.count(p.site)) continue;
    const RawSite& s = sites[p.site];
    long long t = day_number(p.y, p.m, p.d) * 8640000LL + p.centis;
    const RawRep* best = nullptr;
    double best_d = 0;
    long long best_dt = 0;
    for (const auto& r : reps) {
      double dist = sphere_distance_m(s.lat, s.lon, r.lat, r.lon);
      long long dt = t > r.centis ? t - r.centis : r.centis - t;
      if (dist > 1609.34 || dt > 180000) continue;
      if (!best || dist < best_d || (dist == best_d && dt < best_dt)) {
        best = &r;
        best_d = dist;
        best_dt = dt;
      }
    }
    if (!best || !best->code || !p.speed) continue;
    if (*best->code >= 9 && *best->code <= 15) {
      wet_sum += *p.speed;
      ++out.wet_n;
    } else {
      dry_sum += *p.speed;
      ++out.dry_n;
    }
  }
  if (out.wet_n) out.wet = wet_sum / static_cast<double>(out.wet_n);
  if (out.dry_n) out.dry = dry_sum / static_cast<double>(out.dry_n);
  return out;
}

}  // namespace oracle
