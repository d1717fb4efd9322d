#include "wrangle/generator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <nlohmann/json.hpp>
#include <random>

#include "wrangle/error.hpp"

namespace wrangle::gen {

namespace {

// Distributions are written out by hand: the standard library leaves their
// algorithms unspecified, and output must not depend on the platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool chance(double p) { return uniform() < p; }
  double normal(double mean, double sd) {
    double u1 = 1.0 - uniform();
    double u2 = uniform();
    return mean + sd * std::sqrt(-2.0 * std::log(u1)) * std::cos(2 * std::numbers::pi * u2);
  }
  template <typename T, std::size_t N>
  const T& pick(const std::array<T, N>& items) {
    return items[static_cast<std::size_t>(integer(0, N - 1))];
  }

 private:
  std::mt19937_64 engine_;
};

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

constexpr int kFirstSiteId = 1083;
constexpr double kBaseLat = 53.4600;
constexpr double kBaseLon = -2.2700;
constexpr double kSiteSpacingDeg = 0.027;  // ~3 km, well over the one-mile buffer

constexpr std::array<std::int64_t, 7> kWetCodes = {9, 10, 11, 12, 13, 14, 15};
constexpr std::array<std::int64_t, 6> kDryCodes = {0, 1, 2, 3, 7, 8};
constexpr std::array<const char*, 8> kCompass = {"N", "NE", "E", "SE", "S", "SW", "W", "WSW"};
constexpr std::array<const char*, 3> kTendency = {"R", "F", "S"};

struct Site {
  int id;
  double lat, lon, link_length;
  int station;  // index of the nearby weather station, or -1
};

struct Station {
  std::string id;
  std::string name;
  double lat, lon, elevation;
};

struct Passage {
  std::int64_t day;     // index into the date range
  std::int64_t centis;  // within the day
};

}  // namespace

void GenConfig::validate() const {
  if (sites < 2) fail(ErrorKind::InvalidParams, "sites must be at least 2");
  if (rows_per_site < 1) fail(ErrorKind::InvalidParams, "rows per site must be positive");
  if (end < start) fail(ErrorKind::InvalidParams, "date range end precedes start");
  if (end.days_since_epoch() - start.days_since_epoch() > 3660) {
    fail(ErrorKind::InvalidParams, "date range longer than ten years");
  }
}

const std::vector<std::string>& traffic_header() {
  static const std::vector<std::string> header = {
      "Site ID", "Date",  "Lane",  "Lane Name", "Direction", "Direction Name",
      "Reverse", "Class Scheme", "Class", "Class Name", "Length", "Headway",
      "Gap",     "Speed", "Weight", "Flags",     "FlagText",  "NumAxles"};
  return header;
}

std::vector<GeneratedFile> generate(const GenConfig& config) {
  config.validate();
  Rng rng(config.seed);
  const int n_stations = config.weather_locations < 0 ? config.sites : config.weather_locations;
  const std::int64_t first_day = config.start.days_since_epoch();
  const std::int64_t n_days = config.end.days_since_epoch() - first_day + 1;

  // Regional wet/dry flag per day.
  std::vector<bool> wet(static_cast<std::size_t>(n_days));
  for (auto&& w : wet) w = rng.chance(0.35);
  std::vector<std::size_t> fridays;
  for (std::int64_t d = 0; d < n_days; ++d) {
    if (Date::from_days(first_day + d).weekday() == Weekday::Friday) {
      fridays.push_back(static_cast<std::size_t>(d));
    }
  }
  if (fridays.size() >= 2) {
    bool any_wet = false, any_dry = false;
    for (auto f : fridays) (wet[f] ? any_wet : any_dry) = true;
    if (!any_wet) wet[fridays.front()] = true;
    if (!any_dry) wet[fridays.back()] = false;
  }

  std::vector<Site> sites;
  for (int k = 0; k < config.sites; ++k) {
    Site s{kFirstSiteId + k, kBaseLat + kSiteSpacingDeg * k, kBaseLon - 0.004 * k,
           std::round(rng.uniform(400.0, 1500.0) * 10) / 10, k < n_stations ? k : -1};
    sites.push_back(s);
  }
  std::vector<Station> stations;
  for (int j = 0; j < n_stations; ++j) {
    Station st;
    st.id = std::to_string(3334 + j);
    st.name = "WX STATION " + std::to_string(j + 1);
    if (j < config.sites) {
      st.lat = sites[j].lat + 0.003;
      st.lon = sites[j].lon + 0.002;
    } else {
      st.lat = 54.5 + 0.1 * j;
      st.lon = -3.0;
    }
    st.elevation = std::round(rng.uniform(30.0, 120.0) * 10) / 10;
    stations.push_back(st);
  }

  // Was the observation the join will pick for this passage a wet one?
  // Reps are hourly; a tie at exactly half past resolves to the earlier hour.
  auto passage_is_wet = [&](const Passage& p) -> std::optional<bool> {
    std::int64_t hour = p.centis / 360000;
    std::int64_t into = p.centis % 360000;
    std::int64_t day = p.day;
    if (into > 180000) {
      if (++hour == 24) {
        hour = 0;
        ++day;
      }
    }
    if (day >= n_days) return std::nullopt;
    return static_cast<bool>(wet[static_cast<std::size_t>(day)]);
  };

  std::vector<GeneratedFile> files;
  for (const auto& site : sites) {
    std::vector<Passage> passages(static_cast<std::size_t>(config.rows_per_site));
    for (auto& p : passages) {
      p.day = rng.integer(0, n_days - 1);
      double hours = rng.chance(0.35) ? rng.uniform(16.0, 19.0) : rng.uniform(0.0, 24.0);
      p.centis = std::min<std::int64_t>(static_cast<std::int64_t>(hours * 360000),
                                        TimeOfDay::kCentisPerDay - 1);
    }
    std::sort(passages.begin(), passages.end(), [](const Passage& a, const Passage& b) {
      return a.day != b.day ? a.day < b.day : a.centis < b.centis;
    });

    char id_text[32];
    std::snprintf(id_text, sizeof id_text, "'%012d", site.id);
    std::string csv;
    const auto& header = traffic_header();
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i) csv += ',';
      csv += '"' + header[i] + '"';
    }
    csv += '\n';
    for (const auto& p : passages) {
      Timestamp ts{Date::from_days(first_day + p.day),
                   TimeOfDay{p.centis, 2}};
      bool south = rng.chance(0.5);
      int lane = south ? static_cast<int>(rng.integer(5, 6)) : static_cast<int>(rng.integer(1, 2));
      const char* lane_name = lane == 1 ? "NB_NS" : lane == 2 ? "NB_MID" : lane == 5 ? "SB_MID" : "SB_NS";
      double draw = rng.uniform();
      int cls = draw < 0.8 ? 2 : draw < 0.9 ? 3 : 4;
      const char* cls_name = cls == 2 ? "Car" : cls == 3 ? "LGV" : "Rigid";
      double length = cls == 2 ? rng.uniform(3.5, 5.2) : cls == 3 ? rng.uniform(5.0, 6.5)
                                                                  : rng.uniform(6.5, 10.0);
      bool has_headway = rng.chance(0.25);
      double headway = rng.uniform(1.0, 20.0);
      double gap = headway - rng.uniform(0.1, 0.5);
      bool wet_now = site.station >= 0 && passage_is_wet(p).value_or(false);
      double speed = std::max(3.0, wet_now ? rng.normal(29.0, 6.0) : rng.normal(36.0, 6.0));
      bool has_speed = !rng.chance(0.02);

      csv += id_text;
      csv += ',' + ts.to_string();
      csv += ',' + std::to_string(lane);
      csv += ",\"" + std::string(lane_name) + "\"";
      csv += south ? ",2,\"South\"" : ",1,\"North\"";
      csv += ",0,1078," + std::to_string(cls) + ",\"" + cls_name + "\"";
      csv += ',' + fmt("%.3f", length);
      csv += ',' + (has_headway ? fmt("%.4f", headway) : std::string());
      csv += ',' + (has_headway ? fmt("%.4f", gap) : std::string());
      csv += ',' + (has_speed ? fmt("%.3f", speed) : std::string());
      csv += ",,0,\"\"," + std::to_string(cls == 4 ? 3 : 2) + ",\n";
    }
    files.push_back({"site_" + std::to_string(site.id - kFirstSiteId + 1) + ".csv", std::move(csv)});
  }

  std::string sites_csv = "Site.ID,SiteName,Lat,Lon,LinkLength\n";
  for (const auto& s : sites) {
    sites_csv += std::to_string(s.id) + ",CHESTER RD SITE " + std::to_string(s.id) + "," +
                 fmt("%.6f", s.lat) + "," + fmt("%.6f", s.lon) + "," + fmt("%.1f", s.link_length) +
                 "\n";
  }
  files.push_back({"sites.csv", std::move(sites_csv)});

  using ojson = nlohmann::ordered_json;
  ojson params = ojson::array();
  const std::array<std::array<const char*, 3>, 10> kParams = {{
      {"G", "mph", "Wind Gust"},
      {"T", "C", "Temperature"},
      {"V", "m", "Visibility"},
      {"D", "compass", "Wind Direction"},
      {"S", "mph", "Wind Speed"},
      {"W", "", "Weather Type"},
      {"P", "hpa", "Pressure"},
      {"Pt", "Pa/s", "Pressure Tendency"},
      {"Dp", "C", "Dew Point"},
      {"H", "%", "Screen Relative Humidity"},
  }};
  for (const auto& p : kParams) params.push_back({{"name", p[0]}, {"units", p[1]}, {"$", p[2]}});

  ojson locations = ojson::array();
  for (const auto& st : stations) {
    ojson periods = ojson::array();
    for (std::int64_t d = 0; d < n_days; ++d) {
      bool day_wet = wet[static_cast<std::size_t>(d)];
      ojson reps = ojson::array();
      for (int h = 0; h < 24; ++h) {
        ojson rep = ojson::object();
        rep["D"] = rng.pick(kCompass);
        if (!rng.chance(0.3)) rep["G"] = std::to_string(rng.integer(10, 45));
        rep["H"] = fmt("%.1f", rng.uniform(60.0, 99.0));
        rep["P"] = std::to_string(rng.integer(980, 1030));
        rep["S"] = std::to_string(rng.integer(0, 30));
        double temp = day_wet ? rng.uniform(1.0, 8.0) : rng.uniform(2.0, 10.0);
        rep["T"] = fmt("%.1f", temp);
        if (!rng.chance(0.2)) rep["V"] = std::to_string(rng.integer(1000, 40000));
        std::int64_t code = day_wet ? rng.pick(kWetCodes) : rng.pick(kDryCodes);
        if (!rng.chance(0.01)) rep["W"] = std::to_string(code);
        rep["Pt"] = rng.pick(kTendency);
        rep["Dp"] = fmt("%.1f", temp - rng.uniform(0.5, 4.0));
        rep["$"] = std::to_string(h * 60);
        reps.push_back(std::move(rep));
      }
      periods.push_back({{"type", "Day"},
                         {"value", Date::from_days(first_day + d).to_string() + "Z"},
                         {"Rep", std::move(reps)}});
    }
    ojson loc = ojson::object();
    loc["i"] = st.id;
    loc["lat"] = fmt("%.3f", st.lat);
    loc["lon"] = fmt("%.3f", st.lon);
    loc["name"] = st.name;
    loc["country"] = "ENGLAND";
    loc["continent"] = "EUROPE";
    loc["elevation"] = fmt("%.1f", st.elevation);
    loc["Period"] = std::move(periods);
    locations.push_back(std::move(loc));
  }
  ojson doc = {{"SiteRep",
                {{"Wx", {{"Param", std::move(params)}}},
                 {"DV",
                  {{"dataDate", config.end.to_string() + "T23:00:00Z"},
                   {"type", "Obs"},
                   {"Location", std::move(locations)}}}}}};
  files.push_back({"weather.json", doc.dump(2) + "\n"});
  return files;
}

}  // namespace wrangle::gen
