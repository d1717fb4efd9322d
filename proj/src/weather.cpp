#include "wrangle/weather.hpp"

#include <charconv>
#include <cmath>
#include <nlohmann/json.hpp>

#include "wrangle/error.hpp"

namespace wrangle::weather {

namespace {

using nlohmann::json;

const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    fail(ErrorKind::MissingField, where + ": missing field \"" + key + "\"");
  }
  return *it;
}

// Met Office files carry every value as a string, but plain JSON numbers are
// accepted too.
std::optional<std::string> as_text(const json& v) {
  if (v.is_null()) return std::nullopt;
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number()) return v.dump();
  return std::nullopt;
}

std::optional<double> as_real(const json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  auto text = as_text(v);
  if (!text || text->empty()) return std::nullopt;
  double out = 0;
  auto [ptr, ec] = std::from_chars(text->data(), text->data() + text->size(), out);
  if (ec != std::errc() || ptr != text->data() + text->size() || !std::isfinite(out)) {
    fail(ErrorKind::MalformedJson, where + ": expected a number, got \"" + *text + "\"");
  }
  return out;
}

std::optional<std::int64_t> as_int(const json& v, const std::string& where) {
  if (v.is_number_integer()) return v.get<std::int64_t>();
  auto text = as_text(v);
  if (!text || text->empty()) return std::nullopt;
  std::int64_t out = 0;
  auto [ptr, ec] = std::from_chars(text->data(), text->data() + text->size(), out);
  if (ec != std::errc() || ptr != text->data() + text->size()) {
    fail(ErrorKind::MalformedJson, where + ": expected an integer, got \"" + *text + "\"");
  }
  return out;
}

std::string text_or_empty(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) return {};
  return as_text(*it).value_or("");
}

// Treats a lone object as a one-element list.
std::vector<const json*> as_list(const json& v, const std::string& where) {
  std::vector<const json*> out;
  if (v.is_array()) {
    for (const auto& item : v) {
      if (!item.is_object()) fail(ErrorKind::MalformedJson, where + ": list item is not an object");
      out.push_back(&item);
    }
  } else if (v.is_object()) {
    out.push_back(&v);
  } else {
    fail(ErrorKind::MalformedJson, where + ": expected an object or a list of objects");
  }
  return out;
}

Date parse_period_date(const std::string& value, const std::string& where) {
  std::string_view text = value;
  if (!text.empty() && text.back() == 'Z') text.remove_suffix(1);
  auto date = Date::parse(text);
  if (!date) fail(ErrorKind::MalformedJson, where + ": bad period date \"" + value + "\"");
  return *date;
}

Timestamp parse_data_date(const std::string& value) {
  // YYYY-MM-DDTHH:MM:SSZ
  if (value.size() != 20 || value[10] != 'T' || value[19] != 'Z') {
    fail(ErrorKind::MalformedJson, "DV.dataDate: expected YYYY-MM-DDTHH:MM:SSZ, got \"" +
                                       value + "\"");
  }
  std::string text = value.substr(0, 10) + " " + value.substr(11, 8);
  auto ts = Timestamp::parse(text);
  if (!ts) fail(ErrorKind::MalformedJson, "DV.dataDate: invalid timestamp \"" + value + "\"");
  return *ts;
}

WxRep parse_rep(const json& obj, const std::string& where, std::size_t& unknown) {
  WxRep rep;
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    const std::string& key = it.key();
    const json& v = it.value();
    const std::string at = where + "." + key;
    if (key == "D") {
      rep.wind_dir = as_text(v);
    } else if (key == "G") {
      rep.gust = as_real(v, at);
    } else if (key == "H") {
      rep.humidity = as_real(v, at);
    } else if (key == "P") {
      rep.pressure = as_real(v, at);
    } else if (key == "S") {
      rep.wind_speed = as_real(v, at);
    } else if (key == "T") {
      rep.temperature = as_real(v, at);
    } else if (key == "V") {
      rep.visibility = as_real(v, at);
    } else if (key == "W") {
      rep.weather_code = as_int(v, at);
    } else if (key == "Pt") {
      rep.pressure_tendency = as_text(v);
    } else if (key == "Dp") {
      rep.dew_point = as_real(v, at);
    } else if (key != "$") {
      ++unknown;
    }
  }
  auto minutes = as_int(require(obj, "$", where), where + ".$");
  if (!minutes) fail(ErrorKind::MissingField, where + ": empty \"$\" field");
  if (*minutes < 0 || *minutes >= 1440) {
    fail(ErrorKind::RangeError,
         where + ": minutes after midnight out of range: " + std::to_string(*minutes));
  }
  rep.minutes_after_midnight = static_cast<int>(*minutes);
  return rep;
}

WxLocation parse_location(const json& obj, const std::string& where, std::size_t& unknown) {
  WxLocation loc;
  auto id = as_text(require(obj, "i", where));
  if (!id) fail(ErrorKind::MissingField, where + ": empty location id");
  loc.id = *id;
  auto lat = as_real(require(obj, "lat", where), where + ".lat");
  auto lon = as_real(require(obj, "lon", where), where + ".lon");
  if (!lat || !lon) fail(ErrorKind::MissingField, where + ": empty lat/lon");
  if (*lat < -90 || *lat > 90) {
    fail(ErrorKind::RangeError, where + ": latitude out of range: " + std::to_string(*lat));
  }
  if (*lon < -180 || *lon > 180) {
    fail(ErrorKind::RangeError, where + ": longitude out of range: " + std::to_string(*lon));
  }
  loc.lat = *lat;
  loc.lon = *lon;
  loc.name = text_or_empty(obj, "name");
  loc.country = text_or_empty(obj, "country");
  loc.continent = text_or_empty(obj, "continent");
  if (auto it = obj.find("elevation"); it != obj.end()) {
    loc.elevation_m = as_real(*it, where + ".elevation");
  }
  auto periods = obj.find("Period");
  if (periods == obj.end()) return loc;
  auto items = as_list(*periods, where + ".Period");
  for (std::size_t p = 0; p < items.size(); ++p) {
    const json& pobj = *items[p];
    const std::string pwhere = where + ".Period[" + std::to_string(p) + "]";
    WxPeriod period;
    if (auto t = pobj.find("type"); t != pobj.end()) period.type = as_text(*t).value_or("Day");
    auto value = as_text(require(pobj, "value", pwhere));
    if (!value) fail(ErrorKind::MissingField, pwhere + ": empty period value");
    period.date = parse_period_date(*value, pwhere);
    auto reps = as_list(require(pobj, "Rep", pwhere), pwhere + ".Rep");
    if (reps.empty()) fail(ErrorKind::MissingField, pwhere + ": period has no Rep entries");
    for (std::size_t r = 0; r < reps.size(); ++r) {
      period.reps.push_back(
          parse_rep(*reps[r], pwhere + ".Rep[" + std::to_string(r) + "]", unknown));
    }
    loc.periods.push_back(std::move(period));
  }
  return loc;
}

Cell text_cell(const std::string& s) { return s.empty() ? Cell{} : Cell{s}; }

template <typename T>
Cell opt_cell(const std::optional<T>& v) {
  return v ? Cell{*v} : Cell{};
}

}  // namespace

WeatherDoc parse_weather_json(std::string_view bytes) {
  json root;
  try {
    root = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    fail(ErrorKind::MalformedJson, std::string("weather document: ") + e.what());
  }
  if (!root.is_object()) fail(ErrorKind::MalformedJson, "weather document is not an object");
  const json* base = &root;
  if (auto it = root.find("SiteRep"); it != root.end() && it->is_object()) base = &*it;
  const json& dv = require(*base, "DV", "weather document");
  if (!dv.is_object()) fail(ErrorKind::MalformedJson, "DV is not an object");

  WeatherDoc doc;
  auto date_text = as_text(require(dv, "dataDate", "DV"));
  if (!date_text) fail(ErrorKind::MissingField, "DV: empty dataDate");
  doc.data_date = parse_data_date(*date_text);
  if (auto t = dv.find("type"); t != dv.end()) {
    doc.doc_type = as_text(*t).value_or("Obs");
    if (doc.doc_type != "Obs") {
      fail(ErrorKind::MalformedJson, "unsupported weather document type \"" + doc.doc_type + "\"");
    }
  }
  auto locations = as_list(require(dv, "Location", "DV"), "DV.Location");
  for (std::size_t i = 0; i < locations.size(); ++i) {
    doc.locations.push_back(parse_location(
        *locations[i], "DV.Location[" + std::to_string(i) + "]", doc.unknown_fields));
  }
  return doc;
}

Table flatten_weather(const WeatherDoc& doc) {
  static constexpr std::array<CellKind, 18> kKinds = {
      CellKind::Text, CellKind::Text, CellKind::Real, CellKind::Real,      CellKind::Real,
      CellKind::Text, CellKind::Date, CellKind::TimeOfDay, CellKind::Text, CellKind::Real,
      CellKind::Real, CellKind::Real, CellKind::Real, CellKind::Real,      CellKind::Real,
      CellKind::Int,  CellKind::Text, CellKind::Real};
  std::vector<Column> cols;
  for (std::size_t i = 0; i < kFlatColumns.size(); ++i) {
    cols.push_back(Column{std::string(kFlatColumns[i]), kKinds[i], {}});
  }
  auto push = [&](std::size_t i, Cell c) { cols[i].cells.push_back(std::move(c)); };
  for (const auto& loc : doc.locations) {
    for (const auto& period : loc.periods) {
      for (const auto& rep : period.reps) {
        push(0, Cell{loc.id});
        push(1, text_cell(loc.name));
        push(2, Cell{loc.lat});
        push(3, Cell{loc.lon});
        push(4, opt_cell(loc.elevation_m));
        push(5, text_cell(loc.country));
        push(6, Cell{period.date});
        int m = rep.minutes_after_midnight;
        push(7, Cell{TimeOfDay::from_hms(m / 60, m % 60, 0)});
        push(8, opt_cell(rep.wind_dir));
        push(9, opt_cell(rep.gust));
        push(10, opt_cell(rep.humidity));
        push(11, opt_cell(rep.pressure));
        push(12, opt_cell(rep.wind_speed));
        push(13, opt_cell(rep.temperature));
        push(14, opt_cell(rep.visibility));
        push(15, opt_cell(rep.weather_code));
        push(16, opt_cell(rep.pressure_tendency));
        push(17, opt_cell(rep.dew_point));
      }
    }
  }
  return Table(std::move(cols));
}

}  // namespace wrangle::weather
