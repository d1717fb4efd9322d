#include <algorithm>
#include <set>

#include "wrangle/chart.hpp"
#include "wrangle/csv.hpp"
#include "wrangle/error.hpp"
#include "wrangle/expr.hpp"
#include "wrangle/relops.hpp"
#include "wrangle/spacetime.hpp"
#include "wrangle/traffic.hpp"
#include "wrangle/workflow.hpp"

namespace wrangle::workflow {

using nlohmann::json;

namespace {

// Typed access to a params object. Every key must be read by the op, so a
// misspelt parameter is reported instead of silently ignored.
class Params {
 public:
  Params(const json& j, std::string op) : j_(j), op_(std::move(op)) {
    if (!j_.is_object()) bad("params must be an object");
  }

  std::string str(const char* key) { return get_str(key, true).value(); }
  std::string str(const char* key, std::string fallback) {
    return get_str(key, false).value_or(std::move(fallback));
  }

  double num(const char* key, double fallback) {
    const json* v = take(key);
    if (!v) return fallback;
    if (!v->is_number()) bad(std::string("'") + key + "' must be a number");
    return v->get<double>();
  }

  std::int64_t integer(const char* key, std::int64_t fallback) {
    const json* v = take(key);
    if (!v) return fallback;
    if (!v->is_number_integer()) bad(std::string("'") + key + "' must be an integer");
    return v->get<std::int64_t>();
  }

  std::vector<std::string> strings(const char* key, bool required = true) {
    const json* v = take(key);
    if (!v) {
      if (required) bad(std::string("missing '") + key + "'");
      return {};
    }
    if (!v->is_array()) bad(std::string("'") + key + "' must be a list of strings");
    std::vector<std::string> out;
    for (const auto& e : *v) {
      if (!e.is_string()) bad(std::string("'") + key + "' must be a list of strings");
      out.push_back(e.get<std::string>());
    }
    return out;
  }

  const json* raw(const char* key) { return take(key); }

  void finish() {
    for (const auto& [k, _] : j_.items()) {
      if (!seen_.contains(k)) bad("unknown parameter '" + k + "'");
    }
  }

  [[noreturn]] void bad(const std::string& msg) const {
    fail(ErrorKind::InvalidParams, op_ + ": " + msg);
  }

 private:
  const json* take(const char* key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  std::optional<std::string> get_str(const char* key, bool required) {
    const json* v = take(key);
    if (!v) {
      if (required) bad(std::string("missing '") + key + "'");
      return std::nullopt;
    }
    if (!v->is_string()) bad(std::string("'") + key + "' must be a string");
    return v->get<std::string>();
  }

  const json& j_;
  std::string op_;
  std::set<std::string> seen_;
};

// Grammar errors surface as InvalidParams at validation time.
template <typename F>
auto parse_param(Params& p, const char* what, F&& f) {
  try {
    return f();
  } catch (const ParseError& e) {
    p.bad(std::string("cannot parse ") + what + ": " + e.what());
  }
}

const Table& in(const PortValues& ports, const char* name = "in") {
  return as_table(ports.find(name)->second);
}

std::vector<PortSpec> one_table() { return {{"in", ValueKind::Table}}; }

std::vector<OpDef> build_catalogue() {
  std::vector<OpDef> ops;

  ops.push_back({"table.infer_types", "promote Text columns to the narrowest kind that fits",
                 one_table(), ValueKind::Table, [](const json& j) -> Runner {
                   Params p(j, "table.infer_types");
                   p.finish();
                   return [](const PortValues& v) { return make_value(infer_column_types(in(v))); };
                 }});

  ops.push_back({"relops.union", "rows of a followed by rows of b",
                 {{"a", ValueKind::Table}, {"b", ValueKind::Table}}, ValueKind::Table,
                 [](const json& j) -> Runner {
                   Params p(j, "relops.union");
                   p.finish();
                   return [](const PortValues& v) {
                     return make_value(relops::union_all(in(v, "a"), in(v, "b")));
                   };
                 }});

  ops.push_back({"relops.select", "keep or drop named columns", one_table(), ValueKind::Table,
                 [](const json& j) -> Runner {
                   Params p(j, "relops.select");
                   auto cols = p.strings("columns");
                   std::string mode = p.str("mode", "keep");
                   if (mode != "keep" && mode != "drop") p.bad("mode must be 'keep' or 'drop'");
                   p.finish();
                   auto m = mode == "keep" ? relops::SelectMode::Keep : relops::SelectMode::Drop;
                   return [cols, m](const PortValues& v) {
                     return make_value(relops::select_columns(in(v), cols, m));
                   };
                 }});

  ops.push_back({"relops.filter", "keep rows matching a predicate", one_table(), ValueKind::Table,
                 [](const json& j) -> Runner {
                   Params p(j, "relops.filter");
                   std::string text = p.str("predicate");
                   p.finish();
                   auto pred = parse_param(p, "predicate", [&] { return parse_predicate(text); });
                   return [pred](const PortValues& v) {
                     return make_value(relops::filter_rows(in(v), *pred));
                   };
                 }});

  ops.push_back({"relops.mutate", "add or replace a computed Real column", one_table(),
                 ValueKind::Table, [](const json& j) -> Runner {
                   Params p(j, "relops.mutate");
                   std::string name = p.str("name");
                   std::string text = p.str("expr");
                   p.finish();
                   auto e = parse_param(p, "expression", [&] { return parse_mutate(text); });
                   return [name, e](const PortValues& v) {
                     return make_value(relops::mutate_column(in(v), name, *e));
                   };
                 }});

  ops.push_back({"relops.join", "inner equi-join on key pairs",
                 {{"left", ValueKind::Table}, {"right", ValueKind::Table}}, ValueKind::Table,
                 [](const json& j) -> Runner {
                   Params p(j, "relops.join");
                   const json* keys = p.raw("keys");
                   std::string how = p.str("how", "inner");
                   p.finish();
                   if (how != "inner") p.bad("only inner joins are supported");
                   if (!keys || !keys->is_array() || keys->empty()) {
                     p.bad("'keys' must be a non-empty list of [left, right] pairs");
                   }
                   std::vector<relops::KeyPair> pairs;
                   for (const auto& k : *keys) {
                     if (k.is_string()) {
                       pairs.emplace_back(k.get<std::string>(), k.get<std::string>());
                     } else if (k.is_array() && k.size() == 2 && k[0].is_string() &&
                                k[1].is_string()) {
                       pairs.emplace_back(k[0].get<std::string>(), k[1].get<std::string>());
                     } else {
                       p.bad("each key must be a column name or a [left, right] pair");
                     }
                   }
                   return [pairs](const PortValues& v) {
                     return make_value(relops::inner_join(in(v, "left"), in(v, "right"), pairs));
                   };
                 }});

  ops.push_back({"relops.group_summarise", "aggregate per distinct key tuple", one_table(),
                 ValueKind::Table, [](const json& j) -> Runner {
                   Params p(j, "relops.group_summarise");
                   auto by = p.strings("by", false);
                   auto agg_text = p.strings("aggs");
                   p.finish();
                   if (agg_text.empty()) p.bad("'aggs' must not be empty");
                   std::vector<AggSpec> aggs;
                   for (const auto& t : agg_text) {
                     aggs.push_back(parse_param(p, "aggregate", [&] { return parse_agg(t); }));
                   }
                   return [by, aggs](const PortValues& v) {
                     return make_value(relops::group_summarise(in(v), by, aggs));
                   };
                 }});

  ops.push_back({"weather.flatten", "one row per observation of a SiteRep document",
                 {{"in", ValueKind::Weather}}, ValueKind::Table, [](const json& j) -> Runner {
                   Params p(j, "weather.flatten");
                   p.finish();
                   return [](const PortValues& v) {
                     return make_value(weather::flatten_weather(as_weather(v.find("in")->second)));
                   };
                 }});

  ops.push_back({"spacetime.time_space_join",
                 "attach the nearest weather observation within space and time buffers",
                 {{"traffic", ValueKind::Table}, {"weather", ValueKind::Table}}, ValueKind::Table,
                 [](const json& j) -> Runner {
                   Params p(j, "spacetime.time_space_join");
                   spacetime::SpaceTimeParams sp;
                   sp.space_buffer_m = p.num("space_buffer_m", sp.space_buffer_m);
                   sp.time_buffer_s = p.integer("time_buffer_s", sp.time_buffer_s);
                   sp.traffic_lat = p.str("traffic_lat", sp.traffic_lat);
                   sp.traffic_lon = p.str("traffic_lon", sp.traffic_lon);
                   sp.traffic_timestamp = p.str("traffic_timestamp", sp.traffic_timestamp);
                   sp.traffic_date = p.str("traffic_date", sp.traffic_date);
                   sp.traffic_time = p.str("traffic_time", sp.traffic_time);
                   sp.weather_lat = p.str("weather_lat", sp.weather_lat);
                   sp.weather_lon = p.str("weather_lon", sp.weather_lon);
                   sp.weather_date = p.str("weather_date", sp.weather_date);
                   sp.weather_time = p.str("weather_time", sp.weather_time);
                   p.finish();
                   sp.validate();
                   return [sp](const PortValues& v) {
                     return make_value(
                         spacetime::time_space_join(in(v, "traffic"), in(v, "weather"), sp));
                   };
                 }});

  ops.push_back({"spacetime.add_weather_condition", "label rows wet or dry from wx_W",
                 one_table(), ValueKind::Table, [](const json& j) -> Runner {
                   Params p(j, "spacetime.add_weather_condition");
                   spacetime::WetCodeSet wet;
                   if (const json* codes = p.raw("wet_codes")) {
                     if (!codes->is_array()) p.bad("'wet_codes' must be a list of integers");
                     wet.codes.clear();
                     for (const auto& c : *codes) {
                       if (!c.is_number_integer()) p.bad("'wet_codes' must be a list of integers");
                       wet.codes.insert(c.get<std::int64_t>());
                     }
                     if (wet.codes.empty()) p.bad("'wet_codes' must not be empty");
                   }
                   p.finish();
                   return [wet](const PortValues& v) {
                     return make_value(spacetime::add_weather_condition(in(v), wet));
                   };
                 }});

  ops.push_back({"traffic.clean_site_id", "strip leading apostrophes and zeros", one_table(),
                 ValueKind::Table, [](const json& j) -> Runner {
                   Params p(j, "traffic.clean_site_id");
                   std::string col = p.str("col", "Site ID");
                   p.finish();
                   return [col](const PortValues& v) {
                     return make_value(traffic::clean_site_id(in(v), col));
                   };
                 }});

  ops.push_back({"traffic.separate_datetime", "split a Timestamp into Date and Hours",
                 one_table(), ValueKind::Table, [](const json& j) -> Runner {
                   Params p(j, "traffic.separate_datetime");
                   std::string col = p.str("col", "Date");
                   p.finish();
                   return [col](const PortValues& v) {
                     return make_value(traffic::separate_datetime(in(v), col));
                   };
                 }});

  ops.push_back({"traffic.filter_weekdays", "keep rows falling on the listed weekdays",
                 one_table(), ValueKind::Table, [](const json& j) -> Runner {
                   Params p(j, "traffic.filter_weekdays");
                   std::string col = p.str("col", "Date");
                   std::set<Weekday> days;
                   for (const auto& d : p.strings("days")) {
                     auto wd = parse_weekday(d);
                     if (!wd) p.bad("unknown weekday '" + d + "'");
                     days.insert(*wd);
                   }
                   p.finish();
                   if (days.empty()) p.bad("'days' must not be empty");
                   return [col, days](const PortValues& v) {
                     return make_value(traffic::filter_weekdays(in(v), col, days));
                   };
                 }});

  ops.push_back({"traffic.journey_time",
                 "sum of link length over mean speed (m, mph -> s), as a one-cell table",
                 one_table(), ValueKind::Table, [](const json& j) -> Runner {
                   Params p(j, "traffic.journey_time");
                   traffic::MeasureColumns cols;
                   cols.site = p.str("site_col", cols.site);
                   cols.length = p.str("length_col", cols.length);
                   cols.speed = p.str("speed_col", cols.speed);
                   p.finish();
                   return [cols](const PortValues& v) {
                     auto measures = traffic::extract_speed_and_length(in(v), cols);
                     return make_value(traffic::journey_time_table(traffic::journey_time_s(measures)));
                   };
                 }});

  ops.push_back({"traffic.average_speed_by_condition", "mean speed per weatherCond",
                 one_table(), ValueKind::Table, [](const json& j) -> Runner {
                   Params p(j, "traffic.average_speed_by_condition");
                   std::string col = p.str("speed_col", "Speed");
                   p.finish();
                   return [col](const PortValues& v) {
                     return make_value(traffic::average_speed_by_condition(in(v), col));
                   };
                 }});

  ops.push_back({"chart.bar", "SVG bar chart, one bar per row", one_table(), ValueKind::Svg,
                 [](const json& j) -> Runner {
                   Params p(j, "chart.bar");
                   chart::ChartSpec spec;
                   spec.category_col = p.str("category_col");
                   spec.value_col = p.str("value_col");
                   spec.title = p.str("title", "");
                   spec.width = static_cast<int>(p.integer("width", spec.width));
                   spec.height = static_cast<int>(p.integer("height", spec.height));
                   p.finish();
                   if (spec.width <= chart::kMarginLeft + chart::kMarginRight ||
                       spec.height <= chart::kMarginTop + chart::kMarginBottom) {
                     p.bad("chart is too small for its margins");
                   }
                   return [spec](const PortValues& v) {
                     return make_value(Svg{chart::render_bar_chart(in(v), spec)});
                   };
                 }});

  std::sort(ops.begin(), ops.end(), [](const OpDef& a, const OpDef& b) { return a.name < b.name; });
  return ops;
}

}  // namespace

const std::vector<OpDef>& registered_ops() {
  static const std::vector<OpDef> ops = build_catalogue();
  return ops;
}

const OpDef* find_op(std::string_view name) {
  for (const auto& op : registered_ops()) {
    if (op.name == name) return &op;
  }
  return nullptr;
}

}  // namespace wrangle::workflow
