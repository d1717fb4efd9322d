#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "wrangle/cli.hpp"
#include "wrangle/csv.hpp"
#include "wrangle/error.hpp"
#include "wrangle/generator.hpp"
#include "wrangle/spacetime.hpp"
#include "wrangle/traffic.hpp"
#include "wrangle/weather.hpp"
#include "wrangle/workflow.hpp"

namespace py = pybind11;
using namespace wrangle;
namespace wf = wrangle::workflow;

namespace {

PyObject* g_error_type = nullptr;

py::object to_py(const Cell& c) {
  return std::visit(
      [&](const auto& v) -> py::object {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return py::none();
        } else if constexpr (std::is_same_v<T, std::string> || std::is_same_v<T, std::int64_t> ||
                             std::is_same_v<T, double> || std::is_same_v<T, bool>) {
          return py::cast(v);
        } else {
          // dates and times travel as their canonical text
          return py::cast(format_cell(c));
        }
      },
      c);
}

py::list column_values(const Column& col) {
  py::list out;
  for (const auto& c : col.cells) out.append(to_py(c));
  return out;
}

py::object from_value(const wf::Value& v) {
  switch (wf::kind_of(v)) {
    case wf::ValueKind::Table: return py::cast(wf::as_table(v));
    case wf::ValueKind::Weather: return py::cast(wf::as_weather(v));
    case wf::ValueKind::Svg: return py::cast(wf::as_svg(v).text);
  }
  return py::none();
}

wf::Value to_value(const py::handle& h, wf::ValueKind want) {
  if (py::isinstance<Table>(h)) return wf::make_value(h.cast<Table>());
  if (py::isinstance<weather::WeatherDoc>(h)) return wf::make_value(h.cast<weather::WeatherDoc>());
  if (py::isinstance<py::str>(h) || py::hasattr(h, "__fspath__")) {
    std::string path = py::str(py::module_::import("os").attr("fspath")(h));
    if (want == wf::ValueKind::Weather) return wf::make_value(cli::load_weather_json(path));
    return wf::make_value(cli::load_table_csv(path));
  }
  throw py::type_error("expected a Table, a WeatherDoc or a file path");
}

py::object run_op(const std::string& name, const py::dict& inputs, const std::string& params) {
  const wf::OpDef* def = wf::find_op(name);
  if (!def) throw Error(ErrorKind::UnknownOp, "unknown operator '" + name + "'");
  nlohmann::json p;
  try {
    p = nlohmann::json::parse(params);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::InvalidParams, e.what());
  }
  wf::Runner runner = def->compile(p);
  wf::PortValues ports;
  for (const auto& port : def->inputs) {
    if (!inputs.contains(port.name)) {
      throw Error(ErrorKind::PortMismatch, name + " needs port '" + port.name + "'");
    }
    ports.emplace(port.name, to_value(inputs[py::str(port.name)], port.kind));
  }
  if (inputs.size() != def->inputs.size()) {
    throw Error(ErrorKind::PortMismatch, name + " takes " + std::to_string(def->inputs.size()) + " port(s)");
  }
  wf::Value v;
  {
    py::gil_scoped_release nogil;
    v = runner(ports);
  }
  return from_value(v);
}

py::tuple run_workflow(const std::string& text, const py::dict& inputs, bool sequential,
                       bool deterministic_keys) {
  wf::WorkflowSpec spec = wf::parse_workflow(text);
  std::map<std::string, wf::Value> values;
  for (const auto& in : spec.inputs) {
    if (inputs.contains(in.name)) values.emplace(in.name, to_value(inputs[py::str(in.name)], wf::value_kind(in.kind)));
  }
  // undeclared names are left for execute() to reject
  for (const auto& item : inputs) {
    std::string key = py::str(item.first);
    if (!values.count(key)) values.emplace(key, to_value(item.second, wf::ValueKind::Table));
  }
  wf::ExecOptions opt;
  opt.mode = sequential ? wf::ExecMode::Sequential : wf::ExecMode::Parallel;
  opt.deterministic_keys = deterministic_keys;
  wf::RunResult result;
  {
    py::gil_scoped_release nogil;
    result = wf::execute(spec, values, opt);
  }
  py::dict outputs;
  for (const auto& [name, v] : result.outputs) outputs[py::str(name)] = from_value(v);
  py::list report;
  for (const auto& n : result.report.nodes) {
    py::dict d;
    d["id"] = n.id;
    d["op"] = n.op;
    d["key"] = n.key;
    d["stage"] = n.stage;
    d["rows"] = n.rows ? py::cast(*n.rows) : py::none();
    d["millis"] = n.millis;
    report.append(d);
  }
  return py::make_tuple(outputs, report);
}

py::dict generate(std::uint64_t seed, int sites, int rows, const std::string& start, const std::string& end,
                  int weather_locations) {
  gen::GenConfig cfg;
  cfg.seed = seed;
  cfg.sites = sites;
  cfg.rows_per_site = rows;
  auto s = Date::parse(start), e = Date::parse(end);
  if (!s || !e) throw Error(ErrorKind::InvalidParams, "dates must be YYYY-MM-DD");
  cfg.start = *s;
  cfg.end = *e;
  cfg.weather_locations = weather_locations;
  py::dict out;
  for (auto& f : gen::generate(cfg)) out[py::str(f.name)] = f.content;
  return out;
}

}  // namespace

PYBIND11_MODULE(_wrangle, m) {
  m.doc() = "Traffic and weather table wrangling";

  g_error_type = PyErr_NewException("wrangle._wrangle.WrangleError", PyExc_RuntimeError, nullptr);
  m.attr("WrangleError") = py::handle(g_error_type);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object err = py::reinterpret_borrow<py::object>(g_error_type)(e.what());
      err.attr("kind") = std::string(to_string(e.kind()));
      if (auto* ne = dynamic_cast<const NodeError*>(&e)) {
        err.attr("node_id") = ne->node_id();
        err.attr("cause") = std::string(to_string(ne->cause()));
      }
      PyErr_SetObject(g_error_type, err.ptr());
    }
  });

  py::class_<Table>(m, "Table")
      .def_static("from_csv", [](const std::string& text, bool infer) {
        Table t = parse_csv(text);
        return infer ? infer_column_types(t) : t;
      }, py::arg("text"), py::arg("infer") = true)
      .def_static("read_csv", [](const std::string& path) { return cli::load_table_csv(path); })
      .def("to_csv", [](const Table& t) { return write_csv(t); })
      .def_property_readonly("columns", &Table::column_names)
      .def_property_readonly("kinds", [](const Table& t) {
        std::vector<std::string> out;
        for (const auto& c : t.columns()) out.emplace_back(to_string(c.kind));
        return out;
      })
      .def_property_readonly("shape", [](const Table& t) { return py::make_tuple(t.row_count(), t.column_count()); })
      .def("column", [](const Table& t, const std::string& name) { return column_values(t.column(name)); })
      .def("rows", [](const Table& t) {
        py::list out;
        for (std::size_t r = 0; r < t.row_count(); ++r) {
          py::tuple row(t.column_count());
          for (std::size_t c = 0; c < t.column_count(); ++c) row[c] = to_py(t.at(r, c));
          out.append(row);
        }
        return out;
      })
      .def("to_dict", [](const Table& t) {
        py::dict d;
        for (const auto& c : t.columns()) d[py::str(c.name)] = column_values(c);
        return d;
      })
      .def("__len__", &Table::row_count)
      .def("__eq__", [](const Table& a, const Table& b) { return a == b; })
      .def("__repr__", [](const Table& t) {
        return "<Table " + std::to_string(t.row_count()) + " rows x " + std::to_string(t.column_count()) + " cols>";
      });

  py::class_<weather::WeatherDoc>(m, "WeatherDoc")
      .def_static("parse", [](const std::string& text) { return weather::parse_weather_json(text); })
      .def_static("read_json", [](const std::string& path) { return cli::load_weather_json(path); })
      .def_property_readonly("location_count", [](const weather::WeatherDoc& d) { return d.locations.size(); })
      .def_property_readonly("unknown_fields", [](const weather::WeatherDoc& d) { return d.unknown_fields; })
      .def("flatten", [](const weather::WeatherDoc& d) { return weather::flatten_weather(d); });

  m.def("run_op", &run_op, py::arg("name"), py::arg("inputs"), py::arg("params_json") = "{}");
  m.def("run_workflow", &run_workflow, py::arg("text"), py::arg("inputs"), py::arg("sequential") = false,
        py::arg("deterministic_keys") = false);
  m.def("list_ops", [] {
    py::list out;
    for (const auto& op : wf::registered_ops()) {
      py::list ports;
      for (const auto& p : op.inputs) ports.append(py::make_tuple(p.name, std::string(wf::to_string(p.kind))));
      py::dict d;
      d["name"] = op.name;
      d["summary"] = op.summary;
      d["inputs"] = ports;
      d["output"] = std::string(wf::to_string(op.output));
      out.append(d);
    }
    return out;
  });
  m.def("generate", &generate, py::arg("seed") = 42, py::arg("sites") = 2, py::arg("rows") = 1000,
        py::arg("start") = "2018-02-01", py::arg("end") = "2018-02-28", py::arg("weather_locations") = -1);
  m.def("haversine_m", &spacetime::haversine_m);
  m.def("journey_time_s", [](const Table& t, const std::string& site, const std::string& length,
                             const std::string& speed) {
    return traffic::journey_time_s(traffic::extract_speed_and_length(t, {site, length, speed}));
  }, py::arg("table"), py::arg("site_col") = "Site.ID", py::arg("length_col") = "LinkLength",
        py::arg("speed_col") = "mean_speed");
}
