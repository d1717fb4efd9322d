#include "wrangle/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "wrangle/chart.hpp"
#include "wrangle/csv.hpp"
#include "wrangle/error.hpp"
#include "wrangle/generator.hpp"
#include "wrangle/workflow.hpp"

namespace wrangle::cli {

namespace fs = std::filesystem;
namespace wf = workflow;

std::string read_file(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail(ErrorKind::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, std::string_view bytes) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) fail(ErrorKind::Io, "cannot write " + path.string());
}

namespace {

template <typename F>
auto with_file_context(const fs::path& path, F&& f) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Io) throw;
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

}  // namespace

Table load_table_csv(const fs::path& path) {
  std::string bytes = read_file(path);
  return with_file_context(path, [&] { return infer_column_types(parse_csv(bytes)); });
}

weather::WeatherDoc load_weather_json(const fs::path& path) {
  std::string bytes = read_file(path);
  return with_file_context(path, [&] { return weather::parse_weather_json(bytes); });
}

namespace {

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::pair<std::string, std::string> split_binding(const std::string& text) {
  auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == text.size()) {
    throw Usage("expected name=path, got '" + text + "'");
  }
  return {text.substr(0, eq), text.substr(eq + 1)};
}

std::string value_bytes(const wf::Value& v, std::string& ext) {
  switch (wf::kind_of(v)) {
    case wf::ValueKind::Table: ext = ".csv"; return write_csv(wf::as_table(v));
    case wf::ValueKind::Svg: ext = ".svg"; return wf::as_svg(v).text;
    case wf::ValueKind::Weather:
      ext = ".csv";
      return write_csv(weather::flatten_weather(wf::as_weather(v)));
  }
  return {};
}

wf::Value load_input(wf::ValueKind kind, const fs::path& path) {
  if (kind == wf::ValueKind::Weather) return wf::make_value(load_weather_json(path));
  return wf::make_value(load_table_csv(path));
}

std::string list_ops_text() {
  std::string out;
  for (const auto& op : wf::registered_ops()) {
    std::string ports;
    for (const auto& p : op.inputs) {
      ports += (ports.empty() ? "" : ", ") + p.name + ":" + std::string(wf::to_string(p.kind));
    }
    out += op.name + "(" + ports + ") -> " + std::string(wf::to_string(op.output)) + "  " +
           op.summary + "\n";
  }
  return out;
}

struct RunArgs {
  std::string workflow;
  std::vector<std::string> inputs;
  std::string out = ".";
  bool seq = false;
  bool keep = false;
  bool deterministic = false;
};

int cmd_run(const RunArgs& a, std::ostream& out) {
  wf::WorkflowSpec spec = wf::parse_workflow(read_file(a.workflow));
  std::map<std::string, std::string> bound;
  for (const auto& b : a.inputs) {
    auto [name, path] = split_binding(b);
    if (!bound.emplace(name, path).second) throw Usage("input '" + name + "' given twice");
  }
  for (const auto& in : spec.inputs) {
    if (!bound.contains(in.name)) {
      throw Usage("missing --input " + in.name + "=<path> (" + std::string(wf::to_string(in.kind)) +
                  ")");
    }
  }
  std::map<std::string, wf::Value> values;
  for (const auto& [name, path] : bound) {
    auto it = std::find_if(spec.inputs.begin(), spec.inputs.end(),
                           [&](const wf::InputSpec& s) { return s.name == name; });
    if (it == spec.inputs.end()) throw Usage("workflow '" + spec.name + "' has no input '" + name + "'");
    values.emplace(name, load_input(wf::value_kind(it->kind), path));
  }

  wf::ExecOptions opts;
  opts.mode = a.seq ? wf::ExecMode::Sequential : wf::ExecMode::Parallel;
  opts.deterministic_keys = a.deterministic;
  if (a.keep) {
    const char* env = std::getenv("WRANGLE_WORKSPACE");
    opts.spill_dir = env && *env ? fs::path(env) : fs::path(a.out) / "workspace";
  }
  auto result = wf::execute(spec, values, opts);
  out << wf::format_report(result.report);
  for (const auto& [name, v] : result.outputs) {
    std::string ext;
    std::string bytes = value_bytes(v, ext);
    fs::path path = fs::path(a.out) / (name + ext);
    write_file(path, bytes);
    out << "wrote " << path.string();
    if (wf::kind_of(v) == wf::ValueKind::Table) {
      const Table& t = wf::as_table(v);
      if (t.row_count() == 1 && t.column_count() == 1) {
        out << "  " << t.column(0).name << " = " << format_cell(t.at(0, 0));
        if (t.column(0).name == "journey_time_s") out << " s (lengths in m, speeds in mph)";
      }
    }
    out << "\n";
  }
  return kExitOk;
}

struct OpArgs {
  std::string op;
  std::vector<std::string> tables;
  std::string params = "{}";
  std::string out;
};

int cmd_op(const OpArgs& a, std::ostream& out) {
  const wf::OpDef* def = wf::find_op(a.op);
  if (!def) throw Usage("unknown operator '" + a.op + "'; registered operators:\n" + list_ops_text());
  nlohmann::json params;
  try {
    params = nlohmann::json::parse(a.params);
  } catch (const nlohmann::json::parse_error& e) {
    throw Usage(std::string("--params is not valid JSON: ") + e.what());
  }
  if (a.tables.size() != def->inputs.size()) {
    throw Usage(a.op + " takes " + std::to_string(def->inputs.size()) + " --table argument(s), got " +
                std::to_string(a.tables.size()));
  }
  wf::Runner runner = def->compile(params);
  wf::PortValues ports;
  for (std::size_t i = 0; i < def->inputs.size(); ++i) {
    ports.emplace(def->inputs[i].name, load_input(def->inputs[i].kind, a.tables[i]));
  }
  wf::Value v = runner(ports);
  std::string ext;
  std::string bytes = value_bytes(v, ext);
  if (a.out.empty()) {
    out << bytes;
  } else {
    write_file(a.out, bytes);
  }
  return kExitOk;
}

int map_error(const Error& e, std::ostream& err) {
  if (auto* ne = dynamic_cast<const NodeError*>(&e)) {
    err << "error: " << ne->what() << "\n";
    return kExitWorkflow;
  }
  err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
  if (e.kind() == ErrorKind::MissingInput) return kExitUsage;
  return is_workflow_error(e.kind()) ? kExitWorkflow : kExitData;
}

Date parse_date_arg(const std::string& s) {
  auto d = Date::parse(s);
  if (!d) throw Usage("bad date '" + s + "', expected YYYY-MM-DD");
  return *d;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"wrangle: traffic and weather data wrangling workflows", "wrangle"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "execute a workflow file");
  run_cmd->add_option("workflow", run.workflow, "workflow JSON")->required();
  run_cmd->add_option("--input", run.inputs, "name=path binding, repeatable");
  run_cmd->add_option("--out", run.out, "output directory");
  run_cmd->add_flag("--seq", run.seq, "run nodes one at a time");
  run_cmd->add_flag("--keep-intermediates", run.keep,
                    "write every node result to the workspace as <key>.csv");
  run_cmd->add_flag("--deterministic-keys", run.deterministic, "sequential session keys");

  OpArgs op;
  auto* op_cmd = app.add_subcommand("op", "run one operator outside a workflow");
  op_cmd->add_option("op", op.op, "qualified operator name, e.g. traffic.clean_site_id")
      ->required();
  op_cmd->add_option("--table", op.tables, "input file per port, in port order");
  op_cmd->add_option("--params", op.params, "operator params as a JSON object");
  op_cmd->add_option("--out", op.out, "output path (default stdout)");

  gen::GenConfig gc;
  std::string gen_out = ".";
  std::string gen_start = gc.start.to_string();
  std::string gen_end = gc.end.to_string();
  auto* gen_cmd = app.add_subcommand("gen", "write a seeded synthetic dataset");
  gen_cmd->add_option("--seed", gc.seed);
  gen_cmd->add_option("--sites", gc.sites);
  gen_cmd->add_option("--rows", gc.rows_per_site, "rows per traffic file");
  gen_cmd->add_option("--start", gen_start);
  gen_cmd->add_option("--end", gen_end);
  gen_cmd->add_option("--weather-locations", gc.weather_locations,
                      "weather stations (default one per site)");
  gen_cmd->add_option("--out", gen_out, "output directory");

  std::string fw_in, fw_out;
  auto* fw_cmd = app.add_subcommand("flatten-weather", "convert a SiteRep JSON file to CSV");
  fw_cmd->add_option("input", fw_in)->required();
  fw_cmd->add_option("--out", fw_out, "output path (default stdout)");

  chart::ChartSpec cs;
  std::string chart_in, chart_out;
  auto* chart_cmd = app.add_subcommand("chart", "render a bar chart from a CSV table");
  chart_cmd->add_option("input", chart_in)->required();
  chart_cmd->add_option("--category", cs.category_col)->required();
  chart_cmd->add_option("--value", cs.value_col)->required();
  chart_cmd->add_option("--title", cs.title);
  chart_cmd->add_option("--width", cs.width);
  chart_cmd->add_option("--height", cs.height);
  chart_cmd->add_option("--out", chart_out, "output path (default stdout)");

  auto* list_cmd = app.add_subcommand("list-ops", "show the registered operators");

  std::vector<std::string> argv_store{"wrangle"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run_cmd) return cmd_run(run, out);
    if (*op_cmd) return cmd_op(op, out);
    if (*gen_cmd) {
      gc.start = parse_date_arg(gen_start);
      gc.end = parse_date_arg(gen_end);
      try {
        gc.validate();
      } catch (const Error& e) {
        throw Usage(e.what());
      }
      for (const auto& f : gen::generate(gc)) {
        write_file(fs::path(gen_out) / f.name, f.content);
        out << "wrote " << (fs::path(gen_out) / f.name).string() << "\n";
      }
      return kExitOk;
    }
    if (*fw_cmd) {
      std::string csv = write_csv(weather::flatten_weather(load_weather_json(fw_in)));
      if (fw_out.empty()) {
        out << csv;
      } else {
        write_file(fw_out, csv);
      }
      return kExitOk;
    }
    if (*chart_cmd) {
      Table t = load_table_csv(chart_in);
      std::string svg = chart::render_bar_chart(t, cs);
      if (chart_out.empty()) {
        out << svg;
      } else {
        write_file(chart_out, svg);
      }
      return kExitOk;
    }
    if (*list_cmd) {
      out << list_ops_text();
      return kExitOk;
    }
  } catch (const Usage& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    return map_error(e, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace wrangle::cli
