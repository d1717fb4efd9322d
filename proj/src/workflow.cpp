#include "wrangle/workflow.hpp"

#include <algorithm>
#include <regex>
#include <set>

#include "wrangle/error.hpp"

namespace wrangle::workflow {

using nlohmann::json;

std::string_view to_string(ValueKind kind) {
  switch (kind) {
    case ValueKind::Table: return "table";
    case ValueKind::Weather: return "weather";
    case ValueKind::Svg: return "svg";
  }
  return "?";
}

ValueKind kind_of(const Value& v) { return static_cast<ValueKind>(v.index()); }

Value make_value(Table t) { return std::make_shared<const Table>(std::move(t)); }
Value make_value(weather::WeatherDoc doc) {
  return std::make_shared<const weather::WeatherDoc>(std::move(doc));
}
Value make_value(Svg svg) { return std::make_shared<const Svg>(std::move(svg)); }

namespace {

template <typename T>
const T& unwrap(const Value& v, ValueKind want) {
  auto* p = std::get_if<std::shared_ptr<const T>>(&v);
  if (!p || !*p) {
    fail(ErrorKind::PortMismatch, "expected a " + std::string(to_string(want)) + " value, got " +
                                      std::string(to_string(kind_of(v))));
  }
  return **p;
}

}  // namespace

const Table& as_table(const Value& v) { return unwrap<Table>(v, ValueKind::Table); }
const weather::WeatherDoc& as_weather(const Value& v) {
  return unwrap<weather::WeatherDoc>(v, ValueKind::Weather);
}
const Svg& as_svg(const Value& v) { return unwrap<Svg>(v, ValueKind::Svg); }

std::string_view to_string(InputKind kind) {
  return kind == InputKind::TableCsv ? "table-csv" : "weather-json";
}

ValueKind value_kind(InputKind kind) {
  return kind == InputKind::TableCsv ? ValueKind::Table : ValueKind::Weather;
}

Reference Reference::parse(std::string_view text) {
  static const std::regex input_re(R"(\$inputs\.([A-Za-z0-9_]+))");
  static const std::regex node_re(R"(([a-z0-9_]+)\.out)");
  std::string s(text);
  std::smatch m;
  if (std::regex_match(s, m, input_re)) return {true, m[1]};
  if (std::regex_match(s, m, node_re)) return {false, m[1]};
  fail(ErrorKind::DanglingReference,
       "bad reference '" + s + "': expected $inputs.<name> or <node_id>.out");
}

std::string Reference::to_string() const {
  return from_input ? "$inputs." + name : name + ".out";
}

std::optional<std::size_t> WorkflowSpec::node_index(std::string_view id) const {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].id == id) return i;
  }
  return std::nullopt;
}

ValueKind WorkflowSpec::kind_of(const Reference& ref) const {
  if (ref.from_input) {
    for (const auto& in : inputs) {
      if (in.name == ref.name) return value_kind(in.kind);
    }
  } else if (auto i = node_index(ref.name); i && nodes[*i].def) {
    return nodes[*i].def->output;
  }
  fail(ErrorKind::DanglingReference, "unresolved reference '" + ref.to_string() + "'");
}

namespace {

[[noreturn]] void malformed(const std::string& msg) {
  fail(ErrorKind::MalformedJson, "workflow: " + msg);
}

const json& field(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) malformed(where + " is missing '" + key + "'");
  return *it;
}

std::string string_field(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_string()) malformed(where + ": '" + key + "' must be a string");
  return v.get<std::string>();
}

const json& array_field(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_array()) malformed(where + ": '" + key + "' must be a list");
  return v;
}

void require_keys(const json& obj, std::initializer_list<const char*> allowed,
                  const std::string& where) {
  if (!obj.is_object()) malformed(where + " must be an object");
  for (const auto& [k, _] : obj.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; })) {
      malformed(where + " has unknown key '" + k + "'");
    }
  }
}

// Returns the dependency indices of each node; references must already resolve.
std::vector<std::vector<std::size_t>> dependencies(const WorkflowSpec& spec) {
  std::vector<std::vector<std::size_t>> deps(spec.nodes.size());
  for (std::size_t i = 0; i < spec.nodes.size(); ++i) {
    for (const auto& [_, ref] : spec.nodes[i].inputs) {
      if (ref.from_input) continue;
      std::size_t d = *spec.node_index(ref.name);
      if (std::find(deps[i].begin(), deps[i].end(), d) == deps[i].end()) deps[i].push_back(d);
    }
  }
  return deps;
}

}  // namespace

void validate(WorkflowSpec& spec) {
  if (spec.version != 1) {
    fail(ErrorKind::BadVersion, "unsupported workflow version " + std::to_string(spec.version));
  }

  std::set<std::string> input_names;
  static const std::regex input_name_re("[A-Za-z0-9_]+");
  for (const auto& in : spec.inputs) {
    if (!std::regex_match(in.name, input_name_re)) {
      fail(ErrorKind::InvalidParams, "bad input name '" + in.name + "'");
    }
    if (!input_names.insert(in.name).second) {
      fail(ErrorKind::InvalidParams, "input '" + in.name + "' is declared twice");
    }
  }

  static const std::regex id_re("[a-z0-9_]+");
  std::set<std::string> ids;
  for (const auto& n : spec.nodes) {
    if (!std::regex_match(n.id, id_re)) {
      fail(ErrorKind::InvalidParams, "node id '" + n.id + "' must match [a-z0-9_]+");
    }
    if (!ids.insert(n.id).second) {
      fail(ErrorKind::DuplicateNodeId, "node id '" + n.id + "' is used twice");
    }
  }

  for (auto& n : spec.nodes) {
    n.def = find_op(n.op);
    if (!n.def) fail(ErrorKind::UnknownOp, "node '" + n.id + "': unknown operator '" + n.op + "'");
  }

  for (const auto& n : spec.nodes) {
    for (const auto& [port, ref] : n.inputs) {
      if (ref.from_input ? !input_names.contains(ref.name) : !ids.contains(ref.name)) {
        fail(ErrorKind::DanglingReference,
             "node '" + n.id + "' port '" + port + "' refers to missing '" + ref.to_string() + "'");
      }
      if (!ref.from_input && ref.name == n.id) {
        fail(ErrorKind::CycleDetected, "node '" + n.id + "' feeds itself");
      }
    }
  }
  for (const auto& out : spec.outputs) {
    if (out.from.from_input ? !input_names.contains(out.from.name) : !ids.contains(out.from.name)) {
      fail(ErrorKind::DanglingReference,
           "output '" + out.name + "' refers to missing '" + out.from.to_string() + "'");
    }
  }

  // Kahn's algorithm; whatever is left over lies on or behind a cycle.
  auto deps = dependencies(spec);
  std::vector<std::size_t> pending(spec.nodes.size());
  std::vector<std::vector<std::size_t>> users(spec.nodes.size());
  for (std::size_t i = 0; i < deps.size(); ++i) {
    pending[i] = deps[i].size();
    for (auto d : deps[i]) users[d].push_back(i);
  }
  std::vector<std::size_t> ready;
  for (std::size_t i = 0; i < pending.size(); ++i) {
    if (pending[i] == 0) ready.push_back(i);
  }
  std::size_t done = 0;
  while (!ready.empty()) {
    auto i = ready.back();
    ready.pop_back();
    ++done;
    for (auto u : users[i]) {
      if (--pending[u] == 0) ready.push_back(u);
    }
  }
  if (done != spec.nodes.size()) {
    std::string stuck;
    for (std::size_t i = 0; i < pending.size(); ++i) {
      if (pending[i] > 0) stuck += (stuck.empty() ? "" : ", ") + spec.nodes[i].id;
    }
    fail(ErrorKind::CycleDetected, "workflow graph has a cycle through: " + stuck);
  }

  for (auto& n : spec.nodes) {
    std::set<std::string> expected;
    for (const auto& port : n.def->inputs) {
      expected.insert(port.name);
      auto it = n.inputs.find(port.name);
      if (it == n.inputs.end()) {
        fail(ErrorKind::PortMismatch,
             "node '" + n.id + "' (" + n.op + ") needs input port '" + port.name + "'");
      }
      ValueKind got = spec.kind_of(it->second);
      if (got != port.kind) {
        fail(ErrorKind::PortMismatch, "node '" + n.id + "' port '" + port.name + "' expects " +
                                          std::string(to_string(port.kind)) + " but '" +
                                          it->second.to_string() + "' is " +
                                          std::string(to_string(got)));
      }
    }
    for (const auto& [port, _] : n.inputs) {
      if (!expected.contains(port)) {
        fail(ErrorKind::PortMismatch,
             "node '" + n.id + "' (" + n.op + ") has no input port '" + port + "'");
      }
    }
    try {
      n.runner = std::make_shared<const Runner>(n.def->compile(n.params));
    } catch (const Error& e) {
      fail(ErrorKind::InvalidParams, "node '" + n.id + "': " + e.what());
    }
  }

  std::set<std::string> out_names;
  for (const auto& out : spec.outputs) {
    if (!out_names.insert(out.name).second) {
      fail(ErrorKind::InvalidParams, "output '" + out.name + "' is declared twice");
    }
  }
}

WorkflowSpec parse_workflow(std::string_view bytes) {
  json doc;
  try {
    doc = json::parse(bytes);
  } catch (const json::parse_error& e) {
    malformed(std::string("invalid JSON: ") + e.what());
  }
  require_keys(doc, {"version", "name", "description", "inputs", "nodes", "outputs"}, "workflow");

  WorkflowSpec spec;
  const json& version = field(doc, "version", "workflow");
  if (!version.is_number_integer()) {
    fail(ErrorKind::BadVersion, "workflow version must be the integer 1");
  }
  spec.version = version.get<int>();
  if (spec.version != 1) {
    fail(ErrorKind::BadVersion, "unsupported workflow version " + std::to_string(spec.version));
  }
  spec.name = string_field(doc, "name", "workflow");
  if (doc.contains("description")) spec.description = string_field(doc, "description", "workflow");

  for (const auto& in : array_field(doc, "inputs", "workflow")) {
    require_keys(in, {"name", "kind"}, "input");
    InputSpec is;
    is.name = string_field(in, "name", "input");
    std::string kind = string_field(in, "kind", "input '" + is.name + "'");
    if (kind == "table-csv") {
      is.kind = InputKind::TableCsv;
    } else if (kind == "weather-json") {
      is.kind = InputKind::WeatherJson;
    } else {
      malformed("input '" + is.name + "' has unknown kind '" + kind + "'");
    }
    spec.inputs.push_back(std::move(is));
  }

  for (const auto& n : array_field(doc, "nodes", "workflow")) {
    require_keys(n, {"id", "op", "params", "inputs", "comment"}, "node");
    NodeSpec ns;
    ns.id = string_field(n, "id", "node");
    const std::string where = "node '" + ns.id + "'";
    ns.op = string_field(n, "op", where);
    if (n.contains("params")) {
      ns.params = n["params"];
      if (!ns.params.is_object()) malformed(where + ": 'params' must be an object");
    }
    if (n.contains("inputs")) {
      if (!n["inputs"].is_object()) malformed(where + ": 'inputs' must be an object");
      for (const auto& [port, ref] : n["inputs"].items()) {
        if (!ref.is_string()) malformed(where + ": input '" + port + "' must be a string");
        ns.inputs.emplace(port, Reference::parse(ref.get<std::string>()));
      }
    }
    spec.nodes.push_back(std::move(ns));
  }

  for (const auto& o : array_field(doc, "outputs", "workflow")) {
    require_keys(o, {"name", "from"}, "output");
    OutputSpec os;
    os.name = string_field(o, "name", "output");
    os.from = Reference::parse(string_field(o, "from", "output '" + os.name + "'"));
    spec.outputs.push_back(std::move(os));
  }

  validate(spec);
  return spec;
}

std::vector<std::vector<std::size_t>> topo_schedule(const WorkflowSpec& spec) {
  auto deps = dependencies(spec);
  std::vector<std::optional<std::size_t>> depth(spec.nodes.size());
  // Memoised longest path; the graph is known to be acyclic.
  std::function<std::size_t(std::size_t)> depth_of = [&](std::size_t i) -> std::size_t {
    if (depth[i]) return *depth[i];
    std::size_t d = 0;
    for (auto p : deps[i]) d = std::max(d, depth_of(p) + 1);
    depth[i] = d;
    return d;
  };
  std::vector<std::vector<std::size_t>> stages;
  for (std::size_t i = 0; i < spec.nodes.size(); ++i) {
    std::size_t d = depth_of(i);
    if (stages.size() <= d) stages.resize(d + 1);
  }
  for (std::size_t i = 0; i < spec.nodes.size(); ++i) stages[*depth[i]].push_back(i);
  return stages;
}

}  // namespace wrangle::workflow
