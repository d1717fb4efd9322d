#include <chrono>
#include <cstdio>
#include <fstream>
#include <future>

#include "wrangle/csv.hpp"
#include "wrangle/error.hpp"
#include "wrangle/workflow.hpp"

namespace wrangle::workflow {

Registry::Registry(bool deterministic, std::uint64_t seed)
    : deterministic_(deterministic), rng_(seed) {}

std::string Registry::reserve() {
  std::lock_guard lock(mutex_);
  char buf[32];
  for (;;) {
    std::uint64_t n = deterministic_ ? ++counter_ : rng_() & 0xffffffffffffULL;
    std::snprintf(buf, sizeof buf, "tbl-%012llx", static_cast<unsigned long long>(n));
    if (entries_.emplace(buf, std::nullopt).second) return buf;
  }
}

void Registry::put(const std::string& key, Value value) {
  std::lock_guard lock(mutex_);
  auto it = entries_.find(key);
  if (it == entries_.end()) fail(ErrorKind::UnknownKey, "unknown session key '" + key + "'");
  if (it->second) fail(ErrorKind::InvalidParams, "session key '" + key + "' already holds a value");
  it->second = std::move(value);
}

Value Registry::get(const std::string& key) const {
  std::lock_guard lock(mutex_);
  auto it = entries_.find(key);
  if (it == entries_.end() || !it->second) {
    fail(ErrorKind::UnknownKey, "unknown session key '" + key + "'");
  }
  return *it->second;
}

bool Registry::contains(const std::string& key) const {
  std::lock_guard lock(mutex_);
  auto it = entries_.find(key);
  return it != entries_.end() && it->second.has_value();
}

std::size_t Registry::size() const {
  std::lock_guard lock(mutex_);
  std::size_t n = 0;
  for (const auto& [_, v] : entries_) n += v.has_value();
  return n;
}

namespace {

using Clock = std::chrono::steady_clock;

double millis_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct Outcome {
  std::optional<Value> value;
  std::optional<NodeError> error;
  double millis = 0;
};

Outcome run_node(const NodeSpec& node, const PortValues& ports) {
  Outcome out;
  auto start = Clock::now();
  try {
    out.value = (*node.runner)(ports);
  } catch (const NodeError& e) {
    out.error = e;
  } catch (const Error& e) {
    out.error = NodeError(node.id, e.kind(), e.what());
  } catch (const std::exception& e) {
    out.error = NodeError(node.id, ErrorKind::NodeFailure, e.what());
  }
  out.millis = millis_since(start);
  return out;
}

void spill(const std::filesystem::path& dir, const std::string& key, const Value& v) {
  std::filesystem::create_directories(dir);
  std::string bytes;
  std::string ext;
  if (kind_of(v) == ValueKind::Table) {
    bytes = write_csv(as_table(v));
    ext = ".csv";
  } else if (kind_of(v) == ValueKind::Svg) {
    bytes = as_svg(v).text;
    ext = ".svg";
  } else {
    return;
  }
  std::ofstream f(dir / (key + ext), std::ios::binary);
  f << bytes;
  if (!f) fail(ErrorKind::Io, "cannot write intermediate " + (dir / (key + ext)).string());
}

}  // namespace

RunResult execute(const WorkflowSpec& spec, const std::map<std::string, Value>& inputs,
                  const ExecOptions& options) {
  for (const auto& in : spec.inputs) {
    auto it = inputs.find(in.name);
    if (it == inputs.end()) fail(ErrorKind::MissingInput, "input '" + in.name + "' not supplied");
    if (kind_of(it->second) != value_kind(in.kind)) {
      fail(ErrorKind::PortMismatch, "input '" + in.name + "' must be " +
                                        std::string(to_string(in.kind)));
    }
  }
  for (const auto& [name, _] : inputs) {
    bool declared = false;
    for (const auto& in : spec.inputs) declared = declared || in.name == name;
    if (!declared) fail(ErrorKind::InvalidParams, "workflow has no input named '" + name + "'");
  }
  for (const auto& n : spec.nodes) {
    if (!n.runner) fail(ErrorKind::InvalidParams, "workflow has not been validated");
  }

  RunResult result;
  result.registry = std::make_shared<Registry>(options.deterministic_keys);
  Registry& registry = *result.registry;
  std::vector<std::string> keys(spec.nodes.size());
  auto run_start = Clock::now();

  auto resolve = [&](const Reference& ref) -> Value {
    if (ref.from_input) return inputs.at(ref.name);
    return registry.get(keys[*spec.node_index(ref.name)]);
  };

  const auto stages = topo_schedule(spec);
  for (std::size_t s = 0; s < stages.size(); ++s) {
    const auto& stage = stages[s];
    // Keys are taken before any task starts, so deterministic numbering
    // follows stage and declaration order whatever the scheduling.
    std::vector<PortValues> ports(stage.size());
    for (std::size_t k = 0; k < stage.size(); ++k) {
      const NodeSpec& node = spec.nodes[stage[k]];
      keys[stage[k]] = registry.reserve();
      for (const auto& [port, ref] : node.inputs) ports[k].emplace(port, resolve(ref));
    }

    std::vector<Outcome> outcomes(stage.size());
    if (options.mode == ExecMode::Parallel && stage.size() > 1) {
      std::vector<std::future<Outcome>> futures;
      for (std::size_t k = 0; k < stage.size(); ++k) {
        futures.push_back(std::async(std::launch::async, run_node,
                                     std::cref(spec.nodes[stage[k]]), std::cref(ports[k])));
      }
      for (std::size_t k = 0; k < stage.size(); ++k) outcomes[k] = futures[k].get();
    } else {
      for (std::size_t k = 0; k < stage.size(); ++k) {
        outcomes[k] = run_node(spec.nodes[stage[k]], ports[k]);
        if (outcomes[k].error) throw *outcomes[k].error;
      }
    }
    for (auto& o : outcomes) {
      if (o.error) throw *o.error;
    }

    for (std::size_t k = 0; k < stage.size(); ++k) {
      const NodeSpec& node = spec.nodes[stage[k]];
      Value& v = *outcomes[k].value;
      registry.put(keys[stage[k]], v);
      if (options.spill_dir) spill(*options.spill_dir, keys[stage[k]], v);
      NodeRun nr{node.id, node.op, keys[stage[k]], s, std::nullopt, outcomes[k].millis};
      if (kind_of(v) == ValueKind::Table) nr.rows = as_table(v).row_count();
      result.report.nodes.push_back(std::move(nr));
    }
  }

  for (const auto& out : spec.outputs) result.outputs.emplace(out.name, resolve(out.from));
  result.report.total_millis = millis_since(run_start);
  return result;
}

std::string format_report(const RunReport& report) {
  std::string out = "stage  node                      op                                  key                 rows      ms\n";
  char line[256];
  for (const auto& n : report.nodes) {
    std::string rows = n.rows ? std::to_string(*n.rows) : "-";
    std::snprintf(line, sizeof line, "%-6zu %-25s %-35s %-19s %6s %7.2f\n", n.stage, n.id.c_str(),
                  n.op.c_str(), n.key.c_str(), rows.c_str(), n.millis);
    out += line;
  }
  std::snprintf(line, sizeof line, "total %.2f ms, %zu nodes\n", report.total_millis,
                report.nodes.size());
  out += line;
  return out;
}

}  // namespace wrangle::workflow
