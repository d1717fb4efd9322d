#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <nlohmann/json.hpp>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wrangle/table.hpp"
#include "wrangle/weather.hpp"

namespace wrangle::workflow {

// ---------------------------------------------------------------------------
// Values flowing through ports
// ---------------------------------------------------------------------------

enum class ValueKind { Table, Weather, Svg };

std::string_view to_string(ValueKind kind);

struct Svg {
  std::string text;
};

using Value = std::variant<std::shared_ptr<const Table>, std::shared_ptr<const weather::WeatherDoc>,
                           std::shared_ptr<const Svg>>;

ValueKind kind_of(const Value& v);
Value make_value(Table t);
Value make_value(weather::WeatherDoc doc);
Value make_value(Svg svg);

/// Throws PortMismatch when the value holds something else.
const Table& as_table(const Value& v);
const weather::WeatherDoc& as_weather(const Value& v);
const Svg& as_svg(const Value& v);

// ---------------------------------------------------------------------------
// Operator catalogue
// ---------------------------------------------------------------------------

using PortValues = std::map<std::string, Value, std::less<>>;
using Runner = std::function<Value(const PortValues&)>;

struct PortSpec {
  std::string name;
  ValueKind kind;
};

struct OpDef {
  std::string name;  // module.op
  std::string summary;
  std::vector<PortSpec> inputs;
  ValueKind output;
  /// Checks params and parses any grammar strings up front. Throws
  /// InvalidParams.
  std::function<Runner(const nlohmann::json& params)> compile;
};

/// Every registered operator, sorted by name.
const std::vector<OpDef>& registered_ops();
const OpDef* find_op(std::string_view name);

// ---------------------------------------------------------------------------
// Workflow documents
// ---------------------------------------------------------------------------

enum class InputKind { TableCsv, WeatherJson };

std::string_view to_string(InputKind kind);
ValueKind value_kind(InputKind kind);

/// `$inputs.<name>` or `<node_id>.out`.
struct Reference {
  bool from_input = false;
  std::string name;

  static Reference parse(std::string_view text);
  std::string to_string() const;
  bool operator==(const Reference&) const = default;
};

struct InputSpec {
  std::string name;
  InputKind kind;
};

struct NodeSpec {
  std::string id;
  std::string op;
  nlohmann::json params = nlohmann::json::object();
  std::map<std::string, Reference> inputs;

  /// Set by validation.
  const OpDef* def = nullptr;
  std::shared_ptr<const Runner> runner;
};

struct OutputSpec {
  std::string name;
  Reference from;
};

struct WorkflowSpec {
  int version = 1;
  std::string name;
  std::string description;
  std::vector<InputSpec> inputs;
  std::vector<NodeSpec> nodes;
  std::vector<OutputSpec> outputs;

  /// Position of a node in `nodes`, or nullopt.
  std::optional<std::size_t> node_index(std::string_view id) const;
  /// Kind produced by `ref`; the reference must resolve.
  ValueKind kind_of(const Reference& ref) const;
};

/// Parses and fully validates a workflow document. Throws MalformedJson,
/// BadVersion, UnknownOp, DuplicateNodeId, DanglingReference, CycleDetected,
/// PortMismatch, InvalidParams.
WorkflowSpec parse_workflow(std::string_view bytes);

/// Runs the static checks on a spec built in code, resolving each node's
/// operator and compiling its params. Same errors as parse_workflow.
void validate(WorkflowSpec& spec);

/// Stages of mutually independent nodes, as indices into `spec.nodes`. A
/// node's stage is the length of the longest dependency path leading to it;
/// nodes keep declaration order within a stage.
std::vector<std::vector<std::size_t>> topo_schedule(const WorkflowSpec& spec);

// ---------------------------------------------------------------------------
// Session registry
// ---------------------------------------------------------------------------

/// Thread-safe store of node results under opaque `tbl-` keys.
class Registry {
 public:
  /// Deterministic registries hand out tbl-000000000001, tbl-000000000002...
  explicit Registry(bool deterministic = false, std::uint64_t seed = std::random_device{}());

  std::string reserve();
  /// Throws UnknownKey for a key never reserved, InvalidParams if the key
  /// already holds a value.
  void put(const std::string& key, Value value);
  /// Throws UnknownKey.
  Value get(const std::string& key) const;
  bool contains(const std::string& key) const;
  std::size_t size() const;

 private:
  mutable std::mutex mutex_;
  bool deterministic_;
  std::uint64_t counter_ = 0;
  std::mt19937_64 rng_;
  std::map<std::string, std::optional<Value>> entries_;
};

// ---------------------------------------------------------------------------
// Execution
// ---------------------------------------------------------------------------

enum class ExecMode { Parallel, Sequential };

struct ExecOptions {
  ExecMode mode = ExecMode::Parallel;
  bool deterministic_keys = false;
  /// When set, every Table result is also written there as `<key>.csv`.
  std::optional<std::filesystem::path> spill_dir;
};

struct NodeRun {
  std::string id;
  std::string op;
  std::string key;
  std::size_t stage = 0;
  std::optional<std::size_t> rows;  // absent for non-table results
  double millis = 0;
};

struct RunReport {
  std::vector<NodeRun> nodes;  // in execution order
  double total_millis = 0;
};

struct RunResult {
  std::map<std::string, Value> outputs;
  RunReport report;
  std::shared_ptr<Registry> registry;
};

/// Executes a validated spec. Missing or wrongly typed inputs throw
/// MissingInput / PortMismatch; an operator failure throws NodeError naming
/// the first failing node in declaration order, and no later stage runs.
RunResult execute(const WorkflowSpec& spec, const std::map<std::string, Value>& inputs,
                  const ExecOptions& options = {});

std::string format_report(const RunReport& report);

}  // namespace wrangle::workflow
