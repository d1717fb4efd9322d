#pragma once

// Random but statically valid workflows over the registered operators,
// with the input tables to run them on.

#include <map>
#include <nlohmann/json.hpp>
#include <string>
#include <utility>
#include <vector>

#include "random_tables.hpp"
#include "wrangle/workflow.hpp"

namespace testsupport {

struct RandomWorkflow {
  std::string json_text;
  std::map<std::string, wrangle::workflow::Value> inputs;
};

inline Table fact_table(Gen& g, std::size_t rows) {
  std::vector<Column> cols;
  cols.push_back(g.column("k", CellKind::Int, rows, 0.1, true));
  cols.push_back(g.column("g", CellKind::Text, rows, 0.1, true));
  cols.push_back(g.column("x", CellKind::Real, rows, 0.1));
  cols.push_back(g.column("y", CellKind::Int, rows, 0.1));
  return Table(std::move(cols));
}

inline RandomWorkflow random_workflow(std::uint64_t seed, int max_nodes = 12) {
  using nlohmann::json;
  using Schema = std::vector<std::pair<std::string, CellKind>>;
  Gen g(seed);

  Table fact1 = fact_table(g, static_cast<std::size_t>(g.range(0, 50)));
  Table fact2 = fact_table(g, static_cast<std::size_t>(g.range(0, 50)));
  std::size_t dim_rows = static_cast<std::size_t>(g.range(1, 8));
  Column dim_k{"k", CellKind::Int, {}};
  for (std::size_t r = 0; r < dim_rows; ++r) dim_k.cells.emplace_back(std::int64_t(r % 7));
  Table dim({dim_k, g.column("label", CellKind::Text, dim_rows, 0.0, true),
             g.column("w", CellKind::Real, dim_rows, 0.2)});

  auto schema_of = [](const Table& t) {
    Schema s;
    for (const auto& c : t.columns()) s.emplace_back(c.name, c.kind);
    return s;
  };
  auto has = [](const Schema& s, const std::string& name, std::optional<CellKind> kind = {}) {
    for (const auto& [n, k] : s) {
      if (n == name && (!kind || *kind == k)) return true;
    }
    return false;
  };

  std::vector<std::pair<std::string, Schema>> sources = {
      {"$inputs.fact1", schema_of(fact1)}, {"$inputs.fact2", schema_of(fact2)}};
  json nodes = json::array();
  json outputs = json::array();
  int n_nodes = g.range(1, max_nodes);

  for (int i = 0; i < n_nodes; ++i) {
    std::string id = "n" + std::to_string(i);
    auto& [src, schema] = sources[static_cast<std::size_t>(g.range(0, int(sources.size()) - 1))];
    std::string from = src;
    Schema in_schema = schema;
    json node = {{"id", id}};
    Schema out = in_schema;
    bool made = false;
    for (int attempt = 0; attempt < 20 && !made; ++attempt) {
      switch (g.range(0, 8)) {
        case 0:
          if (!has(in_schema, "x", CellKind::Real)) break;
          node["op"] = "relops.filter";
          node["params"] = {{"predicate", "x > " + std::to_string(g.range(-5000, 5000)) +
                                              (g.coin() ? " or y < 0" : "")}};
          node["inputs"] = {{"in", from}};
          made = true;
          break;
        case 1:
          if (!has(in_schema, "x") || has(in_schema, "m" + std::to_string(i))) break;
          node["op"] = "relops.mutate";
          node["params"] = {{"name", "m" + std::to_string(i)}, {"expr", "x * 2 + (x - 1) / 3"}};
          node["inputs"] = {{"in", from}};
          out.emplace_back("m" + std::to_string(i), CellKind::Real);
          made = true;
          break;
        case 2: {
          if (in_schema.size() < 2) break;
          std::size_t drop = static_cast<std::size_t>(g.range(0, int(in_schema.size()) - 1));
          node["op"] = "relops.select";
          node["params"] = {{"columns", {in_schema[drop].first}}, {"mode", "drop"}};
          node["inputs"] = {{"in", from}};
          out.erase(out.begin() + static_cast<long>(drop));
          made = true;
          break;
        }
        case 3: {
          std::vector<std::string> same;
          for (const auto& [s, sc] : sources) {
            if (sc == in_schema) same.push_back(s);
          }
          node["op"] = "relops.union";
          node["inputs"] = {{"a", from},
                            {"b", same[static_cast<std::size_t>(g.range(0, int(same.size()) - 1))]}};
          made = true;
          break;
        }
        case 4:
          if (!has(in_schema, "k", CellKind::Int) || has(in_schema, "label") ||
              has(in_schema, "w") || has(in_schema, "label.y") || has(in_schema, "w.y")) {
            break;
          }
          node["op"] = "relops.join";
          node["params"] = {{"keys", json::array({json::array({"k", "k"})})}};
          node["inputs"] = {{"left", from}, {"right", "$inputs.dim"}};
          out.emplace_back("label", CellKind::Text);
          out.emplace_back("w", CellKind::Real);
          made = true;
          break;
        case 5:
          if (!has(in_schema, "x") || !has(in_schema, "g", CellKind::Text)) break;
          node["op"] = "relops.group_summarise";
          node["params"] = {{"by", {"g"}}, {"aggs", {"mx = mean(x)", "n = count()"}}};
          node["inputs"] = {{"in", from}};
          out = {{"g", CellKind::Text}, {"mx", CellKind::Real}, {"n", CellKind::Int}};
          made = true;
          break;
        case 6:
          node["op"] = "table.infer_types";
          node["inputs"] = {{"in", from}};
          made = true;
          break;
        case 7:
          if (!has(in_schema, "g", CellKind::Text)) break;
          node["op"] = "traffic.clean_site_id";
          node["params"] = {{"col", "g"}};
          node["inputs"] = {{"in", from}};
          made = true;
          break;
        case 8:
          if (!has(in_schema, "x")) break;
          node["op"] = "relops.group_summarise";
          node["params"] = {{"by", json::array()}, {"aggs", {"sx = sum(x)", "c = count()"}}};
          node["inputs"] = {{"in", from}};
          out = {{"sx", CellKind::Real}, {"c", CellKind::Int}};
          made = true;
          break;
      }
    }
    if (!made) {
      node["op"] = "table.infer_types";
      node["inputs"] = {{"in", from}};
    }
    nodes.push_back(node);
    sources.emplace_back(id + ".out", out);
    outputs.push_back({{"name", "out_" + id}, {"from", id + ".out"}});
  }

  json doc = {{"version", 1},
              {"name", "random_" + std::to_string(seed)},
              {"inputs",
               {{{"name", "fact1"}, {"kind", "table-csv"}},
                {{"name", "fact2"}, {"kind", "table-csv"}},
                {{"name", "dim"}, {"kind", "table-csv"}}}},
              {"nodes", nodes},
              {"outputs", outputs}};
  RandomWorkflow rw;
  rw.json_text = doc.dump(2);
  rw.inputs.emplace("fact1", wrangle::workflow::make_value(std::move(fact1)));
  rw.inputs.emplace("fact2", wrangle::workflow::make_value(std::move(fact2)));
  rw.inputs.emplace("dim", wrangle::workflow::make_value(std::move(dim)));
  return rw;
}

}  // namespace testsupport
