#include "wrangle/table.hpp"

#include <unordered_set>

#include "wrangle/error.hpp"

namespace wrangle {

bool Column::all_null() const {
  for (const auto& cell : cells) {
    if (!is_null(cell)) return false;
  }
  return true;
}

Table::Table(std::vector<Column> columns) : columns_(std::move(columns)) { validate(); }

void Table::validate() const {
  std::unordered_set<std::string_view> names;
  for (const auto& col : columns_) {
    if (!names.insert(col.name).second) {
      fail(ErrorKind::SchemaMismatch, "duplicate column name '" + col.name + "'");
    }
    if (col.cells.size() != columns_.front().cells.size()) {
      fail(ErrorKind::SchemaMismatch, "column '" + col.name + "' has " +
                                          std::to_string(col.cells.size()) + " cells, expected " +
                                          std::to_string(columns_.front().cells.size()));
    }
    for (std::size_t row = 0; row < col.cells.size(); ++row) {
      auto kind = kind_of(col.cells[row]);
      if (kind && *kind != col.kind) {
        fail(ErrorKind::TypeMismatch, "column '" + col.name + "' of kind " +
                                          std::string(to_string(col.kind)) + " holds a " +
                                          std::string(to_string(*kind)) + " cell at row " +
                                          std::to_string(row));
      }
    }
  }
}

std::optional<std::size_t> Table::find(std::string_view name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].name == name) return i;
  }
  return std::nullopt;
}

std::size_t Table::index_of(std::string_view name) const {
  if (auto idx = find(name)) return *idx;
  fail(ErrorKind::UnknownColumn, "unknown column '" + std::string(name) + "'");
}

const Column& Table::column(std::string_view name) const { return columns_[index_of(name)]; }

std::vector<std::string> Table::column_names() const {
  std::vector<std::string> names;
  names.reserve(columns_.size());
  for (const auto& col : columns_) names.push_back(col.name);
  return names;
}

Table take_rows(const Table& table, std::span<const std::size_t> rows) {
  std::vector<Column> out;
  out.reserve(table.column_count());
  for (const auto& col : table.columns()) {
    Column c{col.name, col.kind, {}};
    c.cells.reserve(rows.size());
    for (auto r : rows) c.cells.push_back(col.cells[r]);
    out.push_back(std::move(c));
  }
  return Table(std::move(out));
}

std::vector<Column> empty_like(const Table& table) {
  std::vector<Column> out;
  for (const auto& col : table.columns()) out.push_back(Column{col.name, col.kind, {}});
  return out;
}

}  // namespace wrangle
