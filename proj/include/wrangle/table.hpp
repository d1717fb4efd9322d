#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wrangle/cell.hpp"

namespace wrangle {

struct Column {
  std::string name;
  CellKind kind = CellKind::Text;
  std::vector<Cell> cells;

  bool all_null() const;
  bool operator==(const Column&) const = default;
};

/// Immutable, rectangular collection of uniquely named typed columns.
///
/// Construction validates the invariants (equal column lengths, unique
/// names, every non-null cell of its column's kind) and throws
/// SchemaMismatch/TypeMismatch on violation, so every Table that exists is
/// well formed.
class Table {
 public:
  Table() = default;
  explicit Table(std::vector<Column> columns);

  std::size_t row_count() const { return columns_.empty() ? 0 : columns_.front().cells.size(); }
  std::size_t column_count() const { return columns_.size(); }

  std::span<const Column> columns() const { return columns_; }
  const Column& column(std::size_t index) const { return columns_.at(index); }
  /// Throws UnknownColumn.
  const Column& column(std::string_view name) const;
  std::optional<std::size_t> find(std::string_view name) const;
  /// Throws UnknownColumn.
  std::size_t index_of(std::string_view name) const;

  std::vector<std::string> column_names() const;
  const Cell& at(std::size_t row, std::size_t col) const { return columns_[col].cells[row]; }

  /// Copy of the columns, for building a derived table.
  std::vector<Column> release() const { return columns_; }

  /// Re-checks the structural invariants; throws on violation.
  void validate() const;

  bool operator==(const Table&) const = default;

 private:
  std::vector<Column> columns_;
};

/// Same columns, keeping only the listed rows in the given order.
Table take_rows(const Table& table, std::span<const std::size_t> rows);

/// Column with no rows of the same name and kind; used for empty results.
std::vector<Column> empty_like(const Table& table);

}  // namespace wrangle
