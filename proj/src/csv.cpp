#include "wrangle/csv.hpp"

#include <array>
#include <unordered_set>

#include "wrangle/error.hpp"

namespace wrangle {

namespace {

struct RawField {
  std::string text;
  bool quoted = false;
};

class RecordReader {
 public:
  RecordReader(std::string_view input, const CsvDialect& dialect)
      : in_(input), dialect_(dialect) {
    if (in_.substr(0, 3) == "\xEF\xBB\xBF") pos_ = 3;
  }

  bool done() const { return pos_ >= in_.size(); }
  std::size_t line() const { return line_; }

  // Reads one record; `start_line` receives the line it began on.
  std::vector<RawField> next(std::size_t& start_line) {
    start_line = line_;
    std::vector<RawField> fields;
    while (true) {
      RawField field;
      if (pos_ < in_.size() && in_[pos_] == dialect_.quote) {
        field.quoted = true;
        read_quoted(field.text, start_line);
      } else {
        read_unquoted(field.text);
      }
      fields.push_back(std::move(field));
      if (pos_ >= in_.size()) return fields;
      char c = in_[pos_];
      if (c == dialect_.delimiter) {
        ++pos_;
        continue;
      }
      if (at_line_end()) {
        consume_line_end();
        return fields;
      }
      fail(ErrorKind::MalformedCsv, "line " + std::to_string(line_) +
                                        ": unexpected character after closing quote");
    }
  }

 private:
  bool at_line_end() const {
    if (pos_ >= in_.size()) return false;
    if (in_[pos_] == '\n') return true;
    return in_[pos_] == '\r' && pos_ + 1 < in_.size() && in_[pos_ + 1] == '\n';
  }

  void consume_line_end() {
    pos_ += in_[pos_] == '\r' ? 2 : 1;
    ++line_;
  }

  void read_unquoted(std::string& out) {
    std::size_t start = pos_;
    while (pos_ < in_.size() && in_[pos_] != dialect_.delimiter && !at_line_end()) ++pos_;
    out.assign(in_.substr(start, pos_ - start));
  }

  void read_quoted(std::string& out, std::size_t start_line) {
    ++pos_;
    while (true) {
      if (pos_ >= in_.size()) {
        fail(ErrorKind::MalformedCsv,
             "line " + std::to_string(start_line) + ": unclosed quoted field");
      }
      char c = in_[pos_];
      if (c == dialect_.quote) {
        if (pos_ + 1 < in_.size() && in_[pos_ + 1] == dialect_.quote) {
          out.push_back(c);
          pos_ += 2;
          continue;
        }
        ++pos_;
        return;
      }
      if (c == '\n') ++line_;
      out.push_back(c);
      ++pos_;
    }
  }

  std::string_view in_;
  CsvDialect dialect_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

bool needs_quoting(std::string_view text, const CsvDialect& dialect) {
  if (text.empty()) return true;
  for (char c : text) {
    if (c == dialect.delimiter || c == dialect.quote || c == '\n' || c == '\r') return true;
  }
  return false;
}

void append_field(std::string& out, std::string_view text, bool force_plain,
                  const CsvDialect& dialect) {
  if (force_plain || !needs_quoting(text, dialect)) {
    out.append(text);
    return;
  }
  out.push_back(dialect.quote);
  for (char c : text) {
    if (c == dialect.quote) out.push_back(dialect.quote);
    out.push_back(c);
  }
  out.push_back(dialect.quote);
}

}  // namespace

Table parse_csv(std::string_view bytes, const CsvDialect& dialect) {
  RecordReader reader(bytes, dialect);
  if (reader.done()) fail(ErrorKind::EmptyInput, "input has no header row");

  std::size_t line = 0;
  auto header = reader.next(line);
  while (!header.empty() && header.back().text.empty() && !header.back().quoted) {
    header.pop_back();
  }
  if (header.empty()) fail(ErrorKind::EmptyInput, "line 1: header row has no column names");

  std::vector<Column> columns;
  std::unordered_set<std::string> seen;
  for (auto& field : header) {
    if (!seen.insert(field.text).second) {
      fail(ErrorKind::MalformedCsv, "line " + std::to_string(line) +
                                        ": duplicate column name '" + field.text + "'");
    }
    columns.push_back(Column{std::move(field.text), CellKind::Text, {}});
  }
  const std::size_t width = columns.size();

  while (!reader.done()) {
    auto fields = reader.next(line);
    if (fields.size() > width) {
      for (std::size_t i = width; i < fields.size(); ++i) {
        if (fields[i].quoted || !fields[i].text.empty()) {
          fail(ErrorKind::MalformedCsv, "line " + std::to_string(line) + ": row has " +
                                            std::to_string(fields.size()) +
                                            " fields but the header has " +
                                            std::to_string(width));
        }
      }
      fields.resize(width);
    }
    for (std::size_t i = 0; i < width; ++i) {
      if (i >= fields.size() || (!fields[i].quoted && fields[i].text.empty())) {
        columns[i].cells.emplace_back();
      } else {
        columns[i].cells.emplace_back(std::move(fields[i].text));
      }
    }
  }
  return Table(std::move(columns));
}

std::string write_csv(const Table& table, const CsvDialect& dialect) {
  std::string out;
  const auto cols = table.columns();
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (c) out.push_back(dialect.delimiter);
    append_field(out, cols[c].name, false, dialect);
  }
  out.push_back('\n');
  for (std::size_t r = 0; r < table.row_count(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (c) out.push_back(dialect.delimiter);
      const Cell& cell = cols[c].cells[r];
      if (is_null(cell)) continue;
      append_field(out, format_cell(cell), cols[c].kind != CellKind::Text, dialect);
    }
    out.push_back('\n');
  }
  return out;
}

Table infer_column_types(const Table& table) {
  static constexpr std::array kOrder = {CellKind::Int,       CellKind::Real,
                                        CellKind::Timestamp, CellKind::Date,
                                        CellKind::TimeOfDay, CellKind::Bool};
  auto columns = table.release();
  for (auto& col : columns) {
    if (col.kind != CellKind::Text || col.all_null()) continue;
    for (CellKind kind : kOrder) {
      std::vector<Cell> converted;
      converted.reserve(col.cells.size());
      bool ok = true;
      for (const auto& cell : col.cells) {
        if (is_null(cell)) {
          converted.emplace_back();
          continue;
        }
        auto parsed = parse_cell(std::get<std::string>(cell), kind);
        if (!parsed) {
          ok = false;
          break;
        }
        converted.push_back(std::move(*parsed));
      }
      if (ok) {
        col.kind = kind;
        col.cells = std::move(converted);
        break;
      }
    }
  }
  return Table(std::move(columns));
}

}  // namespace wrangle
