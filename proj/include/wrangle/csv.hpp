#pragma once

#include <string>
#include <string_view>

#include "wrangle/table.hpp"

namespace wrangle {

/// The TfGM export dialect: comma delimiter, double-quote quoting with `""`
/// escapes, mandatory header row, trailing empty fields tolerated. Leading
/// apostrophes (`'000000001083`) are ordinary text.
struct CsvDialect {
  char delimiter = ',';
  char quote = '"';
};

/// Every column of the result is Text. Unquoted empty fields are Null; a
/// quoted empty field (`""`) is the empty string. Short rows are padded with
/// Null; rows longer than the header only by trailing empty fields are
/// truncated. Errors (MalformedCsv, EmptyInput) cite the 1-based line.
Table parse_csv(std::string_view bytes, const CsvDialect& dialect = {});

/// Header then one LF-terminated line per row. Fields holding the delimiter,
/// a quote, CR or LF are quoted, as is the empty string so it stays distinct
/// from Null.
std::string write_csv(const Table& table, const CsvDialect& dialect = {});

/// Promotes each Text column to the first kind in Int, Real, Timestamp,
/// Date, TimeOfDay, Bool that every non-null cell parses as. All-null
/// columns and columns that are already typed are left alone.
Table infer_column_types(const Table& table);

}  // namespace wrangle
