#pragma once

#include <string>
#include <utility>
#include <vector>

#include "wrangle/expr.hpp"
#include "wrangle/table.hpp"

namespace wrangle::relops {

/// Rows of `a` followed by rows of `b`. Schemas must agree on names, order
/// and kinds; a column with no non-null cells is treated as untyped and takes
/// the other side's kind (a fully empty CSV column always infers as Text).
Table union_all(const Table& a, const Table& b);

enum class SelectMode { Keep, Drop };

Table select_columns(const Table& t, const std::vector<std::string>& names, SelectMode mode);

Table filter_rows(const Table& t, const Predicate& p);

/// Appends `name` as a Real column, or replaces it in place if it exists.
/// Any Null operand or a zero divisor yields a Null cell.
Table mutate_column(const Table& t, const std::string& name, const MutateExpr& e);

using KeyPair = std::pair<std::string, std::string>;

/// Inner equi-join. Output is left's columns then right's non-key columns,
/// with ".y" appended to right names that collide. Rows come out in left
/// order, and matches for one left row in right order. Null keys never match.
Table inner_join(const Table& left, const Table& right, const std::vector<KeyPair>& keys);

/// One row per distinct key tuple in first-appearance order. mean/sum/min/max
/// skip Nulls and yield Null for a group with no values; count counts rows.
Table group_summarise(const Table& t, const std::vector<std::string>& group_cols,
                      const std::vector<AggSpec>& aggs);

}  // namespace wrangle::relops
