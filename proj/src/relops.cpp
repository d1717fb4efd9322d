#include "wrangle/relops.hpp"

#include <unordered_map>
#include <unordered_set>

#include "wrangle/error.hpp"

namespace wrangle::relops {

namespace {

// Injective text encoding of a key tuple, used as a hash-map key.
void append_key(std::string& out, const Cell& cell) {
  out.push_back(static_cast<char>('0' + cell.index()));
  if (auto* d = std::get_if<double>(&cell); d && *d == 0.0) {
    out += "0.0";
  } else {
    out += format_cell(cell);
  }
  out.push_back('\x1f');
}

bool cell_less(const Cell& a, const Cell& b) {
  if (auto* x = std::get_if<Timestamp>(&a)) {
    return x->centis_since_epoch() < std::get<Timestamp>(b).centis_since_epoch();
  }
  if (auto* x = std::get_if<TimeOfDay>(&a)) return x->centis < std::get<TimeOfDay>(b).centis;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::monostate> || std::is_same_v<T, TimeOfDay> ||
                      std::is_same_v<T, Timestamp>) {
          return false;
        } else {
          return x < std::get<T>(b);
        }
      },
      a);
}

std::string kind_name(CellKind k) { return std::string(to_string(k)); }

}  // namespace

Table union_all(const Table& a, const Table& b) {
  if (a.column_names() != b.column_names()) {
    fail(ErrorKind::SchemaMismatch, "union inputs have different column names or order");
  }
  std::vector<Column> out;
  out.reserve(a.column_count());
  for (std::size_t i = 0; i < a.column_count(); ++i) {
    const Column& ca = a.column(i);
    const Column& cb = b.column(i);
    CellKind kind = ca.kind;
    if (ca.kind != cb.kind) {
      if (ca.all_null()) {
        kind = cb.kind;
      } else if (!cb.all_null()) {
        fail(ErrorKind::SchemaMismatch, "union column '" + ca.name + "' is " +
                                            kind_name(ca.kind) + " on the left but " +
                                            kind_name(cb.kind) + " on the right");
      }
    }
    Column col{ca.name, kind, {}};
    col.cells.reserve(ca.cells.size() + cb.cells.size());
    col.cells.insert(col.cells.end(), ca.cells.begin(), ca.cells.end());
    col.cells.insert(col.cells.end(), cb.cells.begin(), cb.cells.end());
    out.push_back(std::move(col));
  }
  return Table(std::move(out));
}

Table select_columns(const Table& t, const std::vector<std::string>& names, SelectMode mode) {
  std::unordered_set<std::string> wanted;
  for (const auto& name : names) {
    t.index_of(name);
    if (!wanted.insert(name).second) {
      fail(ErrorKind::InvalidParams, "column '" + name + "' listed twice");
    }
  }
  std::vector<Column> out;
  if (mode == SelectMode::Keep) {
    for (const auto& name : names) out.push_back(t.column(name));
  } else {
    for (const auto& col : t.columns()) {
      if (!wanted.contains(col.name)) out.push_back(col);
    }
  }
  return Table(std::move(out));
}

Table filter_rows(const Table& t, const Predicate& p) {
  auto mask = evaluate(p, t);
  std::vector<std::size_t> rows;
  for (std::size_t r = 0; r < mask.size(); ++r) {
    if (mask[r]) rows.push_back(r);
  }
  return take_rows(t, rows);
}

namespace {

std::optional<double> eval_row(const MutateExpr& e, const Table& t, std::size_t row) {
  return std::visit(
      [&](const auto& n) -> std::optional<double> {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, MutateExpr::Number>) {
          return n.value;
        } else if constexpr (std::is_same_v<T, MutateExpr::ColumnRef>) {
          return numeric_value(t.column(n.name).cells[row]);
        } else if constexpr (std::is_same_v<T, MutateExpr::Negate>) {
          auto v = eval_row(*n.operand, t, row);
          if (!v) return std::nullopt;
          return -*v;
        } else {
          auto l = eval_row(*n.lhs, t, row);
          auto r = eval_row(*n.rhs, t, row);
          if (!l || !r) return std::nullopt;
          switch (n.op) {
            case '+': return *l + *r;
            case '-': return *l - *r;
            case '*': return *l * *r;
            default:
              if (*r == 0.0) return std::nullopt;
              return *l / *r;
          }
        }
      },
      e.node);
}

}  // namespace

Table mutate_column(const Table& t, const std::string& name, const MutateExpr& e) {
  for (const auto& ref : referenced_columns(e)) {
    const Column& col = t.column(ref);
    if (!is_numeric(col.kind)) {
      fail(ErrorKind::TypeMismatch,
           "mutate references non-numeric column '" + ref + "' (" + kind_name(col.kind) + ")");
    }
  }
  Column result{name, CellKind::Real, {}};
  result.cells.reserve(t.row_count());
  for (std::size_t r = 0; r < t.row_count(); ++r) {
    auto v = eval_row(e, t, r);
    result.cells.push_back(v ? Cell{*v} : Cell{});
  }
  auto columns = t.release();
  if (auto idx = t.find(name)) {
    columns[*idx] = std::move(result);
  } else {
    columns.push_back(std::move(result));
  }
  return Table(std::move(columns));
}

Table inner_join(const Table& left, const Table& right, const std::vector<KeyPair>& keys) {
  if (keys.empty()) fail(ErrorKind::InvalidParams, "join needs at least one key pair");
  std::vector<std::size_t> lkeys, rkeys;
  for (const auto& [l, r] : keys) {
    std::size_t li = left.index_of(l);
    std::size_t ri = right.index_of(r);
    if (left.column(li).kind != right.column(ri).kind) {
      fail(ErrorKind::TypeMismatch, "join key '" + l + "' is " + kind_name(left.column(li).kind) +
                                        " but '" + r + "' is " +
                                        kind_name(right.column(ri).kind));
    }
    lkeys.push_back(li);
    rkeys.push_back(ri);
  }

  auto key_of = [](const Table& t, const std::vector<std::size_t>& cols, std::size_t row,
                   std::string& out) {
    out.clear();
    for (auto c : cols) {
      const Cell& cell = t.at(row, c);
      if (is_null(cell)) return false;
      append_key(out, cell);
    }
    return true;
  };

  std::unordered_map<std::string, std::vector<std::size_t>> index;
  std::string key;
  for (std::size_t r = 0; r < right.row_count(); ++r) {
    if (key_of(right, rkeys, r, key)) index[key].push_back(r);
  }

  std::vector<std::size_t> left_rows, right_rows;
  for (std::size_t r = 0; r < left.row_count(); ++r) {
    if (!key_of(left, lkeys, r, key)) continue;
    auto it = index.find(key);
    if (it == index.end()) continue;
    for (auto rr : it->second) {
      left_rows.push_back(r);
      right_rows.push_back(rr);
    }
  }

  auto columns = take_rows(left, left_rows).release();
  std::unordered_set<std::string> names;
  for (const auto& c : columns) names.insert(c.name);
  std::unordered_set<std::size_t> right_key_set(rkeys.begin(), rkeys.end());
  for (std::size_t c = 0; c < right.column_count(); ++c) {
    if (right_key_set.contains(c)) continue;
    const Column& src = right.column(c);
    Column col{src.name, src.kind, {}};
    while (names.contains(col.name)) col.name += ".y";
    names.insert(col.name);
    col.cells.reserve(right_rows.size());
    for (auto rr : right_rows) col.cells.push_back(src.cells[rr]);
    columns.push_back(std::move(col));
  }
  return Table(std::move(columns));
}

Table group_summarise(const Table& t, const std::vector<std::string>& group_cols,
                      const std::vector<AggSpec>& aggs) {
  std::vector<std::size_t> gidx;
  for (const auto& g : group_cols) gidx.push_back(t.index_of(g));

  std::vector<CellKind> out_kinds;
  for (const auto& agg : aggs) {
    if (agg.func == AggFunc::Count) {
      out_kinds.push_back(CellKind::Int);
      continue;
    }
    if (!agg.target) fail(ErrorKind::InvalidParams, "aggregate '" + agg.new_name + "' needs a target");
    CellKind k = t.column(*agg.target).kind;
    switch (agg.func) {
      case AggFunc::Mean:
      case AggFunc::Sum:
        if (!is_numeric(k)) {
          fail(ErrorKind::TypeMismatch, std::string(to_string(agg.func)) +
                                            " needs a numeric column, '" + *agg.target +
                                            "' is " + kind_name(k));
        }
        out_kinds.push_back(agg.func == AggFunc::Mean ? CellKind::Real : k);
        break;
      default:
        if (k == CellKind::Bool) {
          fail(ErrorKind::TypeMismatch, "min/max over Bool column '" + *agg.target + "'");
        }
        out_kinds.push_back(k);
    }
  }

  // Group rows by key, first appearance order.
  std::vector<std::vector<std::size_t>> groups;
  std::unordered_map<std::string, std::size_t> group_of;
  std::string key;
  for (std::size_t r = 0; r < t.row_count(); ++r) {
    key.clear();
    for (auto c : gidx) append_key(key, t.at(r, c));
    auto [it, inserted] = group_of.try_emplace(key, groups.size());
    if (inserted) groups.emplace_back();
    groups[it->second].push_back(r);
  }
  if (group_cols.empty() && groups.empty()) groups.emplace_back();

  std::vector<Column> out;
  for (auto c : gidx) {
    const Column& src = t.column(c);
    Column col{src.name, src.kind, {}};
    for (const auto& g : groups) col.cells.push_back(src.cells[g.front()]);
    out.push_back(std::move(col));
  }
  for (std::size_t a = 0; a < aggs.size(); ++a) {
    const AggSpec& agg = aggs[a];
    Column col{agg.new_name, out_kinds[a], {}};
    for (const auto& g : groups) {
      if (agg.func == AggFunc::Count) {
        col.cells.emplace_back(static_cast<std::int64_t>(g.size()));
        continue;
      }
      const Column& src = t.column(*agg.target);
      Cell result;
      double sum = 0;
      std::int64_t isum = 0;
      std::size_t n = 0;
      for (auto r : g) {
        const Cell& cell = src.cells[r];
        if (is_null(cell)) continue;
        ++n;
        switch (agg.func) {
          case AggFunc::Mean:
            sum += *numeric_value(cell);
            break;
          case AggFunc::Sum:
            if (src.kind == CellKind::Int) {
              isum += std::get<std::int64_t>(cell);
            } else {
              sum += std::get<double>(cell);
            }
            break;
          case AggFunc::Min:
            if (is_null(result) || cell_less(cell, result)) result = cell;
            break;
          case AggFunc::Max:
            if (is_null(result) || cell_less(result, cell)) result = cell;
            break;
          case AggFunc::Count:
            break;
        }
      }
      if (n > 0) {
        if (agg.func == AggFunc::Mean) {
          result = Cell{sum / static_cast<double>(n)};
        } else if (agg.func == AggFunc::Sum) {
          result = src.kind == CellKind::Int ? Cell{isum} : Cell{sum};
        }
      }
      col.cells.push_back(std::move(result));
    }
    out.push_back(std::move(col));
  }
  return Table(std::move(out));
}

}  // namespace wrangle::relops
