#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wrangle/cell.hpp"
#include "wrangle/table.hpp"

namespace wrangle {

// ---------------------------------------------------------------------------
// Row predicates
//
//   expr   := clause (('and' | 'or') clause)*      -- 'and' binds tighter
//   clause := '(' expr ')' | 'not' clause
//           | ident cmp literal
//           | ident 'in' '(' literal (',' literal)* ')'
//           | ident 'between' literal 'and' literal
//   cmp    := '==' | '!=' | '<' | '<=' | '>' | '>='
//   ident  := [A-Za-z_][A-Za-z0-9_]* | '`' any-but-backtick '`'
//   literal:= number | 'text' | #HH:MM[:SS]# | #YYYY-MM-DD#
// ---------------------------------------------------------------------------

enum class CompareOp { Eq, Ne, Lt, Le, Gt, Ge };

std::string_view to_string(CompareOp op);

struct Predicate;
using PredicatePtr = std::shared_ptr<const Predicate>;

struct Predicate {
  struct Compare {
    std::string column;
    CompareOp op;
    Cell literal;
  };
  struct In {
    std::string column;
    std::vector<Cell> literals;
  };
  struct Between {
    std::string column;
    Cell lo;
    Cell hi;
  };
  struct And {
    PredicatePtr lhs, rhs;
  };
  struct Or {
    PredicatePtr lhs, rhs;
  };
  struct Not {
    PredicatePtr operand;
  };

  std::variant<Compare, In, Between, And, Or, Not> node;
};

PredicatePtr make_compare(std::string column, CompareOp op, Cell literal);
PredicatePtr make_in(std::string column, std::vector<Cell> literals);
PredicatePtr make_between(std::string column, Cell lo, Cell hi);
PredicatePtr make_and(PredicatePtr lhs, PredicatePtr rhs);
PredicatePtr make_or(PredicatePtr lhs, PredicatePtr rhs);
PredicatePtr make_not(PredicatePtr operand);

/// Deep structural equality.
bool equal(const Predicate& a, const Predicate& b);

/// Throws ParseError.
PredicatePtr parse_predicate(std::string_view text);
/// Canonical text; parse_predicate(print_predicate(p)) is structurally equal to p.
std::string print_predicate(const Predicate& p);

/// Columns referenced anywhere in the predicate, in first-reference order.
std::vector<std::string> referenced_columns(const Predicate& p);

/// Per-row truth values. Comparisons touching a Null cell are false. Kind
/// compatibility is checked against the schema before any row is visited,
/// so an empty table still rejects `TimeOfDay < 3` with TypeMismatch.
std::vector<bool> evaluate(const Predicate& p, const Table& table);

// ---------------------------------------------------------------------------
// Column arithmetic
//
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := '-' factor | number | ident | '(' expr ')'
// ---------------------------------------------------------------------------

struct MutateExpr;
using MutateExprPtr = std::shared_ptr<const MutateExpr>;

struct MutateExpr {
  struct Number {
    double value;
  };
  struct ColumnRef {
    std::string name;
  };
  struct Negate {
    MutateExprPtr operand;
  };
  struct Binary {
    char op;  // one of + - * /
    MutateExprPtr lhs, rhs;
  };

  std::variant<Number, ColumnRef, Negate, Binary> node;
};

MutateExprPtr make_number(double value);
MutateExprPtr make_column_ref(std::string name);
MutateExprPtr make_negate(MutateExprPtr operand);
MutateExprPtr make_binary(char op, MutateExprPtr lhs, MutateExprPtr rhs);

bool equal(const MutateExpr& a, const MutateExpr& b);
MutateExprPtr parse_mutate(std::string_view text);
std::string print_mutate(const MutateExpr& e);
std::vector<std::string> referenced_columns(const MutateExpr& e);

// ---------------------------------------------------------------------------
// Aggregates:  name '=' func '(' ident? ')'
// ---------------------------------------------------------------------------

enum class AggFunc { Mean, Sum, Count, Min, Max };

std::string_view to_string(AggFunc f);

struct AggSpec {
  std::string new_name;
  AggFunc func;
  std::optional<std::string> target;  // absent exactly for count

  bool operator==(const AggSpec&) const = default;
};

AggSpec parse_agg(std::string_view text);
std::string print_agg(const AggSpec& spec);

/// Identifier in canonical form: bare when possible, otherwise backticked.
std::string quote_identifier(std::string_view name);

}  // namespace wrangle
