#include "wrangle/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>

#include "wrangle/error.hpp"

namespace wrangle {

namespace {

// ---------------------------------------------------------------- lexer ----

enum class Tok { Word, QuotedIdent, Number, String, Hash, Symbol, End };

struct Token {
  Tok type;
  std::string text;
  std::size_t pos;
  bool is_real = false;
};

bool is_word_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

constexpr std::array<std::string_view, 5> kKeywords = {"and", "or", "not", "in", "between"};

bool is_keyword(std::string_view w) {
  for (auto k : kKeywords) {
    if (k == w) return true;
  }
  return false;
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto error = [&](std::size_t pos, std::string detail) -> void {
    throw ParseError(std::string(text), pos, {}, std::move(detail));
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (is_word_start(c)) {
      while (i < text.size() && is_word_char(text[i])) ++i;
      out.push_back({Tok::Word, std::string(text.substr(start, i - start)), start});
    } else if (c == '`') {
      std::string name;
      ++i;
      while (true) {
        if (i >= text.size()) error(start, "unterminated backtick identifier");
        if (text[i] == '`') {
          if (i + 1 < text.size() && text[i + 1] == '`') {
            name.push_back('`');
            i += 2;
            continue;
          }
          ++i;
          break;
        }
        name.push_back(text[i++]);
      }
      if (name.empty()) error(start, "empty identifier");
      out.push_back({Tok::QuotedIdent, std::move(name), start});
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      bool real = false;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (i < text.size() && text[i] == '.') {
        real = true;
        ++i;
        std::size_t frac = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == frac) error(i, "digits required after decimal point");
      }
      if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        std::size_t save = i++;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
        std::size_t exp = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == exp) {
          i = save;
        } else {
          real = true;
        }
      }
      if (i < text.size() && is_word_char(text[i])) error(i, "malformed number");
      Token t{Tok::Number, std::string(text.substr(start, i - start)), start};
      t.is_real = real;
      out.push_back(std::move(t));
    } else if (c == '\'') {
      std::string value;
      ++i;
      while (true) {
        if (i >= text.size()) error(start, "unterminated string literal");
        if (text[i] == '\'') {
          if (i + 1 < text.size() && text[i + 1] == '\'') {
            value.push_back('\'');
            i += 2;
            continue;
          }
          ++i;
          break;
        }
        value.push_back(text[i++]);
      }
      out.push_back({Tok::String, std::move(value), start});
    } else if (c == '#') {
      std::size_t close = text.find('#', i + 1);
      if (close == std::string_view::npos) error(start, "unterminated #...# literal");
      out.push_back({Tok::Hash, std::string(text.substr(i + 1, close - i - 1)), start});
      i = close + 1;
    } else {
      static constexpr std::array<std::string_view, 14> kSymbols = {
          "==", "!=", "<=", ">=", "<", ">", "(", ")", ",", "+", "-", "*", "/", "="};
      bool matched = false;
      for (auto sym : kSymbols) {
        if (text.substr(i, sym.size()) == sym) {
          out.push_back({Tok::Symbol, std::string(sym), start});
          i += sym.size();
          matched = true;
          break;
        }
      }
      if (!matched) error(start, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::End, "", text.size()});
  return out;
}

// --------------------------------------------------------- parser base ----

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text), tokens_(tokenize(text)) {}

 protected:
  const Token& peek() const { return tokens_[index_]; }
  const Token& advance() { return tokens_[index_++]; }

  bool at_symbol(std::string_view s) const {
    return peek().type == Tok::Symbol && peek().text == s;
  }
  bool at_keyword(std::string_view k) const {
    return peek().type == Tok::Word && peek().text == k;
  }
  bool at_identifier() const {
    return peek().type == Tok::QuotedIdent || (peek().type == Tok::Word && !is_keyword(peek().text));
  }

  [[noreturn]] void unexpected(std::vector<std::string> expected) const {
    const Token& t = peek();
    std::string found = t.type == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(std::string(text_), t.pos, std::move(expected), "unexpected " + found);
  }

  void expect_symbol(std::string_view s) {
    if (!at_symbol(s)) unexpected({"'" + std::string(s) + "'"});
    advance();
  }
  void expect_keyword(std::string_view k) {
    if (!at_keyword(k)) unexpected({"'" + std::string(k) + "'"});
    advance();
  }
  void expect_end() {
    if (peek().type != Tok::End) unexpected({"end of input"});
  }

  std::string identifier(std::vector<std::string> expected = {"identifier"}) {
    if (!at_identifier()) unexpected(std::move(expected));
    return advance().text;
  }

  Cell literal() {
    const Token& t = peek();
    if (t.type == Tok::String) {
      advance();
      return Cell{t.text};
    }
    if (t.type == Tok::Hash) {
      advance();
      if (auto d = Date::parse(t.text)) return Cell{*d};
      std::string time = t.text.size() == 5 ? t.text + ":00" : t.text;
      if (time.size() == 8) {
        if (auto tod = TimeOfDay::parse(time)) return Cell{*tod};
      }
      throw ParseError(std::string(text_), t.pos, {"#HH:MM[:SS]#", "#YYYY-MM-DD#"},
                       "invalid time or date literal '#" + t.text + "#'");
    }
    bool negative = false;
    if (at_symbol("-")) {
      advance();
      negative = true;
    }
    if (peek().type == Tok::Number) {
      return number_cell(advance(), negative);
    }
    if (negative) unexpected({"number"});
    unexpected({"number", "string", "#time#", "#date#"});
  }

  Cell number_cell(const Token& t, bool negative) const {
    if (!t.is_real) {
      std::int64_t v = 0;
      auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
      if (ec == std::errc() && ptr == t.text.data() + t.text.size()) {
        return Cell{negative ? -v : v};
      }
    }
    double d = 0;
    std::from_chars(t.text.data(), t.text.data() + t.text.size(), d);
    return Cell{negative ? -d : d};
  }

  std::string_view text_;
  std::vector<Token> tokens_;
  std::size_t index_ = 0;
};

// --------------------------------------------------------- predicates ----

class PredicateParser : Parser {
 public:
  using Parser::Parser;

  PredicatePtr parse() {
    auto e = or_expr();
    if (peek().type != Tok::End) unexpected({"'and'", "'or'", "end of input"});
    return e;
  }

 private:
  PredicatePtr or_expr() {
    auto lhs = and_expr();
    while (at_keyword("or")) {
      advance();
      lhs = make_or(lhs, and_expr());
    }
    return lhs;
  }

  PredicatePtr and_expr() {
    auto lhs = clause();
    while (at_keyword("and")) {
      advance();
      lhs = make_and(lhs, clause());
    }
    return lhs;
  }

  PredicatePtr clause() {
    if (at_symbol("(")) {
      advance();
      auto e = or_expr();
      if (!at_symbol(")")) unexpected({"')'", "'and'", "'or'"});
      advance();
      return e;
    }
    if (at_keyword("not")) {
      advance();
      return make_not(clause());
    }
    auto column = identifier({"'('", "'not'", "identifier"});
    if (at_keyword("in")) {
      advance();
      expect_symbol("(");
      std::vector<Cell> items{literal()};
      while (at_symbol(",")) {
        advance();
        items.push_back(literal());
      }
      if (!at_symbol(")")) unexpected({"','", "')'"});
      advance();
      return make_in(std::move(column), std::move(items));
    }
    if (at_keyword("between")) {
      advance();
      Cell lo = literal();
      expect_keyword("and");
      Cell hi = literal();
      return make_between(std::move(column), std::move(lo), std::move(hi));
    }
    static constexpr std::array<std::pair<std::string_view, CompareOp>, 6> kOps = {{
        {"==", CompareOp::Eq},
        {"!=", CompareOp::Ne},
        {"<", CompareOp::Lt},
        {"<=", CompareOp::Le},
        {">", CompareOp::Gt},
        {">=", CompareOp::Ge},
    }};
    for (auto [sym, op] : kOps) {
      if (at_symbol(sym)) {
        advance();
        return make_compare(std::move(column), op, literal());
      }
    }
    unexpected({"'=='", "'!='", "'<'", "'<='", "'>'", "'>='", "'in'", "'between'"});
  }
};

std::string print_literal(const Cell& cell) {
  if (auto* s = std::get_if<std::string>(&cell)) {
    std::string out = "'";
    for (char c : *s) {
      if (c == '\'') out.push_back('\'');
      out.push_back(c);
    }
    return out + "'";
  }
  if (auto* t = std::get_if<TimeOfDay>(&cell)) {
    std::string text = t->to_string();
    if (t->seconds() == 0 && t->centis % 100 == 0) text = text.substr(0, 5);
    return "#" + text + "#";
  }
  if (auto* d = std::get_if<Date>(&cell)) return "#" + d->to_string() + "#";
  return format_cell(cell);
}

enum class BinKind { None, And, Or };

BinKind bin_kind(const Predicate& p) {
  if (std::holds_alternative<Predicate::And>(p.node)) return BinKind::And;
  if (std::holds_alternative<Predicate::Or>(p.node)) return BinKind::Or;
  return BinKind::None;
}

void print_predicate_into(std::string& out, const Predicate& p);

void print_child(std::string& out, const Predicate& child, BinKind parent, bool left) {
  BinKind ck = bin_kind(child);
  bool parens = false;
  if (ck != BinKind::None) {
    if (parent == BinKind::None) {
      parens = true;
    } else if (ck == parent) {
      parens = !left;
    } else {
      // 'and' under 'or' needs none; 'or' under 'and' always does
      parens = ck == BinKind::Or;
    }
  }
  if (parens) out.push_back('(');
  print_predicate_into(out, child);
  if (parens) out.push_back(')');
}

void print_predicate_into(std::string& out, const Predicate& p) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Predicate::Compare>) {
          out += quote_identifier(n.column) + " " + std::string(to_string(n.op)) + " " +
                 print_literal(n.literal);
        } else if constexpr (std::is_same_v<T, Predicate::In>) {
          out += quote_identifier(n.column) + " in (";
          for (std::size_t i = 0; i < n.literals.size(); ++i) {
            if (i) out += ", ";
            out += print_literal(n.literals[i]);
          }
          out += ")";
        } else if constexpr (std::is_same_v<T, Predicate::Between>) {
          out += quote_identifier(n.column) + " between " + print_literal(n.lo) + " and " +
                 print_literal(n.hi);
        } else if constexpr (std::is_same_v<T, Predicate::And>) {
          print_child(out, *n.lhs, BinKind::And, true);
          out += " and ";
          print_child(out, *n.rhs, BinKind::And, false);
        } else if constexpr (std::is_same_v<T, Predicate::Or>) {
          print_child(out, *n.lhs, BinKind::Or, true);
          out += " or ";
          print_child(out, *n.rhs, BinKind::Or, false);
        } else {
          out += "not ";
          print_child(out, *n.operand, BinKind::None, true);
        }
      },
      p.node);
}

// NaN-free structural equality for literals; Real and Int are distinct.
bool same_literal(const Cell& a, const Cell& b) { return a == b; }

bool literal_compatible(CellKind column, CellKind literal) {
  if (is_numeric(column) && is_numeric(literal)) return true;
  if (column != literal) return false;
  return column == CellKind::Text || column == CellKind::TimeOfDay || column == CellKind::Date;
}

// Three-way comparison of a cell against a compatible literal.
int compare_cells(const Cell& value, const Cell& literal) {
  auto sign = [](auto a, auto b) { return a < b ? -1 : (b < a ? 1 : 0); };
  if (auto* a = std::get_if<std::int64_t>(&value)) {
    if (auto* b = std::get_if<std::int64_t>(&literal)) return sign(*a, *b);
  }
  if (auto x = numeric_value(value)) return sign(*x, *numeric_value(literal));
  if (auto* s = std::get_if<std::string>(&value)) {
    int c = s->compare(std::get<std::string>(literal));
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  if (auto* t = std::get_if<TimeOfDay>(&value)) {
    return sign(t->centis, std::get<TimeOfDay>(literal).centis);
  }
  if (auto* d = std::get_if<Date>(&value)) {
    const Date& o = std::get<Date>(literal);
    return *d < o ? -1 : (o < *d ? 1 : 0);
  }
  return 0;
}

bool apply(CompareOp op, int c) {
  switch (op) {
    case CompareOp::Eq: return c == 0;
    case CompareOp::Ne: return c != 0;
    case CompareOp::Lt: return c < 0;
    case CompareOp::Le: return c <= 0;
    case CompareOp::Gt: return c > 0;
    case CompareOp::Ge: return c >= 0;
  }
  return false;
}

const Column& checked_column(const Table& table, const std::string& name,
                             std::initializer_list<const Cell*> literals) {
  const Column& col = table.column(name);
  for (const Cell* lit : literals) {
    auto lk = kind_of(*lit);
    if (!lk || !literal_compatible(col.kind, *lk)) {
      fail(ErrorKind::TypeMismatch, "cannot compare column '" + name + "' of kind " +
                                        std::string(to_string(col.kind)) + " with literal " +
                                        print_literal(*lit));
    }
  }
  return col;
}

void collect_columns(const Predicate& p, std::vector<std::string>& out) {
  auto add = [&](const std::string& name) {
    for (const auto& n : out) {
      if (n == name) return;
    }
    out.push_back(name);
  };
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Predicate::And> || std::is_same_v<T, Predicate::Or>) {
          collect_columns(*n.lhs, out);
          collect_columns(*n.rhs, out);
        } else if constexpr (std::is_same_v<T, Predicate::Not>) {
          collect_columns(*n.operand, out);
        } else {
          add(n.column);
        }
      },
      p.node);
}

// ------------------------------------------------------------ mutate ----

class MutateParser : Parser {
 public:
  using Parser::Parser;

  MutateExprPtr parse() {
    auto e = expr();
    if (peek().type != Tok::End) unexpected({"'+'", "'-'", "'*'", "'/'", "end of input"});
    return e;
  }

 private:
  MutateExprPtr expr() {
    auto lhs = term();
    while (at_symbol("+") || at_symbol("-")) {
      char op = advance().text[0];
      lhs = make_binary(op, lhs, term());
    }
    return lhs;
  }

  MutateExprPtr term() {
    auto lhs = factor();
    while (at_symbol("*") || at_symbol("/")) {
      char op = advance().text[0];
      lhs = make_binary(op, lhs, factor());
    }
    return lhs;
  }

  MutateExprPtr factor() {
    if (at_symbol("-")) {
      advance();
      return make_negate(factor());
    }
    if (at_symbol("(")) {
      advance();
      auto e = expr();
      if (!at_symbol(")")) unexpected({"')'", "'+'", "'-'", "'*'", "'/'"});
      advance();
      return e;
    }
    if (peek().type == Tok::Number) {
      Cell c = number_cell(advance(), false);
      return make_number(*numeric_value(c));
    }
    if (at_identifier()) return make_column_ref(advance().text);
    unexpected({"number", "identifier", "'('", "'-'"});
  }
};

int precedence(const MutateExpr& e) {
  if (auto* b = std::get_if<MutateExpr::Binary>(&e.node)) {
    return (b->op == '+' || b->op == '-') ? 1 : 2;
  }
  return 3;
}

void print_mutate_into(std::string& out, const MutateExpr& e) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, MutateExpr::Number>) {
          if (n.value < 0 || std::signbit(n.value)) {
            out += "(-";
            out += format_cell(Cell{-n.value});
            out += ")";
          } else if (n.value == std::floor(n.value) && n.value < 1e15) {
            out += std::to_string(static_cast<std::int64_t>(n.value));
          } else {
            out += format_cell(Cell{n.value});
          }
        } else if constexpr (std::is_same_v<T, MutateExpr::ColumnRef>) {
          out += quote_identifier(n.name);
        } else if constexpr (std::is_same_v<T, MutateExpr::Negate>) {
          out += "-";
          bool parens = precedence(*n.operand) < 3;
          if (parens) out += "(";
          print_mutate_into(out, *n.operand);
          if (parens) out += ")";
        } else {
          int prec = (n.op == '+' || n.op == '-') ? 1 : 2;
          bool lp = precedence(*n.lhs) < prec;
          bool rp = precedence(*n.rhs) <= prec;
          if (lp) out += "(";
          print_mutate_into(out, *n.lhs);
          if (lp) out += ")";
          out += " ";
          out += n.op;
          out += " ";
          if (rp) out += "(";
          print_mutate_into(out, *n.rhs);
          if (rp) out += ")";
        }
      },
      e.node);
}

void collect_columns(const MutateExpr& e, std::vector<std::string>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, MutateExpr::ColumnRef>) {
          for (const auto& existing : out) {
            if (existing == n.name) return;
          }
          out.push_back(n.name);
        } else if constexpr (std::is_same_v<T, MutateExpr::Negate>) {
          collect_columns(*n.operand, out);
        } else if constexpr (std::is_same_v<T, MutateExpr::Binary>) {
          collect_columns(*n.lhs, out);
          collect_columns(*n.rhs, out);
        }
      },
      e.node);
}

// --------------------------------------------------------- aggregates ----

class AggParser : Parser {
 public:
  using Parser::Parser;

  AggSpec parse() {
    AggSpec spec;
    spec.new_name = identifier({"output column name"});
    expect_symbol("=");
    std::size_t func_pos = peek().pos;
    if (peek().type != Tok::Word) unexpected({"mean", "sum", "count", "min", "max"});
    std::string func = advance().text;
    static constexpr std::array<std::pair<std::string_view, AggFunc>, 5> kFuncs = {{
        {"mean", AggFunc::Mean},
        {"sum", AggFunc::Sum},
        {"count", AggFunc::Count},
        {"min", AggFunc::Min},
        {"max", AggFunc::Max},
    }};
    bool known = false;
    for (auto [name, f] : kFuncs) {
      if (name == func) {
        spec.func = f;
        known = true;
      }
    }
    if (!known) {
      throw ParseError(std::string(text_), func_pos, {"mean", "sum", "count", "min", "max"},
                       "unsupported aggregate '" + func + "'");
    }
    expect_symbol("(");
    if (spec.func == AggFunc::Count) {
      if (!at_symbol(")")) unexpected({"')'"});
    } else {
      spec.target = identifier({"column name"});
    }
    expect_symbol(")");
    expect_end();
    return spec;
  }
};

}  // namespace

// ------------------------------------------------------------- public ----

std::string_view to_string(CompareOp op) {
  switch (op) {
    case CompareOp::Eq: return "==";
    case CompareOp::Ne: return "!=";
    case CompareOp::Lt: return "<";
    case CompareOp::Le: return "<=";
    case CompareOp::Gt: return ">";
    case CompareOp::Ge: return ">=";
  }
  return "?";
}

std::string_view to_string(AggFunc f) {
  switch (f) {
    case AggFunc::Mean: return "mean";
    case AggFunc::Sum: return "sum";
    case AggFunc::Count: return "count";
    case AggFunc::Min: return "min";
    case AggFunc::Max: return "max";
  }
  return "?";
}

std::string quote_identifier(std::string_view name) {
  bool bare = !name.empty() && is_word_start(name[0]) && !is_keyword(name);
  for (char c : name) bare = bare && is_word_char(c);
  if (bare) return std::string(name);
  std::string out = "`";
  for (char c : name) {
    if (c == '`') out.push_back('`');
    out.push_back(c);
  }
  return out + "`";
}

PredicatePtr make_compare(std::string column, CompareOp op, Cell literal) {
  return std::make_shared<Predicate>(
      Predicate{Predicate::Compare{std::move(column), op, std::move(literal)}});
}
PredicatePtr make_in(std::string column, std::vector<Cell> literals) {
  return std::make_shared<Predicate>(
      Predicate{Predicate::In{std::move(column), std::move(literals)}});
}
PredicatePtr make_between(std::string column, Cell lo, Cell hi) {
  return std::make_shared<Predicate>(
      Predicate{Predicate::Between{std::move(column), std::move(lo), std::move(hi)}});
}
PredicatePtr make_and(PredicatePtr lhs, PredicatePtr rhs) {
  return std::make_shared<Predicate>(Predicate{Predicate::And{std::move(lhs), std::move(rhs)}});
}
PredicatePtr make_or(PredicatePtr lhs, PredicatePtr rhs) {
  return std::make_shared<Predicate>(Predicate{Predicate::Or{std::move(lhs), std::move(rhs)}});
}
PredicatePtr make_not(PredicatePtr operand) {
  return std::make_shared<Predicate>(Predicate{Predicate::Not{std::move(operand)}});
}

bool equal(const Predicate& a, const Predicate& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, Predicate::Compare>) {
          return x.column == y.column && x.op == y.op && same_literal(x.literal, y.literal);
        } else if constexpr (std::is_same_v<T, Predicate::In>) {
          if (x.column != y.column || x.literals.size() != y.literals.size()) return false;
          for (std::size_t i = 0; i < x.literals.size(); ++i) {
            if (!same_literal(x.literals[i], y.literals[i])) return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T, Predicate::Between>) {
          return x.column == y.column && same_literal(x.lo, y.lo) && same_literal(x.hi, y.hi);
        } else if constexpr (std::is_same_v<T, Predicate::Not>) {
          return equal(*x.operand, *y.operand);
        } else {
          return equal(*x.lhs, *y.lhs) && equal(*x.rhs, *y.rhs);
        }
      },
      a.node);
}

PredicatePtr parse_predicate(std::string_view text) { return PredicateParser(text).parse(); }

std::string print_predicate(const Predicate& p) {
  std::string out;
  print_predicate_into(out, p);
  return out;
}

std::vector<std::string> referenced_columns(const Predicate& p) {
  std::vector<std::string> out;
  collect_columns(p, out);
  return out;
}

std::vector<bool> evaluate(const Predicate& p, const Table& table) {
  const std::size_t rows = table.row_count();
  return std::visit(
      [&](const auto& n) -> std::vector<bool> {
        using T = std::decay_t<decltype(n)>;
        std::vector<bool> mask(rows, false);
        if constexpr (std::is_same_v<T, Predicate::Compare>) {
          const Column& col = checked_column(table, n.column, {&n.literal});
          for (std::size_t r = 0; r < rows; ++r) {
            if (is_null(col.cells[r])) continue;
            mask[r] = apply(n.op, compare_cells(col.cells[r], n.literal));
          }
        } else if constexpr (std::is_same_v<T, Predicate::In>) {
          const Column& col = table.column(n.column);
          for (const auto& lit : n.literals) checked_column(table, n.column, {&lit});
          for (std::size_t r = 0; r < rows; ++r) {
            if (is_null(col.cells[r])) continue;
            for (const auto& lit : n.literals) {
              if (compare_cells(col.cells[r], lit) == 0) {
                mask[r] = true;
                break;
              }
            }
          }
        } else if constexpr (std::is_same_v<T, Predicate::Between>) {
          const Column& col = checked_column(table, n.column, {&n.lo, &n.hi});
          for (std::size_t r = 0; r < rows; ++r) {
            if (is_null(col.cells[r])) continue;
            mask[r] = compare_cells(col.cells[r], n.lo) >= 0 &&
                      compare_cells(col.cells[r], n.hi) <= 0;
          }
        } else if constexpr (std::is_same_v<T, Predicate::And>) {
          auto l = evaluate(*n.lhs, table);
          auto r = evaluate(*n.rhs, table);
          for (std::size_t i = 0; i < rows; ++i) mask[i] = l[i] && r[i];
        } else if constexpr (std::is_same_v<T, Predicate::Or>) {
          auto l = evaluate(*n.lhs, table);
          auto r = evaluate(*n.rhs, table);
          for (std::size_t i = 0; i < rows; ++i) mask[i] = l[i] || r[i];
        } else {
          auto inner = evaluate(*n.operand, table);
          for (std::size_t i = 0; i < rows; ++i) mask[i] = !inner[i];
        }
        return mask;
      },
      p.node);
}

MutateExprPtr make_number(double value) {
  return std::make_shared<MutateExpr>(MutateExpr{MutateExpr::Number{value}});
}
MutateExprPtr make_column_ref(std::string name) {
  return std::make_shared<MutateExpr>(MutateExpr{MutateExpr::ColumnRef{std::move(name)}});
}
MutateExprPtr make_negate(MutateExprPtr operand) {
  return std::make_shared<MutateExpr>(MutateExpr{MutateExpr::Negate{std::move(operand)}});
}
MutateExprPtr make_binary(char op, MutateExprPtr lhs, MutateExprPtr rhs) {
  return std::make_shared<MutateExpr>(
      MutateExpr{MutateExpr::Binary{op, std::move(lhs), std::move(rhs)}});
}

bool equal(const MutateExpr& a, const MutateExpr& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, MutateExpr::Number>) {
          return x.value == y.value;
        } else if constexpr (std::is_same_v<T, MutateExpr::ColumnRef>) {
          return x.name == y.name;
        } else if constexpr (std::is_same_v<T, MutateExpr::Negate>) {
          return equal(*x.operand, *y.operand);
        } else {
          return x.op == y.op && equal(*x.lhs, *y.lhs) && equal(*x.rhs, *y.rhs);
        }
      },
      a.node);
}

MutateExprPtr parse_mutate(std::string_view text) { return MutateParser(text).parse(); }

std::string print_mutate(const MutateExpr& e) {
  std::string out;
  print_mutate_into(out, e);
  return out;
}

std::vector<std::string> referenced_columns(const MutateExpr& e) {
  std::vector<std::string> out;
  collect_columns(e, out);
  return out;
}

AggSpec parse_agg(std::string_view text) { return AggParser(text).parse(); }

std::string print_agg(const AggSpec& spec) {
  return quote_identifier(spec.new_name) + " = " + std::string(to_string(spec.func)) + "(" +
         (spec.target ? quote_identifier(*spec.target) : std::string()) + ")";
}

}  // namespace wrangle
