#include "gqn/parse.hpp"

#include <cctype>
#include <charconv>
#include <optional>
#include <vector>

namespace gqn {

namespace {

enum class Tok {
  End, Ident, Var, Int, Float, Str,
  LBrace, RBrace, LParen, RParen, Dot, Comma,
  Plus, Minus, Star, Slash, Eq, Lt, Gt,
};

struct Token {
  Tok type = Tok::End;
  std::string text;        // Ident/Var/Str payload
  std::int64_t ival = 0;
  double fval = 0;
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space_and_comments();
      Token t = next_token();
      bool end = t.type == Tok::End;
      out.push_back(std::move(t));
      if (end) return out;
    }
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, line_, col_); }

  Token next_token() {
    Token t;
    t.line = line_;
    t.col = col_;
    if (pos_ >= src_.size()) return t;

    char c = src_[pos_];
    auto single = [&](Tok type) {
      t.type = type;
      advance();
      return t;
    };
    switch (c) {
      case '{': return single(Tok::LBrace);
      case '}': return single(Tok::RBrace);
      case '(': return single(Tok::LParen);
      case ')': return single(Tok::RParen);
      case '.': return single(Tok::Dot);
      case ',': return single(Tok::Comma);
      case '+': return single(Tok::Plus);
      case '-': return single(Tok::Minus);
      case '*': return single(Tok::Star);
      case '/': return single(Tok::Slash);
      case '=': return single(Tok::Eq);
      case '<': return single(Tok::Lt);
      case '>': return single(Tok::Gt);
      case '"': return lex_string(t);
      case '?': return lex_variable(t);
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return lex_number(t);
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return lex_ident(t);
    fail(std::string("unexpected character '") + c + "'");
  }

  Token lex_string(Token t) {
    advance();  // opening quote
    std::string value;
    for (;;) {
      if (pos_ >= src_.size()) fail("unterminated string");
      char c = src_[pos_];
      if (c == '\n') fail("unterminated string");
      if (c == '"') {
        advance();
        break;
      }
      if (c == '\\') {
        advance();
        if (pos_ >= src_.size()) fail("unterminated escape");
        char e = src_[pos_];
        switch (e) {
          case '"': value += '"'; break;
          case '\\': value += '\\'; break;
          case 'n': value += '\n'; break;
          case 't': value += '\t'; break;
          case 'r': value += '\r'; break;
          default: fail(std::string("unknown escape '\\") + e + "'");
        }
        advance();
      } else {
        value += c;
        advance();
      }
    }
    t.type = Tok::Str;
    t.text = std::move(value);
    return t;
  }

  Token lex_variable(Token t) {
    advance();  // '?'
    std::string name;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
        name += c;
        advance();
      } else {
        break;
      }
    }
    if (name.empty()) fail("variable name expected after '?'");
    t.type = Tok::Var;
    t.text = std::move(name);
    return t;
  }

  Token lex_number(Token t) {
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
    bool is_float = false;
    if (pos_ + 1 < src_.size() && src_[pos_] == '.' &&
        std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
      is_float = true;
      advance();
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t mark = pos_;
      advance();
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) advance();
      if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        is_float = true;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
          advance();
      } else {
        // not an exponent after all; rewind
        while (pos_ > mark) {
          --pos_;
          --col_;
        }
      }
    }
    std::string_view text = src_.substr(start, pos_ - start);
    if (is_float) {
      t.type = Tok::Float;
      auto res = std::from_chars(text.data(), text.data() + text.size(), t.fval);
      if (res.ec != std::errc{}) fail("invalid float literal");
    } else {
      t.type = Tok::Int;
      auto res = std::from_chars(text.data(), text.data() + text.size(), t.ival);
      if (res.ec != std::errc{}) fail("integer literal out of range");
    }
    return t;
  }

  Token lex_ident(Token t) {
    std::string name;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
        name += c;
        advance();
      } else {
        break;
      }
    }
    t.type = Tok::Ident;
    t.text = std::move(name);
    return t;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : tokens_(Lexer(src).run()) {}

  Graph parse_graph_file() {
    Graph g;
    while (!at(Tok::End)) parse_item(g);
    return g;
  }

  Pattern parse_pattern_all() {
    Pattern p = parse_pattern();
    expect_end();
    return p;
  }

  Expr parse_expr_all() {
    Expr e = parse_expr();
    expect_end();
    return e;
  }

  Query parse_query_all() {
    Query q = parse_query();
    expect_end();
    return q;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = index_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }

  Token take() { return tokens_[index_ < tokens_.size() - 1 ? index_++ : index_]; }

  bool at(Tok type) const { return peek().type == type; }

  bool at_keyword(const char* kw) const {
    return peek().type == Tok::Ident && peek().text == kw;
  }

  bool take_keyword(const char* kw) {
    if (!at_keyword(kw)) return false;
    take();
    return true;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, peek().line, peek().col);
  }

  void expect(Tok type, const char* what) {
    if (!at(type)) fail(std::string("expected ") + what);
    take();
  }

  void expect_keyword(const char* kw) {
    if (!take_keyword(kw)) fail(std::string("expected ") + kw);
  }

  void expect_end() {
    if (!at(Tok::End)) fail("unexpected trailing input");
  }

  // --- labels and graph items ---

  Label parse_label() {
    const Token& t = peek();
    switch (t.type) {
      case Tok::Minus: {
        take();
        if (at(Tok::Int)) return Label(ConstValue::of_int(-take().ival));
        if (at(Tok::Float)) return Label(ConstValue::of_float(-take().fval));
        fail("number expected after '-'");
      }
      case Tok::Int: return Label(ConstValue::of_int(take().ival));
      case Tok::Float: return Label(ConstValue::of_float(take().fval));
      case Tok::Str: return Label(ConstValue::of_string(take().text));
      case Tok::Var: return Label(Variable{take().text});
      case Tok::Ident: {
        if (t.text == "true" || t.text == "false")
          return Label(ConstValue::of_bool(take().text == "true"));
        if (is_reserved_word(t.text))
          fail("reserved word '" + t.text + "' cannot be used as a label");
        return Label(ConstValue::of_string(take().text));
      }
      default: fail("label expected");
    }
  }

  void parse_item(Graph& g) {
    if (at_keyword("node")) {
      take();
      Label n = parse_label();
      expect(Tok::Dot, "'.'");
      g.add_node(n);
      return;
    }
    Label s = parse_label();
    Label p = parse_label();
    Label o = parse_label();
    expect(Tok::Dot, "'.'");
    g.add_triple(Triple{std::move(s), std::move(p), std::move(o)});
  }

  Graph parse_graph_block() {
    expect(Tok::LBrace, "'{'");
    Graph g;
    while (!at(Tok::RBrace)) {
      if (at(Tok::End)) fail("unterminated graph block");
      parse_item(g);
    }
    take();  // '}'
    return g;
  }

  // --- expressions ---

  Expr parse_expr() { return parse_or(); }

  Expr parse_or() {
    Expr e = parse_and();
    while (take_keyword("OR")) e = Expr::binary(std::move(e), BinaryOp::Or, parse_and());
    return e;
  }

  Expr parse_and() {
    Expr e = parse_cmp();
    while (take_keyword("AND")) e = Expr::binary(std::move(e), BinaryOp::And, parse_cmp());
    return e;
  }

  Expr parse_cmp() {
    Expr e = parse_add();
    for (;;) {
      if (at(Tok::Eq)) {
        take();
        e = Expr::binary(std::move(e), BinaryOp::Equal, parse_add());
      } else if (at(Tok::Lt)) {
        take();
        e = Expr::binary(std::move(e), BinaryOp::Less, parse_add());
      } else if (at(Tok::Gt)) {
        take();
        e = Expr::binary(std::move(e), BinaryOp::Greater, parse_add());
      } else {
        return e;
      }
    }
  }

  Expr parse_add() {
    Expr e = parse_mul();
    for (;;) {
      if (at(Tok::Plus)) {
        take();
        e = Expr::binary(std::move(e), BinaryOp::Add, parse_mul());
      } else if (at(Tok::Minus)) {
        take();
        e = Expr::binary(std::move(e), BinaryOp::Subtract, parse_mul());
      } else {
        return e;
      }
    }
  }

  Expr parse_mul() {
    Expr e = parse_unary();
    for (;;) {
      if (at(Tok::Star)) {
        take();
        e = Expr::binary(std::move(e), BinaryOp::Multiply, parse_unary());
      } else if (at(Tok::Slash)) {
        take();
        e = Expr::binary(std::move(e), BinaryOp::Divide, parse_unary());
      } else {
        return e;
      }
    }
  }

  Expr parse_unary() {
    if (take_keyword("NOT")) return Expr::unary(UnaryOp::Not, parse_unary());
    if (at(Tok::Minus)) {
      take();
      // Negative literals fold into constants, matching the printer.
      if (at(Tok::Int)) return Expr::constant(ConstValue::of_int(-take().ival));
      if (at(Tok::Float)) return Expr::constant(ConstValue::of_float(-take().fval));
      return Expr::unary(UnaryOp::Negate, parse_unary());
    }
    return parse_atom();
  }

  std::optional<AggOp> agg_keyword() {
    if (at_keyword("COUNT")) return AggOp::Count;
    if (at_keyword("SUM")) return AggOp::Sum;
    if (at_keyword("AVG")) return AggOp::Avg;
    if (at_keyword("MIN")) return AggOp::Min;
    if (at_keyword("MAX")) return AggOp::Max;
    return std::nullopt;
  }

  Expr parse_atom() {
    if (auto agg = agg_keyword()) {
      take();
      expect(Tok::LParen, "'('");
      bool distinct = take_keyword("DISTINCT");
      Expr operand = parse_expr();
      std::vector<Expr> group;
      if (take_keyword("BY")) {
        group.push_back(parse_expr());
        while (at(Tok::Comma)) {
          take();
          group.push_back(parse_expr());
        }
      }
      expect(Tok::RParen, "')'");
      return Expr::aggregate(*agg, distinct, std::move(operand), std::move(group));
    }
    if (at(Tok::LParen)) {
      take();
      Expr e = parse_expr();
      expect(Tok::RParen, "')'");
      return e;
    }
    if (at(Tok::Var)) return Expr::variable(Variable{take().text});
    if (at(Tok::Int)) return Expr::constant(ConstValue::of_int(take().ival));
    if (at(Tok::Float)) return Expr::constant(ConstValue::of_float(take().fval));
    if (at(Tok::Str)) return Expr::constant(ConstValue::of_string(take().text));
    if (at(Tok::Ident)) {
      const Token& t = peek();
      if (t.text == "true" || t.text == "false")
        return Expr::constant(ConstValue::of_bool(take().text == "true"));
      if (is_reserved_word(t.text))
        fail("reserved word '" + t.text + "' cannot be used in an expression");
      return Expr::constant(ConstValue::of_string(take().text));
    }
    fail("expression expected");
  }

  // --- patterns ---

  Pattern parse_pattern() {
    Pattern left = parse_postfixed();
    if (!at_keyword("JOIN") && !at_keyword("UNION")) return left;
    const bool joining = at_keyword("JOIN");
    while (at_keyword("JOIN") || at_keyword("UNION")) {
      if (at_keyword(joining ? "UNION" : "JOIN"))
        fail("parentheses required to mix JOIN and UNION");
      take();
      Pattern right = parse_postfixed();
      left = joining ? Pattern::join(std::move(left), std::move(right))
                     : Pattern::union_of(std::move(left), std::move(right));
    }
    return left;
  }

  Pattern parse_postfixed() {
    Pattern p = parse_primary();
    for (;;) {
      if (take_keyword("BIND")) {
        Expr e = parse_expr();
        expect_keyword("AS");
        if (!at(Tok::Var)) fail("variable expected after AS");
        Variable x{take().text};
        p = Pattern::bind(std::move(p), std::move(e), std::move(x));
      } else if (take_keyword("FILTER")) {
        p = Pattern::filter(std::move(p), parse_expr());
      } else if (take_keyword("BUILD")) {
        p = Pattern::build(std::move(p), parse_graph_block());
      } else {
        return p;
      }
    }
  }

  Pattern parse_primary() {
    if (take_keyword("EMPTY")) return Pattern::empty();
    if (take_keyword("BASIC")) return Pattern::basic(parse_graph_block());
    if (at(Tok::LParen)) {
      take();
      Pattern p = parse_pattern();
      expect(Tok::RParen, "')'");
      return p;
    }
    fail("pattern expected (EMPTY, BASIC { ... } or a parenthesized pattern)");
  }

  // --- queries ---

  std::vector<Variable> parse_select_vars() {
    std::vector<Variable> vars;
    if (!at(Tok::Var)) fail("select variable expected");
    vars.push_back(Variable{take().text});
    for (;;) {
      if (at(Tok::Comma)) {
        take();
        continue;
      }
      if (at(Tok::Var)) {
        vars.push_back(Variable{take().text});
        continue;
      }
      return vars;
    }
  }

  Query parse_query() {
    if (take_keyword("CONSTRUCT")) {
      Graph r = parse_graph_block();
      expect_keyword("WHERE");
      Pattern p = parse_pattern();
      return Query{Query::Kind::Construct, {}, std::move(r), std::move(p)};
    }
    if (take_keyword("SELECT")) {
      std::vector<Variable> vars = parse_select_vars();
      expect_keyword("WHERE");
      Pattern p = parse_pattern();
      return Query{Query::Kind::Select, std::move(vars), Graph{}, std::move(p)};
    }
    if (take_keyword("CONSELECT")) {
      std::vector<Variable> vars = parse_select_vars();
      Graph r = parse_graph_block();
      expect_keyword("WHERE");
      Pattern p = parse_pattern();
      return Query{Query::Kind::Conselect, std::move(vars), std::move(r), std::move(p)};
    }
    fail("query expected (CONSTRUCT, SELECT or CONSELECT)");
  }

  std::vector<Token> tokens_;
  std::size_t index_ = 0;
};

}  // namespace

Graph parse_graph(std::string_view text) { return Parser(text).parse_graph_file(); }
Pattern parse_pattern(std::string_view text) { return Parser(text).parse_pattern_all(); }
Expr parse_expr(std::string_view text) { return Parser(text).parse_expr_all(); }
Query parse_query(std::string_view text) { return Parser(text).parse_query_all(); }

}  // namespace gqn
