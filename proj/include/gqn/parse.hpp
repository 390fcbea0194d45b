#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "gqn/query.hpp"

namespace gqn {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, int line, int col)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + message),
        line_(line),
        col_(col) {}

  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_;
  int col_;
};

/// Triple text: one item per statement, `s p o .` for a triple and
/// `node n .` for an isolated node; `#` starts a comment.
Graph parse_graph(std::string_view text);

Pattern parse_pattern(std::string_view text);
Expr parse_expr(std::string_view text);
Query parse_query(std::string_view text);

}  // namespace gqn
