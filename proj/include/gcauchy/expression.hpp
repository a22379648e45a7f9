#pragma once

// Closed-form functions of one variable for the free data alpha, beta:
// reals, y or t, + - * / ^, parentheses, sin cos sinh cosh exp, and i.

#include <memory>
#include <string>
#include <string_view>

#include "gcauchy/mat2.hpp"

namespace gcauchy {

class Expression {
 public:
  struct Node;

  // throws ParseError carrying the 0-based offset of the offending token
  static Expression parse(std::string_view src);

  cplx operator()(double v) const;
  const std::string& source() const { return src_; }
  bool uses_i() const { return uses_i_; }
  bool is_constant() const { return constant_; }

 private:
  std::shared_ptr<const Node> root_;
  std::string src_;
  bool uses_i_ = false, constant_ = true;
};

}  // namespace gcauchy
