#include "pip/expr.hpp"

#include <charconv>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "pip/error.hpp"

namespace pip {

ExprPtr ExprNode::constant(double v) {
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::Constant;
  n->value = v;
  return n;
}

ExprPtr ExprNode::var(int index) {
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::Variable;
  n->variable = index;
  return n;
}

ExprPtr ExprNode::make_unary(UnaryOp op, ExprPtr operand) {
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::Unary;
  n->unary = op;
  n->lhs = std::move(operand);
  return n;
}

ExprPtr ExprNode::make_binary(BinaryOp op, ExprPtr l, ExprPtr r) {
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::Binary;
  n->binary = op;
  n->lhs = std::move(l);
  n->rhs = std::move(r);
  return n;
}

bool same_structure(const ExprNode& a, const ExprNode& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case ExprNode::Kind::Constant:
      return a.value == b.value;
    case ExprNode::Kind::Variable:
      return a.variable == b.variable;
    case ExprNode::Kind::Unary:
      return a.unary == b.unary && same_structure(*a.lhs, *b.lhs);
    case ExprNode::Kind::Binary:
      return a.binary == b.binary && same_structure(*a.lhs, *b.lhs) && same_structure(*a.rhs, *b.rhs);
  }
  return false;
}

namespace {

const char* unary_name(UnaryOp op) {
  switch (op) {
    case UnaryOp::Neg:
      return "-";
    case UnaryOp::Sin:
      return "sin";
    case UnaryOp::Cos:
      return "cos";
    case UnaryOp::Exp:
      return "exp";
    case UnaryOp::Sqrt:
      return "sqrt";
    case UnaryOp::Abs:
      return "abs";
  }
  return "?";
}

char binary_symbol(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add:
      return '+';
    case BinaryOp::Sub:
      return '-';
    case BinaryOp::Mul:
      return '*';
    case BinaryOp::Div:
      return '/';
    case BinaryOp::Pow:
      return '^';
  }
  return '?';
}

void print(const ExprNode& n, std::string& out) {
  switch (n.kind) {
    case ExprNode::Kind::Constant: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", n.value);
      out += buf;
      return;
    }
    case ExprNode::Kind::Variable:
      out += "x" + std::to_string(n.variable + 1);
      return;
    case ExprNode::Kind::Unary:
      if (n.unary == UnaryOp::Neg) {
        out += "-(";
      } else {
        out += unary_name(n.unary);
        out += "(";
      }
      print(*n.lhs, out);
      out += ")";
      return;
    case ExprNode::Kind::Binary:
      out += "(";
      print(*n.lhs, out);
      out += binary_symbol(n.binary);
      print(*n.rhs, out);
      out += ")";
      return;
  }
}

double checked(double v, const char* what) {
  if (!std::isfinite(v)) throw NumericalError(std::string("expression evaluation: non-finite result in ") + what);
  return v;
}

double evaluate(const ExprNode& n, std::span<const double> x) {
  switch (n.kind) {
    case ExprNode::Kind::Constant:
      return n.value;
    case ExprNode::Kind::Variable:
      return x[static_cast<std::size_t>(n.variable)];
    case ExprNode::Kind::Unary: {
      const double a = evaluate(*n.lhs, x);
      switch (n.unary) {
        case UnaryOp::Neg:
          return -a;
        case UnaryOp::Sin:
          return std::sin(a);
        case UnaryOp::Cos:
          return std::cos(a);
        case UnaryOp::Exp:
          return checked(std::exp(a), "exp");
        case UnaryOp::Sqrt:
          if (a < 0) throw NumericalError("expression evaluation: sqrt of negative number");
          return std::sqrt(a);
        case UnaryOp::Abs:
          return std::abs(a);
      }
      break;
    }
    case ExprNode::Kind::Binary: {
      const double a = evaluate(*n.lhs, x);
      const double b = evaluate(*n.rhs, x);
      switch (n.binary) {
        case BinaryOp::Add:
          return checked(a + b, "+");
        case BinaryOp::Sub:
          return checked(a - b, "-");
        case BinaryOp::Mul:
          return checked(a * b, "*");
        case BinaryOp::Div:
          if (b == 0.0) throw NumericalError("expression evaluation: division by zero");
          return checked(a / b, "/");
        case BinaryOp::Pow:
          if (b >= 0 && std::floor(b) == b) return checked(std::pow(a, b), "^");
          if (a > 0) return checked(std::pow(a, b), "^");
          throw NumericalError("expression evaluation: non-integer or negative power of a nonpositive base");
      }
      break;
    }
  }
  throw NumericalError("expression evaluation: corrupt tree");
}

class Parser {
 public:
  Parser(std::string_view text, int m) : text_(text), m_(m) {}

  ExprPtr parse() {
    skip_space();
    if (at_end()) throw ParseError(0, "empty expression");
    ExprPtr e = expr();
    skip_space();
    if (!at_end()) {
      if (peek() == ')') throw ParseError(pos_, "unbalanced parentheses: unexpected ')'");
      throw ParseError(pos_, std::string("unexpected '") + peek() + "', expected an operator");
    }
    return e;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool accept(char c) {
    skip_space();
    if (!at_end() && peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ExprPtr expr() {
    ExprPtr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = ExprNode::make_binary(BinaryOp::Add, lhs, term());
      } else if (accept('-')) {
        lhs = ExprNode::make_binary(BinaryOp::Sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr term() {
    ExprPtr lhs = factor();
    for (;;) {
      if (accept('*')) {
        lhs = ExprNode::make_binary(BinaryOp::Mul, lhs, factor());
      } else if (accept('/')) {
        lhs = ExprNode::make_binary(BinaryOp::Div, lhs, factor());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr factor() {
    ExprPtr b = base();
    if (accept('^')) return ExprNode::make_binary(BinaryOp::Pow, b, factor());
    return b;
  }

  ExprPtr base() {
    skip_space();
    if (at_end()) {
      if (depth_ > 0) throw ParseError(pos_, "unbalanced parentheses: missing ')'");
      throw ParseError(pos_, "unexpected end of input, expected a number, variable or '('");
    }
    const char c = peek();
    if (c == '-') {
      ++pos_;
      return ExprNode::make_unary(UnaryOp::Neg, base());
    }
    if (c == '(') {
      const std::size_t open = pos_++;
      ++depth_;
      ExprPtr e = expr();
      if (!accept(')')) {
        skip_space();
        if (at_end()) throw ParseError(open, "unbalanced parentheses: '(' is never closed");
        throw ParseError(pos_, std::string("unexpected '") + peek() + "', expected ')'");
      }
      --depth_;
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    if (c == ')') throw ParseError(pos_, "unbalanced parentheses: unexpected ')'");
    throw ParseError(pos_, std::string("unexpected '") + c + "', expected a number, variable or '('");
  }

  ExprPtr number() {
    const std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '.' ||
                         ((peek() == '+' || peek() == '-') && pos_ > start &&
                          (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E')))) {
      ++pos_;
    }
    const std::string_view token = text_.substr(start, pos_ - start);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      throw ParseError(start, "malformed number '" + std::string(token) + "'");
    }
    return ExprNode::constant(v);
  }

  ExprPtr identifier() {
    const std::size_t start = pos_;
    while (!at_end() && std::isalnum(static_cast<unsigned char>(peek()))) ++pos_;
    const std::string name(text_.substr(start, pos_ - start));

    if (name == "pi") return ExprNode::constant(std::numbers::pi);
    static constexpr std::pair<const char*, UnaryOp> functions[] = {
        {"sin", UnaryOp::Sin}, {"cos", UnaryOp::Cos}, {"exp", UnaryOp::Exp},
        {"sqrt", UnaryOp::Sqrt}, {"abs", UnaryOp::Abs}};
    for (const auto& [fname, op] : functions) {
      if (name == fname) {
        skip_space();
        if (at_end() || peek() != '(') throw ParseError(pos_, "expected '(' after function " + name);
        return ExprNode::make_unary(op, base());
      }
    }

    int index = -1;
    if (name.size() == 1 && (name[0] == 'x' || name[0] == 'y' || name[0] == 'z')) {
      if (m_ > 3) throw ParseError(start, "variable aliases x, y, z are only available for m <= 3; use x1..xm");
      index = name[0] - 'x';
    } else if (name.size() >= 2 && name[0] == 'x' &&
               name.find_first_not_of("0123456789", 1) == std::string::npos) {
      const int k = std::stoi(name.substr(1));
      if (k < 1) throw ParseError(start, "variable index must be at least 1");
      index = k - 1;
    } else {
      throw ParseError(start, "unknown identifier '" + name + "'");
    }
    if (index >= m_) throw ParseError(start, "variable index exceeds dimension (" + name + " with m = " +
                                                  std::to_string(m_) + ")");
    return ExprNode::var(index);
  }

  std::string_view text_;
  int m_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

}  // namespace

Expression::Expression(ExprPtr root, int dim) : root_(std::move(root)), dim_(dim) {
  if (!root_) throw InvalidArgument("Expression: empty tree");
  if (dim_ < 1) throw InvalidArgument("Expression: dimension must be at least 1");
}

double Expression::operator()(std::span<const double> x) const {
  if (x.size() != static_cast<std::size_t>(dim_)) throw InvalidArgument("expression evaluation: dimension mismatch");
  return checked(evaluate(*root_, x), "expression");
}

std::string Expression::to_string() const {
  std::string out;
  print(*root_, out);
  return out;
}

Expression parse_expression(std::string_view text, int m) {
  if (m < 1) throw InvalidArgument("parse_expression: dimension must be at least 1");
  return Expression(Parser(text, m).parse(), m);
}

double eval_expr(const Expression& e, std::span<const double> x) { return e(x); }

Expression make_function(std::string_view text, int m) {
  constexpr std::string_view prefix = "builtin:";
  if (text.substr(0, prefix.size()) != prefix) return parse_expression(text, m);
  const std::string_view name = text.substr(prefix.size());
  if (name == "runge") {
    std::string sq;
    for (int i = 1; i <= m; ++i) sq += (i > 1 ? "+x" : "x") + std::to_string(i) + "^2";
    return parse_expression("1/(1+25*(" + sq + "))", m);
  }
  if (name == "coslak") {
    std::string prod;
    for (int i = 1; i <= m; ++i) prod += (i > 1 ? "*cos(x" : "cos(x") + std::to_string(i) + ")";
    return parse_expression(prod, m);
  }
  if (name.substr(0, 6) == "const(" && name.size() > 7 && name.back() == ')') {
    const std::string_view arg = name.substr(6, name.size() - 7);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), v);
    if (ec != std::errc() || ptr != arg.data() + arg.size()) {
      throw ParseError(prefix.size() + 6, "malformed number in builtin:const(...)");
    }
    return Expression(ExprNode::constant(v), m);
  }
  throw ParseError(prefix.size(), "unknown builtin '" + std::string(name) + "' (runge, coslak, const(c))");
}

}  // namespace pip
