#include "mfrac/hurst_expr.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <numbers>

#include "mfrac/error.hpp"

namespace mfrac {

namespace expr {

bool structurally_equal(const Node& a, const Node& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case NodeKind::number:
      return a.number == b.number;
    case NodeKind::variable:
    case NodeKind::pi:
      return true;
    case NodeKind::binary:
      if (a.op != b.op) return false;
      break;
    case NodeKind::call:
      if (a.function != b.function) return false;
      break;
    case NodeKind::negate:
      break;
  }
  if (a.children.size() != b.children.size()) return false;
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (!structurally_equal(*a.children[i], *b.children[i])) return false;
  }
  return true;
}

}  // namespace expr

namespace {

using expr::BinaryOp;
using expr::Node;
using expr::NodeKind;
using expr::NodePtr;

enum class Tok {
  number, ident, plus, minus, star, slash, caret, lparen, rparen, comma,
  less, less_equal, greater, greater_equal, end
};

struct Token {
  Tok kind;
  std::size_t offset;
  std::string_view text;
  double number = 0.0;
};

struct FunctionInfo {
  std::string_view name;
  std::size_t arity;
};

constexpr std::array<FunctionInfo, 7> kFunctions{{
    {"sin", 1}, {"cos", 1}, {"exp", 1}, {"abs", 1}, {"min", 2}, {"max", 2}, {"ifelse", 3},
}};

const FunctionInfo* find_function(std::string_view name) {
  for (const auto& f : kFunctions) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

bool is_ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9') || c == '.'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t' ||
                                  src_[pos_] == '\n' || src_[pos_] == '\r')) {
      ++pos_;
    }
    const std::size_t start = pos_;
    if (pos_ >= src_.size()) return {Tok::end, start, {}};
    const char c = src_[pos_];

    if (is_digit(c) || (c == '.' && pos_ + 1 < src_.size() && is_digit(src_[pos_ + 1]))) {
      return lex_number(start);
    }
    if (is_ident_start(c)) {
      while (pos_ < src_.size() && is_ident_char(src_[pos_])) ++pos_;
      return {Tok::ident, start, src_.substr(start, pos_ - start)};
    }

    ++pos_;
    switch (c) {
      case '+': return {Tok::plus, start, "+"};
      case '-': return {Tok::minus, start, "-"};
      case '*': return {Tok::star, start, "*"};
      case '/': return {Tok::slash, start, "/"};
      case '^': return {Tok::caret, start, "^"};
      case '(': return {Tok::lparen, start, "("};
      case ')': return {Tok::rparen, start, ")"};
      case ',': return {Tok::comma, start, ","};
      case '<':
        if (pos_ < src_.size() && src_[pos_] == '=') {
          ++pos_;
          return {Tok::less_equal, start, "<="};
        }
        return {Tok::less, start, "<"};
      case '>':
        if (pos_ < src_.size() && src_[pos_] == '=') {
          ++pos_;
          return {Tok::greater_equal, start, ">="};
        }
        return {Tok::greater, start, ">"};
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
  }

 private:
  Token lex_number(std::size_t start) {
    while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
      if (p < src_.size() && is_digit(src_[p])) {
        while (p < src_.size() && is_digit(src_[p])) ++p;
        pos_ = p;
      }
    }
    const std::string_view text = src_.substr(start, pos_ - start);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
      throw ParseError("invalid number '" + std::string(text) + "'", start);
    }
    return {Tok::number, start, text, value};
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

NodePtr make_number(double v) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::number;
  n->number = v;
  return n;
}

NodePtr make_leaf(NodeKind kind) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  return n;
}

NodePtr make_negate(NodePtr operand) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::negate;
  n->children.push_back(std::move(operand));
  return n;
}

NodePtr make_binary(BinaryOp op, NodePtr lhs, NodePtr rhs) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::binary;
  n->op = op;
  n->children.push_back(std::move(lhs));
  n->children.push_back(std::move(rhs));
  return n;
}

struct InfixPower {
  int left;
  int right;
  BinaryOp op;
};

bool infix_power(Tok kind, InfixPower& out) {
  switch (kind) {
    case Tok::less: out = {10, 11, BinaryOp::less}; return true;
    case Tok::less_equal: out = {10, 11, BinaryOp::less_equal}; return true;
    case Tok::greater: out = {10, 11, BinaryOp::greater}; return true;
    case Tok::greater_equal: out = {10, 11, BinaryOp::greater_equal}; return true;
    case Tok::plus: out = {20, 21, BinaryOp::add}; return true;
    case Tok::minus: out = {20, 21, BinaryOp::sub}; return true;
    case Tok::star: out = {30, 31, BinaryOp::mul}; return true;
    case Tok::slash: out = {30, 31, BinaryOp::div}; return true;
    case Tok::caret: out = {50, 50, BinaryOp::pow}; return true;
    default: return false;
  }
}

constexpr int kUnaryPower = 40;
constexpr int kMaxDepth = 256;

class Parser {
 public:
  explicit Parser(std::string_view src) : lexer_(src) { advance(); }

  NodePtr parse_all() {
    NodePtr root = parse_expr(0);
    if (current_.kind != Tok::end) {
      throw ParseError("unexpected '" + std::string(current_.text) + "'", current_.offset);
    }
    return root;
  }

 private:
  void advance() { current_ = lexer_.next(); }

  void expect(Tok kind, const char* what) {
    if (current_.kind != kind) {
      const std::string found =
          current_.kind == Tok::end ? "end of input" : "'" + std::string(current_.text) + "'";
      throw ParseError(std::string("expected ") + what + ", found " + found, current_.offset);
    }
    advance();
  }

  NodePtr parse_expr(int min_power) {
    if (++depth_ > kMaxDepth) throw ParseError("expression nested too deeply", current_.offset);
    NodePtr lhs = parse_prefix();
    InfixPower power{};
    while (infix_power(current_.kind, power) && power.left >= min_power) {
      advance();
      NodePtr rhs = parse_expr(power.right);
      lhs = make_binary(power.op, std::move(lhs), std::move(rhs));
    }
    --depth_;
    return lhs;
  }

  NodePtr parse_prefix() {
    const Token tok = current_;
    switch (tok.kind) {
      case Tok::number:
        advance();
        return make_number(tok.number);
      case Tok::minus:
        advance();
        return make_negate(parse_expr(kUnaryPower));
      case Tok::lparen: {
        advance();
        NodePtr inner = parse_expr(0);
        expect(Tok::rparen, "')'");
        return inner;
      }
      case Tok::ident:
        advance();
        return parse_identifier(tok);
      case Tok::end:
        throw ParseError("unexpected end of input", tok.offset);
      default:
        throw ParseError("unexpected '" + std::string(tok.text) + "'", tok.offset);
    }
  }

  NodePtr parse_identifier(const Token& tok) {
    if (current_.kind != Tok::lparen) {
      if (tok.text == "t") return make_leaf(NodeKind::variable);
      if (tok.text == "pi") return make_leaf(NodeKind::pi);
      if (find_function(tok.text)) {
        throw ParseError("function '" + std::string(tok.text) + "' needs arguments", tok.offset);
      }
      throw ParseError("unknown identifier '" + std::string(tok.text) + "'", tok.offset);
    }
    const FunctionInfo* info = find_function(tok.text);
    if (!info) throw ParseError("unknown function '" + std::string(tok.text) + "'", tok.offset);
    advance();

    auto call = std::make_shared<Node>();
    call->kind = NodeKind::call;
    call->function = std::string(info->name);
    if (current_.kind != Tok::rparen) {
      call->children.push_back(parse_expr(0));
      while (current_.kind == Tok::comma) {
        advance();
        call->children.push_back(parse_expr(0));
      }
    }
    const std::size_t close = current_.offset;
    expect(Tok::rparen, "')'");
    if (call->children.size() != info->arity) {
      throw ParseError("function '" + call->function + "' takes " +
                           std::to_string(info->arity) + " argument(s), got " +
                           std::to_string(call->children.size()),
                       close);
    }
    return call;
  }

  Lexer lexer_;
  Token current_{Tok::end, 0, {}};
  int depth_ = 0;
};

double eval_node(const Node& n, double t) {
  switch (n.kind) {
    case NodeKind::number: return n.number;
    case NodeKind::variable: return t;
    case NodeKind::pi: return std::numbers::pi;
    case NodeKind::negate: return -eval_node(*n.children[0], t);
    case NodeKind::binary: {
      const double a = eval_node(*n.children[0], t);
      const double b = eval_node(*n.children[1], t);
      switch (n.op) {
        case BinaryOp::add: return a + b;
        case BinaryOp::sub: return a - b;
        case BinaryOp::mul: return a * b;
        case BinaryOp::div: return a / b;
        case BinaryOp::pow: return std::pow(a, b);
        case BinaryOp::less: return a < b ? 1.0 : 0.0;
        case BinaryOp::less_equal: return a <= b ? 1.0 : 0.0;
        case BinaryOp::greater: return a > b ? 1.0 : 0.0;
        case BinaryOp::greater_equal: return a >= b ? 1.0 : 0.0;
      }
      break;
    }
    case NodeKind::call: {
      const auto& c = n.children;
      const std::string& f = n.function;
      if (f == "ifelse") return eval_node(*c[0], t) != 0.0 ? eval_node(*c[1], t) : eval_node(*c[2], t);
      const double a = eval_node(*c[0], t);
      if (f == "sin") return std::sin(a);
      if (f == "cos") return std::cos(a);
      if (f == "exp") return std::exp(a);
      if (f == "abs") return std::abs(a);
      const double b = eval_node(*c[1], t);
      if (f == "min") return std::min(a, b);
      if (f == "max") return std::max(a, b);
      break;
    }
  }
  return std::nan("");
}

const char* op_text(BinaryOp op) {
  switch (op) {
    case BinaryOp::add: return " + ";
    case BinaryOp::sub: return " - ";
    case BinaryOp::mul: return " * ";
    case BinaryOp::div: return " / ";
    case BinaryOp::pow: return " ^ ";
    case BinaryOp::less: return " < ";
    case BinaryOp::less_equal: return " <= ";
    case BinaryOp::greater: return " > ";
    case BinaryOp::greater_equal: return " >= ";
  }
  return " ? ";
}

void format_node(const Node& n, std::string& out) {
  switch (n.kind) {
    case NodeKind::number: {
      std::array<char, 32> buf{};
      const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), n.number);
      out.append(buf.data(), res.ptr);
      return;
    }
    case NodeKind::variable: out += "t"; return;
    case NodeKind::pi: out += "pi"; return;
    case NodeKind::negate:
      out += "(-";
      format_node(*n.children[0], out);
      out += ")";
      return;
    case NodeKind::binary:
      out += "(";
      format_node(*n.children[0], out);
      out += op_text(n.op);
      format_node(*n.children[1], out);
      out += ")";
      return;
    case NodeKind::call:
      out += n.function;
      out += "(";
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        if (i > 0) out += ", ";
        format_node(*n.children[i], out);
      }
      out += ")";
      return;
  }
}

}  // namespace

HurstExpr::HurstExpr(std::string source, expr::NodePtr root)
    : source_(std::move(source)), root_(std::move(root)) {}

HurstExpr HurstExpr::parse(std::string_view source) {
  if (source.find_first_not_of(" \t\r\n") == std::string_view::npos) {
    throw ParseError("empty expression", 0);
  }
  Parser parser(source);
  return HurstExpr(std::string(source), parser.parse_all());
}

double HurstExpr::evaluate(double t) const { return eval_node(*root_, t); }

std::string HurstExpr::format() const {
  std::string out;
  format_node(*root_, out);
  return out;
}

HurstSpec to_hurst_spec(const HurstExpr& expr) {
  return HurstSpec::from_function([expr](double t) { return expr.evaluate(t); });
}

}  // namespace mfrac
