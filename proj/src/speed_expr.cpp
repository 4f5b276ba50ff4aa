#include "bowlforge/speed_expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "bowlforge/error.hpp"

namespace bowlforge {

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected,
                       const std::string& message)
    : Error(message), offset_(offset), expected_(std::move(expected)) {}

DimensionError::DimensionError(std::size_t offset, const std::string& message)
    : Error(message), offset_(offset) {}

namespace expr_detail {

enum class Kind { Number, Symmetric, Dim, Neg, Add, Sub, Mul, Div, Pow };

struct Node {
  Kind kind;
  double value = 0.0;  // Number literal, or the folded constant exponent of Pow
  int order = 0;       // k of Sk
  std::shared_ptr<const Node> lhs, rhs;
};

}  // namespace expr_detail

namespace {

using expr_detail::Kind;
using expr_detail::Node;
using NodePtr = std::shared_ptr<const Node>;

enum class Tok { Number, Atom, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok type;
  std::size_t offset;
  double number = 0.0;
  Kind atom = Kind::Number;
  int order = 0;
  std::string text;
};

const std::vector<std::string> kOperand = {"number", "atom", "'('", "'-'"};
const std::vector<std::string> kOperator = {"'+'", "'-'", "'*'", "'/'", "'^'", "')'",
                                            "end of input"};

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? ", " : "") + items[i];
  return out;
}

[[noreturn]] void parse_fail(std::size_t offset, std::vector<std::string> expected,
                             const std::string& found) {
  throw ParseError(offset, expected,
                   "parse error at offset " + std::to_string(offset) + ": expected " +
                       join(expected) + ", found " + found);
}

class Lexer {
 public:
  Lexer(const std::string& src, int dim) : src_(src), dim_(dim) {}

  std::vector<Token> run() {
    std::vector<Token> tokens;
    for (;;) {
      while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      if (pos_ >= src_.size()) {
        tokens.push_back({Tok::End, pos_, 0.0, Kind::Number, 0, "end of input"});
        return tokens;
      }
      tokens.push_back(next());
    }
  }

 private:
  Token next() {
    const std::size_t start = pos_;
    const char c = src_[pos_];
    auto single = [&](Tok t) {
      ++pos_;
      return Token{t, start, 0.0, Kind::Number, 0, std::string("'") + c + "'"};
    };
    switch (c) {
      case '+': return single(Tok::Plus);
      case '-': return single(Tok::Minus);
      case '*': return single(Tok::Star);
      case '/': return single(Tok::Slash);
      case '^': return single(Tok::Caret);
      case '(': return single(Tok::LParen);
      case ')': return single(Tok::RParen);
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number(start);
    if (c == 'S') {
      ++pos_;
      const std::size_t digits = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      if (pos_ == digits) parse_fail(pos_, {"digit"}, describe(pos_));
      const std::string text = src_.substr(start, pos_ - start);
      const int k = std::stoi(src_.substr(digits, pos_ - digits));
      if (k < 1 || k > dim_)
        throw DimensionError(start, text + " at offset " + std::to_string(start) +
                                        " is out of range for dimension " + std::to_string(dim_) +
                                        " (valid: S1..S" + std::to_string(dim_) + ")");
      return Token{Tok::Atom, start, 0.0, Kind::Symmetric, k, text};
    }
    if (c == 'H' || c == 'K' || c == 'n') {
      ++pos_;
      if (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_])))
        parse_fail(start, kOperand, identifier(start));
      if (c == 'H') return Token{Tok::Atom, start, 0.0, Kind::Div, 1, "H"};
      if (c == 'K') return Token{Tok::Atom, start, 0.0, Kind::Symmetric, dim_, "K"};
      return Token{Tok::Atom, start, 0.0, Kind::Dim, 0, "n"};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
      parse_fail(start, kOperand, identifier(start) + " (only S1..Sn, H, K and n are allowed)");
    parse_fail(start, kOperand, describe(start));
  }

  Token number(std::size_t start) {
    const char* begin = src_.c_str() + start;
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    if (end == begin) parse_fail(start, {"number"}, describe(start));
    pos_ = start + static_cast<std::size_t>(end - begin);
    return Token{Tok::Number, start, value, Kind::Number, 0, src_.substr(start, pos_ - start)};
  }

  std::string identifier(std::size_t start) const {
    std::size_t end = start;
    while (end < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_'))
      ++end;
    return "identifier '" + src_.substr(start, end - start) + "'";
  }

  std::string describe(std::size_t at) const {
    if (at >= src_.size()) return "end of input";
    return std::string("'") + src_[at] + "'";
  }

  const std::string& src_;
  int dim_;
  std::size_t pos_ = 0;
};

NodePtr make(Kind kind, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->lhs = std::move(lhs);
  node->rhs = std::move(rhs);
  return node;
}

NodePtr make_number(double v) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Number;
  node->value = v;
  return node;
}

NodePtr make_symmetric(int k) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Symmetric;
  node->order = k;
  return node;
}

bool is_constant(const Node& node) {
  switch (node.kind) {
    case Kind::Number:
    case Kind::Dim: return true;
    case Kind::Symmetric: return false;
    case Kind::Pow: return is_constant(*node.lhs);
    case Kind::Neg: return is_constant(*node.lhs);
    default: return is_constant(*node.lhs) && is_constant(*node.rhs);
  }
}

double eval_node(const Node& node, std::span<const double> sym, int dim);

class Parser {
 public:
  Parser(std::vector<Token> tokens, int dim) : toks_(std::move(tokens)), dim_(dim) {}

  NodePtr parse() {
    NodePtr root = expr();
    if (peek().type != Tok::End) parse_fail(peek().offset, kOperator, peek().text);
    return root;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& advance() { return toks_[pos_++]; }

  NodePtr expr() {
    NodePtr lhs = term();
    while (peek().type == Tok::Plus || peek().type == Tok::Minus) {
      const Kind k = advance().type == Tok::Plus ? Kind::Add : Kind::Sub;
      lhs = make(k, lhs, term());
    }
    return lhs;
  }

  NodePtr term() {
    NodePtr lhs = unary();
    while (peek().type == Tok::Star || peek().type == Tok::Slash) {
      const Kind k = advance().type == Tok::Star ? Kind::Mul : Kind::Div;
      lhs = make(k, lhs, unary());
    }
    return lhs;
  }

  NodePtr unary() {
    if (peek().type == Tok::Minus) {
      advance();
      return make(Kind::Neg, unary());
    }
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (peek().type != Tok::Caret) return base;
    advance();
    auto node = std::make_shared<Node>();
    node->kind = Kind::Pow;
    node->lhs = std::move(base);
    node->value = exponent();
    return node;
  }

  double exponent() {
    const Token& t = peek();
    if (t.type == Tok::Minus) {
      advance();
      if (peek().type != Tok::Number) parse_fail(peek().offset, {"number"}, peek().text);
      return -advance().number;
    }
    if (t.type == Tok::Number) return advance().number;
    if (t.type == Tok::LParen) {
      const std::size_t at = advance().offset;
      NodePtr inner = expr();
      expect_rparen();
      if (!is_constant(*inner))
        throw ParseError(at, {"constant exponent"},
                         "parse error at offset " + std::to_string(at) +
                             ": exponent must be a constant (literals and n only)");
      const std::vector<double> none;
      return eval_node(*inner, none, dim_);
    }
    parse_fail(t.offset, {"number", "'-'", "'('"}, t.text);
  }

  NodePtr primary() {
    const Token& t = peek();
    switch (t.type) {
      case Tok::Number: advance(); return make_number(t.number);
      case Tok::Atom: {
        advance();
        if (t.atom == Kind::Symmetric) return make_symmetric(t.order);
        if (t.atom == Kind::Dim) return make(Kind::Dim);
        // H = S1 / n
        return make(Kind::Div, make_symmetric(1), make_number(static_cast<double>(dim_)));
      }
      case Tok::LParen: {
        advance();
        NodePtr inner = expr();
        expect_rparen();
        return inner;
      }
      default: parse_fail(t.offset, kOperand, t.text);
    }
  }

  void expect_rparen() {
    if (peek().type != Tok::RParen)
      parse_fail(peek().offset, {"')'", "'+'", "'-'", "'*'", "'/'", "'^'"}, peek().text);
    advance();
  }

  std::vector<Token> toks_;
  int dim_;
  std::size_t pos_ = 0;
};

double checked(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string("non-finite result in ") + what);
  return v;
}

double eval_node(const Node& node, std::span<const double> sym, int dim) {
  switch (node.kind) {
    case Kind::Number: return node.value;
    case Kind::Dim: return static_cast<double>(dim);
    case Kind::Symmetric: return sym[static_cast<std::size_t>(node.order)];
    case Kind::Neg: return -eval_node(*node.lhs, sym, dim);
    case Kind::Add: return checked(eval_node(*node.lhs, sym, dim) + eval_node(*node.rhs, sym, dim), "'+'");
    case Kind::Sub: return checked(eval_node(*node.lhs, sym, dim) - eval_node(*node.rhs, sym, dim), "'-'");
    case Kind::Mul: return checked(eval_node(*node.lhs, sym, dim) * eval_node(*node.rhs, sym, dim), "'*'");
    case Kind::Div: {
      const double den = eval_node(*node.rhs, sym, dim);
      if (den == 0.0) throw DomainError("division by zero");
      return checked(eval_node(*node.lhs, sym, dim) / den, "'/'");
    }
    case Kind::Pow: {
      const double base = eval_node(*node.lhs, sym, dim);
      const double e = node.value;
      if (base < 0.0 && e != std::floor(e))
        throw DomainError("fractional power of a negative value");
      if (base == 0.0 && e < 0.0) throw DomainError("negative power of zero");
      return checked(std::pow(base, e), "'^'");
    }
  }
  return 0.0;
}

int max_order(const Node& node) {
  int k = node.kind == Kind::Symmetric ? node.order : 0;
  if (node.lhs) k = std::max(k, max_order(*node.lhs));
  if (node.rhs) k = std::max(k, max_order(*node.rhs));
  return k;
}

void render(const Node& node, std::ostringstream& os) {
  switch (node.kind) {
    case Kind::Number: os << node.value; return;
    case Kind::Dim: os << 'n'; return;
    case Kind::Symmetric: os << 'S' << node.order; return;
    case Kind::Neg: os << "(-"; render(*node.lhs, os); os << ')'; return;
    case Kind::Pow: os << '('; render(*node.lhs, os); os << '^' << node.value << ')'; return;
    default: break;
  }
  const char op = node.kind == Kind::Add ? '+' : node.kind == Kind::Sub ? '-' : node.kind == Kind::Mul ? '*' : '/';
  os << '(';
  render(*node.lhs, os);
  os << ' ' << op << ' ';
  render(*node.rhs, os);
  os << ')';
}

}  // namespace

SpeedExpr::SpeedExpr(std::shared_ptr<const expr_detail::Node> root, int dim, std::string source)
    : root_(std::move(root)), dim_(dim), max_order_(max_order(*root_)), source_(std::move(source)) {}

double SpeedExpr::evaluate(std::span<const double> z) const {
  if (static_cast<int>(z.size()) != dim_)
    throw DomainError("expression expects " + std::to_string(dim_) + " curvatures");
  for (double zi : z)
    if (!(zi > 0.0) || !std::isfinite(zi)) throw DomainError("curvatures must be positive");

  // Elementary symmetric polynomials by the usual one-pass recurrence; all
  // terms are positive on the positive cone, so there is no cancellation.
  std::vector<double> sym(static_cast<std::size_t>(max_order_) + 1, 0.0);
  sym[0] = 1.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const std::size_t top = std::min<std::size_t>(i + 1, static_cast<std::size_t>(max_order_));
    for (std::size_t k = top; k >= 1; --k) sym[k] += z[i] * sym[k - 1];
  }
  const double value = eval_node(*root_, sym, dim_);
  if (!(value > 0.0)) throw DomainError("speed expression is not positive at this point");
  return value;
}

std::string SpeedExpr::to_string() const {
  std::ostringstream os;
  os.precision(17);
  render(*root_, os);
  return os.str();
}

SpeedExpr parse_speed(const std::string& source, int dim) {
  if (dim < 2) throw SpecError("dimension must be at least 2");
  Lexer lexer(source, dim);
  auto tokens = lexer.run();
  if (tokens.size() == 1) parse_fail(0, kOperand, "end of input");
  Parser parser(std::move(tokens), dim);
  return SpeedExpr(parser.parse(), dim, source);
}

double measure_homogeneity(const SpeedExpr& expr, double lambda) {
  std::mt19937_64 rng(0x5eedULL);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> z(static_cast<std::size_t>(expr.dim())), scaled(z.size());
  double lo = std::numeric_limits<double>::infinity(), hi = -lo, sum = 0.0;
  constexpr int kProbes = 20;
  for (int p = 0; p < kProbes; ++p) {
    for (auto& zi : z) zi = 0.1 * std::pow(100.0, unit(rng));
    for (std::size_t i = 0; i < z.size(); ++i) scaled[i] = lambda * z[i];
    double est;
    try {
      est = std::log(expr.evaluate(scaled) / expr.evaluate(z)) / std::log(lambda);
    } catch (const DomainError& e) {
      throw AdmissibilityError("expression '" + expr.source() + "' is not a speed on the positive cone: " +
                               e.what());
    }
    lo = std::min(lo, est);
    hi = std::max(hi, est);
    sum += est;
  }
  if (!(hi - lo <= 1e-8)) {
    std::ostringstream os;
    os << "expression '" << expr.source() << "' is not homogeneous: degree estimates range over ["
       << lo << ", " << hi << "]";
    throw NotHomogeneous(os.str());
  }
  return sum / kProbes;
}

SpeedFunction to_speed_function(const SpeedExpr& expr) {
  const double alpha = measure_homogeneity(expr);
  if (!(alpha > 0.0))
    throw AdmissibilityError("expression '" + expr.source() + "' has homogeneity degree " +
                             std::to_string(alpha) + "; admissible speeds need a positive degree");
  return SpeedFunction(
      "expr:" + expr.source(), expr.dim(), alpha,
      [expr](std::span<const double> z) { return expr.evaluate(z); }, SpeedFamily::Expression);
}

}  // namespace bowlforge
