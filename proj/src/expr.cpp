#include "liftlab/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>
#include <string>
#include <system_error>

#include "liftlab/error.hpp"

namespace liftlab {

struct Expr::Node {
  enum class Kind { Number, Variable, Neg, Add, Sub, Mul, Div, Pow, Call };

  Kind kind = Kind::Number;
  double number = 0.0;
  std::size_t variable = 0;
  Func func = Func::Sin;
  double delta = 0.0;
  // Constant exponent of a Pow node, when the exponent has no variables.
  std::optional<double> const_exponent;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

namespace {

using Node = Expr::Node;
using NodePtr = std::shared_ptr<const Node>;

constexpr std::pair<std::string_view, Func> kFunctions[] = {
    {"sin", Func::Sin},   {"cos", Func::Cos},   {"exp", Func::Exp},
    {"log", Func::Log},   {"sqrt", Func::Sqrt}, {"abs_smooth", Func::AbsSmooth},
};

std::string_view func_name(Func f) {
  for (const auto& [name, fn] : kFunctions) {
    if (fn == f) return name;
  }
  return "?";
}

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::size_t offset;
  std::string_view text;
  double number = 0.0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    const std::size_t start = pos_;
    if (pos_ >= src_.size()) {
      tok_ = {Tok::End, start, {}};
      return;
    }
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      lex_number(start);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        ++pos_;
      }
      tok_ = {Tok::Ident, start, src_.substr(start, pos_ - start)};
      return;
    }
    Tok k;
    switch (c) {
      case '+': k = Tok::Plus; break;
      case '-': k = Tok::Minus; break;
      case '*': k = Tok::Star; break;
      case '/': k = Tok::Slash; break;
      case '^': k = Tok::Caret; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      default:
        throw ParseError(start, {"number", "identifier", "operator", "("},
                         std::string(1, c));
    }
    ++pos_;
    tok_ = {k, start, src_.substr(start, 1)};
  }

  void lex_number(std::size_t start) {
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t mantissa = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) throw ParseError(start, {"digit"}, ".");
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      const std::size_t save = pos_;
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (digits() == 0) {
        throw ParseError(pos_, {"exponent digits"},
                         pos_ < src_.size() ? std::string(1, src_[pos_]) : "end of input");
      }
      (void)save;
    }
    const std::string_view text = src_.substr(start, pos_ - start);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw ParseError(start, {"number"}, std::string(text));
    }
    tok_ = {Tok::Number, start, text, v};
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  Token tok_{Tok::End, 0, {}};
};

std::string describe(const Token& t) {
  return t.kind == Tok::End ? std::string("end of input") : std::string(t.text);
}

bool has_variables(const Node& n) {
  switch (n.kind) {
    case Node::Kind::Number: return false;
    case Node::Kind::Variable: return true;
    default:
      return (n.lhs && has_variables(*n.lhs)) || (n.rhs && has_variables(*n.rhs));
  }
}

// ---- evaluation -------------------------------------------------------------

double apply(Func f, double x, double delta) {
  switch (f) {
    case Func::Sin: return std::sin(x);
    case Func::Cos: return std::cos(x);
    case Func::Exp: return std::exp(x);
    case Func::Log:
      if (!(x > 0.0)) throw DomainError("log of non-positive value " + std::to_string(x));
      return std::log(x);
    case Func::Sqrt:
      if (x < 0.0) throw DomainError("sqrt of non-positive value " + std::to_string(x));
      return std::sqrt(x);
    case Func::AbsSmooth: return delta > 0.0 ? std::sqrt(x * x + delta * delta) : std::abs(x);
  }
  return 0.0;
}

template <class T>
T apply(Func f, const T& x, double delta) {
  switch (f) {
    case Func::Sin: return sin(x);
    case Func::Cos: return cos(x);
    case Func::Exp: return exp(x);
    case Func::Log: return log(x);
    case Func::Sqrt: return sqrt(x);
    case Func::AbsSmooth: return abs_smooth(x, delta);
  }
  return T(0.0);
}

double power(double a, double p) {
  if (p == std::nearbyint(p) && std::abs(p) < 1 << 30) {
    const int e = static_cast<int>(p);
    double r = 1.0, b = a;
    int m = e < 0 ? -e : e;
    while (m > 0) {
      if (m & 1) r *= b;
      m >>= 1;
      if (m > 0) b *= b;
    }
    return e < 0 ? 1.0 / r : r;
  }
  if (!(a > 0.0)) throw DomainError("non-integer power of non-positive value " + std::to_string(a));
  return std::pow(a, p);
}

template <class T>
T power(const T& a, const T& p) {
  return pow(a, p);
}

template <class T, class Leaf>
T eval_node(const Node& n, const Leaf& leaf) {
  switch (n.kind) {
    case Node::Kind::Number: return T(n.number);
    case Node::Kind::Variable: return leaf(n.variable);
    case Node::Kind::Neg: return -eval_node<T>(*n.lhs, leaf);
    case Node::Kind::Add: return eval_node<T>(*n.lhs, leaf) + eval_node<T>(*n.rhs, leaf);
    case Node::Kind::Sub: return eval_node<T>(*n.lhs, leaf) - eval_node<T>(*n.rhs, leaf);
    case Node::Kind::Mul: return eval_node<T>(*n.lhs, leaf) * eval_node<T>(*n.rhs, leaf);
    case Node::Kind::Div: return eval_node<T>(*n.lhs, leaf) / eval_node<T>(*n.rhs, leaf);
    case Node::Kind::Pow: {
      const T base = eval_node<T>(*n.lhs, leaf);
      if (n.const_exponent) return power(base, T(*n.const_exponent));
      return power(base, eval_node<T>(*n.rhs, leaf));
    }
    case Node::Kind::Call: return apply(n.func, eval_node<T>(*n.lhs, leaf), n.delta);
  }
  return T(0.0);
}

class Parser {
 public:
  Parser(std::string_view src, const std::vector<std::string>& vars, ParseOptions opts)
      : lex_(src), vars_(vars), opts_(opts) {}

  NodePtr parse_all() {
    NodePtr e = parse_expr();
    if (lex_.peek().kind != Tok::End) {
      std::vector<std::string> expected = {"+", "-", "*", "/", "^"};
      if (depth_ > 0) expected.push_back(")");
      expected.push_back("end of input");
      throw ParseError(lex_.peek().offset, expected, describe(lex_.peek()));
    }
    return e;
  }

 private:
  static NodePtr binary(Node::Kind k, NodePtr a, NodePtr b) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    for (;;) {
      const Tok k = lex_.peek().kind;
      if (k != Tok::Plus && k != Tok::Minus) return lhs;
      lex_.take();
      NodePtr rhs = parse_term();
      lhs = binary(k == Tok::Plus ? Node::Kind::Add : Node::Kind::Sub, lhs, rhs);
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_unary();
    for (;;) {
      const Tok k = lex_.peek().kind;
      if (k != Tok::Star && k != Tok::Slash) return lhs;
      lex_.take();
      NodePtr rhs = parse_unary();
      lhs = binary(k == Tok::Star ? Node::Kind::Mul : Node::Kind::Div, lhs, rhs);
    }
  }

  NodePtr parse_unary() {
    const Tok k = lex_.peek().kind;
    if (k == Tok::Minus) {
      lex_.take();
      auto n = std::make_shared<Node>();
      n->kind = Node::Kind::Neg;
      n->lhs = parse_unary();
      return n;
    }
    if (k == Tok::Plus) {
      lex_.take();
      return parse_unary();
    }
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    if (lex_.peek().kind != Tok::Caret) return base;
    lex_.take();
    NodePtr exponent = parse_unary();
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Pow;
    if (!has_variables(*exponent)) {
      n->const_exponent = eval_node<double>(*exponent, [](std::size_t) { return 0.0; });
    }
    n->lhs = std::move(base);
    n->rhs = std::move(exponent);
    return n;
  }

  NodePtr parse_primary() {
    const Token t = lex_.peek();
    switch (t.kind) {
      case Tok::Number: {
        lex_.take();
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::Number;
        n->number = t.number;
        return n;
      }
      case Tok::LParen: {
        lex_.take();
        ++depth_;
        NodePtr inner = parse_expr();
        expect_rparen();
        --depth_;
        return inner;
      }
      case Tok::Ident: {
        lex_.take();
        if (lex_.peek().kind == Tok::LParen) return parse_call(t);
        auto it = std::find(vars_.begin(), vars_.end(), t.text);
        if (it == vars_.end()) {
          const bool is_function = std::any_of(std::begin(kFunctions), std::end(kFunctions),
                                               [&](const auto& f) { return f.first == t.text; });
          if (is_function) throw ParseError(lex_.peek().offset, {"("}, describe(lex_.peek()));
          throw UnknownVariable(t.offset, std::string(t.text));
        }
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::Variable;
        n->variable = static_cast<std::size_t>(it - vars_.begin());
        return n;
      }
      default:
        throw ParseError(t.offset, {"number", "identifier", "(", "-", "+"}, describe(t));
    }
  }

  NodePtr parse_call(const Token& name) {
    const auto* fit = std::find_if(std::begin(kFunctions), std::end(kFunctions),
                                   [&](const auto& f) { return f.first == name.text; });
    if (fit == std::end(kFunctions)) throw UnknownFunction(name.offset, std::string(name.text));
    lex_.take();  // (
    ++depth_;
    NodePtr arg = parse_expr();
    expect_rparen();
    --depth_;
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Call;
    n->func = fit->second;
    n->delta = opts_.abs_delta;
    n->lhs = std::move(arg);
    return n;
  }

  void expect_rparen() {
    const Token t = lex_.peek();
    if (t.kind != Tok::RParen) {
      throw ParseError(t.offset, {"+", "-", "*", "/", "^", ")"}, describe(t));
    }
    lex_.take();
  }

  Lexer lex_;
  const std::vector<std::string>& vars_;
  ParseOptions opts_;
  int depth_ = 0;
};

void print(const Node& n, const std::vector<std::string>& vars, std::string& out) {
  switch (n.kind) {
    case Node::Kind::Number: {
      char buf[64];
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, n.number);
      out.append(buf, ptr);
      return;
    }
    case Node::Kind::Variable: out += vars[n.variable]; return;
    case Node::Kind::Neg:
      out += "(-";
      print(*n.lhs, vars, out);
      out += ')';
      return;
    case Node::Kind::Call:
      out += func_name(n.func);
      out += '(';
      print(*n.lhs, vars, out);
      out += ')';
      return;
    default: break;
  }
  char op = '+';
  switch (n.kind) {
    case Node::Kind::Sub: op = '-'; break;
    case Node::Kind::Mul: op = '*'; break;
    case Node::Kind::Div: op = '/'; break;
    case Node::Kind::Pow: op = '^'; break;
    default: break;
  }
  out += '(';
  print(*n.lhs, vars, out);
  out += op;
  print(*n.rhs, vars, out);
  out += ')';
}

bool equal(const Node& a, const Node& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Node::Kind::Number: return a.number == b.number;
    case Node::Kind::Variable: return a.variable == b.variable;
    case Node::Kind::Call:
      return a.func == b.func && a.delta == b.delta && equal(*a.lhs, *b.lhs);
    case Node::Kind::Neg: return equal(*a.lhs, *b.lhs);
    default: return equal(*a.lhs, *b.lhs) && equal(*a.rhs, *b.rhs);
  }
}

bool depends(const Node& n, std::size_t v) {
  if (n.kind == Node::Kind::Variable) return n.variable == v;
  return (n.lhs && depends(*n.lhs, v)) || (n.rhs && depends(*n.rhs, v));
}

}  // namespace

Expr parse(std::string_view source, std::vector<std::string> variables, ParseOptions options) {
  if (source.find_first_not_of(" \t\r\n") == std::string_view::npos) {
    throw ParseError(source.size(), {"number", "identifier", "(", "-", "+"}, "end of input");
  }
  auto vars = std::make_shared<const std::vector<std::string>>(std::move(variables));
  Parser p(source, *vars, options);
  NodePtr root = p.parse_all();
  return Expr(std::move(root), std::move(vars));
}

double Expr::eval(std::span<const double> point) const {
  return eval_node<double>(*root_, [&](std::size_t i) { return point[i]; });
}

Hyper Expr::eval(std::span<const Hyper> point) const {
  return eval_node<Hyper>(*root_, [&](std::size_t i) { return point[i]; });
}

Jet2 Expr::eval_jet(std::span<const double> point, std::span<const std::size_t> active) const {
  if (point.size() != vars_->size()) {
    throw InputError("eval_jet: point has " + std::to_string(point.size()) +
                     " entries, expression declares " + std::to_string(vars_->size()) +
                     " variables");
  }
  std::vector<int> slot(point.size(), -1);
  for (std::size_t a = 0; a < active.size(); ++a) {
    if (active[a] >= point.size()) throw InputError("eval_jet: active index out of range");
    slot[active[a]] = static_cast<int>(a);
  }
  return eval_node<Jet2>(*root_, [&](std::size_t i) {
    if (slot[i] < 0) return Jet2(point[i]);
    return Jet2::variable(point[i], static_cast<std::size_t>(slot[i]), active.size());
  });
}

std::string Expr::to_string() const {
  std::string out;
  print(*root_, *vars_, out);
  return out;
}

bool Expr::structurally_equal(const Expr& other) const {
  return *vars_ == *other.vars_ && equal(*root_, *other.root_);
}

bool Expr::depends_on(std::size_t variable) const { return depends(*root_, variable); }

std::vector<std::string> coordinate_names(int level, int n) {
  static constexpr const char* kBlocks[] = {"x", "y", "X", "Y", "u", "v", "U", "V"};
  std::vector<std::string> names;
  const int blocks = 1 << level;
  for (int b = 0; b < blocks && b < 8; ++b) {
    for (int i = 1; i <= n; ++i) names.push_back(kBlocks[b] + std::to_string(i));
  }
  return names;
}

}  // namespace liftlab
