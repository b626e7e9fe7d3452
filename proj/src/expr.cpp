#include "sri/expr.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <utility>

#include "sri/errors.hpp"
#include "sri/numfmt.hpp"

namespace sri::expr {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
bool is_ident(char c) { return is_alpha(c) || is_digit(c); }

struct FunctionEntry {
  std::string_view name;
  NodeKind kind;
};

constexpr FunctionEntry kFunctions[] = {
    {"sin", NodeKind::kSin}, {"cos", NodeKind::kCos},   {"exp", NodeKind::kExp},
    {"log", NodeKind::kLog}, {"sqrt", NodeKind::kSqrt}, {"abs", NodeKind::kAbs},
};

struct Parser {
  std::string_view text;
  int n_features;
  std::size_t pos = 0;
  std::vector<Node> nodes;

  [[noreturn]] void fail(std::size_t offset, const std::string& message) {
    throw ParseError(offset, message);
  }

  void skip_ws() {
    while (pos < text.size() &&
           (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n' || text[pos] == '\r')) {
      ++pos;
    }
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  bool consume(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }

  std::int32_t push(NodeKind kind, std::int32_t lhs, std::int32_t rhs, double value,
                    std::size_t offset) {
    nodes.push_back(Node{kind, lhs, rhs, value, static_cast<std::uint32_t>(offset)});
    return static_cast<std::int32_t>(nodes.size() - 1);
  }

  std::int32_t parse_sum() {
    std::int32_t lhs = parse_product();
    for (;;) {
      const std::size_t off = (skip_ws(), pos);
      if (consume('+')) {
        const std::int32_t rhs = parse_product();
        lhs = push(NodeKind::kAdd, lhs, rhs, 0.0, off);
      } else if (consume('-')) {
        const std::int32_t rhs = parse_product();
        lhs = push(NodeKind::kSub, lhs, rhs, 0.0, off);
      } else {
        return lhs;
      }
    }
  }

  std::int32_t parse_product() {
    std::int32_t lhs = parse_unary();
    for (;;) {
      const std::size_t off = (skip_ws(), pos);
      if (consume('*')) {
        const std::int32_t rhs = parse_unary();
        lhs = push(NodeKind::kMul, lhs, rhs, 0.0, off);
      } else if (consume('/')) {
        const std::int32_t rhs = parse_unary();
        lhs = push(NodeKind::kDiv, lhs, rhs, 0.0, off);
      } else {
        return lhs;
      }
    }
  }

  std::int32_t parse_unary() {
    const std::size_t off = (skip_ws(), pos);
    if (consume('-')) {
      const std::int32_t child = parse_unary();
      return push(NodeKind::kNeg, child, -1, 0.0, off);
    }
    return parse_power();
  }

  std::int32_t parse_power() {
    std::int32_t lhs = parse_atom();
    for (;;) {
      const std::size_t off = (skip_ws(), pos);
      if (!consume('^')) return lhs;
      const std::int32_t rhs = parse_power_operand();
      lhs = push(NodeKind::kPow, lhs, rhs, 0.0, off);
    }
  }

  // The right side of ^ binds tighter than unary minus, but a leading
  // minus in the exponent is accepted: x^-2 means x^(-2).
  std::int32_t parse_power_operand() {
    const std::size_t off = (skip_ws(), pos);
    if (consume('-')) {
      const std::int32_t child = parse_power_operand();
      return push(NodeKind::kNeg, child, -1, 0.0, off);
    }
    return parse_atom();
  }

  std::int32_t parse_atom() {
    skip_ws();
    if (pos >= text.size()) fail(pos, "unexpected end of input");
    const std::size_t off = pos;
    const char c = text[pos];

    if (c == '(') {
      ++pos;
      const std::int32_t inner = parse_sum();
      if (!consume(')')) fail(pos, "expected ')'");
      return inner;
    }

    if (is_digit(c) || c == '.') {
      double value = 0.0;
      const char* begin = text.data() + pos;
      const char* end = text.data() + text.size();
      auto [ptr, ec] = std::from_chars(begin, end, value);
      if (ec != std::errc() || ptr == begin) fail(off, "invalid number");
      pos += static_cast<std::size_t>(ptr - begin);
      return push(NodeKind::kConstant, -1, -1, value, off);
    }

    if (is_alpha(c)) {
      std::size_t end = pos;
      while (end < text.size() && is_ident(text[end])) ++end;
      const std::string_view ident = text.substr(pos, end - pos);
      pos = end;

      if (ident == "pi") return push(NodeKind::kPi, -1, -1, 0.0, off);

      if (ident.size() > 1 && ident[0] == 'x') {
        bool all_digits = true;
        for (char d : ident.substr(1)) all_digits &= is_digit(d);
        if (all_digits) {
          int index = 0;
          auto [ptr, ec] = std::from_chars(ident.data() + 1, ident.data() + ident.size(), index);
          if (ec != std::errc() || ptr != ident.data() + ident.size())
            fail(off, "invalid feature index in '" + std::string(ident) + "'");
          if (index < 1 || index > n_features)
            fail(off, "feature index out of range: " + std::string(ident) + " (model has " +
                          std::to_string(n_features) + " feature" +
                          (n_features == 1 ? "" : "s") + ")");
          return push(NodeKind::kFeature, index - 1, -1, 0.0, off);
        }
      }

      for (const auto& fn : kFunctions) {
        if (ident == fn.name) {
          if (!consume('(')) fail(pos, "expected '(' after '" + std::string(ident) + "'");
          const std::int32_t arg = parse_sum();
          if (!consume(')')) fail(pos, "expected ')'");
          return push(fn.kind, arg, -1, 0.0, off);
        }
      }

      fail(off, "unknown identifier '" + std::string(ident) + "'");
    }

    fail(off, std::string("unexpected character '") + c + "'");
  }
};

bool nodes_equal(const std::vector<Node>& a, std::int32_t ia, const std::vector<Node>& b,
                 std::int32_t ib) {
  if (ia < 0 || ib < 0) return ia == ib;
  const Node& na = a[ia];
  const Node& nb = b[ib];
  if (na.kind != nb.kind) return false;
  switch (na.kind) {
    case NodeKind::kConstant:
      return na.value == nb.value;
    case NodeKind::kPi:
      return true;
    case NodeKind::kFeature:
      return na.lhs == nb.lhs;
    default:
      return nodes_equal(a, na.lhs, b, nb.lhs) && nodes_equal(a, na.rhs, b, nb.rhs);
  }
}

void render(const std::vector<Node>& nodes, std::int32_t idx, std::string& out) {
  const Node& nd = nodes[idx];
  switch (nd.kind) {
    case NodeKind::kConstant:
      out += format_double(nd.value);
      return;
    case NodeKind::kPi:
      out += "pi";
      return;
    case NodeKind::kFeature:
      out += 'x';
      out += std::to_string(nd.lhs + 1);
      return;
    case NodeKind::kNeg:
      out += "(-";
      render(nodes, nd.lhs, out);
      out += ')';
      return;
    case NodeKind::kAdd:
    case NodeKind::kSub:
    case NodeKind::kMul:
    case NodeKind::kDiv:
    case NodeKind::kPow: {
      const char* op = nd.kind == NodeKind::kAdd   ? " + "
                       : nd.kind == NodeKind::kSub ? " - "
                       : nd.kind == NodeKind::kMul ? " * "
                       : nd.kind == NodeKind::kDiv ? " / "
                                                   : "^";
      out += '(';
      render(nodes, nd.lhs, out);
      out += op;
      render(nodes, nd.rhs, out);
      out += ')';
      return;
    }
    case NodeKind::kSin:
    case NodeKind::kCos:
    case NodeKind::kExp:
    case NodeKind::kLog:
    case NodeKind::kSqrt:
    case NodeKind::kAbs: {
      const char* name = nd.kind == NodeKind::kSin   ? "sin"
                         : nd.kind == NodeKind::kCos ? "cos"
                         : nd.kind == NodeKind::kExp ? "exp"
                         : nd.kind == NodeKind::kLog ? "log"
                         : nd.kind == NodeKind::kSqrt ? "sqrt"
                                                      : "abs";
      out += name;
      out += '(';
      render(nodes, nd.lhs, out);
      out += ')';
      return;
    }
  }
}

}  // namespace

ModelExpr parse_model(std::string_view text, int n_features) {
  if (n_features < 1) throw Error("n_features must be at least 1");
  Parser parser{text, n_features};
  const std::int32_t root = parser.parse_sum();
  parser.skip_ws();
  if (parser.pos != text.size())
    parser.fail(parser.pos, "unexpected trailing input");
  (void)root;  // root is nodes.back() by construction
  return ModelExpr(std::move(parser.nodes), n_features);
}

double Evaluator::operator()(std::span<const double> point) {
  const ModelExpr& model = *model_;
  if (point.size() != static_cast<std::size_t>(model.feature_count()))
    throw DimensionError("point has " + std::to_string(point.size()) + " values, model expects " +
                         std::to_string(model.feature_count()));

  const std::vector<Node>& nodes = model.nodes();
  double* v = values_.data();
  for (std::size_t idx = 0; idx < nodes.size(); ++idx) {
    const Node& nd = nodes[idx];
    switch (nd.kind) {
      case NodeKind::kConstant:
        v[idx] = nd.value;
        break;
      case NodeKind::kPi:
        v[idx] = std::numbers::pi_v<double>;
        break;
      case NodeKind::kFeature:
        v[idx] = point[static_cast<std::size_t>(nd.lhs)];
        break;
      case NodeKind::kNeg:
        v[idx] = -v[nd.lhs];
        break;
      case NodeKind::kAdd:
        v[idx] = v[nd.lhs] + v[nd.rhs];
        break;
      case NodeKind::kSub:
        v[idx] = v[nd.lhs] - v[nd.rhs];
        break;
      case NodeKind::kMul:
        v[idx] = v[nd.lhs] * v[nd.rhs];
        break;
      case NodeKind::kDiv: {
        const double den = v[nd.rhs];
        if (den == 0.0) throw DomainError(nd.offset, "division by zero");
        v[idx] = v[nd.lhs] / den;
        break;
      }
      case NodeKind::kPow: {
        const double r = std::pow(v[nd.lhs], v[nd.rhs]);
        if (std::isnan(r) && !std::isnan(v[nd.lhs]) && !std::isnan(v[nd.rhs]))
          throw DomainError(nd.offset, "pow has no real result (base " +
                                           format_double(v[nd.lhs]) + ", exponent " +
                                           format_double(v[nd.rhs]) + ")");
        v[idx] = r;
        break;
      }
      case NodeKind::kSin:
        v[idx] = std::sin(v[nd.lhs]);
        break;
      case NodeKind::kCos:
        v[idx] = std::cos(v[nd.lhs]);
        break;
      case NodeKind::kExp:
        v[idx] = std::exp(v[nd.lhs]);
        break;
      case NodeKind::kLog: {
        const double a = v[nd.lhs];
        if (a <= 0.0) throw DomainError(nd.offset, "log of non-positive argument " + format_double(a));
        v[idx] = std::log(a);
        break;
      }
      case NodeKind::kSqrt: {
        const double a = v[nd.lhs];
        if (a < 0.0) throw DomainError(nd.offset, "sqrt of negative argument " + format_double(a));
        v[idx] = std::sqrt(a);
        break;
      }
      case NodeKind::kAbs:
        v[idx] = std::fabs(v[nd.lhs]);
        break;
    }
  }
  return v[nodes.size() - 1];
}

double evaluate(const ModelExpr& model, std::span<const double> point) {
  Evaluator ev(model);
  return ev(point);
}

std::string to_string(const ModelExpr& model) {
  std::string out;
  render(model.nodes(), static_cast<std::int32_t>(model.nodes().size() - 1), out);
  return out;
}

bool structurally_equal(const ModelExpr& a, const ModelExpr& b) {
  if (a.feature_count() != b.feature_count()) return false;
  return nodes_equal(a.nodes(), static_cast<std::int32_t>(a.nodes().size() - 1), b.nodes(),
                     static_cast<std::int32_t>(b.nodes().size() - 1));
}

}  // namespace sri::expr
