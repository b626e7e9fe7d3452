#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sri::expr {

enum class NodeKind : std::uint8_t {
  kConstant,
  kPi,
  kFeature,
  kNeg,
  kAdd,
  kSub,
  kMul,
  kDiv,
  kPow,
  kSin,
  kCos,
  kExp,
  kLog,
  kSqrt,
  kAbs,
};

struct Node {
  NodeKind kind = NodeKind::kConstant;
  std::int32_t lhs = -1;     // child index; 0-based feature index for kFeature
  std::int32_t rhs = -1;     // right child for binary operators
  double value = 0.0;        // kConstant only
  std::uint32_t offset = 0;  // byte offset of the node in the source text
};

// Immutable parsed model function f: R^n -> R. Nodes are stored so that
// children always precede their parent; the root is the last node. The
// instance is safe to share across threads once constructed.
class ModelExpr {
 public:
  int feature_count() const { return n_features_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& root() const { return nodes_.back(); }

 private:
  ModelExpr(std::vector<Node> nodes, int n_features)
      : nodes_(std::move(nodes)), n_features_(n_features) {}

  friend ModelExpr parse_model(std::string_view text, int n_features);

  std::vector<Node> nodes_;
  int n_features_ = 0;
};

// Grammar: binary + - * / ^ (all left-associative; precedence ^ over unary
// minus over * / over + -), parentheses, calls sin cos exp log sqrt abs,
// decimal literals, the constant pi, and feature references x1..xn.
// Throws ParseError with the byte offset of the problem.
ModelExpr parse_model(std::string_view text, int n_features);

// One-shot evaluation. Throws DomainError (log/sqrt outside their domain,
// division by zero, pow with no real result) citing the offending node's
// byte offset, and DimensionError if the point length is wrong.
double evaluate(const ModelExpr& model, std::span<const double> point);

// Fully parenthesized rendering; reparsing it yields a structurally
// identical tree.
std::string to_string(const ModelExpr& model);

// Structural comparison (node kinds, shapes, constants, feature indices);
// source offsets are ignored.
bool structurally_equal(const ModelExpr& a, const ModelExpr& b);

// Reusable evaluator holding the value scratch buffer; one per thread in
// hot loops.
class Evaluator {
 public:
  explicit Evaluator(const ModelExpr& model)
      : model_(&model), values_(model.nodes().size()) {}

  double operator()(std::span<const double> point);

 private:
  const ModelExpr* model_;
  std::vector<double> values_;
};

}  // namespace sri::expr
