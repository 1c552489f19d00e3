#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "shepherd/rng.hpp"

namespace shepherd {

class TerminalSet;

// Dog-AI programs are expression trees over reals. The root is always the
// 2-ary `pair` operator (x-force, y-force); `pair` appears nowhere else.
enum class OpKind : std::uint8_t { Neg, Sub, Add, Mul, Div, Qif, Pair };

constexpr int op_arity(OpKind op) {
  switch (op) {
    case OpKind::Neg: return 1;
    case OpKind::Sub:
    case OpKind::Add:
    case OpKind::Mul:
    case OpKind::Div:
    case OpKind::Pair: return 2;
    case OpKind::Qif: return 4;
  }
  return 0;
}

std::string_view op_name(OpKind op);

struct ExprNode {
  enum class Kind : std::uint8_t { Op, Param, Const };

  Kind kind = Kind::Const;
  OpKind op = OpKind::Add;  // meaningful when kind == Op
  int param = 0;            // meaningful when kind == Param
  double value = 0.0;       // meaningful when kind == Const
  std::vector<ExprNode> children;

  bool operator==(const ExprNode&) const = default;

  static ExprNode constant(double v) {
    ExprNode n;
    n.kind = Kind::Const;
    n.value = v;
    return n;
  }
  static ExprNode param_ref(int index) {
    ExprNode n;
    n.kind = Kind::Param;
    n.param = index;
    return n;
  }
  static ExprNode op_node(OpKind op, std::vector<ExprNode> children);
};

// A pair-rooted tree. Value type; copying copies the whole tree.
class ExprTree {
 public:
  // (pair 0 0)
  ExprTree();
  // Root must be a Pair node with two children and no nested Pair.
  explicit ExprTree(ExprNode root);

  const ExprNode& root() const { return root_; }
  ExprNode& root() { return root_; }

  bool operator==(const ExprTree&) const = default;

 private:
  ExprNode root_;
};

// --- evaluation -------------------------------------------------------------

// Total over finite params: Div(a,0) = 1, Qif(a,b,c,d) = (a <= b) ? c : d.
// Overflow of arithmetic on extreme values may still yield non-finite results;
// the controller layer sanitizes those.
double eval_node(const ExprNode& node, std::span<const double> params);
std::pair<double, double> eval(const ExprTree& tree, std::span<const double> params);

// --- structure --------------------------------------------------------------

int subtree_size(const ExprNode& node);   // node count including `node`
int subtree_depth(const ExprNode& node);  // leaf = 0

int tree_size(const ExprTree& tree);   // includes the Pair root
int tree_depth(const ExprTree& tree);  // max node depth, root at 0

struct NodeRef {
  ExprNode* node = nullptr;
  int depth = 0;  // depth of `node` counted from the tree root
};

// Preorder indexing, index 0 = root. Index must be < subtree_size(root).
NodeRef locate_preorder(ExprNode& root, int index);

// Uniform over all node indices, optionally excluding the Pair root.
int select_node_index(const ExprTree& tree, Rng& rng, bool exclude_root);

// --- random generation ------------------------------------------------------

enum class GrowMethod { Full, Grow };

// Builds one subtree. Full: operator at every depth < budget, terminal at
// depth == budget. Grow: terminal/operator with equal probability, terminal
// forced at depth == budget (no coin consumed there). Terminals are a
// parameter reference (uniform over arity) or a standard-normal constant,
// each with probability 1/2.
ExprNode grow_random(int depth_budget, int arity, GrowMethod method, Rng& rng);

// Pair root over two grow_random subtrees (left drawn first).
ExprTree random_tree(int depth_budget, int arity, GrowMethod method, Rng& rng);

// --- text format ------------------------------------------------------------

// S-expressions: tree := "(pair" expr expr ")", expr := terminal | "(" op
// expr... ")". Operators: neg - + * div qif. Terminals are the active
// terminal-set labels or decimal constants.
class ExprParseError : public std::runtime_error {
 public:
  ExprParseError(int line, int col, const std::string& message);
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_;
  int col_;
};

// Constants rendered with 17 significant digits so parse(serialize(t)) == t.
std::string serialize(const ExprTree& tree, const TerminalSet& terminals);
ExprTree parse(std::string_view text, const TerminalSet& terminals, int max_depth = 10);

}  // namespace shepherd
