#include "shepherd/expr.hpp"

#include <array>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <cmath>
#include <sstream>

#include "shepherd/terminal_set.hpp"

namespace shepherd {

namespace {

constexpr std::array<OpKind, 6> kNonPairOps = {OpKind::Neg, OpKind::Sub, OpKind::Add,
                                               OpKind::Mul, OpKind::Div, OpKind::Qif};

bool contains_pair(const ExprNode& node) {
  if (node.kind == ExprNode::Kind::Op && node.op == OpKind::Pair) return true;
  for (const ExprNode& c : node.children)
    if (contains_pair(c)) return true;
  return false;
}

}  // namespace

std::string_view op_name(OpKind op) {
  switch (op) {
    case OpKind::Neg: return "neg";
    case OpKind::Sub: return "-";
    case OpKind::Add: return "+";
    case OpKind::Mul: return "*";
    case OpKind::Div: return "div";
    case OpKind::Qif: return "qif";
    case OpKind::Pair: return "pair";
  }
  return "?";
}

ExprNode ExprNode::op_node(OpKind op, std::vector<ExprNode> children) {
  if (static_cast<int>(children.size()) != op_arity(op))
    throw std::invalid_argument("wrong child count for operator");
  ExprNode n;
  n.kind = Kind::Op;
  n.op = op;
  n.children = std::move(children);
  return n;
}

ExprTree::ExprTree()
    : root_(ExprNode::op_node(OpKind::Pair,
                              {ExprNode::constant(0.0), ExprNode::constant(0.0)})) {}

ExprTree::ExprTree(ExprNode root) : root_(std::move(root)) {
  if (root_.kind != ExprNode::Kind::Op || root_.op != OpKind::Pair)
    throw std::invalid_argument("tree root must be pair");
  for (const ExprNode& c : root_.children)
    if (contains_pair(c)) throw std::invalid_argument("pair allowed only at the root");
}

// --- evaluation -------------------------------------------------------------

double eval_node(const ExprNode& node, std::span<const double> params) {
  switch (node.kind) {
    case ExprNode::Kind::Const:
      return node.value;
    case ExprNode::Kind::Param:
      return params[static_cast<size_t>(node.param)];
    case ExprNode::Kind::Op:
      break;
  }
  const auto& c = node.children;
  switch (node.op) {
    case OpKind::Neg:
      return -eval_node(c[0], params);
    case OpKind::Sub:
      return eval_node(c[0], params) - eval_node(c[1], params);
    case OpKind::Add:
      return eval_node(c[0], params) + eval_node(c[1], params);
    case OpKind::Mul:
      return eval_node(c[0], params) * eval_node(c[1], params);
    case OpKind::Div: {
      double a = eval_node(c[0], params);
      double b = eval_node(c[1], params);
      return b == 0.0 ? 1.0 : a / b;
    }
    case OpKind::Qif: {
      double a = eval_node(c[0], params);
      double b = eval_node(c[1], params);
      // Value-equivalent to evaluating both branches and discarding one.
      return a <= b ? eval_node(c[2], params) : eval_node(c[3], params);
    }
    case OpKind::Pair:
      break;
  }
  throw std::logic_error("pair below root");
}

std::pair<double, double> eval(const ExprTree& tree, std::span<const double> params) {
  const ExprNode& r = tree.root();
  return {eval_node(r.children[0], params), eval_node(r.children[1], params)};
}

// --- structure --------------------------------------------------------------

int subtree_size(const ExprNode& node) {
  int n = 1;
  for (const ExprNode& c : node.children) n += subtree_size(c);
  return n;
}

int subtree_depth(const ExprNode& node) {
  int d = 0;
  for (const ExprNode& c : node.children) d = std::max(d, 1 + subtree_depth(c));
  return d;
}

int tree_size(const ExprTree& tree) { return subtree_size(tree.root()); }

int tree_depth(const ExprTree& tree) { return subtree_depth(tree.root()); }

namespace {

ExprNode* locate_impl(ExprNode& node, int& remaining, int depth, int& out_depth) {
  if (remaining == 0) {
    out_depth = depth;
    return &node;
  }
  --remaining;
  for (ExprNode& c : node.children) {
    if (ExprNode* hit = locate_impl(c, remaining, depth + 1, out_depth)) return hit;
  }
  return nullptr;
}

}  // namespace

NodeRef locate_preorder(ExprNode& root, int index) {
  int remaining = index;
  int depth = 0;
  ExprNode* node = locate_impl(root, remaining, 0, depth);
  if (!node) throw std::out_of_range("node index past end of tree");
  return {node, depth};
}

int select_node_index(const ExprTree& tree, Rng& rng, bool exclude_root) {
  int n = tree_size(tree);
  if (exclude_root)
    return 1 + static_cast<int>(rng.index(static_cast<std::uint32_t>(n - 1)));
  return static_cast<int>(rng.index(static_cast<std::uint32_t>(n)));
}

// --- random generation ------------------------------------------------------

namespace {

ExprNode random_terminal(int arity, Rng& rng) {
  if (rng.bernoulli(0.5))
    return ExprNode::param_ref(static_cast<int>(rng.index(static_cast<std::uint32_t>(arity))));
  return ExprNode::constant(rng.normal());
}

}  // namespace

ExprNode grow_random(int depth_budget, int arity, GrowMethod method, Rng& rng) {
  bool leaf;
  if (depth_budget <= 0)
    leaf = true;
  else if (method == GrowMethod::Full)
    leaf = false;
  else
    leaf = rng.bernoulli(0.5);

  if (leaf) return random_terminal(arity, rng);

  OpKind op = kNonPairOps[rng.index(static_cast<std::uint32_t>(kNonPairOps.size()))];
  std::vector<ExprNode> children;
  children.reserve(static_cast<size_t>(op_arity(op)));
  for (int i = 0; i < op_arity(op); ++i)
    children.push_back(grow_random(depth_budget - 1, arity, method, rng));
  return ExprNode::op_node(op, std::move(children));
}

ExprTree random_tree(int depth_budget, int arity, GrowMethod method, Rng& rng) {
  ExprNode left = grow_random(depth_budget, arity, method, rng);
  ExprNode right = grow_random(depth_budget, arity, method, rng);
  return ExprTree(ExprNode::op_node(OpKind::Pair, {std::move(left), std::move(right)}));
}

// --- text format ------------------------------------------------------------

ExprParseError::ExprParseError(int line, int col, const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + message),
      line_(line),
      col_(col) {}

namespace {

void serialize_node(const ExprNode& node, const TerminalSet& terminals, std::string& out) {
  switch (node.kind) {
    case ExprNode::Kind::Const: {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.17g", node.value);
      out += buf;
      return;
    }
    case ExprNode::Kind::Param:
      out += terminals.label(node.param);
      return;
    case ExprNode::Kind::Op: {
      out += '(';
      out += op_name(node.op);
      for (const ExprNode& c : node.children) {
        out += ' ';
        serialize_node(c, terminals, out);
      }
      out += ')';
      return;
    }
  }
}

struct Token {
  enum class Type { LParen, RParen, Atom, End };
  Type type = Type::End;
  std::string text;
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      advance();
    Token t;
    t.line = line_;
    t.col = col_;
    if (pos_ >= text_.size()) {
      t.type = Token::Type::End;
      return t;
    }
    char ch = text_[pos_];
    if (ch == '(') {
      advance();
      t.type = Token::Type::LParen;
      return t;
    }
    if (ch == ')') {
      advance();
      t.type = Token::Type::RParen;
      return t;
    }
    t.type = Token::Type::Atom;
    size_t start = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')') break;
      advance();
    }
    t.text = std::string(text_.substr(start, pos_ - start));
    return t;
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string_view text_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

struct OpEntry {
  std::string_view name;
  OpKind op;
};

constexpr std::array<OpEntry, 6> kOpTable = {{{"neg", OpKind::Neg},
                                              {"-", OpKind::Sub},
                                              {"+", OpKind::Add},
                                              {"*", OpKind::Mul},
                                              {"div", OpKind::Div},
                                              {"qif", OpKind::Qif}}};

class Parser {
 public:
  Parser(std::string_view text, const TerminalSet& terminals, int max_depth)
      : lexer_(text), terminals_(terminals), max_depth_(max_depth) {
    look_ = lexer_.next();
  }

  ExprTree parse_tree() {
    Token open = expect(Token::Type::LParen, "expected '('");
    Token head = expect(Token::Type::Atom, "expected operator");
    if (head.text != "pair")
      throw ExprParseError(head.line, head.col, "root operator must be pair");
    ExprNode left = parse_expr(1);
    ExprNode right = parse_expr(1);
    if (look_.type != Token::Type::RParen)
      throw ExprParseError(look_.line, look_.col, "operator 'pair' expects 2 arguments");
    expect(Token::Type::RParen, "expected ')'");
    if (look_.type != Token::Type::End)
      throw ExprParseError(look_.line, look_.col, "unexpected trailing input");
    (void)open;
    return ExprTree(
        ExprNode::op_node(OpKind::Pair, {std::move(left), std::move(right)}));
  }

 private:
  Token expect(Token::Type type, const char* message) {
    if (look_.type != type) throw ExprParseError(look_.line, look_.col, message);
    Token t = std::move(look_);
    look_ = lexer_.next();
    return t;
  }

  ExprNode parse_expr(int depth) {
    if (depth > max_depth_)
      throw ExprParseError(look_.line, look_.col,
                           "tree depth exceeds limit " + std::to_string(max_depth_));
    if (look_.type == Token::Type::Atom) {
      Token atom = expect(Token::Type::Atom, "expected expression");
      return parse_atom(atom);
    }
    Token open = expect(Token::Type::LParen, "expected expression");
    (void)open;
    Token head = expect(Token::Type::Atom, "expected operator");
    if (head.text == "pair")
      throw ExprParseError(head.line, head.col, "pair allowed only at the root");
    OpKind op = OpKind::Add;
    bool found = false;
    for (const OpEntry& e : kOpTable) {
      if (e.name == head.text) {
        op = e.op;
        found = true;
        break;
      }
    }
    if (!found)
      throw ExprParseError(head.line, head.col, "unknown symbol '" + head.text + "'");
    std::vector<ExprNode> children;
    children.reserve(static_cast<size_t>(op_arity(op)));
    for (int i = 0; i < op_arity(op); ++i) {
      if (look_.type == Token::Type::RParen)
        throw ExprParseError(look_.line, look_.col,
                             "operator '" + std::string(op_name(op)) + "' expects " +
                                 std::to_string(op_arity(op)) + " arguments");
      children.push_back(parse_expr(depth + 1));
    }
    if (look_.type != Token::Type::RParen)
      throw ExprParseError(look_.line, look_.col,
                           "operator '" + std::string(op_name(op)) + "' expects " +
                               std::to_string(op_arity(op)) + " arguments");
    expect(Token::Type::RParen, "expected ')'");
    return ExprNode::op_node(op, std::move(children));
  }

  ExprNode parse_atom(const Token& atom) {
    const char* begin = atom.text.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin + atom.text.size() && end != begin) {
      if (!std::isfinite(v))
        throw ExprParseError(atom.line, atom.col, "constant must be finite");
      return ExprNode::constant(v);
    }
    int idx = terminals_.index_of(atom.text);
    if (idx < 0)
      throw ExprParseError(atom.line, atom.col, "unknown symbol '" + atom.text + "'");
    return ExprNode::param_ref(idx);
  }

  Lexer lexer_;
  Token look_;
  const TerminalSet& terminals_;
  int max_depth_;
};

}  // namespace

std::string serialize(const ExprTree& tree, const TerminalSet& terminals) {
  std::string out;
  serialize_node(tree.root(), terminals, out);
  return out;
}

ExprTree parse(std::string_view text, const TerminalSet& terminals, int max_depth) {
  Parser parser(text, terminals, max_depth);
  return parser.parse_tree();
}

}  // namespace shepherd
