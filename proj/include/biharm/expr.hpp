#pragma once

#include "biharm/error.hpp"
#include "biharm/jet.hpp"

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace biharm::expr {

// Grammar (whitespace insignificant, no implicit multiplication):
//
//   sum     := product (('+' | '-') product)*
//   product := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?          right-associative
//   primary := number | identifier | function '(' sum ')' | '(' sum ')'
//   function:= sin | cos | exp | log | sqrt
//
// Identifiers are an ASCII letter followed by ASCII letters or digits.

enum class NodeKind { number, identifier, negate, binary, call };
enum class BinaryOp { add, sub, mul, div, pow };
enum class Function { sin, cos, exp, log, sqrt };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
    NodeKind kind;
    double number = 0.0;
    std::string name;
    BinaryOp op = BinaryOp::add;
    Function fn = Function::sin;
    std::vector<NodePtr> children;
    SourceSpan span;
};

/// Immutable parsed expression; cheap to copy and safe to share.
class Expr {
public:
    Expr() = default;
    Expr(NodePtr root, std::string source) : root_(std::move(root)), source_(std::move(source)) {}

    const Node& root() const { return *root_; }
    const std::string& source() const noexcept { return source_; }
    bool empty() const noexcept { return root_ == nullptr; }

private:
    NodePtr root_;
    std::string source_;
};

using JetBindings = std::map<std::string, Jet, std::less<>>;
using ParamBindings = std::map<std::string, double, std::less<>>;

Expr parse(std::string_view source);

/// Evaluates over jet arithmetic. Chart variables come from `vars`, parameters
/// enter as constant jets shaped like the variables. When `vars` is empty the
/// result is an order-0 jet in one variable.
Jet eval_jet(const Expr& e, const JetBindings& vars, const ParamBindings& params);

/// Plain real evaluation. Variables and parameters share one namespace.
double eval_real(const Expr& e, const ParamBindings& values);

std::set<std::string> free_symbols(const Expr& e);

/// Fully parenthesized rendering that parses back to the same tree.
std::string to_string(const Expr& e);

/// Structural equality ignoring source spans.
bool same_tree(const Node& a, const Node& b);

const char* function_name(Function fn) noexcept;

} // namespace biharm::expr
