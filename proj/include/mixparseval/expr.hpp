#pragma once

// Small arithmetic expression language in one variable `x`.
//
// Grammar (lowest to highest precedence):
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' unary)?          right-associative
//   primary := number | 'x' | 'pi' | 'e' | func '(' expr ')' | '(' expr ')'
//   func    := sin cos tan sinh cosh tanh sech exp log abs sqrt
//
// Evaluation follows IEEE semantics: log(0), 1/0 and friends produce
// non-finite values instead of throwing.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mixparseval {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : std::runtime_error(what), offset_(offset) {}

    /// Byte offset into the source where the problem was detected.
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class UnknownIdentifierError : public ParseError {
public:
    UnknownIdentifierError(std::string name, std::size_t offset)
        : ParseError("unknown identifier '" + name + "'", offset), name_(std::move(name)) {}

    const std::string& identifier() const noexcept { return name_; }

private:
    std::string name_;
};

enum class UnaryFunc { sin, cos, tan, sinh, cosh, tanh, sech, exp, log, abs, sqrt };

enum class BinaryOp { add, sub, mul, div, pow };

std::string_view to_string(UnaryFunc f);
std::string_view to_string(BinaryOp op);

/// Immutable expression tree. Nodes live in a flat arena and refer to
/// their children by index, so copies are cheap value copies.
class Expr {
public:
    enum class Kind { number, variable, negate, binary, call };

    struct Node {
        Kind kind;
        double value = 0.0;           // number
        BinaryOp op = BinaryOp::add;  // binary
        UnaryFunc func = UnaryFunc::sin;  // call
        int lhs = -1;                 // negate, binary, call
        int rhs = -1;                 // binary
    };

    double operator()(double x) const { return eval(x); }
    double eval(double x) const;

    /// Prefix rendering used for debugging and tests, e.g. "sech(mul(2, x))".
    std::string to_prefix() const;

    const std::string& source() const noexcept { return source_; }
    const std::vector<Node>& nodes() const noexcept { return nodes_; }
    int root() const noexcept { return root_; }

private:
    friend Expr parse(std::string_view source);

    double eval_node(int index, double x) const;
    void render(int index, std::string& out) const;

    std::vector<Node> nodes_;
    int root_ = -1;
    std::string source_;
};

/// Parse `source`; throws ParseError (or UnknownIdentifierError).
Expr parse(std::string_view source);

inline double eval_at(const Expr& e, double x) { return e.eval(x); }

}  // namespace mixparseval
