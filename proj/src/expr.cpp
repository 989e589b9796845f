#include "mixparseval/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>
#include <utility>

namespace mixparseval {

namespace {

constexpr std::array<std::pair<std::string_view, UnaryFunc>, 11> kFunctions{{
    {"sin", UnaryFunc::sin},
    {"cos", UnaryFunc::cos},
    {"tan", UnaryFunc::tan},
    {"sinh", UnaryFunc::sinh},
    {"cosh", UnaryFunc::cosh},
    {"tanh", UnaryFunc::tanh},
    {"sech", UnaryFunc::sech},
    {"exp", UnaryFunc::exp},
    {"log", UnaryFunc::log},
    {"abs", UnaryFunc::abs},
    {"sqrt", UnaryFunc::sqrt},
}};

std::optional<UnaryFunc> lookup_function(std::string_view name) {
    for (const auto& [n, f] : kFunctions) {
        if (n == name) return f;
    }
    return std::nullopt;
}

double apply(UnaryFunc f, double v) {
    switch (f) {
        case UnaryFunc::sin: return std::sin(v);
        case UnaryFunc::cos: return std::cos(v);
        case UnaryFunc::tan: return std::tan(v);
        case UnaryFunc::sinh: return std::sinh(v);
        case UnaryFunc::cosh: return std::cosh(v);
        case UnaryFunc::tanh: return std::tanh(v);
        case UnaryFunc::sech: return 1.0 / std::cosh(v);
        case UnaryFunc::exp: return std::exp(v);
        case UnaryFunc::log: return std::log(v);
        case UnaryFunc::abs: return std::fabs(v);
        case UnaryFunc::sqrt: return std::sqrt(v);
    }
    return std::nan("");
}

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    std::vector<Expr::Node> nodes;

    int parse_all() {
        skip_space();
        if (at_end()) throw ParseError("empty expression", pos_);
        int root = parse_expr();
        skip_space();
        if (!at_end()) fail("unexpected character '" + std::string(1, src_[pos_]) + "'");
        return root;
    }

private:
    std::string_view src_;
    std::size_t pos_ = 0;
    int depth_ = 0;

    static constexpr int kMaxDepth = 512;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg + " at offset " + std::to_string(pos_), pos_);
    }

    bool at_end() const { return pos_ >= src_.size(); }

    void skip_space() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (!at_end() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    int push(Expr::Node n) {
        nodes.push_back(n);
        return static_cast<int>(nodes.size()) - 1;
    }

    int number(double v) { return push({Expr::Kind::number, v}); }

    int binary(BinaryOp op, int l, int r) {
        Expr::Node n{Expr::Kind::binary};
        n.op = op;
        n.lhs = l;
        n.rhs = r;
        return push(n);
    }

    struct DepthGuard {
        Parser& p;
        explicit DepthGuard(Parser& parser) : p(parser) {
            if (++p.depth_ > kMaxDepth) p.fail("expression nested too deeply");
        }
        ~DepthGuard() { --p.depth_; }
    };

    int parse_expr() {
        DepthGuard guard(*this);
        int lhs = parse_term();
        for (;;) {
            if (accept('+')) {
                lhs = binary(BinaryOp::add, lhs, parse_term());
            } else if (accept('-')) {
                lhs = binary(BinaryOp::sub, lhs, parse_term());
            } else {
                return lhs;
            }
        }
    }

    int parse_term() {
        int lhs = parse_unary();
        for (;;) {
            if (accept('*')) {
                lhs = binary(BinaryOp::mul, lhs, parse_unary());
            } else if (accept('/')) {
                lhs = binary(BinaryOp::div, lhs, parse_unary());
            } else {
                return lhs;
            }
        }
    }

    int parse_unary() {
        DepthGuard guard(*this);
        if (accept('-')) {
            Expr::Node n{Expr::Kind::negate};
            n.lhs = parse_unary();
            return push(n);
        }
        if (accept('+')) return parse_unary();
        return parse_power();
    }

    int parse_power() {
        int base = parse_primary();
        if (accept('^')) {
            // Exponent goes back through unary so 2^-1 and 2^3^2 both work.
            return binary(BinaryOp::pow, base, parse_unary());
        }
        return base;
    }

    int parse_primary() {
        skip_space();
        if (at_end()) fail("unexpected end of input");
        char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            int inner = parse_expr();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    int parse_number() {
        std::size_t start = pos_;
        while (!at_end() && (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.')) ++pos_;
        if (!at_end() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            // Only treat as an exponent when digits follow; otherwise `2e` is
            // left for the caller to reject.
            std::size_t save = pos_;
            ++pos_;
            if (!at_end() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
            if (!at_end() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                while (!at_end() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            } else {
                pos_ = save;
            }
        }
        double value = 0.0;
        const char* first = src_.data() + start;
        const char* last = src_.data() + pos_;
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr != last) {
            pos_ = start;
            fail("malformed number");
        }
        return number(value);
    }

    int parse_identifier() {
        std::size_t start = pos_;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) ++pos_;
        std::string_view name = src_.substr(start, pos_ - start);
        if (name == "x") return push({Expr::Kind::variable});
        if (name == "pi") return number(std::numbers::pi);
        if (name == "e") return number(std::numbers::e);
        if (auto f = lookup_function(name)) {
            if (!accept('(')) fail("expected '(' after function '" + std::string(name) + "'");
            int arg = parse_expr();
            if (accept(',')) fail("function '" + std::string(name) + "' takes exactly one argument");
            if (!accept(')')) fail("expected ')'");
            Expr::Node n{Expr::Kind::call};
            n.func = *f;
            n.lhs = arg;
            return push(n);
        }
        throw UnknownIdentifierError(std::string(name), start);
    }
};

}  // namespace

std::string_view to_string(UnaryFunc f) {
    for (const auto& [n, g] : kFunctions) {
        if (g == f) return n;
    }
    return "?";
}

std::string_view to_string(BinaryOp op) {
    switch (op) {
        case BinaryOp::add: return "add";
        case BinaryOp::sub: return "sub";
        case BinaryOp::mul: return "mul";
        case BinaryOp::div: return "div";
        case BinaryOp::pow: return "pow";
    }
    return "?";
}

Expr parse(std::string_view source) {
    Parser p(source);
    int root = p.parse_all();
    Expr e;
    e.nodes_ = std::move(p.nodes);
    e.root_ = root;
    e.source_ = std::string(source);
    return e;
}

double Expr::eval(double x) const { return eval_node(root_, x); }

double Expr::eval_node(int index, double x) const {
    const Node& n = nodes_[static_cast<std::size_t>(index)];
    switch (n.kind) {
        case Kind::number: return n.value;
        case Kind::variable: return x;
        case Kind::negate: return -eval_node(n.lhs, x);
        case Kind::call: return apply(n.func, eval_node(n.lhs, x));
        case Kind::binary: {
            double a = eval_node(n.lhs, x);
            double b = eval_node(n.rhs, x);
            switch (n.op) {
                case BinaryOp::add: return a + b;
                case BinaryOp::sub: return a - b;
                case BinaryOp::mul: return a * b;
                case BinaryOp::div: return a / b;
                case BinaryOp::pow: return std::pow(a, b);
            }
        }
    }
    return std::nan("");
}

std::string Expr::to_prefix() const {
    std::string out;
    if (root_ >= 0) render(root_, out);
    return out;
}

void Expr::render(int index, std::string& out) const {
    const Node& n = nodes_[static_cast<std::size_t>(index)];
    switch (n.kind) {
        case Kind::number: {
            char buf[32];
            auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, n.value);
            out.append(buf, ptr);
            return;
        }
        case Kind::variable: out += 'x'; return;
        case Kind::negate:
            out += "neg(";
            render(n.lhs, out);
            out += ')';
            return;
        case Kind::call:
            out += to_string(n.func);
            out += '(';
            render(n.lhs, out);
            out += ')';
            return;
        case Kind::binary:
            out += to_string(n.op);
            out += '(';
            render(n.lhs, out);
            out += ", ";
            render(n.rhs, out);
            out += ')';
            return;
    }
}

}  // namespace mixparseval
