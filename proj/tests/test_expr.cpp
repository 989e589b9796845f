#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "mixparseval/expr.hpp"
#include "mixparseval/functions.hpp"

using namespace mixparseval;

TEST_CASE("parse builds the expected tree") {
    CHECK(parse("sech(2*x)").to_prefix() == "sech(mul(2, x))");
    CHECK(parse("1/(cosh(1)+cos(x))").to_prefix() == "div(1, add(cosh(1), cos(x)))");
    CHECK(parse("2^3^2").to_prefix() == "pow(2, pow(3, 2))");
    CHECK(parse("x - -x").to_prefix() == "sub(x, neg(x))");
}

TEST_CASE("precedence") {
    // ^ is right-associative: 2^(3^2) = 512, not (2^3)^2 = 64.
    for (double x : {-3.0, 0.0, 1.5}) CHECK(eval_at(parse("2^3^2"), x) == 512.0);
    CHECK(eval_at(parse("-2^2"), 0) == -4.0);
    CHECK(eval_at(parse("2^-1"), 0) == 0.5);
    CHECK(eval_at(parse("1 + 2 * 3"), 0) == 7.0);
    CHECK(eval_at(parse("(1 + 2) * 3"), 0) == 9.0);
    CHECK(eval_at(parse("8 / 4 / 2"), 0) == 1.0);
    CHECK(eval_at(parse("10 - 4 - 3"), 0) == 3.0);
    CHECK(eval_at(parse("-x^2"), 3) == -9.0);
    CHECK(eval_at(parse("2*-x"), 3) == -6.0);
    CHECK(eval_at(parse("1.5e2 + .5"), 0) == 150.5);
}

TEST_CASE("eval_at examples") {
    CHECK(eval_at(parse("sech(2*x)"), 0) == 1.0);
    CHECK(eval_at(parse("log(cos(x)^2)"), 0) == 0.0);
    // 1/(cosh 1 - 1), frozen from an independent 30-digit evaluation.
    CHECK(eval_at(parse("1/(cosh(1)+cos(x))"), std::numbers::pi) ==
          doctest::Approx(1.84134718841558464).epsilon(1e-14));
    CHECK(eval_at(parse("pi"), 0) == std::numbers::pi);
    CHECK(eval_at(parse("e"), 0) == std::numbers::e);
}

TEST_CASE("non-finite values propagate") {
    CHECK(std::isinf(eval_at(parse("log(x)"), 0)));
    CHECK(std::isnan(eval_at(parse("log(x)"), -1)));
    CHECK(std::isinf(eval_at(parse("1/x"), 0)));
    CHECK(std::isnan(eval_at(parse("sqrt(x)"), -4)));
}

TEST_CASE("syntax errors carry an offset") {
    auto offset_of = [](const char* src) -> std::size_t {
        try {
            parse(src);
        } catch (const ParseError& e) {
            return e.offset();
        }
        FAIL("expected a parse error for " << src);
        return 0;
    };
    CHECK(offset_of("2 + * 3") == 4);
    CHECK(offset_of("(1 + 2") == 6);
    CHECK(offset_of("1 + 2)") == 5);
    CHECK(offset_of("sin x") == 4);
    CHECK(offset_of("2e") == 1);
    CHECK_THROWS_AS(parse(""), ParseError);
    CHECK_THROWS_AS(parse("   "), ParseError);
    CHECK_THROWS_AS(parse("sin(x, 2)"), ParseError);
    CHECK_THROWS_AS(parse("1..2"), ParseError);
    CHECK_THROWS_AS(parse("x $ 2"), ParseError);
}

TEST_CASE("unknown identifiers are named") {
    try {
        parse("2 * y + x");
        FAIL("expected UnknownIdentifierError");
    } catch (const UnknownIdentifierError& e) {
        CHECK(e.identifier() == "y");
        CHECK(e.offset() == 4);
        CHECK(std::string(e.what()).find("'y'") != std::string::npos);
    }
    CHECK_THROWS_AS(parse("sinc(x)"), UnknownIdentifierError);
    CHECK_THROWS_AS(parse("X"), UnknownIdentifierError);
}

TEST_CASE("deep nesting is rejected, not a stack overflow") {
    std::string deep(5000, '(');
    deep += "x";
    deep += std::string(5000, ')');
    CHECK_THROWS_AS(parse(deep), ParseError);
    std::string minus(5000, '-');
    CHECK_THROWS_AS(parse(minus + "x"), ParseError);
}

TEST_CASE("expressions match the built-in families pointwise") {
    struct Case {
        std::string name;
        std::function<double(double)> builtin;
        std::string source;
        double lo, hi;
    };
    const double two_pi = 2.0 * std::numbers::pi;
    std::vector<Case> cases{
        {"sech b=1", DecayingFunction::sech(1.0), "sech(x)", -40, 40},
        {"sech b=2", DecayingFunction::sech(2.0), "1/cosh(2*x)", -20, 20},
        {"gaussian b=1", DecayingFunction::gaussian(1.0), "exp(-x^2/4)", -20, 20},
        {"gaussian b=0.5", DecayingFunction::gaussian(0.5), "exp(-x^2/(4*0.5))", -20, 20},
        {"logistic-tail", DecayingFunction::logistic_tail(), "1/(1+exp(2*abs(x)))", -30, 30},
        {"cosh-plus-cos", PeriodicFunction::cosh_plus_cos(1.0), "1/(cosh(1)+cos(x))", 0, two_pi},
        {"cosh-minus-cos", PeriodicFunction::cosh_minus_cos(2.0), "1/(cosh(2)-cos(x))", 0, two_pi},
        {"log-cos-squared", PeriodicFunction::log_cos_squared(), "log(cos(x)^2)", 0, two_pi},
    };
    for (const auto& c : cases) {
        CAPTURE(c.name);
        Expr e = parse(c.source);
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            // Uniform samples offset from the grid so log(cos^2) never sits on a pole.
            double x = c.lo + (c.hi - c.lo) * (i + 0.37) / 1000.0;
            worst = std::max(worst, std::fabs(e(x) - c.builtin(x)));
        }
        CHECK(worst <= 1e-12);
    }
}

TEST_CASE("fuzzed inputs either parse or fail with a position") {
    const std::string alphabet = "x0123456789.+-*/^() esincoshqrtlgabpi,";
    std::mt19937 rng(12345);
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
    std::uniform_int_distribution<int> length(1, 24);
    int parsed = 0;
    for (int i = 0; i < 20000; ++i) {
        std::string s;
        for (int n = length(rng); n > 0; --n) s += alphabet[pick(rng)];
        try {
            Expr e = parse(s);
            (void)e.eval(0.3);
            ++parsed;
        } catch (const ParseError& e) {
            CHECK(e.offset() <= s.size());
        }
    }
    CHECK(parsed > 0);
}

namespace {

// Random grammar-valid expression.
std::string generate(std::mt19937& rng, int depth) {
    static const char* funcs[] = {"sin", "cos", "tan", "sinh", "cosh", "tanh", "sech", "exp", "log", "abs", "sqrt"};
    static const char* ops[] = {"+", "-", "*", "/", "^"};
    std::uniform_int_distribution<int> choice(0, depth <= 0 ? 2 : 6);
    switch (choice(rng)) {
        case 0: return "x";
        case 1: return std::to_string(std::uniform_int_distribution<int>(0, 99)(rng)) + ".5";
        case 2: return std::uniform_int_distribution<int>(0, 1)(rng) ? "pi" : "e";
        case 3: return "-" + generate(rng, depth - 1);
        case 4: return "(" + generate(rng, depth - 1) + ")";
        case 5: return std::string(funcs[std::uniform_int_distribution<int>(0, 10)(rng)]) + "(" + generate(rng, depth - 1) + ")";
        default:
            return generate(rng, depth - 1) + " " + ops[std::uniform_int_distribution<int>(0, 4)(rng)] + " " +
                   generate(rng, depth - 1);
    }
}

}  // namespace

TEST_CASE("grammar-valid strings always parse") {
    std::mt19937 rng(777);
    for (int i = 0; i < 5000; ++i) {
        std::string s = generate(rng, 6);
        CAPTURE(s);
        CHECK_NOTHROW(parse(s));
    }
}

TEST_CASE("concurrent evaluation of a shared tree") {
    const Expr e = parse("sech(2*x) + log(cos(x)^2) * x^3");
    std::vector<double> expected(1000);
    for (int i = 0; i < 1000; ++i) expected[i] = e(i * 0.001);
    std::vector<int> mismatches(4, 0);
    std::vector<std::thread> threads;
    for (int t = 0; t < 4; ++t) {
        threads.emplace_back([&, t] {
            for (int i = 0; i < 1000; ++i) {
                if (e(i * 0.001) != expected[i]) ++mismatches[t];
            }
        });
    }
    for (auto& th : threads) th.join();
    for (int m : mismatches) CHECK(m == 0);
}
