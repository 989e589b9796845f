#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "mixparseval/catalog.hpp"
#include "mixparseval/engine.hpp"

using namespace mixparseval;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("hypothesis: sech blocks decay like e^{-2 pi}") {
    auto h = check_hypothesis(DecayingFunction::sech(1.0), 2 * kPi, 6, 1e-12);
    CHECK(h.verdict == Verdict::finite_evidence);
    CHECK(h.decay_ratio == doctest::Approx(std::exp(-2 * kPi)).epsilon(0.1));
    CHECK(h.block_norms.size() == 13);
    double sum = 0.0;
    for (double b : h.block_norms) {
        CHECK(b >= 0.0);
        sum += b;
    }
    CHECK(h.partial_M == doctest::Approx(sum).epsilon(1e-15));
    CHECK(std::isfinite(h.tail_bound));
    // Outermost negative block is [-12pi, -10pi]: ~1e-14 times e^{-2pi}.
    CHECK(h.tail_bound < 1e-15);
}

TEST_CASE("hypothesis: gaussian decays super-geometrically") {
    auto h = check_hypothesis(DecayingFunction::gaussian(1.0), 2 * kPi, 4, 1e-12);
    CHECK(h.verdict == Verdict::finite_evidence);
    // successive ratios shrink
    double r1 = h.block_norm(2) / h.block_norm(1);
    double r2 = h.block_norm(3) / h.block_norm(2);
    CHECK(r2 < r1);
}

TEST_CASE("hypothesis: constant f is inconclusive") {
    auto h = check_hypothesis(DecayingFunction::from_expr(parse("1")), 2 * kPi, 4, 1e-10);
    CHECK(h.verdict == Verdict::inconclusive);
    CHECK(h.decay_ratio == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::isinf(h.tail_bound));
}

TEST_CASE("hypothesis preconditions") {
    CHECK_THROWS(check_hypothesis(DecayingFunction::sech(1.0), 2 * kPi, 3, 1e-12));
    CHECK_THROWS(check_hypothesis(DecayingFunction::sech(1.0), 0.0, 6, 1e-12));
}

TEST_CASE("tail estimator rules") {
    SUBCASE("geometric") {
        const int N = 16;
        std::vector<Complex> t(2 * N + 1);
        for (int n = -N; n <= N; ++n) t[n + N] = std::pow(0.5, std::abs(n));
        auto e = estimate_tail(t, N, 1e-10);
        CHECK(e.rule == TailRule::geometric);
        CHECK(e.ratio == doctest::Approx(0.5).epsilon(1e-12));
        // paired magnitude at m = 16 is 2 * 2^-16; tail = that * rho/(1-rho)
        CHECK(e.bound == doctest::Approx(2 * std::pow(0.5, 16)).epsilon(1e-10));
    }
    SUBCASE("alternating") {
        const int N = 32;
        std::vector<Complex> t(2 * N + 1);
        for (int n = -N; n <= N; ++n) t[n + N] = n == 0 ? 1.0 : (n % 2 ? -1.0 : 1.0) / (n * n);
        auto e = estimate_tail(t, N, 1e-10);
        CHECK(e.rule == TailRule::alternating);
        CHECK(e.bound == doctest::Approx(2.0 / (32.0 * 32.0)));
    }
    SUBCASE("negligible") {
        const int N = 16;
        std::vector<Complex> t(2 * N + 1, Complex(0.0, 0.0));
        t[N] = 3.0;
        auto e = estimate_tail(t, N, 1e-10);
        CHECK(e.rule == TailRule::negligible);
        CHECK(e.bound == 0.0);
    }
    SUBCASE("slow decay") {
        auto slow = [](int N) {
            std::vector<Complex> t(2 * N + 1);
            for (int n = -N; n <= N; ++n) t[n + N] = 1.0 / (1.0 + std::abs(n));
            return estimate_tail(t, N, 1e-10);
        };
        // Early on the fit still looks geometric, but the bound is useless.
        CHECK(slow(16).bound > 1.0);
        // Far out the ratio passes the 0.99 gate and no rule applies.
        auto e = slow(1024);
        CHECK(e.rule == TailRule::none);
        CHECK(std::isinf(e.bound));
    }
    SUBCASE("zeros between nonzero pairs are skipped") {
        const int N = 64;
        std::vector<Complex> t(2 * N + 1, Complex(0.0, 0.0));
        for (int n = -N; n <= N; n += 4) t[n + N] = std::pow(0.5, std::abs(n));
        auto e = estimate_tail(t, N, 1e-30);
        CHECK(e.rule == TailRule::geometric);
        CHECK(e.ratio == doctest::Approx(0.5).epsilon(1e-12));
    }
}

TEST_CASE("logistic tail against log(cos^2) gives -log^2 2") {
    auto r = evaluate_mixed(DecayingFunction::logistic_tail(), PeriodicFunction::log_cos_squared(), 1e-10, true);
    CHECK(r.converged);
    CHECK(std::fabs(r.value.real() - (-0.480453013918201425)) <= 1e-9);
    CHECK(r.tail_bound <= 1e-10);
    REQUIRE(r.oracle_gap.has_value());
    CHECK(*r.oracle_gap <= 1e-8);
    CHECK(std::fabs(r.value.imag()) <= 1e-10 * (1 + std::fabs(r.value.real())));
}

TEST_CASE("sech against cosh+cos matches the closed-form series and the oracle") {
    auto r = evaluate_mixed(DecayingFunction::sech(1.0), PeriodicFunction::cosh_plus_cos(1.0), 1e-10, true);
    CHECK(r.converged);
    CHECK(std::fabs(r.value.real() - 1.94734998633869195) <= 1e-10);
    CHECK(std::fabs(r.value.real() - catalog::example1_series(1, 1).value) <= 1e-10);
    CHECK(*r.oracle_gap <= 1e-8);
    CHECK(r.tail_rule != TailRule::none);
}

TEST_CASE("gaussian against cosh-cos matches the theta series") {
    auto r = evaluate_mixed(DecayingFunction::gaussian(1.0), PeriodicFunction::cosh_minus_cos(1.0), 1e-10, false);
    CHECK(std::fabs(r.value.real() - 3.84787504754294002) <= 1e-10);
    CHECK(std::fabs(r.value.real() - catalog::example3_theta(1, 1).value) <= 1e-10);
    CHECK_FALSE(r.oracle.has_value());
}

TEST_CASE("catalog agreement over a parameter grid") {
    for (double a : {0.5, 1.0, 2.0}) {
        for (double b : {0.5, 1.0, 2.0}) {
            CAPTURE(a);
            CAPTURE(b);
            auto e1 = evaluate_mixed(DecayingFunction::sech(b), PeriodicFunction::cosh_plus_cos(a), 1e-10, false);
            auto c1 = catalog::example1_series(a, b);
            CHECK(std::fabs(e1.value.real() - c1.value) <= std::max(1e-12, 10 * (e1.tail_bound + c1.tail_bound)));
            auto e3 = evaluate_mixed(DecayingFunction::gaussian(b), PeriodicFunction::cosh_minus_cos(a), 1e-10, false);
            auto c3 = catalog::example3_theta(a, b);
            CHECK(std::fabs(e3.value.real() - c3.value) <= std::max(1e-12, 10 * (e3.tail_bound + c3.tail_bound)));
        }
    }
}

TEST_CASE("oracle equivalence on every built-in pair") {
    const DecayingFunction fs[] = {DecayingFunction::sech(1.0), DecayingFunction::gaussian(1.0),
                                   DecayingFunction::logistic_tail()};
    const PeriodicFunction gs[] = {PeriodicFunction::cosh_plus_cos(0.5), PeriodicFunction::cosh_minus_cos(1.0),
                                   PeriodicFunction::log_cos_squared()};
    for (const auto& f : fs) {
        for (const auto& g : gs) {
            CAPTURE(f.describe());
            CAPTURE(g.describe());
            auto r = evaluate_mixed(f, g, 1e-10, true);
            REQUIRE(r.oracle.has_value());
            double allowed = std::max(1e-8, 10 * (r.tail_bound + r.oracle->error_estimate));
            CHECK(*r.oracle_gap <= allowed);
        }
    }
}

TEST_CASE("tail bounds are honest") {
    const DecayingFunction fs[] = {DecayingFunction::sech(1.0), DecayingFunction::gaussian(1.0),
                                   DecayingFunction::logistic_tail()};
    const PeriodicFunction gs[] = {PeriodicFunction::cosh_plus_cos(1.0), PeriodicFunction::cosh_minus_cos(1.0),
                                   PeriodicFunction::log_cos_squared()};
    for (const auto& f : fs) {
        for (const auto& g : gs) {
            CAPTURE(f.describe());
            CAPTURE(g.describe());
            auto coarse = evaluate_mixed(f, g, 1e-6, false);
            auto fine = evaluate_mixed(f, g, 1e-8, false);
            CHECK(std::abs(coarse.value - fine.value) <= coarse.tail_bound + coarse.term_error + 1e-15);
        }
    }
}

TEST_CASE("terms are kept in the order 0, 1, -1, 2, -2, ...") {
    EvaluateOptions opts;
    opts.keep_terms = true;
    auto r = evaluate_mixed(DecayingFunction::sech(1.0), PeriodicFunction::cosh_plus_cos(1.0), 1e-10, false, opts);
    REQUIRE(r.terms.size() == static_cast<std::size_t>(2 * r.n_used + 1));
    CHECK(r.terms[0].n == 0);
    CHECK(r.terms[1].n == 1);
    CHECK(r.terms[2].n == -1);
    CHECK(r.terms[3].n == 2);
    for (const auto& t : r.terms) CHECK(t.product == t.transform * std::conj(t.coefficient));
}

TEST_CASE("conjugation is applied to the coefficients") {
    // g = e^{ix} is not expressible; use g = sin x, C_{+-1} = -+ i/2.
    auto f = DecayingFunction::from_expr(parse("exp(-(x-1)^2)"), Envelope{Envelope::Shape::gaussian, 1.0, 0.5, 2.0});
    auto g = PeriodicFunction::from_expr(parse("sin(x)"), 2 * kPi);
    auto r = evaluate_mixed(f, g, 1e-10, true);
    // \int e^{-(x-1)^2} sin x dx = sqrt(pi) e^{-1/4} sin 1
    double exact = std::sqrt(kPi) * std::exp(-0.25) * std::sin(1.0);
    CHECK(std::fabs(r.value.real() - exact) <= 1e-9);
    CHECK(std::fabs(r.value.imag()) <= 1e-10);
    CHECK(*r.oracle_gap <= 1e-8);
}

TEST_CASE("g == 1 reduces to the transform at zero") {
    auto one = PeriodicFunction::from_expr(parse("1"), 2 * kPi);
    auto r = evaluate_mixed(DecayingFunction::sech(1.0), one, 1e-10, false);
    CHECK(std::abs(r.value - transform(DecayingFunction::sech(1.0), 0.0, 1e-12)) <= 1e-10);
}

TEST_CASE("linearity in g") {
    auto f = DecayingFunction::sech(1.0);
    auto g1 = PeriodicFunction::from_expr(parse("1/(cosh(1)+cos(x))"), 2 * kPi);
    auto g2 = PeriodicFunction::from_expr(parse("1/(cosh(2)-cos(x))"), 2 * kPi);
    auto combo = PeriodicFunction::from_expr(parse("1.5/(cosh(1)+cos(x)) - 0.25/(cosh(2)-cos(x))"), 2 * kPi);
    auto r1 = evaluate_mixed(f, g1, 1e-10, false);
    auto r2 = evaluate_mixed(f, g2, 1e-10, false);
    auto rc = evaluate_mixed(f, combo, 1e-10, false);
    CHECK(std::abs(rc.value - (1.5 * r1.value - 0.25 * r2.value)) <=
          rc.tail_bound + 1.5 * r1.tail_bound + 0.25 * r2.tail_bound + 1e-10);
}

TEST_CASE("declaring a 2pi g as 4pi-periodic does not change the value") {
    for (const auto& g : {PeriodicFunction::cosh_plus_cos(1.0), PeriodicFunction::log_cos_squared()}) {
        auto f = DecayingFunction::logistic_tail();
        auto r2 = evaluate_mixed(f, g, 1e-10, false);
        // Only every other (log-cos: every fourth) index survives, so allow twice the N.
        EvaluateOptions wide;
        wide.max_n = 8192;
        auto r4 = evaluate_mixed(f, g.with_period(4 * kPi), 1e-10, false, wide);
        CHECK(std::abs(r2.value - r4.value) <= 2e-10);
    }
}

TEST_CASE("non-convergence carries the partial result") {
    SUBCASE("truncation cap") {
        // Transform ~ 1/w^2 and coefficients ~ e^{-0.001 n}: nowhere near done at N = 64.
        EvaluateOptions opts;
        opts.max_n = 64;
        try {
            evaluate_mixed(DecayingFunction::logistic_tail(), PeriodicFunction::cosh_plus_cos(0.001), 1e-12, false, opts);
            FAIL("expected NonConvergenceError");
        } catch (const NonConvergenceError& e) {
            CHECK_FALSE(e.partial().converged);
            CHECK(e.partial().n_used == 64);
            CHECK(std::isfinite(e.partial().value.real()));
            CHECK(e.partial().tail_bound > 1e-12);
        }
    }
    SUBCASE("unresolvable numeric coefficients") {
        // |x| declared 2-periodic: a sawtooth, whose trapezoid coefficients stall.
        auto g = PeriodicFunction::from_expr(parse("abs(x)"), 2.0);
        try {
            evaluate_mixed(DecayingFunction::sech(1.0), g, 1e-12, false);
            FAIL("expected NonConvergenceError");
        } catch (const NonConvergenceError& e) {
            CHECK_FALSE(e.partial().converged);
            CHECK(std::isfinite(e.partial().value.real()));
        }
    }
}

TEST_CASE("warnings") {
    auto r = evaluate_mixed(DecayingFunction::sech(1.0), PeriodicFunction::cosh_plus_cos(0.04), 1e-8, false);
    bool small_a = false;
    for (const auto& w : r.warnings) small_a = small_a || w.find("a <") != std::string::npos || w.find("small") != std::string::npos;
    CHECK(small_a);

    auto unverified = PeriodicFunction::from_expr(parse("cos(x)"), 3.0);
    EvaluateOptions opts;
    opts.max_n = 32;
    try {
        auto r2 = evaluate_mixed(DecayingFunction::sech(1.0), unverified, 1e-6, false, opts);
        REQUIRE(r2.warnings.size() >= 1);
        CHECK(r2.warnings[0].starts_with("unverified_period"));
    } catch (const NonConvergenceError& e) {
        bool flagged = false;
        for (const auto& w : e.partial().warnings) flagged = flagged || w.starts_with("unverified_period");
        CHECK(flagged);
    }
}

TEST_CASE("evaluation is deterministic") {
    auto f = DecayingFunction::logistic_tail();
    auto g = PeriodicFunction::log_cos_squared();
    auto a = evaluate_mixed(f, g, 1e-10, false);
    auto b = evaluate_mixed(f, g, 1e-10, false);
    CHECK(a.value == b.value);
    CHECK(a.n_used == b.n_used);
}

TEST_CASE("periodization") {
    auto g = DecayingFunction::gaussian(1.0);
    CHECK(periodize_sample(g, 2 * kPi, 0.0, 3) == doctest::Approx(1.00010344637240764).epsilon(1e-15));

    auto s = DecayingFunction::sech(1.0);
    for (double x : {0.0, 1.0, -2.0}) {
        const int K = 5;
        double diff = periodize_sample(s, 2 * kPi, x, K) - periodize_sample(s, 2 * kPi, x + 2 * kPi, K - 1);
        double sup = 1.0 / std::cosh(2 * kPi * K - std::fabs(x) - 2 * kPi);
        CHECK(std::fabs(diff) <= 2 * sup);
        // Kept small so the added terms are above one ulp.
        CHECK(periodize_sample(s, 2 * kPi, x, 3) > periodize_sample(s, 2 * kPi, x, 2));
    }
}

TEST_CASE("classical Parseval on the periodization") {
    auto sides = classical_parseval_sides(DecayingFunction::sech(1.0), PeriodicFunction::cosh_plus_cos(1.0), 8, 64, 1e-12);
    CHECK(std::abs(sides.lhs - sides.rhs) <= 1e-6);
    CHECK(sides.lhs.real() == doctest::Approx(0.309930376255737678).epsilon(1e-12));

    auto gm = classical_parseval_sides(DecayingFunction::gaussian(1.0), PeriodicFunction::cosh_minus_cos(1.0), 8, 64, 1e-12);
    CHECK(std::abs(gm.lhs - gm.rhs) <= 1e-6);

    auto wide = PeriodicFunction::cosh_plus_cos(1.0).with_period(4 * kPi);
    CHECK_THROWS(classical_parseval_sides(DecayingFunction::sech(1.0), wide, 8, 64, 1e-12));
}
