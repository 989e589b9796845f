#include "mixparseval/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace mixparseval {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kTailWindow = 8;
constexpr double kRatioGate = 0.99;
constexpr double kVerdictGate = 0.95;
constexpr double kSmallKernelParameter = 0.05;

struct Fit {
    double slope = 0.0;
    int points = 0;
};

// Least-squares slope of y against x.
Fit fit_slope(std::span<const double> xs, std::span<const double> ys) {
    Fit fit;
    fit.points = static_cast<int>(xs.size());
    if (xs.size() < 2) return fit;
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
    return fit;
}

// Geometric ratio per block fitted to log-norms at increasing distance.
double side_ratio(std::span<const double> norms_outward) {
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < norms_outward.size(); ++i) {
        if (norms_outward[i] > 0.0) {
            xs.push_back(static_cast<double>(i));
            ys.push_back(std::log(norms_outward[i]));
        }
    }
    if (xs.size() < 2) {
        // Underflowed to zero: decay outran double precision.
        return norms_outward.back() == 0.0 ? 0.0 : 1.0;
    }
    return std::exp(fit_slope(xs, ys).slope);
}

double oracle_weight(const DecayingFunction& f, const PeriodicFunction& g) {
    if (auto sup = g.sup_bound()) return *sup;
    const double T = g.period();
    if (std::holds_alternative<LogCosSquaredFamily>(g.body())) {
        // Mean of |log cos^2| over a period is 2 log 2; spread across the
        // periods remaining beyond the cutoff.
        const double mean = 2.0 * std::numbers::ln2;
        const auto& env = f.envelope();
        if (env && env->shape == Envelope::Shape::exponential) {
            const double r = env->rate;
            return r * T * mean / (1.0 - std::exp(-r * T)) + 1.0;
        }
        return 10.0 * T * mean;
    }
    // Expression-defined: sampled sup over one period.
    double sup = 0.0;
    constexpr int kSamples = 4096;
    for (int j = 0; j < kSamples; ++j) {
        double v = std::fabs(g(T * (j + 0.5) / kSamples));
        if (std::isfinite(v)) sup = std::max(sup, v);
    }
    return std::max(sup, 1.0);
}

// Terms are summed in the order n = 0, 1, -1, 2, -2, ...
Complex ordered_sum(std::span<const Complex> products, int N) {
    Complex s = products[static_cast<std::size_t>(N)];
    for (int m = 1; m <= N; ++m) {
        s += products[static_cast<std::size_t>(N + m)];
        s += products[static_cast<std::size_t>(N - m)];
    }
    return s;
}

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace

std::string_view to_string(Verdict v) {
    return v == Verdict::finite_evidence ? "finite_evidence" : "inconclusive";
}

std::string_view to_string(TailRule r) {
    switch (r) {
        case TailRule::none: return "none";
        case TailRule::geometric: return "geometric";
        case TailRule::alternating: return "alternating";
        case TailRule::negligible: return "negligible";
    }
    return "none";
}

HypothesisReport check_hypothesis(const DecayingFunction& f, double period, int K, double tol) {
    if (!(period > 0.0)) throw std::invalid_argument("check_hypothesis: requires T > 0");
    if (K < 4) throw std::invalid_argument("check_hypothesis: requires K >= 4");
    if (!(tol > 0.0)) throw std::invalid_argument("check_hypothesis: requires tol > 0");

    HypothesisReport rep;
    rep.period = period;
    rep.K = K;
    rep.block_norms.resize(static_cast<std::size_t>(2 * K + 1));
    auto square = [&f](double x) {
        double v = f(x);
        return v * v;
    };
    FiniteOptions opts;
    opts.rel_tol = 1e-10;  // outer blocks are far below any absolute tol
    for (int k = -K; k <= K; ++k) {
        QuadratureResult q = integrate_finite(square, k * period, (k + 1) * period, tol, {}, opts);
        if (!q.converged) {
            throw HypothesisError("block quadrature failed on [" + format_double(k * period) + ", " +
                                  format_double((k + 1) * period) + "]");
        }
        double norm = std::sqrt(std::max(q.value, 0.0));
        rep.block_norms[static_cast<std::size_t>(k + K)] = norm;
        rep.partial_M += norm;
    }

    std::vector<double> pos, neg;
    for (int k = K - 3; k <= K; ++k) pos.push_back(rep.block_norm(k));
    for (int k = -K + 3; k >= -K; --k) neg.push_back(rep.block_norm(k));
    rep.ratio_positive = side_ratio(pos);
    rep.ratio_negative = side_ratio(neg);
    rep.decay_ratio = std::max(rep.ratio_positive, rep.ratio_negative);
    rep.verdict = (rep.ratio_positive < kVerdictGate && rep.ratio_negative < kVerdictGate) ? Verdict::finite_evidence
                                                                                         : Verdict::inconclusive;
    auto side_tail = [](double last, double rho) {
        return rho < 1.0 ? last * rho / (1.0 - rho) : std::numeric_limits<double>::infinity();
    };
    rep.tail_bound = side_tail(pos.back(), rep.ratio_positive) + side_tail(neg.back(), rep.ratio_negative);
    return rep;
}

TailEstimate estimate_tail(std::span<const Complex> products, int N, double tol) {
    TailEstimate best{std::numeric_limits<double>::infinity(), TailRule::none, 1.0};
    if (N < 1) return best;
    auto at = [&](int n) { return products[static_cast<std::size_t>(n + N)]; };

    // Walk inward from N until the window holds kTailWindow nonzero pairs.
    // Exact zeros are skipped: a g declared with a multiple of its period
    // has most coefficients vanish identically.
    std::vector<double> ms, logs, mags;
    std::vector<Complex> pairs;
    double window_max = 0.0;
    double window_sum = 0.0;
    for (int m = N; m >= 1 && static_cast<int>(ms.size()) < kTailWindow; --m) {
        const double mag = std::abs(at(m)) + std::abs(at(-m));
        window_max = std::max(window_max, mag);
        window_sum += mag;
        if (mag > std::numeric_limits<double>::min()) {
            ms.push_back(m);
            logs.push_back(std::log(mag));
            mags.push_back(mag);
            pairs.push_back(at(m) + at(-m));
        }
    }
    // Collected outside-in; the fits below want ascending m. mags[0] is the outermost.
    std::reverse(ms.begin(), ms.end());
    std::reverse(logs.begin(), logs.end());
    std::reverse(pairs.begin(), pairs.end());
    const int last_nonzero = ms.empty() ? -1 : static_cast<int>(ms.back());
    const double last_magnitude = mags.empty() ? 0.0 : mags.front();

    auto consider = [&](double bound, TailRule rule, double ratio) {
        if (bound < best.bound) best = {bound, rule, ratio};
    };

    if (ms.size() >= 3) {
        const double rho = std::exp(fit_slope(ms, logs).slope);
        if (rho < kRatioGate) {
            const double steps = static_cast<double>(N + 1 - last_nonzero);
            consider(last_magnitude * std::pow(rho, steps) / (1.0 - rho), TailRule::geometric, rho);
        }
    }

    if (pairs.size() >= 4) {
        bool alternating = true;
        for (std::size_t i = 1; i < pairs.size() && alternating; ++i) {
            const double turn = (pairs[i] * std::conj(pairs[i - 1])).real();
            alternating = turn < 0.0 && std::abs(pairs[i]) < std::abs(pairs[i - 1]);
        }
        if (alternating) consider(std::abs(pairs.back()), TailRule::alternating, 1.0);
    }

    if (window_max <= tol * 1e-3) consider(window_sum, TailRule::negligible, 0.0);
    return best;
}

QuadratureResult oracle_integral(const DecayingFunction& f, const PeriodicFunction& g, double tol) {
    LineOptions opts;
    opts.envelope = f.envelope();
    opts.envelope_weight = oracle_weight(f, g);
    if (!g.singular_points().empty()) opts.splits = PeriodicSplits{g.singular_points(), g.period()};
    // g is real-valued throughout, so conj(g) = g.
    return integrate_line([&](double x) { return f(x) * g(x); }, tol, opts);
}

MixedResult evaluate_mixed(const DecayingFunction& f, const PeriodicFunction& g, double tol, bool with_oracle,
                           const EvaluateOptions& options) {
    if (!(tol > 0.0)) throw std::invalid_argument("evaluate_mixed: requires tol > 0");
    if (options.start_n < 1 || options.max_n < options.start_n) {
        throw std::invalid_argument("evaluate_mixed: requires 1 <= start_n <= max_n");
    }

    MixedResult result;
    if (const auto* k = std::get_if<CoshPlusCosFamily>(&g.body()); k && k->a < kSmallKernelParameter) {
        result.warnings.push_back("kernel parameter a < 0.05: coefficients decay slowly, N may reach the cap");
    }
    if (const auto* k = std::get_if<CoshMinusCosFamily>(&g.body()); k && k->a < kSmallKernelParameter) {
        result.warnings.push_back("kernel parameter a < 0.05: coefficients decay slowly, N may reach the cap");
    }
    if (!g.is_builtin() && !g.period_verified()) {
        result.warnings.push_back("unverified_period: g(x + T) != g(x) on sampled points");
    }

    const double T = g.period();
    const double term_tol = tol / 100.0;
    // transforms[n + max_n], computed once per index across doublings.
    std::vector<std::optional<TransformValue>> transforms(static_cast<std::size_t>(2 * options.max_n + 1));
    auto transform_at = [&](int n) -> const TransformValue& {
        auto& slot = transforms[static_cast<std::size_t>(n + options.max_n)];
        if (!slot) slot = transform_value(f, kTwoPi * n / T, term_tol, options.transform_path);
        return *slot;
    };

    int N = options.start_n;
    for (;;) {
        CoefficientTable table = coefficient_table(g, N, term_tol, options.coefficient_path);
        std::vector<Complex> products(static_cast<std::size_t>(2 * N + 1));
        double term_error = 0.0;
        for (int n = -N; n <= N; ++n) {
            const TransformValue& fh = transform_at(n);
            const Complex c = table.at(n);
            products[static_cast<std::size_t>(n + N)] = fh.value * std::conj(c);
            term_error += fh.error_bound * std::abs(c) + std::abs(fh.value) * table.max_change;
        }
        const TailEstimate tail = estimate_tail(products, N, tol);

        result.value = ordered_sum(products, N);
        result.n_used = N;
        result.tail_bound = tail.bound;
        result.tail_rule = tail.rule;
        result.fitted_ratio = tail.ratio;
        result.term_error = term_error;
        if (options.keep_terms) {
            result.terms.clear();
            auto record = [&](int n) {
                result.terms.push_back(
                    {n, transform_at(n).value, table.at(n), products[static_cast<std::size_t>(n + N)]});
            };
            record(0);
            for (int m = 1; m <= N; ++m) {
                record(m);
                record(-m);
            }
        }

        if (!table.converged) {
            result.converged = false;
            throw NonConvergenceError("numeric Fourier coefficients of " + g.describe() +
                                          " did not converge (last grid change " + format_double(table.max_change) +
                                          ")",
                                      std::move(result));
        }
        if (tail.bound < tol) {
            result.converged = true;
            break;
        }
        if (N >= options.max_n) {
            result.converged = false;
            if (result.tail_bound == std::numeric_limits<double>::infinity()) {
                result.tail_bound = std::numeric_limits<double>::max();
            }
            throw NonConvergenceError("series did not converge by N = " + std::to_string(N) +
                                          " (tail rule " + std::string(to_string(tail.rule)) + ", ratio " +
                                          format_double(tail.ratio) + ")",
                                      std::move(result));
        }
        N = std::min(2 * N, options.max_n);
    }

    if (with_oracle) {
        const double otol = options.oracle_tol > 0.0 ? options.oracle_tol : tol;
        QuadratureResult q = oracle_integral(f, g, otol);
        result.oracle_gap = std::fabs(result.value.real() - q.value);
        result.oracle = q;
    }
    return result;
}

double periodize_sample(const DecayingFunction& f, double period, double x, int K) {
    if (K < 1) throw std::invalid_argument("periodize_sample: requires K >= 1");
    double s = 0.0;
    for (int k = -K; k <= K; ++k) s += f(x + k * period);
    return s;
}

ParsevalSides classical_parseval_sides(const DecayingFunction& f, const PeriodicFunction& g, int K, int N,
                                       double tol) {
    if (std::fabs(g.period() - kTwoPi) > 1e-12) {
        throw std::invalid_argument("classical_parseval_sides: requires a 2*pi-periodic g");
    }
    if (N < 0) throw std::invalid_argument("classical_parseval_sides: requires N >= 0");

    auto integrand = [&](double x) { return periodize_sample(f, kTwoPi, x, K) * g(x); };
    std::vector<double> splits;
    for (double s : g.singular_points()) {
        if (s > 0.0 && s < kTwoPi) splits.push_back(s);
    }
    QuadratureResult q = integrate_finite(integrand, 0.0, kTwoPi, tol, splits);
    if (!q.converged) throw QuadratureError("classical_parseval_sides: quadrature did not converge", 0.0);

    ParsevalSides sides;
    sides.lhs = Complex(q.value / kTwoPi, 0.0);
    const double term_tol = tol / 100.0;
    Complex rhs = transform(f, 0.0, term_tol) / kTwoPi * std::conj(coefficient(g, 0, term_tol));
    for (int m = 1; m <= N; ++m) {
        for (int n : {m, -m}) {
            rhs += transform(f, static_cast<double>(n), term_tol) / kTwoPi * std::conj(coefficient(g, n, term_tol));
        }
    }
    sides.rhs = rhs;
    return sides;
}

}  // namespace mixparseval
