#include "mixparseval/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "mixparseval/catalog.hpp"
#include "mixparseval/engine.hpp"
#include "mixparseval/expr.hpp"
#include "mixparseval/fourier.hpp"
#include "mixparseval/functions.hpp"
#include "mixparseval/report.hpp"

namespace mixparseval {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct FOptions {
    std::string family;
    std::string expr;
    std::vector<std::string> params;
    std::string envelope;
};

struct GOptions {
    std::string family;
    std::string expr;
    std::vector<std::string> params;
    double period = 0.0;
    std::vector<double> singular;
};

void add_f_options(CLI::App* cmd, FOptions& f) {
    auto* fam = cmd->add_option("--f", f.family, "decaying family: sech, gaussian, logistic-tail");
    auto* ex = cmd->add_option("--f-expr", f.expr, "expression in x defining f");
    fam->excludes(ex);
    cmd->add_option("--f-param", f.params, "family parameter k=v (repeatable)");
    cmd->add_option("--f-envelope", f.envelope, "decay hint for --f-expr: exp:RATE[:SCALE[:X0]] or gauss:RATE[:SCALE[:X0]]");
}

void add_g_options(CLI::App* cmd, GOptions& g, bool with_period) {
    auto* fam = cmd->add_option("--g", g.family, "periodic family: cosh-plus-cos, cosh-minus-cos, log-cos-squared");
    auto* ex = cmd->add_option("--g-expr", g.expr, "expression in x defining g");
    fam->excludes(ex);
    cmd->add_option("--g-param", g.params, "family parameter k=v (repeatable)");
    if (with_period) cmd->add_option("--period", g.period, "period T of g (required with --g-expr)");
    cmd->add_option("--g-singular", g.singular, "singular point of --g-expr within [0, T) (repeatable)");
}

FamilyParams parse_params(const std::vector<std::string>& items) {
    FamilyParams out;
    for (const std::string& item : items) {
        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) throw UsageError("bad parameter '" + item + "': expected k=v");
        std::string key = item.substr(0, eq);
        std::string text = item.substr(eq + 1);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(text, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != text.size()) throw UsageError("bad parameter value in '" + item + "'");
        out[key] = v;
    }
    return out;
}

Envelope parse_envelope(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() < 2 || parts.size() > 4) throw UsageError("bad --f-envelope '" + text + "'");
    Envelope env;
    if (parts[0] == "exp") {
        env.shape = Envelope::Shape::exponential;
    } else if (parts[0] == "gauss") {
        env.shape = Envelope::Shape::gaussian;
    } else {
        throw UsageError("bad --f-envelope shape '" + parts[0] + "': expected exp or gauss");
    }
    try {
        env.rate = std::stod(parts[1]);
        if (parts.size() > 2) env.scale = std::stod(parts[2]);
        if (parts.size() > 3) env.x0 = std::stod(parts[3]);
    } catch (const std::exception&) {
        throw UsageError("bad number in --f-envelope '" + text + "'");
    }
    return env;
}

DecayingFunction build_f(const FOptions& o) {
    if (o.family.empty() == o.expr.empty()) throw UsageError("exactly one of --f or --f-expr is required");
    if (!o.family.empty()) {
        if (!o.envelope.empty()) throw UsageError("--f-envelope applies to --f-expr only");
        return make_decaying(o.family, parse_params(o.params));
    }
    if (!o.params.empty()) throw UsageError("--f-param applies to --f only");
    std::optional<Envelope> env;
    if (!o.envelope.empty()) env = parse_envelope(o.envelope);
    return DecayingFunction::from_expr(parse(o.expr), env);
}

PeriodicFunction build_g(const GOptions& o) {
    if (o.family.empty() == o.expr.empty()) throw UsageError("exactly one of --g or --g-expr is required");
    if (!o.family.empty()) {
        if (!o.singular.empty()) throw UsageError("--g-singular applies to --g-expr only");
        PeriodicFunction g = make_periodic(o.family, parse_params(o.params));
        return o.period > 0.0 ? g.with_period(o.period) : g;
    }
    if (!o.params.empty()) throw UsageError("--g-param applies to --g only");
    if (!(o.period > 0.0)) throw UsageError("--period is required with --g-expr and must be positive");
    return PeriodicFunction::from_expr(parse(o.expr), o.period, o.singular);
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

void print_report(const Report& r, bool json, std::ostream& out) {
    if (json) {
        out << to_json(r).dump() << '\n';
        return;
    }
    out << std::setprecision(17);
    out << "method:     " << r.method << '\n';
    out << "value:      " << r.value_re;
    if (r.value_im != 0.0) out << (r.value_im < 0 ? " - " : " + ") << std::fabs(r.value_im) << "i";
    out << '\n';
    out << "tail_bound: " << std::setprecision(3) << r.tail_bound << '\n';
    out << "n_used:     " << r.n_used << '\n';
    out << std::setprecision(17);
    if (r.oracle_value) out << "oracle:     " << *r.oracle_value << '\n';
    if (r.oracle_gap) out << "oracle_gap: " << std::setprecision(3) << *r.oracle_gap << '\n';
    if (r.hypothesis_verdict) out << "hypothesis: " << *r.hypothesis_verdict << '\n';
    out << "timing_ms:  " << std::setprecision(4) << r.timing_ms << '\n';
}

Report from_mixed(const MixedResult& m, std::string method) {
    Report r;
    r.method = std::move(method);
    r.value_re = m.value.real();
    r.value_im = m.value.imag();
    r.tail_bound = m.tail_bound;
    r.n_used = m.n_used;
    if (m.oracle) {
        r.oracle_value = m.oracle->value;
        r.oracle_gap = m.oracle_gap;
    }
    return r;
}

struct Cli {
    Cli(std::ostream& o, std::ostream& e) : out(o), err(e) {}

    std::ostream& out;
    std::ostream& err;

    FOptions f;
    GOptions g;
    double tol = 1e-10;
    double oracle_tol = 0.0;
    bool compare_oracle = false;
    bool check = false;
    bool json = false;
    bool numeric = false;
    bool show_terms = false;
    int start_n = 16;
    int max_n = 4096;
    double omega = 0.0;
    int n_max = 8;
    int blocks = 6;
    int example = 0;
    double a = 1.0;
    double b = 1.0;

    int evaluate() {
        auto start = std::chrono::steady_clock::now();
        DecayingFunction fn = build_f(f);
        PeriodicFunction gn = build_g(g);
        EvaluateOptions opts;
        opts.start_n = start_n;
        opts.max_n = max_n;
        opts.oracle_tol = oracle_tol;
        opts.keep_terms = show_terms;
        std::optional<HypothesisReport> hyp;
        if (check) hyp = check_hypothesis(fn, gn.period(), blocks, 1e-12);

        int status = kExitConverged;
        MixedResult m;
        try {
            m = evaluate_mixed(fn, gn, tol, compare_oracle, opts);
        } catch (const NonConvergenceError& e) {
            err << "non-convergence: " << e.what() << '\n';
            m = e.partial();
            status = kExitNonConvergence;
        }
        for (const auto& w : m.warnings) err << "warning: " << w << '\n';
        if (!json && show_terms) {
            out << std::setprecision(17);
            for (const auto& t : m.terms) {
                out << "term n=" << t.n << " fhat=" << t.transform.real() << " C=" << t.coefficient.real()
                    << " product=" << t.product.real() << '\n';
            }
        }
        Report r = from_mixed(m, "mixed-series");
        if (hyp) r.hypothesis_verdict = std::string(to_string(hyp->verdict));
        r.timing_ms = elapsed_ms(start);
        print_report(r, json, out);
        if (!json) {
            out << "tail_rule:  " << to_string(m.tail_rule) << '\n';
        }
        return status;
    }

    int transform_cmd() {
        auto start = std::chrono::steady_clock::now();
        DecayingFunction fn = build_f(f);
        TransformValue v = transform_value(fn, omega, tol, numeric ? FourierPath::numeric : FourierPath::automatic);
        Report r;
        r.method = v.source == FourierSource::analytic ? "transform-analytic" : "transform-numeric";
        r.value_re = v.value.real();
        r.value_im = v.value.imag();
        r.tail_bound = v.error_bound;
        r.n_used = 1;
        r.timing_ms = elapsed_ms(start);
        print_report(r, json, out);
        return kExitConverged;
    }

    int coeffs_cmd() {
        auto start = std::chrono::steady_clock::now();
        PeriodicFunction gn = build_g(g);
        if (n_max < 0) throw UsageError("--n-max must be >= 0");
        CoefficientTable t = coefficient_table(gn, n_max, tol, numeric ? FourierPath::numeric : FourierPath::automatic);
        const char* source = t.source == FourierSource::analytic ? "analytic" : "numeric";
        if (json) {
            nlohmann::json j;
            j["method"] = "coeffs";
            j["source"] = source;
            j["period"] = gn.period();
            j["n_max"] = t.n_max;
            j["grid_size"] = t.grid_size;
            j["converged"] = t.converged;
            j["coefficients"] = nlohmann::json::array();
            for (int n = -n_max; n <= n_max; ++n) {
                j["coefficients"].push_back({{"n", n}, {"re", t.at(n).real()}, {"im", t.at(n).imag()}});
            }
            j["timing_ms"] = elapsed_ms(start);
            out << j.dump() << '\n';
        } else {
            out << "g:      " << gn.describe() << '\n';
            out << "source: " << source;
            if (t.grid_size) out << " (grid " << t.grid_size << ")";
            out << '\n' << std::setprecision(17);
            for (int n = -n_max; n <= n_max; ++n) {
                out << "C[" << n << "] = " << t.at(n).real();
                if (t.at(n).imag() != 0.0) out << (t.at(n).imag() < 0 ? " - " : " + ") << std::fabs(t.at(n).imag()) << "i";
                out << '\n';
            }
        }
        return t.converged ? kExitConverged : kExitNonConvergence;
    }

    int hypothesis_cmd() {
        auto start = std::chrono::steady_clock::now();
        DecayingFunction fn = build_f(f);
        const double T = g.period > 0.0 ? g.period : kTwoPi;
        HypothesisReport h = check_hypothesis(fn, T, blocks, std::min(tol, 1e-12));
        Report r;
        r.method = "check-hypothesis";
        r.value_re = h.partial_M;
        r.tail_bound = h.tail_bound;
        r.n_used = 2L * h.K + 1;
        r.hypothesis_verdict = std::string(to_string(h.verdict));
        r.timing_ms = elapsed_ms(start);
        if (!json) {
            out << std::setprecision(6);
            for (int k = -h.K; k <= h.K; ++k) out << "block " << k << ": " << h.block_norm(k) << '\n';
            out << "decay_ratio: " << h.decay_ratio << " (negative side " << h.ratio_negative << ", positive side "
                << h.ratio_positive << ")\n";
        }
        print_report(r, json, out);
        return kExitConverged;
    }

    int example_cmd() {
        auto start = std::chrono::steady_clock::now();
        Report r;
        std::ostringstream notes;
        notes << std::setprecision(17);
        int status = kExitConverged;
        switch (example) {
            case 1: {
                auto s = catalog::example1_series(a, b, std::min(tol, 1e-14));
                QuadratureResult q = oracle_integral(DecayingFunction::sech(b), PeriodicFunction::cosh_plus_cos(a), tol);
                r.method = "example-1-series";
                r.value_re = s.value;
                r.tail_bound = s.tail_bound;
                r.n_used = s.terms_used;
                r.oracle_value = q.value;
                r.oracle_gap = std::fabs(s.value - q.value);
                notes << "integral: dx / ((cosh a + cos x) cosh(b x)), a=" << a << " b=" << b << '\n';
                break;
            }
            case 2: {
                auto fn = DecayingFunction::logistic_tail();
                auto gn = PeriodicFunction::log_cos_squared();
                MixedResult m;
                try {
                    m = evaluate_mixed(fn, gn, tol, true);
                } catch (const NonConvergenceError& e) {
                    err << "non-convergence: " << e.what() << '\n';
                    m = e.partial();
                    status = kExitNonConvergence;
                }
                r = from_mixed(m, "example-2-series");
                if (!m.oracle) {
                    QuadratureResult q = oracle_integral(fn, gn, tol);
                    r.oracle_value = q.value;
                    r.oracle_gap = std::fabs(m.value.real() - q.value);
                }
                auto J = catalog::example2_double_sum_J(1'000'000);
                notes << "integral: log(cos^2 x) / (1 + e^{2|x|}) dx\n";
                notes << "closed form -log^2 2: " << catalog::example2_reference() << '\n';
                notes << "-2 log^2 2 + 2J (J over a 10^6 box): "
                      << -2.0 * std::log(2.0) * std::log(2.0) + 2.0 * J.value << '\n';
                break;
            }
            case 3: {
                auto s = catalog::example3_theta(a, b, std::min(tol, 1e-14));
                QuadratureResult q = oracle_integral(DecayingFunction::gaussian(b), PeriodicFunction::cosh_minus_cos(a), tol);
                r.method = "example-3-series";
                r.value_re = s.value;
                r.tail_bound = s.tail_bound;
                r.n_used = s.terms_used;
                r.oracle_value = q.value;
                r.oracle_gap = std::fabs(s.value - q.value);
                notes << "integral: exp(-x^2/(4b)) / (cosh a - cos x) dx, a=" << a << " b=" << b << '\n';
                if (a == b) notes << "theta_2 form: " << catalog::example3_theta_closed_form(a) << '\n';
                break;
            }
            default:
                throw UsageError("example must be 1, 2 or 3");
        }
        r.timing_ms = elapsed_ms(start);
        if (!json) out << notes.str();
        print_report(r, json, out);
        return status;
    }
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Cli cli(out, err);
    CLI::App app{"Integrals of a decaying function against a periodic one, by Fourier series", "mixparseval"};
    app.require_subcommand(1);

    auto* eval = app.add_subcommand("evaluate", "evaluate \\int f conj(g) dx by the mixed series");
    add_f_options(eval, cli.f);
    add_g_options(eval, cli.g, true);
    eval->add_option("--tol", cli.tol, "series tolerance")->capture_default_str();
    eval->add_option("--oracle-tol", cli.oracle_tol, "quadrature oracle tolerance (default: --tol)");
    eval->add_flag("--compare-oracle", cli.compare_oracle, "cross-check against adaptive quadrature");
    eval->add_flag("--check-hypothesis", cli.check, "run the block-summability check on f");
    eval->add_option("--blocks", cli.blocks, "blocks per side for --check-hypothesis")->capture_default_str();
    eval->add_option("--start-n", cli.start_n, "initial truncation N")->capture_default_str();
    eval->add_option("--max-n", cli.max_n, "largest truncation N")->capture_default_str();
    eval->add_flag("--terms", cli.show_terms, "print every series term (text mode)");
    eval->add_flag("--json", cli.json, "emit a JSON report");

    auto* tr = app.add_subcommand("transform", "Fourier transform f^(omega) = \\int f(t) e^{-i omega t} dt");
    add_f_options(tr, cli.f);
    tr->add_option("--omega", cli.omega, "frequency")->required();
    tr->add_option("--tol", cli.tol, "tolerance")->capture_default_str();
    tr->add_flag("--numeric", cli.numeric, "force the quadrature path");
    tr->add_flag("--json", cli.json, "emit a JSON report");

    auto* co = app.add_subcommand("coeffs", "Fourier coefficients C_n(g), |n| <= n-max");
    add_g_options(co, cli.g, true);
    co->add_option("--n-max", cli.n_max, "largest |n|")->capture_default_str();
    co->add_option("--tol", cli.tol, "tolerance for the numeric path")->capture_default_str();
    co->add_flag("--numeric", cli.numeric, "force the trapezoid path");
    co->add_flag("--json", cli.json, "emit JSON");

    auto* hy = app.add_subcommand("check-hypothesis", "block L2 norms of f and their decay");
    add_f_options(hy, cli.f);
    hy->add_option("--period", cli.g.period, "block length T (default 2*pi)");
    hy->add_option("--blocks", cli.blocks, "K: blocks k = -K..K")->capture_default_str();
    hy->add_option("--tol", cli.tol, "block quadrature tolerance (capped at 1e-12)");
    hy->add_flag("--json", cli.json, "emit a JSON report");

    auto* ex = app.add_subcommand("paper-example", "reproduce a worked reference integral (1, 2 or 3)");
    ex->add_option("example", cli.example, "1, 2 or 3")->required()->check(CLI::Range(1, 3));
    ex->add_option("--a", cli.a, "kernel parameter a")->capture_default_str();
    ex->add_option("--b", cli.b, "decay parameter b")->capture_default_str();
    ex->add_option("--tol", cli.tol, "tolerance")->capture_default_str();
    ex->add_flag("--json", cli.json, "emit a JSON report");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitConverged;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (eval->parsed()) return cli.evaluate();
        if (tr->parsed()) return cli.transform_cmd();
        if (co->parsed()) return cli.coeffs_cmd();
        if (hy->parsed()) return cli.hypothesis_cmd();
        if (ex->parsed()) return cli.example_cmd();
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "error: expression: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UnsupportedError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::runtime_error& e) {
        // FourierError, QuadratureError, HypothesisError: numerics gave up.
        err << "error: " << e.what() << '\n';
        return kExitNonConvergence;
    }
    return kExitUsage;
}

}  // namespace mixparseval
