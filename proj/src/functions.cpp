#include "mixparseval/functions.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace mixparseval {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw ParameterError(std::string("parameter ") + name + " must be a finite positive number");
    }
}

double param(const FamilyParams& params, const std::string& family, const char* key) {
    auto it = params.find(key);
    if (it == params.end()) {
        throw ParameterError("family '" + family + "' requires parameter " + key + "=");
    }
    return it->second;
}

void reject_extra(const FamilyParams& params, const std::string& family,
                  std::initializer_list<const char*> allowed) {
    for (const auto& [k, v] : params) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || k == a;
        if (!ok) throw ParameterError("family '" + family + "' does not take parameter " + k + "=");
    }
}

}  // namespace

double Envelope::bound(double abs_x) const {
    if (shape == Shape::exponential) return scale * std::exp(-rate * abs_x);
    return scale * std::exp(-rate * abs_x * abs_x);
}

double Envelope::two_sided_tail(double L) const {
    L = std::max(L, x0);
    if (shape == Shape::exponential) return 2.0 * scale * std::exp(-rate * L) / rate;
    return scale * std::sqrt(std::numbers::pi / rate) * std::erfc(std::sqrt(rate) * L);
}

double Envelope::cutoff_for(double budget) const {
    if (two_sided_tail(x0) <= budget) return x0;
    if (shape == Shape::exponential) {
        double L = std::log(2.0 * scale / (rate * budget)) / rate;
        return std::max(L, x0);
    }
    double lo = x0;
    double hi = std::max(1.0, 2.0 * x0);
    while (two_sided_tail(hi) > budget) hi *= 2.0;
    for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
        double mid = 0.5 * (lo + hi);
        (two_sided_tail(mid) > budget ? lo : hi) = mid;
    }
    return hi;
}

// --- DecayingFunction ---------------------------------------------------

DecayingFunction DecayingFunction::sech(double b) {
    require_positive(b, "b");
    // 1/cosh(bx) = 2/(e^{b|x|} + e^{-b|x|}) <= 2 e^{-b|x|}
    return {SechFamily{b}, Envelope{Envelope::Shape::exponential, 2.0, b, 0.0}};
}

DecayingFunction DecayingFunction::gaussian(double b) {
    require_positive(b, "b");
    return {GaussianFamily{b}, Envelope{Envelope::Shape::gaussian, 1.0, 1.0 / (4.0 * b), 0.0}};
}

DecayingFunction DecayingFunction::logistic_tail() {
    return {LogisticTailFamily{}, Envelope{Envelope::Shape::exponential, 1.0, 2.0, 0.0}};
}

DecayingFunction DecayingFunction::from_expr(Expr expr, std::optional<Envelope> envelope) {
    if (envelope) {
        require_positive(envelope->scale, "envelope scale");
        require_positive(envelope->rate, "envelope rate");
    }
    return {std::move(expr), envelope};
}

double DecayingFunction::operator()(double x) const {
    return std::visit(overloaded{
                          [x](const SechFamily& s) { return 1.0 / std::cosh(s.b * x); },
                          [x](const GaussianFamily& g) { return std::exp(-x * x / (4.0 * g.b)); },
                          [x](const LogisticTailFamily&) {
                              // e^{-2|x|}/(1+e^{-2|x|}) avoids overflow for large |x|.
                              double t = std::exp(-2.0 * std::fabs(x));
                              return t / (1.0 + t);
                          },
                          [x](const Expr& e) { return e.eval(x); },
                      },
                      body_);
}

std::string DecayingFunction::describe() const {
    std::ostringstream os;
    os.precision(17);
    std::visit(overloaded{
                   [&](const SechFamily& s) { os << "sech(b=" << s.b << ")"; },
                   [&](const GaussianFamily& g) { os << "gaussian(b=" << g.b << ")"; },
                   [&](const LogisticTailFamily&) { os << "logistic-tail"; },
                   [&](const Expr& e) { os << "expr(" << e.source() << ")"; },
               },
               body_);
    return os.str();
}

// --- PeriodicFunction ---------------------------------------------------

PeriodicFunction PeriodicFunction::cosh_plus_cos(double a) {
    require_positive(a, "a");
    return {CoshPlusCosFamily{a}, kTwoPi, 1, {}, true};
}

PeriodicFunction PeriodicFunction::cosh_minus_cos(double a) {
    require_positive(a, "a");
    return {CoshMinusCosFamily{a}, kTwoPi, 1, {}, true};
}

PeriodicFunction PeriodicFunction::log_cos_squared() {
    return {LogCosSquaredFamily{}, kTwoPi, 1,
            {0.5 * std::numbers::pi, 1.5 * std::numbers::pi}, true};
}

PeriodicFunction PeriodicFunction::from_expr(Expr expr, double period,
                                             std::vector<double> singular_points) {
    require_positive(period, "period");
    for (double s : singular_points) {
        if (!(s >= 0.0 && s < period)) throw ParameterError("singular points must lie in [0, period)");
    }
    PeriodicFunction g{std::move(expr), period, 1, std::move(singular_points), false};
    g.period_verified_ = check_periodicity(g);
    return g;
}

double PeriodicFunction::operator()(double x) const {
    return std::visit(overloaded{
                          [x](const CoshPlusCosFamily& k) { return 1.0 / (std::cosh(k.a) + std::cos(x)); },
                          [x](const CoshMinusCosFamily& k) { return 1.0 / (std::cosh(k.a) - std::cos(x)); },
                          [x](const LogCosSquaredFamily&) {
                              double c = std::cos(x);
                              return std::log(c * c);
                          },
                          [x](const Expr& e) { return e.eval(x); },
                      },
                      body_);
}

PeriodicFunction PeriodicFunction::with_period(double period) const {
    require_positive(period, "period");
    if (!is_builtin()) {
        PeriodicFunction g = *this;
        g.period_ = period;
        g.multiple_ = 1;
        g.period_verified_ = check_periodicity(g);
        return g;
    }
    double ratio = period / kTwoPi;
    double m = std::round(ratio);
    if (m < 1.0 || std::fabs(ratio - m) > 1e-12 * ratio) {
        throw ParameterError("built-in periodic families accept only integer multiples of 2*pi as period");
    }
    int multiple = static_cast<int>(m);
    std::vector<double> singular;
    for (int j = 0; j < multiple; ++j) {
        // singular_ always spans the first 2*pi block first, in order.
        for (double s : singular_) {
            if (s >= kTwoPi) break;
            singular.push_back(s + j * kTwoPi);
        }
    }
    return {body_, multiple * kTwoPi, multiple, std::move(singular), true};
}

std::optional<double> PeriodicFunction::sup_bound() const {
    return std::visit(overloaded{
                          [](const CoshPlusCosFamily& k) -> std::optional<double> {
                              return 1.0 / (std::cosh(k.a) - 1.0);
                          },
                          [](const CoshMinusCosFamily& k) -> std::optional<double> {
                              return 1.0 / (std::cosh(k.a) - 1.0);
                          },
                          [](const auto&) -> std::optional<double> { return std::nullopt; },
                      },
                      body_);
}

std::string PeriodicFunction::describe() const {
    std::ostringstream os;
    os.precision(17);
    std::visit(overloaded{
                   [&](const CoshPlusCosFamily& k) { os << "cosh-plus-cos(a=" << k.a << ")"; },
                   [&](const CoshMinusCosFamily& k) { os << "cosh-minus-cos(a=" << k.a << ")"; },
                   [&](const LogCosSquaredFamily&) { os << "log-cos-squared"; },
                   [&](const Expr& e) { os << "expr(" << e.source() << ")"; },
               },
               body_);
    os << " T=" << period_;
    return os.str();
}

// --- factories ------------------------------------------------------------

DecayingFunction make_decaying(const std::string& family, const FamilyParams& params) {
    if (family == "sech") {
        reject_extra(params, family, {"b"});
        return DecayingFunction::sech(param(params, family, "b"));
    }
    if (family == "gaussian") {
        reject_extra(params, family, {"b"});
        return DecayingFunction::gaussian(param(params, family, "b"));
    }
    if (family == "logistic-tail") {
        reject_extra(params, family, {});
        return DecayingFunction::logistic_tail();
    }
    throw ParameterError("unknown decaying family '" + family + "'");
}

PeriodicFunction make_periodic(const std::string& family, const FamilyParams& params) {
    if (family == "cosh-plus-cos") {
        reject_extra(params, family, {"a"});
        return PeriodicFunction::cosh_plus_cos(param(params, family, "a"));
    }
    if (family == "cosh-minus-cos") {
        reject_extra(params, family, {"a"});
        return PeriodicFunction::cosh_minus_cos(param(params, family, "a"));
    }
    if (family == "log-cos-squared") {
        reject_extra(params, family, {});
        return PeriodicFunction::log_cos_squared();
    }
    throw ParameterError("unknown periodic family '" + family + "'");
}

bool check_periodicity(const PeriodicFunction& g, double tol, int samples) {
    std::mt19937_64 rng(0x5eed);
    double T = g.period();
    std::uniform_real_distribution<double> dist(-10.0 * T, 10.0 * T);
    for (int i = 0; i < samples; ++i) {
        double x = dist(rng);
        double a = g(x);
        double b = g(x + T);
        if (!std::isfinite(a) || !std::isfinite(b)) continue;
        if (std::fabs(a - b) > tol * std::max(1.0, std::fabs(a))) return false;
    }
    return true;
}

}  // namespace mixparseval
