#include "mixparseval/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <variant>

#include "mixparseval/quadrature.hpp"

namespace mixparseval {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kFirstGridExponent = 8;
constexpr int kLastGridExponent = 18;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

TransformValue numeric_transform(const DecayingFunction& f, double omega, double tol) {
    LineOptions opts;
    opts.envelope = f.envelope();
    QuadratureResult re = integrate_line([&](double t) { return f(t) * std::cos(omega * t); }, tol / 2.0, opts);
    QuadratureResult im = integrate_line([&](double t) { return -f(t) * std::sin(omega * t); }, tol / 2.0, opts);
    if (!re.converged || !im.converged) {
        throw FourierError("numeric Fourier transform of " + f.describe() + " did not converge at omega = " +
                           std::to_string(omega));
    }
    return {Complex(re.value, im.value), re.error_estimate + im.error_estimate, FourierSource::numeric};
}

// Base-period (2*pi) coefficient of a built-in family.
Complex builtin_coefficient(const PeriodicFunction::Body& body, long n) {
    const double an = static_cast<double>(std::labs(n));
    return std::visit(overloaded{
                          [&](const CoshPlusCosFamily& k) {
                              double sign = (n % 2 == 0) ? 1.0 : -1.0;
                              return Complex(sign * std::exp(-an * k.a) / std::sinh(k.a), 0.0);
                          },
                          [&](const CoshMinusCosFamily& k) {
                              return Complex(std::exp(-an * k.a) / std::sinh(k.a), 0.0);
                          },
                          [&](const LogCosSquaredFamily&) {
                              if (n % 2 != 0) return Complex(0.0, 0.0);
                              long half = n / 2;
                              if (half == 0) return Complex(-2.0 * std::numbers::ln2, 0.0);
                              double sign = (half % 2 == 0) ? -1.0 : 1.0;  // (-1)^{half-1}
                              return Complex(sign / static_cast<double>(std::labs(half)), 0.0);
                          },
                          [](const Expr&) -> Complex {
                              throw FourierError("expression-defined g has no closed-form coefficients");
                          },
                      },
                      body);
}

Complex analytic_coefficient(const PeriodicFunction& g, long n) {
    const long m = g.period_multiple();
    if (n % m != 0) return {0.0, 0.0};
    return builtin_coefficient(g.body(), n / m);
}

std::vector<Complex> trapezoid_coefficients(const PeriodicFunction& g, int n_max, std::size_t grid) {
    const double T = g.period();
    std::vector<double> samples(grid);
    for (std::size_t j = 0; j < grid; ++j) {
        samples[j] = g(T * static_cast<double>(j) / static_cast<double>(grid));
    }
    std::vector<Complex> twiddle(grid);
    for (std::size_t j = 0; j < grid; ++j) {
        twiddle[j] = std::polar(1.0, -2.0 * kPi * static_cast<double>(j) / static_cast<double>(grid));
    }
    const long M = static_cast<long>(grid);
    std::vector<Complex> out(static_cast<std::size_t>(2 * n_max + 1));
    for (int n = -n_max; n <= n_max; ++n) {
        const long step = ((n % M) + M) % M;
        Complex acc{0.0, 0.0};
        long idx = 0;
        for (std::size_t j = 0; j < grid; ++j) {
            acc += samples[j] * twiddle[static_cast<std::size_t>(idx)];
            idx += step;
            if (idx >= M) idx -= M;
        }
        out[static_cast<std::size_t>(n + n_max)] = acc / static_cast<double>(grid);
    }
    return out;
}

}  // namespace

double logistic_tail_series(double omega, double tol, double* error_bound, int* terms) {
    // a_j = 4(j+1)/(4(j+1)^2 + w^2) = \int_0^1 x^j cos((w/2) log x) dx, a moment
    // sequence of a signed weight with total variation <= 1, so the
    // Cohen-Villegas-Zagier error is at most 2/(3+sqrt 8)^n.
    const double rho = 3.0 + std::sqrt(8.0);
    const double want = std::max(tol, 1e-17) / 2.0;
    int n = static_cast<int>(std::ceil(std::log(2.0 / want) / std::log(rho)));
    n = std::clamp(n, 4, 40);
    double d = std::pow(rho, n);
    d = (d + 1.0 / d) / 2.0;
    double b = -1.0;
    double c = -d;
    double s = 0.0;
    const double w2 = omega * omega;
    for (int k = 0; k < n; ++k) {
        c = b - c;
        const double kk = k + 1.0;
        s += c * (4.0 * kk / (4.0 * kk * kk + w2));
        b = (k + n) * static_cast<double>(k - n) * b / ((k + 0.5) * (k + 1.0));
    }
    const double value = s / d;
    if (error_bound) {
        *error_bound = 2.0 / std::pow(rho, n) + 8.0 * n * std::numeric_limits<double>::epsilon() * std::fabs(value);
    }
    if (terms) *terms = n;
    return value;
}

TransformValue transform_value(const DecayingFunction& f, double omega, double tol, FourierPath path) {
    if (!(tol > 0.0)) throw std::invalid_argument("transform: requires tol > 0");
    if (path == FourierPath::numeric || (path == FourierPath::automatic && !f.has_analytic_transform())) {
        return numeric_transform(f, omega, tol);
    }
    if (!f.has_analytic_transform()) {
        throw FourierError("no closed-form transform for " + f.describe());
    }
    return std::visit(
        overloaded{
            [&](const SechFamily& s) -> TransformValue {
                double v = kPi / s.b / std::cosh(kPi * omega / (2.0 * s.b));
                return {Complex(v, 0.0), 4.0 * std::numeric_limits<double>::epsilon() * v,
                        FourierSource::analytic};
            },
            [&](const GaussianFamily& g) -> TransformValue {
                double v = 2.0 * std::sqrt(kPi * g.b) * std::exp(-g.b * omega * omega);
                return {Complex(v, 0.0), 4.0 * std::numeric_limits<double>::epsilon() * v,
                        FourierSource::analytic};
            },
            [&](const LogisticTailFamily&) -> TransformValue {
                double err = 0.0;
                double v = logistic_tail_series(omega, tol, &err);
                return {Complex(v, 0.0), err, FourierSource::analytic};
            },
            [&](const Expr&) -> TransformValue { return numeric_transform(f, omega, tol); },
        },
        f.body());
}

CoefficientTable coefficient_table(const PeriodicFunction& g, int n_max, double tol, FourierPath path) {
    if (n_max < 0) throw std::invalid_argument("coefficient_table: requires n_max >= 0");
    if (!(tol > 0.0)) throw std::invalid_argument("coefficient_table: requires tol > 0");
    const bool numeric =
        path == FourierPath::numeric || (path == FourierPath::automatic && !g.has_analytic_coefficients());
    CoefficientTable table;
    table.n_max = n_max;
    if (!numeric) {
        if (!g.has_analytic_coefficients()) {
            throw FourierError("no closed-form coefficients for " + g.describe());
        }
        table.source = FourierSource::analytic;
        table.values.reserve(static_cast<std::size_t>(2 * n_max + 1));
        for (int n = -n_max; n <= n_max; ++n) table.values.push_back(analytic_coefficient(g, n));
        return table;
    }
    if (!g.singular_points().empty()) {
        throw UnsupportedError("numeric coefficients are unsupported for " + g.describe() +
                               ": it has declared singular points");
    }

    table.source = FourierSource::numeric;
    int exponent = kFirstGridExponent;
    while ((std::size_t{1} << exponent) < 4 * static_cast<std::size_t>(n_max + 1)) ++exponent;
    std::vector<Complex> previous = trapezoid_coefficients(g, n_max, std::size_t{1} << exponent);
    const int last = std::max(kLastGridExponent, exponent + 1);
    for (++exponent; exponent <= last; ++exponent) {
        const std::size_t grid = std::size_t{1} << exponent;
        std::vector<Complex> current = trapezoid_coefficients(g, n_max, grid);
        double change = 0.0;
        bool finite = true;
        for (std::size_t i = 0; i < current.size(); ++i) {
            change = std::max(change, std::abs(current[i] - previous[i]));
            finite = finite && std::isfinite(current[i].real()) && std::isfinite(current[i].imag());
        }
        table.values = std::move(current);
        table.grid_size = grid;
        table.max_change = change;
        if (finite && change < tol) {
            table.converged = true;
            return table;
        }
        previous = table.values;
    }
    table.converged = false;
    return table;
}

Complex coefficient(const PeriodicFunction& g, int n, double tol, FourierPath path) {
    const bool numeric =
        path == FourierPath::numeric || (path == FourierPath::automatic && !g.has_analytic_coefficients());
    if (!numeric) {
        if (!g.has_analytic_coefficients()) throw FourierError("no closed-form coefficients for " + g.describe());
        return analytic_coefficient(g, n);
    }
    return coefficient_table(g, std::abs(n), tol, path).at(n);
}

}  // namespace mixparseval
