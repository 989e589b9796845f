#pragma once

// Function model for the two factors of the integral: a decaying f on the
// line and a T-periodic g. Built-in families carry their closed-form
// Fourier data; expression-defined functions fall back to numerics.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "mixparseval/expr.hpp"

namespace mixparseval {

class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Monotone bound |f(x)| <= envelope(|x|) valid for |x| >= x0.
struct Envelope {
    enum class Shape { exponential, gaussian };

    Shape shape = Shape::exponential;
    double scale = 1.0;  // c
    double rate = 1.0;   // c*exp(-rate*|x|) or c*exp(-rate*x^2)
    double x0 = 0.0;

    double bound(double abs_x) const;

    /// Integral of the envelope over |x| >= L (both tails), L >= x0.
    double two_sided_tail(double L) const;

    /// Smallest L >= x0 with two_sided_tail(L) <= budget.
    double cutoff_for(double budget) const;
};

// Decaying families.
struct SechFamily { double b; };           // 1/cosh(b x)
struct GaussianFamily { double b; };       // exp(-x^2/(4b))
struct LogisticTailFamily {};              // 1/(1+exp(2|x|))

class DecayingFunction {
public:
    using Body = std::variant<SechFamily, GaussianFamily, LogisticTailFamily, Expr>;

    static DecayingFunction sech(double b);
    static DecayingFunction gaussian(double b);
    static DecayingFunction logistic_tail();
    static DecayingFunction from_expr(Expr expr, std::optional<Envelope> envelope = std::nullopt);

    double operator()(double x) const;

    const Body& body() const noexcept { return body_; }
    const std::optional<Envelope>& envelope() const noexcept { return envelope_; }
    bool is_builtin() const noexcept { return !std::holds_alternative<Expr>(body_); }
    /// True for the families whose transform is known in closed form.
    bool has_analytic_transform() const noexcept { return is_builtin(); }
    std::string describe() const;

private:
    DecayingFunction(Body body, std::optional<Envelope> env)
        : body_(std::move(body)), envelope_(std::move(env)) {}

    Body body_;
    std::optional<Envelope> envelope_;
};

// Periodic families (natural period 2*pi).
struct CoshPlusCosFamily { double a; };   // 1/(cosh a + cos x)
struct CoshMinusCosFamily { double a; };  // 1/(cosh a - cos x)
struct LogCosSquaredFamily {};            // log(cos^2 x)

class PeriodicFunction {
public:
    using Body = std::variant<CoshPlusCosFamily, CoshMinusCosFamily, LogCosSquaredFamily, Expr>;

    static PeriodicFunction cosh_plus_cos(double a);
    static PeriodicFunction cosh_minus_cos(double a);
    static PeriodicFunction log_cos_squared();
    /// Expression-defined g with declared period. Periodicity is spot-checked
    /// and recorded in period_verified(); it is never enforced.
    static PeriodicFunction from_expr(Expr expr, double period,
                                      std::vector<double> singular_points = {});

    double operator()(double x) const;

    /// Same pointwise map declared with a longer period T = m * period().
    /// Built-ins only accept integer multiples of their natural period.
    PeriodicFunction with_period(double period) const;

    const Body& body() const noexcept { return body_; }
    double period() const noexcept { return period_; }
    /// Period multiple relative to the family's 2*pi (1 unless with_period).
    int period_multiple() const noexcept { return multiple_; }
    const std::vector<double>& singular_points() const noexcept { return singular_; }
    bool is_builtin() const noexcept { return !std::holds_alternative<Expr>(body_); }
    bool has_analytic_coefficients() const noexcept { return is_builtin(); }
    bool period_verified() const noexcept { return period_verified_; }
    /// sup |g| when finite and known.
    std::optional<double> sup_bound() const;
    std::string describe() const;

private:
    PeriodicFunction(Body body, double period, int multiple, std::vector<double> singular,
                     bool verified)
        : body_(std::move(body)),
          period_(period),
          multiple_(multiple),
          singular_(std::move(singular)),
          period_verified_(verified) {}

    Body body_;
    double period_;
    int multiple_;
    std::vector<double> singular_;
    bool period_verified_;
};

/// Named-family factories used by the CLI: `sech`, `gaussian`,
/// `logistic-tail`, `cosh-plus-cos`, `cosh-minus-cos`, `log-cos-squared`.
using FamilyParams = std::map<std::string, double>;

DecayingFunction make_decaying(const std::string& family, const FamilyParams& params);
PeriodicFunction make_periodic(const std::string& family, const FamilyParams& params);

/// Spot check g(x + T) == g(x) within `tol` on `samples` pseudo-random points.
bool check_periodicity(const PeriodicFunction& g, double tol = 1e-12, int samples = 100);

}  // namespace mixparseval
