#include "mixparseval/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace mixparseval::catalog {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kTermCap = 100'000;

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument(std::string(name) + " must be a finite positive number");
    }
}

}  // namespace

SeriesValue example1_series(double a, double b, double tol) {
    require_positive(a, "a");
    require_positive(b, "b");
    require_positive(tol, "tol");
    const double scale = 2.0 * kPi / (b * std::sinh(a));
    auto term = [&](int n) { return std::exp(-n * a) / std::cosh(kPi * n / (2.0 * b)); };

    // Alternating with decreasing moduli: the first omitted term bounds the tail.
    double sum = 0.0;
    int n = 1;
    for (; n < kTermCap; ++n) {
        const double t = term(n);
        sum += (n % 2 == 0) ? t : -t;
        if (scale * term(n + 1) < tol) break;
    }
    SeriesValue out;
    out.value = kPi / (b * std::sinh(a)) + scale * sum;
    out.terms_used = n + 1;  // including the n = 0 term
    out.tail_bound = scale * term(n + 1);
    return out;
}

double example2_reference() {
    const double l = std::log(2.0);
    return -l * l;
}

SeriesValue example2_double_sum_J(long q_max) {
    if (q_max < 8) throw std::invalid_argument("example2_double_sum_J: requires q_max >= 8");
    // Smallest terms first.
    double s = 0.0;
    for (long k = q_max; k >= 1; --k) {
        const double t = 1.0 / static_cast<double>(k);
        s += (k % 2 == 0) ? t : -t;
    }
    SeriesValue out;
    out.value = 0.5 * s * s;
    out.terms_used = static_cast<int>(std::min<long>(q_max, std::numeric_limits<int>::max()));
    // |s - (-log 2)| <= 1/(q+1), so |s^2 - log^2 2| <= d (2 log 2 + d).
    const double d = 1.0 / static_cast<double>(q_max + 1);
    out.tail_bound = 0.5 * d * (2.0 * std::numbers::ln2 + d);
    return out;
}

double theta2(double q, double tol) {
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("theta2: requires 0 < q < 1");
    require_positive(tol, "tol");
    const double lq = std::log(q);
    double sum = 0.0;
    for (int n = 0; n < kTermCap; ++n) {
        const double e = (n + 0.5) * (n + 0.5);
        sum += 2.0 * std::exp(e * lq);
        const double next = 2.0 * std::exp((n + 1.5) * (n + 1.5) * lq);
        if (next < tol) break;
    }
    return sum;
}

SeriesValue example3_theta(double a, double b, double tol) {
    require_positive(a, "a");
    require_positive(b, "b");
    require_positive(tol, "tol");
    const double scale = 2.0 * std::sqrt(kPi * b) / std::sinh(a);
    auto term = [&](int n) { return std::exp(-a * n - b * static_cast<double>(n) * n); };
    // Ratio t_{m+1}/t_m = e^{-a-b(2m+1)} shrinks with m, so after the term at n
    // the tail is at most t_{n+1} / (1 - e^{-a-b(2n+3)}).
    auto tail_after = [&](int n) { return 2.0 * scale * term(n + 1) / (1.0 - std::exp(-a - b * (2.0 * n + 3.0))); };

    double sum = 1.0;
    int n = 1;
    for (; n < kTermCap; ++n) {
        sum += 2.0 * term(n);
        if (tail_after(n) < tol) break;
    }
    SeriesValue out;
    out.value = scale * sum;
    out.terms_used = n + 1;
    out.tail_bound = tail_after(n);
    return out;
}

double example3_theta_closed_form(double a) {
    require_positive(a, "a");
    return 2.0 * std::sqrt(kPi * a) / std::sinh(a) * (std::exp(a / 4.0) * theta2(std::exp(-a)) - 1.0);
}

}  // namespace mixparseval::catalog
