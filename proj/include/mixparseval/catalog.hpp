#pragma once

// Closed-form reference values for the three worked integrals. Each one is
// an independent second route to a number the engine also produces.

#include <stdexcept>

namespace mixparseval::catalog {

struct SeriesValue {
    double value = 0.0;
    int terms_used = 0;
    double tail_bound = 0.0;
};

/// \int dx / ((cosh a + cos x) cosh(b x))
///   = pi/(b sinh a) + 2pi/(b sinh a) \sum_{n>=1} (-1)^n e^{-na} / cosh(pi n / (2b))
SeriesValue example1_series(double a, double b, double tol = 1e-15);

/// \int log(cos^2 x) / (1 + e^{2|x|}) dx = -log^2 2.
double example2_reference();

/// J = \sum_n \sum_k (-1)^{k+n} k / ((k^2+n^2) n), summed by averaging the
/// two orders of summation over the box [1, q_max]^2. The averaged summand
/// collapses to (-1)^{k+n}/(2nk), so the box sum is half the square of an
/// alternating harmonic partial sum.
SeriesValue example2_double_sum_J(long q_max);

/// theta_2(0, q) = 2 \sum_{n>=0} q^{(n+1/2)^2}, 0 < q < 1.
double theta2(double q, double tol = 1e-17);

/// \int e^{-x^2/(4b)} / (cosh a - cos x) dx
///   = 2 sqrt(pi b) / sinh a * (1 + 2 \sum_{n>=1} e^{-an - bn^2})
SeriesValue example3_theta(double a, double b, double tol = 1e-15);

/// The b = a special case through theta_2:
/// 2 sqrt(pi a) / sinh a * (e^{a/4} theta_2(0, e^{-a}) - 1).
double example3_theta_closed_form(double a);

}  // namespace mixparseval::catalog
