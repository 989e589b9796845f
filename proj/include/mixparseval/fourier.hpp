#pragma once

// Fourier data of the two factors:
//
//   transform:    f^(w) = \int f(t) e^{-i w t} dt          (no 1/2pi factor)
//   coefficient:  C_n(g) = (1/T) \int_0^T g(t) e^{-2 pi i n t / T} dt
//
// Closed forms are used for the built-in families; expression-defined
// functions go through integrate_line (transform) or an equispaced
// trapezoid sum over one period (coefficients).

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "mixparseval/functions.hpp"

namespace mixparseval {

using Complex = std::complex<double>;

class FourierError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numeric coefficients were requested for a g with declared singularities.
class UnsupportedError : public FourierError {
public:
    using FourierError::FourierError;
};

enum class FourierPath { automatic, analytic, numeric };
enum class FourierSource { analytic, numeric };

struct TransformValue {
    Complex value;
    double error_bound = 0.0;
    FourierSource source = FourierSource::analytic;
};

/// Detailed transform with its error bound. Throws FourierError when the
/// numeric path does not converge.
TransformValue transform_value(const DecayingFunction& f, double omega, double tol,
                               FourierPath path = FourierPath::automatic);

inline Complex transform(const DecayingFunction& f, double omega, double tol,
                         FourierPath path = FourierPath::automatic) {
    return transform_value(f, omega, tol, path).value;
}

/// \sum_{k>=1} (-1)^{k-1} 4k / (4k^2 + w^2), the transform of 1/(1+e^{2|x|}).
/// Summed with Cohen-Villegas-Zagier acceleration; `error_bound` receives
/// the a-priori bound 2 / (3 + sqrt 8)^n.
double logistic_tail_series(double omega, double tol, double* error_bound = nullptr,
                            int* terms = nullptr);

struct CoefficientTable {
    int n_max = 0;
    std::vector<Complex> values;  // index n + n_max
    FourierSource source = FourierSource::analytic;
    std::size_t grid_size = 0;    // numeric only
    bool converged = true;
    double max_change = 0.0;      // last refinement delta (numeric only)

    const Complex& at(int n) const { return values.at(static_cast<std::size_t>(n + n_max)); }
};

CoefficientTable coefficient_table(const PeriodicFunction& g, int n_max, double tol,
                                   FourierPath path = FourierPath::automatic);

Complex coefficient(const PeriodicFunction& g, int n, double tol,
                    FourierPath path = FourierPath::automatic);

}  // namespace mixparseval
