#pragma once

// Adaptive Gauss-Kronrod (7/15) quadrature on finite intervals and on the
// whole real line. This is the brute-force oracle that series results are
// validated against, and the numeric fallback for Fourier data.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "mixparseval/functions.hpp"

namespace mixparseval {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
    bool converged = false;
    std::size_t subdivisions = 0;
    /// Half-width of the truncation window (line integrals only).
    double cutoff = 0.0;
};

/// The integrand produced a non-finite value away from any declared split point.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double x) : std::runtime_error(what), x_(x) {}
    double where() const noexcept { return x_; }

private:
    double x_;
};

using RealFunction = std::function<double(double)>;

inline constexpr std::size_t kDefaultSubdivisionBudget = 10'000;

/// Split points repeated with a period, e.g. pi/2 + k*pi.
struct PeriodicSplits {
    std::vector<double> points;  // within one period [0, period)
    double period = 0.0;

    std::vector<double> within(double lo, double hi) const;
};

struct FiniteOptions {
    double rel_tol = 0.0;
    std::size_t max_subdivisions = kDefaultSubdivisionBudget;
};

/// Integrate fn over [lo, hi] to absolute tolerance `tol` (or rel_tol * |I|
/// when larger). Split points are treated as integrable singularities:
/// intervals are pre-split there and samples closer than 1e-14 are moved
/// 1e-13 toward the interior.
QuadratureResult integrate_finite(const RealFunction& fn, double lo, double hi, double tol,
                                  std::span<const double> split_points = {},
                                  const FiniteOptions& options = {});

struct LineOptions {
    std::optional<Envelope> envelope;
    /// Multiplies the envelope tail, e.g. sup|g| when integrating f*g.
    double envelope_weight = 1.0;
    std::optional<PeriodicSplits> splits;
    /// Initial breakpoints are laid out no further apart than this.
    double chunk_width = 4.0;
    std::size_t max_subdivisions = kDefaultSubdivisionBudget;
    /// Window doublings allowed when there is no envelope (starting at 8).
    int max_doublings = 12;
};

/// Integrate fn over the real line. With an envelope the window [-L, L] is
/// chosen so the envelope tail is below tol/10; otherwise L doubles from 8
/// until the added shells contribute less than tol/2.
QuadratureResult integrate_line(const RealFunction& fn, double tol, const LineOptions& options = {});

}  // namespace mixparseval
