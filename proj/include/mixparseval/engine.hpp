#pragma once

// Evaluates \int f(x) conj(g(x)) dx for a decaying f and a T-periodic g as
// the bilateral series
//
//   \sum_n f^(2 pi n / T) conj(C_n(g)),
//
// with a tail estimate on the truncation, plus a numeric check of the
// block-summability condition M_T(f) = \sum_k ||f 1_[kT,(k+1)T]||_2 < inf
// under which the identity holds.

#include <complex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mixparseval/fourier.hpp"
#include "mixparseval/functions.hpp"
#include "mixparseval/quadrature.hpp"

namespace mixparseval {

enum class Verdict { finite_evidence, inconclusive };
std::string_view to_string(Verdict v);

struct HypothesisReport {
    double period = 0.0;
    int K = 0;                        // blocks k = -K..K
    std::vector<double> block_norms;  // index k + K
    double partial_M = 0.0;
    double ratio_negative = 0.0;      // fitted geometric ratio, k -> -inf side
    double ratio_positive = 0.0;      // k -> +inf side
    double decay_ratio = 0.0;         // max of the two sides
    Verdict verdict = Verdict::inconclusive;
    /// Geometric extrapolation of the omitted blocks; +inf when a side does
    /// not decay.
    double tail_bound = 0.0;

    double block_norm(int k) const { return block_norms.at(static_cast<std::size_t>(k + K)); }
};

class HypothesisError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Block L2 norms of f over [kT, (k+1)T] for |k| <= K (K >= 4), with a
/// log-linear fit of the outermost four blocks on each side.
HypothesisReport check_hypothesis(const DecayingFunction& f, double period, int K, double tol);

enum class TailRule { none, geometric, alternating, negligible };
std::string_view to_string(TailRule r);

struct TailEstimate {
    double bound = 0.0;
    TailRule rule = TailRule::none;
    double ratio = 1.0;  // fitted geometric ratio per index step (geometric rule)
};

/// Tail estimate for a bilateral series truncated at |n| <= N, given the
/// products t_n stored at index n + N. Works on the paired magnitudes
/// |t_m| + |t_-m| of the last eight m <= N whose pair is not exactly zero:
///
///  - geometric:   log-linear fit, ratio rho < 0.99, bound last * rho / (1 - rho)
///  - alternating: paired sums alternate in sign with shrinking modulus,
///                 bound = modulus of the last nonzero pair
///  - negligible:  every pair in the window is below tol * 1e-3
///
/// The smallest applicable bound wins.
TailEstimate estimate_tail(std::span<const Complex> products, int N, double tol);

struct TermRecord {
    int n = 0;
    Complex transform;
    Complex coefficient;
    Complex product;
};

struct EvaluateOptions {
    int start_n = 16;
    int max_n = 4096;
    bool keep_terms = false;
    FourierPath transform_path = FourierPath::automatic;
    FourierPath coefficient_path = FourierPath::automatic;
    /// Oracle quadrature tolerance; 0 means use the series tolerance.
    double oracle_tol = 0.0;
};

struct MixedResult {
    Complex value;
    int n_used = 0;
    double tail_bound = 0.0;
    TailRule tail_rule = TailRule::none;
    double fitted_ratio = 1.0;
    /// Accumulated error of the individual Fourier values (not part of tail_bound).
    double term_error = 0.0;
    bool converged = false;
    std::vector<TermRecord> terms;  // filled when keep_terms, order n = 0, 1, -1, 2, -2, ...
    std::optional<QuadratureResult> oracle;
    std::optional<double> oracle_gap;
    std::vector<std::string> warnings;
};

class NonConvergenceError : public std::runtime_error {
public:
    NonConvergenceError(const std::string& what, MixedResult partial)
        : std::runtime_error(what), partial_(std::move(partial)) {}
    const MixedResult& partial() const noexcept { return partial_; }

private:
    MixedResult partial_;
};

/// Sum the series with N doubling from options.start_n until the tail
/// estimate drops below tol. Throws NonConvergenceError past options.max_n.
MixedResult evaluate_mixed(const DecayingFunction& f, const PeriodicFunction& g, double tol,
                           bool with_oracle, const EvaluateOptions& options = {});

/// Brute-force \int f conj(g) over the line, split at g's singularities.
QuadratureResult oracle_integral(const DecayingFunction& f, const PeriodicFunction& g, double tol);

/// \sum_{k=-K}^{K} f(x + kT): truncated periodization of f.
double periodize_sample(const DecayingFunction& f, double period, double x, int K);

struct ParsevalSides {
    Complex lhs;  // (1/2pi) \int_0^{2pi} F conj(g)
    Complex rhs;  // \sum_{|n|<=N} (f^(n)/2pi) conj(C_n(g))
};

/// Both sides of the classical Parseval identity on [0, 2pi] applied to the
/// periodization F of f. Requires a 2pi-periodic g.
ParsevalSides classical_parseval_sides(const DecayingFunction& f, const PeriodicFunction& g, int K, int N,
                                       double tol);

}  // namespace mixparseval
