#include "mixparseval/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

namespace mixparseval {

namespace {

// Kronrod abscissae on [-1, 1] (positive half, descending); odd indices are
// the 7-point Gauss nodes, index 7 is the centre.
constexpr std::array<double, 8> kXgk{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kNudgeRadius = 1e-14;
constexpr double kNudge = 1e-13;

struct Segment {
    double lo;
    double hi;
    double value;
    double error;
    bool singular_lo;
    bool singular_hi;
};

struct ByError {
    bool operator()(const Segment& a, const Segment& b) const { return a.error < b.error; }
};

class Kernel {
public:
    explicit Kernel(const RealFunction& fn) : fn_(fn) {}

    std::size_t evaluations = 0;

    Segment apply(double lo, double hi, bool singular_lo, bool singular_hi) {
        const double centre = 0.5 * (lo + hi);
        const double half = 0.5 * (hi - lo);
        auto sample = [&](double x) {
            if (singular_lo && x - lo < kNudgeRadius) x = std::min(lo + kNudge, centre);
            if (singular_hi && hi - x < kNudgeRadius) x = std::max(hi - kNudge, centre);
            ++evaluations;
            double v = fn_(x);
            if (!std::isfinite(v)) {
                std::ostringstream os;
                os.precision(17);
                os << "integrand is not finite at x = " << x << " (no declared split point nearby)";
                throw QuadratureError(os.str(), x);
            }
            return v;
        };

        const double fc = sample(centre);
        double resk = fc * kWgk[7];
        double resg = fc * kWg[3];
        double resabs = std::fabs(resk);
        std::array<double, 7> f1{};
        std::array<double, 7> f2{};
        for (std::size_t j = 0; j < 7; ++j) {
            const double dx = half * kXgk[j];
            f1[j] = sample(centre - dx);
            f2[j] = sample(centre + dx);
            const double pair = f1[j] + f2[j];
            resk += kWgk[j] * pair;
            resabs += kWgk[j] * (std::fabs(f1[j]) + std::fabs(f2[j]));
            if (j % 2 == 1) resg += kWg[j / 2] * pair;
        }
        const double mean = 0.5 * resk;
        double resasc = kWgk[7] * std::fabs(fc - mean);
        for (std::size_t j = 0; j < 7; ++j) {
            resasc += kWgk[j] * (std::fabs(f1[j] - mean) + std::fabs(f2[j] - mean));
        }

        const double value = resk * half;
        resasc *= std::fabs(half);
        resabs *= std::fabs(half);
        double err = std::fabs((resk - resg) * half);
        if (resasc != 0.0 && err != 0.0) {
            err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
        }
        const double underflow = std::numeric_limits<double>::min() / (50.0 * std::numeric_limits<double>::epsilon());
        if (resabs > underflow) {
            // Unlike QUADPACK no 50*eps*resabs floor: callers ask for absolute
            // tolerances near machine precision on O(1) integrals.
            err = std::max(err, 2.0 * std::numeric_limits<double>::epsilon() * std::fabs(value));
        }
        return {lo, hi, value, err, singular_lo, singular_hi};
    }

private:
    const RealFunction& fn_;
};

bool can_bisect(const Segment& s) {
    const double mid = 0.5 * (s.lo + s.hi);
    const double scale = std::max({std::fabs(s.lo), std::fabs(s.hi), 1e-300});
    return mid > s.lo && mid < s.hi && (s.hi - s.lo) > 64.0 * std::numeric_limits<double>::epsilon() * scale;
}

bool is_split(double x, std::span<const double> splits) {
    return std::any_of(splits.begin(), splits.end(), [x](double s) { return s == x; });
}

/// Globally adaptive integration over the union of [breaks[i], breaks[i+1]].
QuadratureResult adaptive(const RealFunction& fn, std::vector<double> breaks,
                          std::span<const double> splits, double tol, double rel_tol,
                          std::size_t budget) {
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    Kernel kernel(fn);
    std::priority_queue<Segment, std::vector<Segment>, ByError> active;
    std::vector<Segment> frozen;
    double total = 0.0;
    double total_err = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        Segment s = kernel.apply(breaks[i], breaks[i + 1], is_split(breaks[i], splits),
                                 is_split(breaks[i + 1], splits));
        total += s.value;
        total_err += s.error;
        active.push(s);
    }

    std::size_t segments = active.size();
    auto target = [&] { return std::max(tol, rel_tol * std::fabs(total)); };
    while (total_err > target() && !active.empty() && segments < budget) {
        Segment worst = active.top();
        active.pop();
        if (!can_bisect(worst)) {
            frozen.push_back(worst);
            continue;
        }
        const double mid = 0.5 * (worst.lo + worst.hi);
        Segment left = kernel.apply(worst.lo, mid, worst.singular_lo, false);
        Segment right = kernel.apply(mid, worst.hi, false, worst.singular_hi);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        active.push(left);
        active.push(right);
        ++segments;
    }

    // Deterministic ascending-interval-order reduction.
    std::vector<Segment> all = std::move(frozen);
    all.reserve(all.size() + active.size());
    while (!active.empty()) {
        all.push_back(active.top());
        active.pop();
    }
    std::sort(all.begin(), all.end(), [](const Segment& a, const Segment& b) { return a.lo < b.lo; });
    QuadratureResult r;
    for (const Segment& s : all) {
        r.value += s.value;
        r.error_estimate += s.error;
    }
    r.evaluations = kernel.evaluations;
    r.subdivisions = all.size();
    r.converged = r.error_estimate <= std::max(tol, rel_tol * std::fabs(r.value));
    return r;
}

std::vector<double> uniform_breaks(double lo, double hi, double chunk) {
    std::size_t pieces = static_cast<std::size_t>(std::ceil((hi - lo) / chunk));
    pieces = std::max<std::size_t>(pieces, 1);
    std::vector<double> b;
    b.reserve(pieces + 1);
    for (std::size_t i = 0; i <= pieces; ++i) {
        b.push_back(i == pieces ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(pieces));
    }
    return b;
}

void accumulate(QuadratureResult& into, const QuadratureResult& part) {
    into.value += part.value;
    into.error_estimate += part.error_estimate;
    into.evaluations += part.evaluations;
    into.subdivisions += part.subdivisions;
}

}  // namespace

std::vector<double> PeriodicSplits::within(double lo, double hi) const {
    std::vector<double> out;
    if (points.empty() || !(period > 0.0)) return out;
    const double first = std::floor(lo / period) - 1.0;
    const double last = std::ceil(hi / period) + 1.0;
    for (double k = first; k <= last; k += 1.0) {
        for (double p : points) {
            double x = p + k * period;
            if (x > lo && x < hi) out.push_back(x);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

QuadratureResult integrate_finite(const RealFunction& fn, double lo, double hi, double tol,
                                  std::span<const double> split_points, const FiniteOptions& options) {
    if (!(tol > 0.0)) throw std::invalid_argument("integrate_finite: requires tol > 0");
    if (std::isnan(lo) || std::isnan(hi)) throw std::invalid_argument("integrate_finite: NaN bound");
    if (lo == hi) {
        QuadratureResult empty;
        empty.converged = true;
        return empty;
    }
    if (hi < lo) {
        QuadratureResult r = integrate_finite(fn, hi, lo, tol, split_points, options);
        r.value = -r.value;
        return r;
    }
    std::vector<double> breaks{lo, hi};
    std::vector<double> splits;
    for (double s : split_points) {
        if (!(s > lo && s < hi)) throw std::invalid_argument("integrate_finite: split point outside (lo, hi)");
        breaks.push_back(s);
        splits.push_back(s);
    }
    return adaptive(fn, std::move(breaks), splits, tol, options.rel_tol, options.max_subdivisions);
}

QuadratureResult integrate_line(const RealFunction& fn, double tol, const LineOptions& options) {
    if (!(tol > 0.0)) throw std::invalid_argument("integrate_line: requires tol > 0");
    const double chunk = options.chunk_width > 0.0 ? options.chunk_width : 4.0;

    auto piece = [&](double lo, double hi, double piece_tol) {
        std::vector<double> breaks = uniform_breaks(lo, hi, chunk);
        std::vector<double> splits;
        if (options.splits) splits = options.splits->within(lo, hi);
        breaks.insert(breaks.end(), splits.begin(), splits.end());
        return adaptive(fn, std::move(breaks), splits, piece_tol, 0.0, options.max_subdivisions);
    };

    if (options.envelope) {
        const double weight = std::max(options.envelope_weight, 0.0);
        const double budget = tol / 10.0 / std::max(weight, 1e-300);
        const double L = std::max(options.envelope->cutoff_for(budget), 1.0);
        // 0.85 rather than 0.9 leaves slack for rounding in the sum below.
        QuadratureResult r = piece(-L, L, 0.85 * tol);
        const double tail = weight * options.envelope->two_sided_tail(L);
        r.error_estimate += tail;
        r.cutoff = L;
        r.converged = r.converged && r.error_estimate <= tol;
        return r;
    }

    double L = 8.0;
    QuadratureResult r = piece(-L, L, tol / 4.0);
    bool inner_ok = r.converged;
    double shell_tol = tol / 8.0;
    double last_delta = std::numeric_limits<double>::infinity();
    for (int d = 0; d < options.max_doublings; ++d) {
        QuadratureResult left = piece(-2.0 * L, -L, shell_tol);
        QuadratureResult right = piece(L, 2.0 * L, shell_tol);
        inner_ok = inner_ok && left.converged && right.converged;
        last_delta = left.value + right.value;
        accumulate(r, left);
        accumulate(r, right);
        L *= 2.0;
        shell_tol /= 2.0;
        if (std::fabs(last_delta) < tol / 2.0) break;
    }
    r.cutoff = L;
    const bool stable = std::fabs(last_delta) < tol / 2.0;
    r.error_estimate += std::fabs(last_delta);
    r.converged = inner_ok && stable && r.error_estimate <= tol;
    return r;
}

}  // namespace mixparseval
