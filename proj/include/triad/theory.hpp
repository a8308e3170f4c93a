#pragma once

// Constants of the a priori estimates: M_s, B_s, C_{s,lambda}, K_s, K_{s,lambda},
// the auxiliary function f_{s,lambda} whose supremum defines C_{s,lambda}, and
// an exhaustive scan of the triad inequality over integer triples.

#include <triad/error.hpp>
#include <triad/kernels.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

namespace triad {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double mid() const noexcept { return 0.5 * (lo + hi); }
    double width() const noexcept { return hi - lo; }
    bool contains(double x) const noexcept { return lo <= x && x <= hi; }
};

/// Target width of the zeta brackets behind M_s.
inline constexpr double kZetaBracketWidth = 1e-12;

/// sum_{n>=1} n^{-p} for p > 1, as a rigorous bracket.
///
/// The partial sum to n0 is completed with midpoint and trapezoid integral
/// bounds of the tail, both valid because x^{-p} is convex and decreasing.
inline Interval zetaBracket(double p)
{
    if (!(p > 1.0)) throw DomainError("zetaBracket: series diverges for p <= 1");
    double sum = 0.0, carry = 0.0; // Kahan summation
    auto tailIntegral = [p](double a) { return std::pow(a, 1.0 - p) / (p - 1.0); };
    for (long n0 = 1;; ++n0) {
        const double term = std::pow(static_cast<double>(n0), -p);
        const double y = term - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
        if (n0 % 64 != 0 && term > 0.0) continue;
        const double next = static_cast<double>(n0 + 1);
        const double lower = tailIntegral(next) + 0.5 * std::pow(next, -p);
        const double upper = tailIntegral(static_cast<double>(n0) + 0.5);
        if (upper - lower <= kZetaBracketWidth || term == 0.0) {
            return {sum + lower, sum + upper};
        }
        if (n0 > (1L << 28)) throw DomainError("zetaBracket: exponent too close to 1");
    }
}

/// M_s = (2 zeta(2s))^{1/2} as a bracket; s > 1/2.
inline Interval MsBracket(double s)
{
    if (!(s > 0.5)) {
        throw DomainError("M_s requires s > 1/2 (got s = " + std::to_string(s) + ")");
    }
    const Interval z = zetaBracket(2.0 * s);
    return {std::sqrt(2.0 * z.lo), std::sqrt(2.0 * z.hi)};
}

inline double Ms(double s) { return MsBracket(s).mid(); }

/// |m + n|^s <= B_s (|m|^s + |n|^s).
inline double Bs(double s)
{
    if (!(s > 0.0)) throw DomainError("B_s requires s > 0");
    return s <= 1.0 ? 1.0 : std::pow(2.0, s - 1.0);
}

/// f_{s,lambda}(x) for x in (0, 1].
inline double fslam(double s, double lambda, double x)
{
    if (!(s > 0.0) || !(lambda >= 0.0)) throw DomainError("f_{s,lambda} requires s > 0, lambda >= 0");
    if (!(x > 0.0 && x <= 1.0)) {
        throw DomainError("f_{s,lambda}: x must lie in (0, 1] (got " + std::to_string(x) + ")");
    }
    const double lp = std::log1p(x);
    // (x+1)^{2s+1} - 1 without cancellation for small x
    const double numerator = std::expm1((2.0 * s + 1.0) * lp) - std::pow(x, 2.0 * s + 1.0);
    const double xs = std::pow(x, s + lambda);
    const double denominator = std::exp(s * lp) * (xs + x) + std::exp((1.0 - lambda) * lp) * xs;
    return numerator / denominator;
}

/// lim_{x -> 0+} f_{s,lambda}(x).
inline double fslamLimitAtZero(double s, double lambda)
{
    if (!(s > 0.0) || !(lambda >= 0.0)) throw DomainError("f_{s,lambda} requires s > 0, lambda >= 0");
    const double sum = s + lambda;
    if (sum < 1.0) return 0.0;
    if (sum == 1.0) return (2.0 * s + 1.0) / 3.0;
    return 2.0 * s + 1.0;
}

/// Resolution of the supremum search in Cslam.
inline constexpr int kSupremumSamples = 10000;

/// C_{s,lambda} = sup_{(0,1]} f_{s,lambda}, found by sampling (uniform and
/// logarithmic grids) with golden-section refinement of the best bracket. The
/// limit at 0+ is a candidate.
inline double Cslam(double s, double lambda)
{
    auto f = [s, lambda](double x) { return fslam(s, lambda, x); };
    double best = fslamLimitAtZero(s, lambda);
    double bestX = 0.0, bracketLo = 0.0, bracketHi = 0.0;

    auto consider = [&](double x, double lo, double hi) {
        const double v = f(x);
        if (v > best) {
            best = v;
            bestX = x;
            bracketLo = lo;
            bracketHi = hi;
        }
    };
    const double h = 1.0 / kSupremumSamples;
    for (int i = 1; i <= kSupremumSamples; ++i) {
        consider(i * h, (i - 1) * h, std::min(1.0, (i + 1) * h));
    }
    // logarithmic grid over [1e-10, 1e-2] resolves maxima hugging x = 0
    const double ratio = std::pow(1e8, 1.0 / kSupremumSamples);
    for (int i = 0; i <= kSupremumSamples; ++i) {
        const double x = 1e-10 * std::pow(ratio, i);
        consider(x, x / ratio, std::min(1.0, x * ratio));
    }

    if (bestX > 0.0) {
        // golden-section maximization on [bracketLo, bracketHi]
        const double g = 0.5 * (std::sqrt(5.0) - 1.0);
        double a = std::max(bracketLo, std::numeric_limits<double>::min());
        double b = bracketHi;
        double c = b - g * (b - a), d = a + g * (b - a);
        double fc = f(c), fd = f(d);
        for (int it = 0; it < 200 && (b - a) > 1e-15 * std::max(1.0, b); ++it) {
            if (fc > fd) {
                b = d; d = c; fd = fc;
                c = b - g * (b - a); fc = f(c);
            } else {
                a = c; c = d; fc = fd;
                d = a + g * (b - a); fd = f(d);
            }
        }
        best = std::max({best, fc, fd});
    }
    return best;
}

/// C_s = C_{s,0}.
inline double Cs(double s) { return Cslam(s, 0.0); }

/// Closed form 2s+1 (1 < s <= 3), 2^s - 1 (s >= 3); used as a cross-check only.
inline std::optional<double> CsClosedForm(double s)
{
    if (s > 1.0 && s <= 3.0) return 2.0 * s + 1.0;
    if (s >= 3.0) return std::pow(2.0, s) - 1.0;
    return std::nullopt;
}

struct TriadInequalityReport {
    double constant = 0.0; ///< C_{s,lambda} used on the right-hand side
    double maxRatio = 0.0;
    Triple worstTriple{};
    long range = 0;
    bool satisfied = false;
};

/// Slack allowed on ratio <= 1, for triples where the inequality is an identity.
inline constexpr double kTriadRoundoff = 1e-12;

/// Largest value of lhs/rhs of the triad inequality over integer triples
/// k + m + n = 0, 0 < |k|, |m|, |n| <= R, with rhs built from Cslam(s, lambda).
inline TriadInequalityReport verifyTriadInequality(double s, double lambda, long R)
{
    if (R < 2) throw DomainError("verifyTriadInequality: R must be >= 2");
    TriadInequalityReport report;
    report.constant = Cslam(s, lambda);
    report.range = R;
    auto signedPow = [s](double k) { return k * std::pow(std::abs(k), 2.0 * s); };
    for (long m = -R; m <= R; ++m) {
        for (long n = -R; n <= R; ++n) {
            const long k = -m - n;
            if (k == 0 || m == 0 || n == 0 || std::abs(k) > R) continue;
            const double a = std::abs(static_cast<double>(k));
            const double b = std::abs(static_cast<double>(m));
            const double c = std::abs(static_cast<double>(n));
            const double minAbs = std::min({a, b, c});
            const double lhs =
                std::abs(signedPow(static_cast<double>(k)) + signedPow(static_cast<double>(m)) +
                         signedPow(static_cast<double>(n))) /
                std::pow(minAbs, lambda);
            const double as = std::pow(a, s), bs = std::pow(b, s), cs = std::pow(c, s);
            const double rhs = report.constant * (as * bs * std::pow(c, 1.0 - lambda) +
                                                  cs * as * std::pow(b, 1.0 - lambda) +
                                                  bs * cs * std::pow(a, 1.0 - lambda));
            const double ratio = lhs / rhs;
            if (!(ratio <= report.maxRatio)) {
                report.maxRatio = ratio;
                report.worstTriple = {k, m, n};
            }
        }
    }
    report.satisfied = report.maxRatio <= 1.0 + kTriadRoundoff;
    return report;
}

/// K_s = C C_s M_{s-mu-1}, for kernels of nonnegative degree and s > mu + 3/2.
inline double Ks(const KernelSpec& kernel, double s)
{
    if (kernel.regime() != DegreeRegime::NonNegative) {
        throw DomainError("K_s applies to kernels with nu >= 3/2; '" + kernel.name +
                          "' has negative degree (use K_{s,lambda})");
    }
    if (!kernel.boundConstant) {
        throw DomainError("K_s: bound constant C of kernel '" + kernel.name + "' is unknown");
    }
    const double threshold = kernel.mu() + 1.5;
    if (!(s > threshold)) {
        throw DomainError("K_s requires s > mu + 3/2 = " + std::to_string(threshold) +
                          " (got s = " + std::to_string(s) + ")");
    }
    return *kernel.boundConstant * Cs(s) * Ms(s - kernel.mu() - 1.0);
}

/// K_{s,lambda} = C C_{s,lambda} M_{s+lambda-1}, for kernels of negative degree
/// and s > max{3/2 - lambda, 1/2}.
inline double Kslam(const KernelSpec& kernel, double s)
{
    if (kernel.regime() != DegreeRegime::Negative) {
        throw DomainError("K_{s,lambda} applies to kernels with nu < 3/2; '" + kernel.name +
                          "' has nonnegative degree (use K_s)");
    }
    if (!kernel.boundConstant) {
        throw DomainError("K_{s,lambda}: bound constant C of kernel '" + kernel.name +
                          "' is unknown");
    }
    const double lambda = kernel.lambda();
    const double threshold = std::max(1.5 - lambda, 0.5);
    if (!(s > threshold)) {
        throw DomainError("K_{s,lambda} requires s > max{3/2 - lambda, 1/2} = " +
                          std::to_string(threshold) + " (got s = " + std::to_string(s) + ")");
    }
    return *kernel.boundConstant * Cslam(s, lambda) * Ms(s + lambda - 1.0);
}

/// The growth constant for either regime: K_s or K_{s,lambda}.
inline double growthConstant(const KernelSpec& kernel, double s)
{
    return kernel.regime() == DegreeRegime::NonNegative ? Ks(kernel, s) : Kslam(kernel, s);
}

struct TheoryConstants {
    double s = 0.0;
    double lambda = 0.0;
    std::optional<double> mu;
    std::optional<double> Ms;
    std::optional<double> Bs;
    std::optional<double> Cs;
    std::optional<double> Cslam;
    std::optional<double> Ks;
    std::optional<double> Kslam;
    /// Existence time for data with ||f||_s = 1.
    std::optional<double> tStarUnitNorm;
};

/// Every constant defined at (s, lambda); kernel-dependent ones only when a
/// kernel is supplied and s is admissible for it.
inline TheoryConstants theoryConstants(double s, double lambda, const KernelSpec* kernel = nullptr)
{
    TheoryConstants c;
    c.s = s;
    c.lambda = lambda;
    if (s > 0.5) c.Ms = Ms(s);
    if (s > 0.0) {
        c.Bs = Bs(s);
        c.Cs = Cs(s);
        if (lambda >= 0.0) c.Cslam = Cslam(s, lambda);
    }
    if (kernel) {
        c.mu = kernel->mu();
        try {
            if (kernel->regime() == DegreeRegime::NonNegative) {
                c.Ks = Ks(*kernel, s);
                c.tStarUnitNorm = 1.0 / *c.Ks;
            } else {
                c.Kslam = Kslam(*kernel, s);
                c.tStarUnitNorm = 1.0 / *c.Kslam;
            }
        } catch (const DomainError&) {
            // s outside the admissible range or C unknown: left undefined
        }
    }
    return c;
}

} // namespace triad
