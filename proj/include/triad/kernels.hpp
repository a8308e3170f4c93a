#pragma once

// Triad interaction kernels T(k,m,n) and their noncanonical form
// S(k,m,n) = T(k,m,n) / |kmn|^{1/2}, together with certifiers for the
// structural conditions (reality, exchange, cyclic, homogeneity) and for the
// growth bound that the existence theory needs.

#include <triad/error.hpp>
#include <triad/expression.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>

namespace triad {

using Complex = std::complex<double>;
using Triple = std::array<long, 3>;

enum class DegreeRegime {
    NonNegative, ///< mu = nu - 3/2 >= 0
    Negative,    ///< lambda = 3/2 - nu > 0
};

struct KernelSpec {
    std::string name;
    /// Raw kernel formula; only called with kmn != 0.
    std::function<Complex(long, long, long)> formula;
    double degree = 1.5;
    /// Constant in the growth bound, empty when unknown.
    std::optional<double> boundConstant;
    std::map<std::string, double> params;
    /// Source text for custom kernels, empty for builtins.
    std::string expression;

    DegreeRegime regime() const noexcept
    {
        return degree >= 1.5 ? DegreeRegime::NonNegative : DegreeRegime::Negative;
    }
    double mu() const noexcept { return degree - 1.5; }
    double lambda() const noexcept { return 1.5 - degree; }
};

inline Complex evalT(const KernelSpec& kernel, long k, long m, long n)
{
    if (k == 0 || m == 0 || n == 0) return {};
    return kernel.formula(k, m, n);
}

inline double absProduct(long k, long m, long n) noexcept
{
    return std::abs(static_cast<double>(k)) * std::abs(static_cast<double>(m)) *
           std::abs(static_cast<double>(n));
}

inline Complex evalS(const KernelSpec& kernel, long k, long m, long n)
{
    if (k == 0 || m == 0 || n == 0) return {};
    return kernel.formula(k, m, n) / std::sqrt(absProduct(k, m, n));
}

/// nu = (n - d + 3) / 2 for wavenumber-space dimension d and mass-parameter dimension n.
constexpr double degreeFromDimensions(int n, int d) noexcept
{
    return static_cast<double>(n - d + 3) / 2.0;
}

namespace detail {

inline double param(const std::map<std::string, double>& params, const std::string& key,
                    std::optional<double> fallback = std::nullopt)
{
    if (auto it = params.find(key); it != params.end()) return it->second;
    if (fallback) return *fallback;
    throw DomainError("kernel parameter '" + key + "' is required");
}

inline void allowOnly(const std::string& kernel, const std::map<std::string, double>& params,
                      std::initializer_list<const char*> allowed)
{
    for (const auto& [key, value] : params) {
        if (std::none_of(allowed.begin(), allowed.end(),
                         [&key](const char* a) { return key == a; })) {
            throw DomainError("kernel '" + kernel + "' does not take parameter '" + key + "'");
        }
        if (!std::isfinite(value)) {
            throw DomainError("kernel '" + kernel + "': parameter '" + key + "' is not finite");
        }
    }
}

} // namespace detail

/// Builtin kernels: burgers, hunter_saxton, surface, rayleigh(r, alpha, beta, gamma),
/// compacton, power(p).
inline KernelSpec builtinKernel(const std::string& name, const std::map<std::string, double>& params = {})
{
    KernelSpec spec;
    spec.name = name;
    spec.params = params;

    if (name == "burgers") {
        detail::allowOnly(name, params, {});
        spec.formula = [](long k, long m, long n) { return Complex{std::sqrt(absProduct(k, m, n)), 0.0}; };
        spec.degree = 1.5;
        spec.boundConstant = 1.0;
    } else if (name == "hunter_saxton") {
        detail::allowOnly(name, params, {});
        // (1/2)|kmn|^{1/2} (1/(ik) + 1/(im) + 1/(in)) = -(i/2)|kmn|^{1/2} (1/k + 1/m + 1/n)
        spec.formula = [](long k, long m, long n) {
            const double sum = 1.0 / static_cast<double>(k) + 1.0 / static_cast<double>(m) +
                               1.0 / static_cast<double>(n);
            return Complex{0.0, -0.5 * std::sqrt(absProduct(k, m, n)) * sum};
        };
        spec.degree = 0.5;
        spec.boundConstant = 1.5;
    } else if (name == "surface") {
        detail::allowOnly(name, params, {});
        spec.formula = [](long k, long m, long n) {
            const double sum = static_cast<double>(std::abs(k) + std::abs(m) + std::abs(n));
            return Complex{2.0 * absProduct(k, m, n) / sum, 0.0};
        };
        spec.degree = 2.0;
        spec.boundConstant = 1.0;
    } else if (name == "rayleigh") {
        detail::allowOnly(name, params, {"r", "alpha", "beta", "gamma"});
        const double r = detail::param(params, "r");
        const double alpha = detail::param(params, "alpha", 1.0);
        const double beta = detail::param(params, "beta", 1.0);
        const double gamma = detail::param(params, "gamma", 1.0);
        if (!(r > 0.0 && r < 1.0)) {
            throw DomainError("rayleigh kernel requires 0 < r < 1 (got r = " + std::to_string(r) + ")");
        }
        spec.params = {{"r", r}, {"alpha", alpha}, {"beta", beta}, {"gamma", gamma}};
        spec.formula = [r, alpha, beta, gamma](long k, long m, long n) {
            const double a = static_cast<double>(std::abs(k));
            const double b = static_cast<double>(std::abs(m));
            const double c = static_cast<double>(std::abs(n));
            const double p = a * b * c;
            const double value = alpha * p / (a + r * b + r * c) + alpha * p / (r * a + b + r * c) +
                                 alpha * p / (r * a + r * b + c) + beta * p / (r * a + b + c) +
                                 beta * p / (a + r * b + c) + beta * p / (a + b + r * c) +
                                 gamma * p / (a + b + c);
            return Complex{value, 0.0};
        };
        spec.degree = 2.0;
        spec.boundConstant =
            0.5 * (3.0 * std::abs(alpha) / r + 3.0 * std::abs(beta) / r + std::abs(gamma));
    } else if (name == "compacton") {
        detail::allowOnly(name, params, {});
        spec.formula = [](long k, long m, long n) {
            const double kmn = static_cast<double>(k) * static_cast<double>(m) * static_cast<double>(n);
            return Complex{0.0, std::sqrt(std::abs(kmn)) * kmn};
        };
        spec.degree = 4.5;
    } else if (name == "power") {
        detail::allowOnly(name, params, {"p"});
        const double pd = detail::param(params, "p");
        if (!(pd >= 0.0) || pd != std::round(pd) || pd > 16.0) {
            throw DomainError("power kernel requires an integer exponent 0 <= p <= 16");
        }
        const int p = static_cast<int>(pd);
        spec.formula = [p](long k, long m, long n) {
            const double kmn = static_cast<double>(k) * static_cast<double>(m) * static_cast<double>(n);
            Complex factor{1.0, 0.0};
            for (int j = 0; j < p; ++j) factor *= Complex{0.0, kmn};
            return std::sqrt(std::abs(kmn)) * factor;
        };
        spec.degree = 3.0 * p + 1.5;
        if (p == 0) spec.boundConstant = 1.0;
    } else {
        throw DomainError("unknown kernel '" + name + "'");
    }
    return spec;
}

/// A kernel given by an expression in k, m, n (see Expression).
inline KernelSpec customKernel(const std::string& expression, double degree,
                               std::optional<double> boundConstant = std::nullopt)
{
    if (!std::isfinite(degree)) throw DomainError("custom kernel: degree must be finite");
    if (boundConstant && !(*boundConstant >= 0.0)) {
        throw DomainError("custom kernel: bound constant must be nonnegative");
    }
    KernelSpec spec;
    spec.name = "custom";
    spec.expression = expression;
    spec.formula = [expr = Expression::parse(expression)](long k, long m, long n) {
        return expr(k, m, n);
    };
    spec.degree = degree;
    spec.boundConstant = boundConstant;
    return spec;
}

// ---------------------------------------------------------------------------
// Certification

struct SymmetryReport {
    bool passed = true;
    std::string violatedCondition; ///< "zero", "reality", "exchange", "cyclic" or "homogeneity"
    Triple witness{};
    Complex lhs{};
    Complex rhs{};
    long range = 0;
};

/// Relative tolerance for the symmetry certifier (exact up to round-off).
inline constexpr double kSymmetryTolerance = 1e-12;

namespace detail {

inline bool nearlyEqual(Complex a, Complex b) noexcept
{
    const double scale = std::max(std::abs(a), std::abs(b));
    return std::abs(a - b) <= kSymmetryTolerance * scale;
}

} // namespace detail

/// Checks the zero, reality, exchange, cyclic and homogeneity (eta = 2, 3)
/// conditions on every triple k + m + n = 0 with |k|, |m|, |n| <= R.
inline SymmetryReport checkSymmetries(const KernelSpec& kernel, long R)
{
    if (R < 2) throw DomainError("checkSymmetries: range R must be >= 2");
    SymmetryReport report;
    report.range = R;
    auto fail = [&report](const char* what, Triple t, Complex lhs, Complex rhs) {
        report.passed = false;
        report.violatedCondition = what;
        report.witness = t;
        report.lhs = lhs;
        report.rhs = rhs;
        return report;
    };

    for (long k = -R; k <= R; ++k) {
        for (long m = -R; m <= R; ++m) {
            const long n = -k - m;
            if (std::abs(n) > R) continue;
            const Triple t{k, m, n};
            const Complex value = evalT(kernel, k, m, n);
            if (k == 0 || m == 0 || n == 0) {
                if (value != Complex{}) return fail("zero", t, value, {});
                continue;
            }
            if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
                return fail("finite", t, value, {});
            }
            const Complex mirrored = std::conj(evalT(kernel, -k, -m, -n));
            if (!detail::nearlyEqual(value, mirrored)) return fail("reality", t, value, mirrored);
            const Complex exchanged = evalT(kernel, k, n, m);
            if (!detail::nearlyEqual(value, exchanged)) return fail("exchange", t, value, exchanged);
            const Complex rotated = evalT(kernel, m, n, k);
            if (!detail::nearlyEqual(value, rotated)) return fail("cyclic", t, value, rotated);
            for (long eta : {2L, 3L}) {
                const Complex scaled = evalT(kernel, eta * k, eta * m, eta * n);
                const Complex expected = std::pow(static_cast<double>(eta), kernel.degree) * value;
                if (!detail::nearlyEqual(scaled, expected)) {
                    return fail("homogeneity", t, scaled, expected);
                }
            }
        }
    }
    return report;
}

struct BoundReport {
    bool satisfied = false;
    /// sup |T| / (|kmn|^{1/2} min{|.|^mu}) or sup |T| min{|.|^lambda} / |kmn|^{1/2}.
    double worstRatio = 0.0;
    Triple worstTriple{};
    long rangeChecked = 0;
    std::optional<double> boundConstant;
    /// Same supremum over the half range; used to judge growth when C is unknown.
    double halfRangeRatio = 0.0;
    bool fullLattice = false;
};

/// Relative growth of the empirical supremum between R/2 and R above which a
/// kernel with unknown constant is reported unbounded.
inline constexpr double kBoundGrowthTolerance = 0.05;

namespace detail {

inline double boundRatio(const KernelSpec& kernel, long k, long m, long n)
{
    const double minAbs = static_cast<double>(std::min({std::abs(k), std::abs(m), std::abs(n)}));
    const double root = std::sqrt(absProduct(k, m, n));
    const double t = std::abs(kernel.formula(k, m, n));
    if (kernel.regime() == DegreeRegime::NonNegative) {
        const double mu = kernel.mu();
        return t / (root * (mu == 0.0 ? 1.0 : std::pow(minAbs, mu)));
    }
    return t * std::pow(minAbs, kernel.lambda()) / root;
}

} // namespace detail

/// Scans the growth bound over triples with |k|, |m|, |n| <= R on the resonant
/// plane k + m + n = 0 (or the full lattice when requested).
inline BoundReport checkBound(const KernelSpec& kernel, long R, bool fullLattice = false)
{
    if (R < 2) throw DomainError("checkBound: range R must be >= 2");
    BoundReport report;
    report.rangeChecked = R;
    report.fullLattice = fullLattice;
    report.boundConstant = kernel.boundConstant;
    const long half = R / 2;

    auto visit = [&](long k, long m, long n) {
        if (k == 0 || m == 0 || n == 0) return;
        const double ratio = detail::boundRatio(kernel, k, m, n);
        if (!(ratio <= report.worstRatio)) {
            report.worstRatio = ratio;
            report.worstTriple = {k, m, n};
        }
        if (std::abs(k) <= half && std::abs(m) <= half && std::abs(n) <= half) {
            report.halfRangeRatio = std::max(report.halfRangeRatio, ratio);
        }
    };

    for (long k = -R; k <= R; ++k) {
        for (long m = -R; m <= R; ++m) {
            if (fullLattice) {
                for (long n = -R; n <= R; ++n) visit(k, m, n);
            } else {
                const long n = -k - m;
                if (std::abs(n) <= R) visit(k, m, n);
            }
        }
    }

    if (kernel.boundConstant) {
        report.satisfied = report.worstRatio <= *kernel.boundConstant * (1.0 + kSymmetryTolerance);
    } else {
        report.satisfied = std::isfinite(report.worstRatio) &&
                           report.worstRatio <= report.halfRangeRatio * (1.0 + kBoundGrowthTolerance);
    }
    return report;
}

} // namespace triad
