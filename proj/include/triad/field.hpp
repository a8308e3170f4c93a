#pragma once

// Truncated Fourier representation of real, zero-mean, 2*pi-periodic fields.
//
// Only the coefficients for k = 1..N are stored. The value at -k is the
// complex conjugate of the value at k and the mean mode is identically zero,
// so every SpectralField is real by construction.

#include <triad/error.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace triad {

using Complex = std::complex<double>;

class SpectralField {
public:
    /// Zero field with truncation N.
    explicit SpectralField(int N) : coeffs_(checkedSize(N)) {}

    /// Field from its positive-wavenumber coefficients, positive[k-1] = u(k).
    SpectralField(int N, std::vector<Complex> positive) : coeffs_(std::move(positive))
    {
        if (coeffs_.size() != checkedSize(N)) {
            throw DomainError("SpectralField: expected " + std::to_string(N) +
                              " coefficients, got " + std::to_string(coeffs_.size()));
        }
        for (const Complex& c : coeffs_) {
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
                throw DomainError("SpectralField: non-finite coefficient");
            }
        }
    }

    /// A single conjugate pair: u(k) = amplitude, u(-k) = conj(amplitude).
    static SpectralField mode(int N, long k, Complex amplitude)
    {
        SpectralField f(N);
        f.set(k, amplitude);
        return f;
    }

    int truncation() const noexcept { return static_cast<int>(coeffs_.size()); }

    /// Coefficient at any integer k; zero outside 1 <= |k| <= N.
    Complex operator()(long k) const noexcept
    {
        if (k > 0) {
            return k <= truncation() ? coeffs_[static_cast<std::size_t>(k - 1)] : Complex{};
        }
        if (k < 0) {
            return -k <= truncation() ? std::conj(coeffs_[static_cast<std::size_t>(-k - 1)])
                                      : Complex{};
        }
        return {};
    }

    /// Sets u(k) and, implicitly, u(-k) = conj(u(k)).
    void set(long k, Complex value)
    {
        if (k == 0 || std::abs(k) > truncation()) {
            throw DomainError("SpectralField::set: wavenumber " + std::to_string(k) +
                              " outside 1 <= |k| <= " + std::to_string(truncation()));
        }
        if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
            throw DomainError("SpectralField::set: non-finite coefficient");
        }
        if (k > 0) {
            coeffs_[static_cast<std::size_t>(k - 1)] = value;
        } else {
            coeffs_[static_cast<std::size_t>(-k - 1)] = std::conj(value);
        }
    }

    std::span<const Complex> positive() const noexcept { return coeffs_; }
    std::span<Complex> positive() noexcept { return coeffs_; }

    bool allFinite() const noexcept
    {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Complex& c) {
            return std::isfinite(c.real()) && std::isfinite(c.imag());
        });
    }

    SpectralField& operator+=(const SpectralField& other)
    {
        requireSameTruncation(other);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
        return *this;
    }

    SpectralField& operator-=(const SpectralField& other)
    {
        requireSameTruncation(other);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
        return *this;
    }

    SpectralField& operator*=(double scale) noexcept
    {
        for (Complex& c : coeffs_) c *= scale;
        return *this;
    }

    friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
    friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
    friend SpectralField operator*(double s, SpectralField a) { return a *= s; }
    friend SpectralField operator*(SpectralField a, double s) { return a *= s; }
    friend SpectralField operator-(SpectralField a) { return a *= -1.0; }

    friend bool operator==(const SpectralField&, const SpectralField&) = default;

    /// a += scale * b, the update used by the time integrators.
    void addScaled(double scale, const SpectralField& b)
    {
        requireSameTruncation(b);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += scale * b.coeffs_[i];
    }

private:
    static std::size_t checkedSize(int N)
    {
        if (N < 1) throw DomainError("SpectralField: truncation N must be >= 1");
        return static_cast<std::size_t>(N);
    }

    void requireSameTruncation(const SpectralField& other) const
    {
        if (other.truncation() != truncation()) {
            throw DomainError("SpectralField: truncation mismatch (" +
                              std::to_string(truncation()) + " vs " +
                              std::to_string(other.truncation()) + ")");
        }
    }

    std::vector<Complex> coeffs_;
};

/// Largest coefficient difference over 1 <= |k| <= max(N_a, N_b).
inline double maxCoefficientDifference(const SpectralField& a, const SpectralField& b)
{
    const long n = std::max(a.truncation(), b.truncation());
    double worst = 0.0;
    for (long k = 1; k <= n; ++k) worst = std::max(worst, std::abs(a(k) - b(k)));
    return worst;
}

/// Real samples on the uniform grid x_j = 2*pi*j/M.
struct GridField {
    std::vector<double> samples;

    std::size_t size() const noexcept { return samples.size(); }

    double mean() const noexcept
    {
        double sum = 0.0;
        for (double v : samples) sum += v;
        return samples.empty() ? 0.0 : sum / static_cast<double>(samples.size());
    }

    double maxAbs() const noexcept
    {
        double m = 0.0;
        for (double v : samples) m = std::max(m, std::abs(v));
        return m;
    }
};

inline double gridPoint(std::size_t j, std::size_t M) noexcept
{
    return 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(M);
}

namespace detail {

// e^{2 pi i j / M} for j = 0..M-1; phases for e^{i k x_j} are looked up at (k*j) mod M.
inline std::vector<Complex> unitRoots(std::size_t M)
{
    std::vector<Complex> roots(M);
    for (std::size_t j = 0; j < M; ++j) {
        const double theta = gridPoint(j, M);
        roots[j] = {std::cos(theta), std::sin(theta)};
    }
    return roots;
}

inline void requireResolvable(std::size_t M, int N, const char* what)
{
    if (M < 2 * static_cast<std::size_t>(N) + 1) {
        throw AliasingError(std::string(what) + ": grid of " + std::to_string(M) +
                            " points cannot resolve modes up to N = " + std::to_string(N) +
                            " (need M >= 2N+1)");
    }
}

} // namespace detail

/// samples[j] = sum_{|k| <= N} u(k) e^{i k x_j}.
inline GridField synthesize(const SpectralField& u, std::size_t M)
{
    const int N = u.truncation();
    detail::requireResolvable(M, N, "synthesize");
    const std::vector<Complex> roots = detail::unitRoots(M);
    const auto coeffs = u.positive();

    GridField g{std::vector<double>(M)};
    for (std::size_t j = 0; j < M; ++j) {
        double sum = 0.0;
        std::size_t phase = 0;
        for (int k = 1; k <= N; ++k) {
            phase = (phase + j) % M;
            const Complex& w = roots[phase];
            const Complex& c = coeffs[static_cast<std::size_t>(k - 1)];
            sum += c.real() * w.real() - c.imag() * w.imag();
        }
        g.samples[j] = 2.0 * sum;
    }
    return g;
}

/// Discrete quadrature of (1/2pi) int g e^{-ikx} dx for 1 <= k <= N. The mean is dropped.
inline SpectralField analyze(const GridField& g, int N)
{
    const std::size_t M = g.size();
    detail::requireResolvable(M, N, "analyze");
    for (double v : g.samples) {
        if (!std::isfinite(v)) throw DomainError("analyze: non-finite grid sample");
    }
    const std::vector<Complex> roots = detail::unitRoots(M);
    std::vector<Complex> coeffs(static_cast<std::size_t>(N));
    const double inv = 1.0 / static_cast<double>(M);
    for (int k = 1; k <= N; ++k) {
        Complex sum{};
        std::size_t phase = 0;
        for (std::size_t j = 0; j < M; ++j) {
            sum += g.samples[j] * std::conj(roots[phase]);
            phase = (phase + static_cast<std::size_t>(k)) % M;
        }
        coeffs[static_cast<std::size_t>(k - 1)] = sum * inv;
    }
    return SpectralField(N, std::move(coeffs));
}

/// Relative tolerance on |u(k) - conj(u(-k))| accepted by the complex analysis.
inline constexpr double kRealityTolerance = 1e-8;

/// Analysis of complex samples that should represent a real field.
/// u(k) and conj(u(-k)) are computed separately and averaged; a mismatch above
/// kRealityTolerance (relative to the largest coefficient) is rejected.
inline SpectralField analyze(std::span<const Complex> samples, int N)
{
    const std::size_t M = samples.size();
    detail::requireResolvable(M, N, "analyze");
    for (const Complex& v : samples) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw DomainError("analyze: non-finite grid sample");
        }
    }
    const std::vector<Complex> roots = detail::unitRoots(M);
    const double inv = 1.0 / static_cast<double>(M);
    std::vector<Complex> plus(static_cast<std::size_t>(N)), minus(static_cast<std::size_t>(N));
    for (int k = 1; k <= N; ++k) {
        Complex sp{}, sm{};
        std::size_t phase = 0;
        for (std::size_t j = 0; j < M; ++j) {
            sp += samples[j] * std::conj(roots[phase]);
            sm += samples[j] * roots[phase];
            phase = (phase + static_cast<std::size_t>(k)) % M;
        }
        plus[static_cast<std::size_t>(k - 1)] = sp * inv;
        minus[static_cast<std::size_t>(k - 1)] = sm * inv;
    }
    double scale = 0.0, asym = 0.0;
    for (std::size_t i = 0; i < plus.size(); ++i) {
        scale = std::max({scale, std::abs(plus[i]), std::abs(minus[i])});
        asym = std::max(asym, std::abs(plus[i] - std::conj(minus[i])));
    }
    if (asym > kRealityTolerance * std::max(scale, 1e-300)) {
        throw DomainError("analyze: samples are not real (asymmetry " + std::to_string(asym) +
                          " relative to " + std::to_string(scale) + ")");
    }
    for (std::size_t i = 0; i < plus.size(); ++i) plus[i] = 0.5 * (plus[i] + std::conj(minus[i]));
    return SpectralField(N, std::move(plus));
}

/// Coefficient-wise multiplier m(k), k >= 1. The value at -k is conj(m(k)),
/// which keeps the result real.
template <typename Multiplier>
SpectralField applyMultiplier(const SpectralField& u, Multiplier&& m)
{
    SpectralField out = u;
    auto c = out.positive();
    for (std::size_t i = 0; i < c.size(); ++i) c[i] *= m(static_cast<long>(i + 1));
    return out;
}

/// Hilbert transform, multiplier i sgn(k).
inline SpectralField hilbert(const SpectralField& u)
{
    return applyMultiplier(u, [](long) { return Complex{0.0, 1.0}; });
}

/// |d/dx|^alpha, multiplier |k|^alpha.
inline SpectralField fractionalPower(const SpectralField& u, double alpha)
{
    if (alpha == 0.0) return u;
    return applyMultiplier(u, [alpha](long k) {
        return Complex{std::pow(static_cast<double>(k), alpha), 0.0};
    });
}

inline SpectralField derivative(const SpectralField& u)
{
    return applyMultiplier(u, [](long k) { return Complex{0.0, static_cast<double>(k)}; });
}

/// Inverse of derivative on zero-mean fields, multiplier 1/(ik).
inline SpectralField antiderivative(const SpectralField& u)
{
    return applyMultiplier(u, [](long k) { return Complex{0.0, -1.0 / static_cast<double>(k)}; });
}

/// (sum_{|k|<=N} |k|^{2s} |u(k)|^2)^{1/2}
inline double sobolevNorm(const SpectralField& u, double s)
{
    double sum = 0.0;
    const auto c = u.positive();
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double weight = s == 0.0 ? 1.0 : std::pow(static_cast<double>(i + 1), 2.0 * s);
        sum += weight * std::norm(c[i]);
    }
    return std::sqrt(2.0 * sum);
}

/// sum_{|k|<=N} |k|^alpha |u(k)|
inline double weightedL1Norm(const SpectralField& u, double alpha)
{
    double sum = 0.0;
    const auto c = u.positive();
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double weight = alpha == 0.0 ? 1.0 : std::pow(static_cast<double>(i + 1), alpha);
        sum += weight * std::abs(c[i]);
    }
    return 2.0 * sum;
}

/// Orthogonal projection onto |k| <= M, returned with truncation M
/// (higher modes dropped, or zero-padded when M > N).
inline SpectralField project(const SpectralField& u, int M)
{
    if (M < 1) throw DomainError("project: M must be >= 1");
    SpectralField out(M);
    const int keep = std::min(M, u.truncation());
    std::copy_n(u.positive().begin(), keep, out.positive().begin());
    return out;
}

} // namespace triad
