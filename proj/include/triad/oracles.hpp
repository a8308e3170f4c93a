#pragma once

// Independent reference solutions used to validate the spectral machinery:
// Burgers characteristics, a grid-product Hunter-Saxton integrator, and naive
// evaluations of the canonical T-sums.

#include <triad/error.hpp>
#include <triad/evolution.hpp>
#include <triad/field.hpp>
#include <triad/kernels.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

namespace triad {

/// A smooth periodic initial profile with its derivative.
struct Profile {
    std::function<double(double)> value;
    std::function<double(double)> slope;
};

inline Profile sineProfile(double amplitude, int wavenumber)
{
    const double w = static_cast<double>(wavenumber);
    return {[=](double x) { return amplitude * std::sin(w * x); },
            [=](double x) { return amplitude * w * std::cos(w * x); }};
}

/// Pointwise evaluation of a spectral field and its derivative.
inline Profile fieldProfile(const SpectralField& f)
{
    auto eval = [f](double x, bool slope) {
        double sum = 0.0;
        for (long k = 1; k <= f.truncation(); ++k) {
            const Complex e{std::cos(k * x), std::sin(k * x)};
            const Complex c = slope ? Complex{0.0, static_cast<double>(k)} * f(k) : f(k);
            sum += (c * e).real();
        }
        return 2.0 * sum;
    };
    return {[eval](double x) { return eval(x, false); }, [eval](double x) { return eval(x, true); }};
}

/// Grid resolution used to locate extrema of profiles.
inline constexpr std::size_t kProfileSamples = 4096;

/// t_b = 1 / (2 max(-f')) for u_t + (u^2)_x = 0; infinite when f' >= 0 everywhere.
inline double breakingTime(const Profile& f)
{
    auto negSlope = [&f](double x) { return -f.slope(x); };
    std::size_t bestJ = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < kProfileSamples; ++j) {
        const double v = negSlope(gridPoint(j, kProfileSamples));
        if (v > best) {
            best = v;
            bestJ = j;
        }
    }
    // golden-section refinement around the best sample
    const double h = 2.0 * std::numbers::pi / kProfileSamples;
    double a = gridPoint(bestJ, kProfileSamples) - h, b = a + 2.0 * h;
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - g * (b - a), d = a + g * (b - a);
    for (int it = 0; it < 100; ++it) {
        if (negSlope(c) > negSlope(d)) {
            b = d;
        } else {
            a = c;
        }
        c = b - g * (b - a);
        d = a + g * (b - a);
    }
    best = std::max({best, negSlope(c), negSlope(d)});
    if (!(best > 0.0)) return std::numeric_limits<double>::infinity();
    return 1.0 / (2.0 * best);
}

/// Pre-shock solution of u_t + (u^2)_x = 0 by characteristics: u = f(x - 2ut).
class BurgersCharacteristics {
public:
    explicit BurgersCharacteristics(Profile f) : f_(std::move(f)), tb_(triad::breakingTime(f_))
    {
        lo_ = std::numeric_limits<double>::infinity();
        hi_ = -lo_;
        for (std::size_t j = 0; j < kProfileSamples; ++j) {
            const double v = f_.value(gridPoint(j, kProfileSamples));
            lo_ = std::min(lo_, v);
            hi_ = std::max(hi_, v);
        }
        const double margin = 1e-3 * (hi_ - lo_);
        lo_ -= margin;
        hi_ += margin;
    }

    double breakingTime() const noexcept { return tb_; }

    /// Residual reached by the root finder is below kResidual.
    static constexpr double kResidual = 1e-13;

    double operator()(double x, double t) const
    {
        if (t == 0.0 || hi_ - lo_ <= 0.0) return f_.value(x);
        if (!(std::abs(t) < tb_)) {
            throw DomainError("burgersExact: t = " + std::to_string(t) +
                              " is not before the breaking time " + std::to_string(tb_));
        }
        auto g = [&](double u) { return u - f_.value(x - 2.0 * u * t); };
        auto dg = [&](double u) { return 1.0 + 2.0 * t * f_.slope(x - 2.0 * u * t); };
        double a = lo_, b = hi_;
        double ga = g(a);
        // g is increasing on the bracket before breaking; bisect to a narrow bracket
        for (int it = 0; it < 60 && (b - a) > 1e-6 * (hi_ - lo_); ++it) {
            const double m = 0.5 * (a + b);
            const double gm = g(m);
            if (gm == 0.0) return m;
            if ((gm > 0.0) == (ga > 0.0)) {
                a = m;
                ga = gm;
            } else {
                b = m;
            }
        }
        double u = 0.5 * (a + b);
        for (int it = 0; it < 50; ++it) {
            const double r = g(u);
            if (std::abs(r) <= 0.1 * kResidual) break;
            double next = u - r / dg(u);
            if (!(next >= a && next <= b)) next = 0.5 * (a + b);
            const double gn = g(next);
            if (gn == 0.0) return next;
            if ((gn > 0.0) == (ga > 0.0)) {
                a = next;
            } else {
                b = next;
            }
            if (next == u) break;
            u = next;
        }
        if (!(std::abs(g(u)) <= kResidual)) {
            throw Error("burgersExact: root finder failed to converge at x = " + std::to_string(x));
        }
        return u;
    }

private:
    Profile f_;
    double tb_;
    double lo_ = 0.0, hi_ = 0.0;
};

inline double burgersExact(const Profile& f, double x, double t)
{
    return BurgersCharacteristics(f)(x, t);
}

struct HunterSaxtonConfig {
    int N = 64;
    double dt = 1e-3;
    double tEnd = 0.5;
    int outputEvery = 1;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<SpectralField> states;
};

/// Hunter-Saxton in derivative form, u_t + (u d_x^{-1}u)_x - (u^2 - <u^2>)/2 = 0,
/// integrated with grid products on 3N+1 points (alias-free for quadratic
/// terms) and RK4. Shares no code with the kernel-based bilinear form.
inline Trajectory hunterSaxtonDirect(const GridField& f, const HunterSaxtonConfig& config)
{
    if (config.N < 1 || !(config.dt > 0.0) || !(config.tEnd >= 0.0) || config.outputEvery < 1) {
        throw DomainError("hunterSaxtonDirect: invalid configuration");
    }
    const double scale = std::max(1.0, f.maxAbs());
    if (std::abs(f.mean()) > 1e-12 * scale) {
        throw DomainError("hunterSaxtonDirect: initial data must have zero mean (mean = " +
                          std::to_string(f.mean()) + ")");
    }
    const int N = config.N;
    const std::size_t M = 3 * static_cast<std::size_t>(N) + 1;

    auto rhs = [N, M](const SpectralField& u) {
        const GridField ug = synthesize(u, M);
        const GridField wg = synthesize(antiderivative(u), M);
        GridField flux{std::vector<double>(M)}, square{std::vector<double>(M)};
        for (std::size_t j = 0; j < M; ++j) {
            flux.samples[j] = ug.samples[j] * wg.samples[j];
            square.samples[j] = ug.samples[j] * ug.samples[j];
        }
        SpectralField out = derivative(analyze(flux, N));
        out *= -1.0;
        out.addScaled(0.5, analyze(square, N)); // analyze drops <u^2>
        return out;
    };

    Trajectory traj;
    SpectralField u = analyze(f, N);
    traj.times.push_back(0.0);
    traj.states.push_back(u);
    const long nSteps = static_cast<long>(std::ceil(config.tEnd / config.dt - 1e-9));
    double t = 0.0;
    for (long i = 1; i <= nSteps; ++i) {
        const double h = i == nSteps ? config.tEnd - t : config.dt;
        u = rk4Step(u, h, rhs);
        t = i == nSteps ? config.tEnd : static_cast<double>(i) * config.dt;
        if (i % config.outputEvery == 0 || i == nSteps) {
            traj.times.push_back(t);
            traj.states.push_back(u);
        }
    }
    return traj;
}

/// b(phi,psi)^(k) = sum_n T(-k, k-n, n) phi(k-n) psi(n), straight from the T-sum.
inline SpectralField directBilinearB(const KernelSpec& kernel, const SpectralField& phi,
                                     const SpectralField& psi, int outN)
{
    SpectralField out(outN);
    const long Np = phi.truncation(), Nq = psi.truncation();
    for (long k = 1; k <= outN; ++k) {
        Complex sum{};
        for (long n = -Nq; n <= Nq; ++n) {
            if (std::abs(k - n) > Np) continue;
            sum += evalT(kernel, -k, k - n, n) * phi(k - n) * psi(n);
        }
        out.set(k, sum);
    }
    return out;
}

/// The canonical right-hand side phi_t = -i sgn(k) sum_{m+n=k} T(-k,m,n) phi(m) phi(n),
/// evaluated by a plain triple loop and returned in noncanonical form
/// u_t(k) = |k|^{1/2} phi_t(k). Both signs of k are computed and the reality
/// of the result is checked.
inline SpectralField bruteForceRHS(const KernelSpec& kernel, const SpectralField& u)
{
    const long N = u.truncation();
    auto phi = [&u](long j) {
        return j == 0 ? Complex{} : u(j) / std::sqrt(static_cast<double>(std::abs(j)));
    };
    std::vector<Complex> full(2 * static_cast<std::size_t>(N) + 1);
    for (long k = -N; k <= N; ++k) {
        if (k == 0) continue;
        Complex sum{};
        for (long m = -N; m <= N; ++m) {
            for (long n = -N; n <= N; ++n) {
                if (m + n != k) continue;
                sum += evalT(kernel, -k, m, n) * phi(m) * phi(n);
            }
        }
        const double sgn = k > 0 ? 1.0 : -1.0;
        full[static_cast<std::size_t>(k + N)] =
            std::sqrt(static_cast<double>(std::abs(k))) * Complex{0.0, -sgn} * sum;
    }
    SpectralField out(static_cast<int>(N));
    for (long k = 1; k <= N; ++k) {
        const Complex plus = full[static_cast<std::size_t>(k + N)];
        const Complex minus = full[static_cast<std::size_t>(N - k)];
        if (std::abs(plus - std::conj(minus)) > 1e-10 * std::max(1.0, std::abs(plus))) {
            throw Error("bruteForceRHS: result is not real at k = " + std::to_string(k));
        }
        out.set(k, plus);
    }
    return out;
}

} // namespace triad
