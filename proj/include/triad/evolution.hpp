#pragma once

// Fixed-step time integration of the Galerkin system, conserved quantities,
// blow-up monitoring and the a priori existence envelope.

#include <triad/bilinear.hpp>
#include <triad/field.hpp>
#include <triad/kernels.hpp>
#include <triad/theory.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace triad {

/// One classical four-stage Runge-Kutta step of u' = rhs(u).
template <typename Rhs>
SpectralField rk4Step(const SpectralField& u, double dt, Rhs&& rhs)
{
    const SpectralField k1 = rhs(u);
    SpectralField stage = u;
    stage.addScaled(0.5 * dt, k1);
    const SpectralField k2 = rhs(stage);
    stage = u;
    stage.addScaled(0.5 * dt, k2);
    const SpectralField k3 = rhs(stage);
    stage = u;
    stage.addScaled(dt, k3);
    const SpectralField k4 = rhs(stage);

    SpectralField next = u;
    next.addScaled(dt / 6.0, k1);
    next.addScaled(dt / 3.0, k2);
    next.addScaled(dt / 3.0, k3);
    next.addScaled(dt / 6.0, k4);
    return next;
}

inline SpectralField step(const GalerkinOperator& op, const SpectralField& u, double dt)
{
    return rk4Step(u, dt, [&op](const SpectralField& v) { return op.rhs(v); });
}

inline SpectralField step(const KernelSpec& kernel, const SpectralField& u, double dt)
{
    return step(GalerkinOperator(kernel, u.truncation()), u, dt);
}

/// P = sum_{k>=1} |u(k)|^2 = ||u||_0^2 / 2.
inline double momentum(const SpectralField& u)
{
    double sum = 0.0;
    for (const Complex& c : u.positive()) sum += std::norm(c);
    return sum;
}

namespace detail {

// Canonical amplitudes phi(k) = |k|^{-1/2} u(k), k = 1..N.
inline std::vector<Complex> canonicalAmplitudes(const SpectralField& u)
{
    std::vector<Complex> phi(u.positive().begin(), u.positive().end());
    for (std::size_t i = 0; i < phi.size(); ++i) phi[i] /= std::sqrt(static_cast<double>(i + 1));
    return phi;
}

template <typename Accumulate>
void hamiltonianTerms(const KernelSpec& kernel, const SpectralField& u, Accumulate&& acc)
{
    const std::vector<Complex> phi = canonicalAmplitudes(u);
    const long N = u.truncation();
    for (long m = 1; m < N; ++m) {
        for (long n = 1; m + n <= N; ++n) {
            acc(evalT(kernel, -m - n, m, n) * std::conj(phi[static_cast<std::size_t>(m + n - 1)]) *
                phi[static_cast<std::size_t>(m - 1)] * phi[static_cast<std::size_t>(n - 1)]);
        }
    }
}

} // namespace detail

/// H = sum_{m,n>=1, m+n<=N} T(-m-n,m,n) phi*(m+n) phi(m) phi(n) + c.c.
inline double hamiltonian(const KernelSpec& kernel, const SpectralField& u)
{
    double sum = 0.0;
    detail::hamiltonianTerms(kernel, u, [&sum](Complex term) { sum += term.real(); });
    return 2.0 * sum;
}

/// Sum of the magnitudes of the terms of H; the scale against which changes in
/// H are measured (H itself vanishes for single-mode data).
inline double hamiltonianScale(const KernelSpec& kernel, const SpectralField& u)
{
    double sum = 0.0;
    detail::hamiltonianTerms(kernel, u, [&sum](Complex term) { sum += std::abs(term); });
    return 2.0 * sum;
}

/// max |u_x| sampled on 8N grid points.
inline double supDerivative(const SpectralField& u)
{
    return synthesize(derivative(u), 8 * static_cast<std::size_t>(u.truncation())).maxAbs();
}

/// Gronwall envelope ||f||_s / (1 - K ||f||_s |t|) and existence time t* = 1/(K ||f||_s).
struct ExistenceEstimate {
    double s = 0.0;
    double growthConstant = 0.0;
    double initialNorm = 0.0;
    double tStar = std::numeric_limits<double>::infinity();

    bool bounded() const noexcept { return std::isfinite(tStar); }

    double envelope(double t) const noexcept
    {
        const double denom = 1.0 - std::abs(t) / tStar;
        if (!(denom > 0.0)) return std::numeric_limits<double>::infinity();
        return initialNorm / denom;
    }
};

inline ExistenceEstimate existenceTime(const KernelSpec& kernel, const SpectralField& f, double s)
{
    ExistenceEstimate e;
    e.s = s;
    e.growthConstant = growthConstant(kernel, s);
    e.initialNorm = sobolevNorm(f, s);
    if (e.initialNorm > 0.0) e.tStar = 1.0 / (e.growthConstant * e.initialNorm);
    return e;
}

enum class Integrator { RK4 };

struct SimConfig {
    int N = 32;
    double dt = 1e-3;
    double tEnd = 1.0;
    Integrator integrator = Integrator::RK4;
    std::vector<double> trackedS{0.0};
    int outputEvery = 1;
    /// Absolute threshold on ||u||_{s_max}; default is 1e6 times the initial value.
    std::optional<double> blowupNormThreshold;
    /// Sobolev exponent of the envelope column; default is the largest tracked s.
    std::optional<double> envelopeS;
    KernelSpec kernel;
    SpectralField initialData{1};

    void validate() const
    {
        if (N < 1) throw DomainError("SimConfig: N must be >= 1");
        if (!(std::isfinite(dt) && dt != 0.0)) throw DomainError("SimConfig: dt must be finite and nonzero");
        if (!std::isfinite(tEnd)) throw DomainError("SimConfig: tEnd must be finite");
        if (tEnd != 0.0 && (tEnd > 0.0) != (dt > 0.0)) {
            throw DomainError("SimConfig: tEnd and dt must have the same sign");
        }
        if (trackedS.empty()) throw DomainError("SimConfig: trackedS must not be empty");
        if (outputEvery < 1) throw DomainError("SimConfig: outputEvery must be >= 1");
        if (!kernel.formula) throw DomainError("SimConfig: kernel is not set");
        if (blowupNormThreshold && !(*blowupNormThreshold > 0.0)) {
            throw DomainError("SimConfig: blowupNormThreshold must be positive");
        }
    }
};

struct DiagnosticsRow {
    double t = 0.0;
    double momentum = 0.0;
    double hamiltonian = 0.0;
    std::vector<double> norms;
    double supUx = 0.0;
    double envelope = 0.0;
};

struct DiagnosticsSeries {
    std::vector<double> trackedS;
    std::vector<DiagnosticsRow> rows;
};

struct IntegrationResult {
    DiagnosticsSeries series;
    SpectralField final{1};
    bool blowup = false;
    std::optional<double> blowupTime;
    long steps = 0;
    /// Envelope used for the diagnostics, when C is known and s admissible.
    std::optional<ExistenceEstimate> existence;
};

inline DiagnosticsRow diagnose(const KernelSpec& kernel, const SpectralField& u, double t,
                               const std::vector<double>& trackedS,
                               const std::optional<ExistenceEstimate>& existence)
{
    DiagnosticsRow row;
    row.t = t;
    row.momentum = momentum(u);
    row.hamiltonian = hamiltonian(kernel, u);
    row.norms.reserve(trackedS.size());
    for (double s : trackedS) row.norms.push_back(sobolevNorm(u, s));
    row.supUx = supDerivative(u);
    row.envelope = existence ? existence->envelope(t) : std::numeric_limits<double>::infinity();
    return row;
}

/// Called with (t, u) each time a diagnostics row is recorded.
using StateObserver = std::function<void(double, const SpectralField&)>;

/// Marches the Galerkin system from the projected initial data to tEnd, or
/// until ||u||_{s_max} exceeds the blow-up threshold or the state becomes
/// non-finite. The last finite state is kept as the result.
inline IntegrationResult integrate(const SimConfig& config, const StateObserver& observe = {})
{
    config.validate();
    IntegrationResult result;
    result.series.trackedS = config.trackedS;
    SpectralField u = project(config.initialData, config.N);
    result.final = u;
    if (config.tEnd == 0.0) return result;

    const double sMax = *std::max_element(config.trackedS.begin(), config.trackedS.end());
    const double envelopeS = config.envelopeS.value_or(sMax);
    try {
        result.existence = existenceTime(config.kernel, u, envelopeS);
    } catch (const DomainError&) {
        result.existence.reset();
    }
    const double initialNorm = sobolevNorm(u, sMax);
    const double threshold = config.blowupNormThreshold.value_or(
        initialNorm > 0.0 ? 1e6 * initialNorm : std::numeric_limits<double>::infinity());

    const GalerkinOperator op(config.kernel, config.N);
    const double span = std::abs(config.tEnd);
    const double h = std::abs(config.dt);
    const long nSteps = std::max(1L, static_cast<long>(std::ceil(span / h - 1e-9)));
    const double direction = config.tEnd > 0.0 ? 1.0 : -1.0;

    auto record = [&](double t) {
        result.series.rows.push_back(diagnose(config.kernel, u, t, config.trackedS, result.existence));
        if (observe) observe(t, u);
    };
    record(0.0);
    double t = 0.0;
    for (long i = 1; i <= nSteps; ++i) {
        const double tNext = i == nSteps ? config.tEnd : direction * static_cast<double>(i) * h;
        const double dtStep = i == nSteps ? config.tEnd - t : direction * h;
        SpectralField next = step(op, u, dtStep);
        const bool finite = next.allFinite();
        const double norm = finite ? sobolevNorm(next, sMax) : std::numeric_limits<double>::infinity();
        if (!finite || !(norm <= threshold)) {
            if (finite) {
                u = std::move(next);
                t = tNext;
            }
            result.blowup = true;
            result.blowupTime = tNext;
            result.steps = finite ? i : i - 1;
            if (finite || result.series.rows.back().t != t) record(t);
            result.final = u;
            return result;
        }
        u = std::move(next);
        t = tNext;
        if (i % config.outputEvery == 0 || i == nSteps) record(t);
    }
    result.steps = nSteps;
    result.final = u;
    return result;
}

namespace detail {

inline std::string formatDouble(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string formatExponent(double s)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", s);
    return buf;
}

} // namespace detail

/// CSV with header t,P,H,norm_s_<s>...,sup_ux,envelope; floats at 17 significant digits.
inline void writeDiagnosticsCsv(std::ostream& os, const DiagnosticsSeries& series)
{
    os << "t,P,H";
    for (double s : series.trackedS) os << ",norm_s_" << detail::formatExponent(s);
    os << ",sup_ux,envelope\n";
    for (const DiagnosticsRow& row : series.rows) {
        os << detail::formatDouble(row.t) << ',' << detail::formatDouble(row.momentum) << ','
           << detail::formatDouble(row.hamiltonian);
        for (double v : row.norms) os << ',' << detail::formatDouble(v);
        os << ',' << detail::formatDouble(row.supUx) << ',' << detail::formatDouble(row.envelope) << '\n';
    }
}

} // namespace triad
