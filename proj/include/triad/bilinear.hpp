#pragma once

// The nonlocal quadratic interaction
//
//   a(u,v)^(k) = sum_n S(-k, k-n, n) u^(k-n) v^(n),
//
// its canonical counterpart b(phi,psi) = |d_x|^{1/2} a(|d_x|^{1/2} phi, |d_x|^{1/2} psi),
// and the Galerkin right-hand side -P^N d_x a(u,u).
//
// All sums run over n in ascending order, so results do not depend on the
// number of threads.

#include <triad/field.hpp>
#include <triad/kernels.hpp>

#include <algorithm>
#include <cstddef>
#include <vector>

namespace triad {

/// a(u,v) restricted to output modes 1 <= |k| <= outN.
inline SpectralField bilinearA(const KernelSpec& kernel, const SpectralField& u,
                               const SpectralField& v, int outN)
{
    SpectralField out(outN);
    const long Nu = u.truncation();
    const long Nv = v.truncation();
    auto coeffs = out.positive();
#pragma omp parallel for schedule(dynamic, 8)
    for (long k = 1; k <= outN; ++k) {
        Complex sum{};
        const long lo = std::max(-Nv, k - Nu);
        const long hi = std::min(Nv, k + Nu);
        for (long n = lo; n <= hi; ++n) {
            if (n == 0 || n == k) continue;
            sum += evalS(kernel, -k, k - n, n) * u(k - n) * v(n);
        }
        coeffs[static_cast<std::size_t>(k - 1)] = sum;
    }
    return out;
}

/// b(phi,psi) through the noncanonical form.
inline SpectralField bilinearB(const KernelSpec& kernel, const SpectralField& phi,
                               const SpectralField& psi, int outN)
{
    return fractionalPower(
        bilinearA(kernel, fractionalPower(phi, 0.5), fractionalPower(psi, 0.5), outN), 0.5);
}

/// (1/2pi) int u a(v,w) dx = sum_k u^(-k) a(v,w)^(k).
inline double cyclicIntegral(const KernelSpec& kernel, const SpectralField& u,
                             const SpectralField& v, const SpectralField& w)
{
    const SpectralField a = bilinearA(kernel, v, w, u.truncation());
    double sum = 0.0;
    for (long k = 1; k <= u.truncation(); ++k) sum += (std::conj(u(k)) * a(k)).real();
    return 2.0 * sum;
}

/// Right-hand side of the Galerkin system u_t = -P^N a(u,u)_x for a fixed
/// kernel and truncation. S(-k, k-n, n) is tabulated once; the exchange
/// symmetry S(-k, k-n, n) = S(-k, n, k-n) folds each sum onto n <= k/2.
class GalerkinOperator {
public:
    GalerkinOperator(const KernelSpec& kernel, int N) : N_(N)
    {
        if (N < 1) throw DomainError("GalerkinOperator: N must be >= 1");
        rowStart_.resize(static_cast<std::size_t>(N) + 1);
        std::size_t total = 0;
        for (long k = 1; k <= N; ++k) {
            rowStart_[static_cast<std::size_t>(k - 1)] = total;
            total += static_cast<std::size_t>(k / 2 - (k - N) + 1);
        }
        rowStart_[static_cast<std::size_t>(N)] = total;
        table_.resize(total);
#pragma omp parallel for schedule(dynamic, 8)
        for (long k = 1; k <= N; ++k) {
            Complex* row = table_.data() + rowStart_[static_cast<std::size_t>(k - 1)];
            for (long n = k - N; n <= k / 2; ++n) row[n - (k - N)] = evalS(kernel, -k, k - n, n);
        }
    }

    int truncation() const noexcept { return N_; }

    /// Coefficients -ik a(u,u)^(k) for 1 <= k <= N.
    SpectralField rhs(const SpectralField& u) const
    {
        if (u.truncation() != N_) {
            throw DomainError("GalerkinOperator: state truncation " +
                              std::to_string(u.truncation()) + " != " + std::to_string(N_));
        }
        // full[j + N] = u^(j) for |j| <= N
        std::vector<Complex> full(2 * static_cast<std::size_t>(N_) + 1);
        for (long j = -N_; j <= N_; ++j) full[static_cast<std::size_t>(j + N_)] = u(j);
        const Complex* at = full.data() + N_;

        SpectralField out(N_);
        auto coeffs = out.positive();
#pragma omp parallel for schedule(dynamic, 8)
        for (long k = 1; k <= N_; ++k) {
            const Complex* row = table_.data() + rowStart_[static_cast<std::size_t>(k - 1)];
            const long lo = k - N_;
            const long hi = k / 2;
            Complex paired{};
            for (long n = lo; n < hi; ++n) {
                if (n == 0) continue;
                paired += row[n - lo] * at[k - n] * at[n];
            }
            Complex sum = 2.0 * paired;
            if (hi != 0) {
                // n = k/2 pairs with itself when k is even; otherwise it is an
                // ordinary pair partner of n = (k+1)/2.
                const Complex term = row[hi - lo] * at[k - hi] * at[hi];
                sum += (k % 2 == 0) ? term : 2.0 * term;
            }
            coeffs[static_cast<std::size_t>(k - 1)] = Complex{0.0, -static_cast<double>(k)} * sum;
        }
        return out;
    }

private:
    int N_;
    std::vector<std::size_t> rowStart_;
    std::vector<Complex> table_;
};

/// -P^N a(u,u)_x for u with truncation N.
inline SpectralField galerkinRHS(const KernelSpec& kernel, const SpectralField& u)
{
    return GalerkinOperator(kernel, u.truncation()).rhs(u);
}

} // namespace triad
