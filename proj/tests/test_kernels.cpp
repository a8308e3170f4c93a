#include <triad/kernels.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace triad;

namespace {

const char* kBuiltins[] = {"burgers", "hunter_saxton", "surface", "rayleigh", "compacton", "power"};

KernelSpec makeBuiltin(const std::string& name)
{
    if (name == "rayleigh") return builtinKernel(name, {{"r", 0.5}, {"alpha", 1.0}, {"beta", 2.0}, {"gamma", 0.5}});
    if (name == "power") return builtinKernel(name, {{"p", 2.0}});
    return builtinKernel(name);
}

} // namespace

TEST(EvalT, HandValues)
{
    EXPECT_EQ(evalT(builtinKernel("surface"), 1, 1, -2), Complex(1.0));
    EXPECT_NEAR(std::abs(evalT(builtinKernel("burgers"), 2, -1, -1) - std::sqrt(2.0)), 0.0, 1e-15);
    for (const char* name : kBuiltins) EXPECT_EQ(evalT(makeBuiltin(name), 0, 5, -5), Complex{}) << name;
}

TEST(EvalS, HandValues)
{
    const KernelSpec burgers = builtinKernel("burgers");
    for (long k = -7; k <= 7; ++k) {
        for (long m = -7; m <= 7; ++m) {
            if (k == 0 || m == 0 || k + m == 0) continue;
            EXPECT_EQ(evalS(burgers, k, m, -k - m), Complex(1.0));
        }
    }
    const Complex hs = evalS(builtinKernel("hunter_saxton"), 1, 1, -2);
    EXPECT_NEAR(std::abs(hs - Complex(0.0, -0.75)), 0.0, 1e-15);
    for (const char* name : kBuiltins) EXPECT_EQ(evalS(makeBuiltin(name), 3, 0, -3), Complex{}) << name;
}

TEST(Builtin, DegreesAndConstants)
{
    EXPECT_EQ(builtinKernel("burgers").degree, 1.5);
    EXPECT_EQ(builtinKernel("hunter_saxton").degree, 0.5);
    EXPECT_EQ(builtinKernel("surface").degree, 2.0);
    EXPECT_EQ(makeBuiltin("rayleigh").degree, 2.0);
    EXPECT_EQ(builtinKernel("compacton").degree, 4.5);
    EXPECT_EQ(builtinKernel("power", {{"p", 1.0}}).degree, 4.5);

    EXPECT_EQ(builtinKernel("surface").boundConstant, 1.0);
    EXPECT_EQ(builtinKernel("burgers").boundConstant, 1.0);
    EXPECT_EQ(builtinKernel("hunter_saxton").boundConstant, 1.5);
    EXPECT_EQ(builtinKernel("hunter_saxton").regime(), DegreeRegime::Negative);
    EXPECT_FALSE(builtinKernel("compacton").boundConstant.has_value());
    EXPECT_FALSE(builtinKernel("power", {{"p", 1.0}}).boundConstant.has_value());
    EXPECT_EQ(builtinKernel("power", {{"p", 0.0}}).boundConstant, 1.0);

    const KernelSpec r = builtinKernel("rayleigh", {{"r", 0.5}, {"alpha", 1.0}, {"beta", 1.0}, {"gamma", 1.0}});
    EXPECT_NEAR(*r.boundConstant, 6.5, 1e-15);
}

TEST(Builtin, RejectsInvalidParameters)
{
    for (double r : {0.0, 1.0, 1.5, -0.2}) {
        try {
            builtinKernel("rayleigh", {{"r", r}});
            FAIL() << "accepted r = " << r;
        } catch (const DomainError& e) {
            EXPECT_NE(std::string(e.what()).find("0 < r < 1"), std::string::npos);
        }
    }
    EXPECT_THROW(builtinKernel("rayleigh"), DomainError);
    EXPECT_THROW(builtinKernel("power", {{"p", 0.5}}), DomainError);
    EXPECT_THROW(builtinKernel("power", {{"p", -1.0}}), DomainError);
    EXPECT_THROW(builtinKernel("surface", {{"q", 1.0}}), DomainError);
    EXPECT_THROW(builtinKernel("nonesuch"), DomainError);
}

TEST(Builtin, PowerZeroIsBurgersAndPowerOneIsCompacton)
{
    const KernelSpec p0 = builtinKernel("power", {{"p", 0.0}});
    const KernelSpec p1 = builtinKernel("power", {{"p", 1.0}});
    const KernelSpec burgers = builtinKernel("burgers");
    const KernelSpec compacton = builtinKernel("compacton");
    for (long k = -6; k <= 6; ++k) {
        for (long m = -6; m <= 6; ++m) {
            const long n = -k - m;
            EXPECT_EQ(evalT(p0, k, m, n), evalT(burgers, k, m, n));
            EXPECT_EQ(evalT(p1, k, m, n), evalT(compacton, k, m, n));
        }
    }
}

TEST(CheckSymmetries, AllBuiltinsPassAtRange50)
{
    for (const char* name : kBuiltins) {
        const SymmetryReport r = checkSymmetries(makeBuiltin(name), 50);
        EXPECT_TRUE(r.passed) << name << ": " << r.violatedCondition;
    }
}

TEST(CheckSymmetries, AsymmetricKernelFailsWithWitness)
{
    const KernelSpec bad = customKernel("k", 1.0);
    const SymmetryReport r = checkSymmetries(bad, 5);
    EXPECT_FALSE(r.passed);
    EXPECT_FALSE(r.violatedCondition.empty());
    const auto [k, m, n] = r.witness;
    EXPECT_EQ(k + m + n, 0);
    EXPECT_NE(k * m * n, 0);

    // symmetric in (m,n) and real, but not cyclic
    const KernelSpec notCyclic = customKernel("|k|*|m*n|^0.5", 2.0);
    const SymmetryReport r2 = checkSymmetries(notCyclic, 5);
    EXPECT_FALSE(r2.passed);
    EXPECT_EQ(r2.violatedCondition, "cyclic");

    // wrong declared degree
    const SymmetryReport r3 = checkSymmetries(customKernel("2*|k*m*n|/(|k|+|m|+|n|)", 1.5), 5);
    EXPECT_FALSE(r3.passed);
    EXPECT_EQ(r3.violatedCondition, "homogeneity");
}

TEST(CheckSymmetries, SurfaceHomogeneity)
{
    const KernelSpec s = builtinKernel("surface");
    EXPECT_EQ(evalT(s, 2, 2, -4), Complex(4.0));
    EXPECT_EQ(evalT(s, 2, 2, -4), 4.0 * evalT(s, 1, 1, -2));
}

TEST(CheckSymmetries, SPropertiesInheritedFromT)
{
    for (const char* name : kBuiltins) {
        const KernelSpec kernel = makeBuiltin(name);
        const double mu = kernel.mu();
        for (long k = -20; k <= 20; ++k) {
            for (long m = -20; m <= 20; ++m) {
                const long n = -k - m;
                const Complex s = evalS(kernel, k, m, n);
                if (k * m * n == 0) {
                    EXPECT_EQ(s, Complex{});
                    continue;
                }
                const double tol = 1e-12 * std::abs(s);
                EXPECT_LE(std::abs(s - std::conj(evalS(kernel, -k, -m, -n))), tol);
                EXPECT_LE(std::abs(s - evalS(kernel, k, n, m)), tol);
                EXPECT_LE(std::abs(s - evalS(kernel, m, n, k)), tol);
                EXPECT_LE(std::abs(evalS(kernel, 3 * k, 3 * m, 3 * n) - std::pow(3.0, mu) * s),
                          1e-12 * std::pow(3.0, mu) * std::abs(s));
            }
        }
    }
}

TEST(CheckSymmetries, CustomKernelReproducesBuiltin)
{
    const KernelSpec custom = customKernel("2*|k*m*n|/(|k|+|m|+|n|)", 2.0, 1.0);
    EXPECT_TRUE(checkSymmetries(custom, 20).passed);
    const KernelSpec hs = customKernel("0.5*|k*m*n|^0.5*(1/(i*k)+1/(i*m)+1/(i*n))", 0.5, 1.5);
    EXPECT_TRUE(checkSymmetries(hs, 20).passed);
    const KernelSpec builtin = builtinKernel("hunter_saxton");
    for (long k = -9; k <= 9; ++k) {
        for (long m = -9; m <= 9; ++m) {
            EXPECT_LE(std::abs(evalT(hs, k, m, -k - m) - evalT(builtin, k, m, -k - m)), 1e-13);
        }
    }
}

TEST(CheckBound, SurfaceBurgersHunterSaxton)
{
    for (long R : {10L, 50L, 200L}) {
        const BoundReport b = checkBound(builtinKernel("burgers"), R);
        EXPECT_TRUE(b.satisfied);
        EXPECT_EQ(b.worstRatio, 1.0);
        const BoundReport s = checkBound(builtinKernel("surface"), R);
        EXPECT_TRUE(s.satisfied);
        EXPECT_LE(s.worstRatio, 1.0);
        const BoundReport h = checkBound(builtinKernel("hunter_saxton"), R);
        EXPECT_TRUE(h.satisfied);
        EXPECT_LE(h.worstRatio, 1.5);
    }
    // worst surface ratio sqrt(R/(R+1)) approaches 1 along (1, R, -(R+1))
    EXPECT_NEAR(checkBound(builtinKernel("surface"), 200).worstRatio, std::sqrt(199.0 / 200.0), 1e-12);
}

TEST(CheckBound, RayleighWithinPublishedConstant)
{
    const KernelSpec r = makeBuiltin("rayleigh");
    const BoundReport b = checkBound(r, 80);
    EXPECT_TRUE(b.satisfied);
    EXPECT_LE(b.worstRatio, *r.boundConstant);
}

TEST(CheckBound, CompactonGrowsWithRange)
{
    const BoundReport small = checkBound(builtinKernel("compacton"), 20);
    const BoundReport large = checkBound(builtinKernel("compacton"), 200);
    EXPECT_FALSE(small.satisfied);
    EXPECT_FALSE(large.satisfied);
    EXPECT_GT(large.worstRatio, 10.0);
    EXPECT_GT(large.worstRatio, 50.0 * small.worstRatio);
}

TEST(CheckBound, UnknownConstantIsEstimatedForBoundedKernel)
{
    const KernelSpec surfaceNoC = customKernel("2*|k*m*n|/(|k|+|m|+|n|)", 2.0);
    const BoundReport b = checkBound(surfaceNoC, 100);
    EXPECT_TRUE(b.satisfied);
    EXPECT_LE(b.worstRatio, 1.0);
    EXPECT_FALSE(b.boundConstant.has_value());
}

TEST(CheckBound, FullLatticeExtension)
{
    const BoundReport b = checkBound(builtinKernel("burgers"), 12, true);
    EXPECT_TRUE(b.fullLattice);
    EXPECT_EQ(b.worstRatio, 1.0);
    EXPECT_TRUE(checkBound(builtinKernel("surface"), 12, true).satisfied);
}

TEST(DegreeFromDimensions, PublishedCases)
{
    EXPECT_EQ(degreeFromDimensions(3, 3), 1.5);
    EXPECT_EQ(degreeFromDimensions(3, 2), 2.0);
    EXPECT_EQ(degreeFromDimensions(1, 3), 0.5);
}

TEST(RayleighKernel, RealAndNonnegative)
{
    const KernelSpec r = builtinKernel("rayleigh", {{"r", 0.3}, {"alpha", 0.2}, {"beta", 1.4}, {"gamma", 0.0}});
    for (long k = -15; k <= 15; ++k) {
        for (long m = -15; m <= 15; ++m) {
            const Complex t = evalT(r, k, m, -k - m);
            EXPECT_EQ(t.imag(), 0.0);
            EXPECT_GE(t.real(), 0.0);
        }
    }
}
