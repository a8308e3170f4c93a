#pragma once

// Verbs of the triadwave command-line tool. Each returns the process exit
// status; reports go to `out`, diagnostics to `err`.

#include <triad/bilinear.hpp>
#include <triad/evolution.hpp>
#include <triad/io.hpp>
#include <triad/kernels.hpp>
#include <triad/oracles.hpp>
#include <triad/theory.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#ifndef TRIAD_VERSION
#define TRIAD_VERSION "unknown"
#endif

namespace triadwave {

namespace fs = std::filesystem;
using triad::Json;

enum ExitStatus : int {
    kSuccess = 0,
    kOracleMismatch = 1,
    kBlowup = 2,
    kInvalidInput = 3,
    kBoundViolated = 4,
    kSymmetryViolated = 5,
};

namespace detail {

inline std::string isoTime(std::chrono::system_clock::time_point tp)
{
    const std::time_t tt = std::chrono::system_clock::to_time_t(tp);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

inline void writeJson(const fs::path& path, const Json& j)
{
    std::ofstream os(path);
    if (!os) throw triad::Error("cannot write '" + path.string() + "'");
    os << std::setw(2) << j << '\n';
}

inline std::string parentDir(const std::string& path)
{
    const fs::path p = fs::path(path).parent_path();
    return p.empty() ? "." : p.string();
}

inline Json loadConfig(const std::string& path)
{
    if (path.empty()) throw triad::DomainError("--config is required");
    return triad::readJsonFile(path);
}

inline std::map<std::string, double> parseParams(const std::vector<std::string>& items)
{
    std::map<std::string, double> params;
    for (const std::string& item : items) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw triad::DomainError("--param expects key=value, got '" + item + "'");
        try {
            params[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
        } catch (const std::exception&) {
            throw triad::DomainError("--param: value of '" + item.substr(0, eq) + "' is not a number");
        }
    }
    return params;
}

// L2 norm of the difference of two fields of possibly different truncation.
inline double distance(const triad::SpectralField& a, const triad::SpectralField& b)
{
    const int N = std::max(a.truncation(), b.truncation());
    return triad::sobolevNorm(triad::project(a, N) - triad::project(b, N), 0.0);
}

} // namespace detail

struct RunOptions {
    std::string config;
    std::string out = ".";
};

inline int cmdRun(const RunOptions& opt, std::ostream& out, std::ostream& err)
{
    const auto start = std::chrono::system_clock::now();
    const auto wallStart = std::chrono::steady_clock::now();
    Json manifest{{"version", TRIAD_VERSION}, {"command", "run"}, {"startTime", detail::isoTime(start)}};
    Json artifacts = Json::array();
    int status = kSuccess;

    fs::create_directories(opt.out);
    const fs::path manifestPath = fs::path(opt.out) / "manifest.json";
    auto finish = [&](int code) {
        manifest["exitStatus"] = code;
        manifest["endTime"] = detail::isoTime(std::chrono::system_clock::now());
        manifest["wallSeconds"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - wallStart).count();
        artifacts.push_back(manifestPath.string());
        manifest["artifacts"] = artifacts;
        detail::writeJson(manifestPath, manifest);
        return code;
    };

    triad::RunConfig rc;
    try {
        const Json j = detail::loadConfig(opt.config);
        manifest["config"] = j;
        rc = triad::runConfigFromJson(j, detail::parentDir(opt.config));
    } catch (const triad::DomainError& e) {
        err << "invalid config: " << e.what() << '\n';
        manifest["error"] = e.what();
        return finish(kInvalidInput);
    }

    const triad::SymmetryReport cert = triad::checkSymmetries(rc.sim.kernel, rc.certificationRange);
    manifest["certification"] = triad::toJson(cert);
    if (!cert.passed) {
        err << "kernel '" << rc.sim.kernel.name << "' failed certification: " << cert.violatedCondition
            << " at (" << cert.witness[0] << ", " << cert.witness[1] << ", " << cert.witness[2] << ")\n";
        return finish(kInvalidInput);
    }

    Json snapshots = Json::array();
    long recorded = 0;
    triad::StateObserver observer;
    if (rc.snapshots) {
        const long every = std::max(1, rc.snapshotEvery);
        observer = [&, every](double t, const triad::SpectralField& u) {
            if (recorded++ % every == 0) snapshots.push_back({{"t", t}, {"field", triad::fieldToJson(u)}});
        };
    }
    const triad::IntegrationResult result = triad::integrate(rc.sim, observer);

    const fs::path csvPath = fs::path(opt.out) / "diagnostics.csv";
    {
        std::ofstream csv(csvPath);
        triad::writeDiagnosticsCsv(csv, result.series);
    }
    artifacts.push_back(csvPath.string());
    if (rc.snapshots) {
        const double tFinal = result.series.rows.empty() ? 0.0 : result.series.rows.back().t;
        if (snapshots.empty() || snapshots.back().at("t").get<double>() != tFinal) {
            snapshots.push_back({{"t", tFinal}, {"field", triad::fieldToJson(result.final)}});
        }
        const fs::path snapPath = fs::path(opt.out) / "snapshots.json";
        detail::writeJson(snapPath, snapshots);
        artifacts.push_back(snapPath.string());
    }
    const fs::path finalPath = fs::path(opt.out) / "final.json";
    detail::writeJson(finalPath, triad::fieldToJson(result.final));
    artifacts.push_back(finalPath.string());

    manifest["steps"] = result.steps;
    manifest["blowup"] = result.blowup;
    manifest["blowupTime"] = result.blowupTime ? Json(*result.blowupTime) : Json(nullptr);
    if (result.existence) {
        manifest["existence"] = {{"s", result.existence->s},
                                 {"growthConstant", result.existence->growthConstant},
                                 {"initialNorm", result.existence->initialNorm},
                                 {"tStar", result.existence->bounded() ? Json(result.existence->tStar) : Json(nullptr)}};
    }
    if (result.blowup) {
        status = kBlowup;
        out << "blow-up detected at t = " << triad::detail::formatDouble(*result.blowupTime) << '\n';
    } else {
        out << "completed " << result.steps << " steps\n";
    }
    return finish(status);
}

struct VerifyOptions {
    std::string config;
    std::string kernel;
    std::vector<std::string> params;
    long R = 50;
    bool fullLattice = false;
};

inline int cmdVerifyKernel(const VerifyOptions& opt, std::ostream& out, std::ostream& err)
{
    triad::KernelSpec kernel;
    try {
        if (!opt.kernel.empty()) {
            kernel = triad::builtinKernel(opt.kernel, detail::parseParams(opt.params));
        } else {
            const Json j = detail::loadConfig(opt.config);
            kernel = triad::kernelFromJson(j.contains("kernel") ? j.at("kernel") : j);
        }
        if (opt.R < 2) throw triad::DomainError("--R must be >= 2");
    } catch (const triad::DomainError& e) {
        err << "invalid input: " << e.what() << '\n';
        return kInvalidInput;
    } catch (const Json::exception& e) {
        err << "invalid input: " << e.what() << '\n';
        return kInvalidInput;
    }

    Json report{{"kernel", triad::kernelToJson(kernel)}};
    const triad::SymmetryReport sym = triad::checkSymmetries(kernel, opt.R);
    report["symmetry"] = triad::toJson(sym);
    int status = kSuccess;
    if (!sym.passed) {
        status = kSymmetryViolated;
    } else {
        const triad::BoundReport bound = triad::checkBound(kernel, opt.R, opt.fullLattice);
        report["bound"] = triad::toJson(bound);
        if (!bound.satisfied) status = kBoundViolated;
    }
    report["exitStatus"] = status;
    out << std::setw(2) << report << '\n';
    return status;
}

struct ConstantsOptions {
    double s = 2.0;
    double lambda = 0.0;
    std::string kernel;
    std::vector<std::string> params;
    std::string config;
};

inline int cmdConstants(const ConstantsOptions& opt, std::ostream& out, std::ostream& err)
{
    try {
        std::optional<triad::KernelSpec> kernel;
        if (!opt.kernel.empty()) {
            kernel = triad::builtinKernel(opt.kernel, detail::parseParams(opt.params));
        } else if (!opt.config.empty()) {
            const Json j = detail::loadConfig(opt.config);
            kernel = triad::kernelFromJson(j.contains("kernel") ? j.at("kernel") : j);
        }
        if (!(opt.s > 0.0) || !(opt.lambda >= 0.0)) {
            throw triad::DomainError("constants require s > 0 and lambda >= 0");
        }
        double lambda = opt.lambda;
        if (kernel && kernel->regime() == triad::DegreeRegime::Negative) lambda = kernel->lambda();
        Json j = triad::toJson(triad::theoryConstants(opt.s, lambda, kernel ? &*kernel : nullptr));
        if (kernel) {
            j["kernel"] = triad::kernelToJson(*kernel);
            try {
                triad::growthConstant(*kernel, opt.s);
            } catch (const triad::DomainError& e) {
                j["growthConstantUnavailable"] = e.what();
            }
        }
        out << std::setw(2) << j << '\n';
        return kSuccess;
    } catch (const triad::DomainError& e) {
        err << "invalid input: " << e.what() << '\n';
        return kInvalidInput;
    } catch (const Json::exception& e) {
        err << "invalid input: " << e.what() << '\n';
        return kInvalidInput;
    }
}

struct ConvergenceOptions {
    std::string config;
    std::string out;
    std::vector<int> Ns;
    std::vector<double> dts;
};

/// Self-convergence tables: each run is compared with the finest run of its
/// sweep in the L2 norm; orders come from consecutive entries.
inline int cmdConvergence(const ConvergenceOptions& opt, std::ostream& out, std::ostream& err)
{
    triad::RunConfig rc;
    try {
        rc = triad::runConfigFromJson(detail::loadConfig(opt.config), detail::parentDir(opt.config));
        for (int N : opt.Ns) {
            if (N < 1) throw triad::DomainError("--N-list entries must be >= 1");
        }
        for (double dt : opt.dts) {
            if (!(dt > 0.0)) throw triad::DomainError("--dt-list entries must be positive");
        }
    } catch (const triad::DomainError& e) {
        err << "invalid config: " << e.what() << '\n';
        return kInvalidInput;
    }
    const triad::SymmetryReport cert = triad::checkSymmetries(rc.sim.kernel, rc.certificationRange);
    if (!cert.passed) {
        err << "kernel '" << rc.sim.kernel.name << "' failed certification: " << cert.violatedCondition << '\n';
        return kInvalidInput;
    }

    bool blowup = false;
    auto finalState = [&](int N, double dt) {
        triad::SimConfig c = rc.sim;
        c.N = N;
        c.dt = std::copysign(dt, c.tEnd == 0.0 ? 1.0 : c.tEnd);
        c.outputEvery = std::numeric_limits<int>::max();
        const triad::IntegrationResult r = triad::integrate(c);
        blowup = blowup || r.blowup;
        return r.final;
    };
    auto table = [](const std::vector<double>& keys, const std::vector<triad::SpectralField>& states,
                    const char* keyName, bool wantOrder) {
        Json rows = Json::array();
        const triad::SpectralField& ref = states.back();
        std::vector<double> errors;
        for (const triad::SpectralField& s : states) errors.push_back(detail::distance(s, ref));
        for (std::size_t i = 0; i < keys.size(); ++i) {
            Json row{{keyName, keys[i]}, {"error", errors[i]}};
            if (wantOrder && i + 1 < keys.size() && errors[i] > 0.0 && errors[i + 1] > 0.0) {
                row["order"] = std::log(errors[i] / errors[i + 1]) / std::log(keys[i] / keys[i + 1]);
            } else {
                row["order"] = nullptr;
            }
            rows.push_back(row);
        }
        return rows;
    };

    std::vector<int> Ns = opt.Ns.empty() ? std::vector<int>{rc.sim.N} : opt.Ns;
    std::vector<double> dts = opt.dts.empty() ? std::vector<double>{std::abs(rc.sim.dt)} : opt.dts;
    std::sort(Ns.begin(), Ns.end());
    std::sort(dts.begin(), dts.end(), std::greater<>());

    std::vector<triad::SpectralField> byN, byDt;
    for (int N : Ns) byN.push_back(finalState(N, std::abs(rc.sim.dt)));
    for (double dt : dts) byDt.push_back(finalState(rc.sim.N, dt));

    const Json report{
        {"kernel", triad::kernelToJson(rc.sim.kernel)},
        {"tEnd", rc.sim.tEnd},
        {"N", table(std::vector<double>(Ns.begin(), Ns.end()), byN, "N", false)},
        {"dt", table(dts, byDt, "dt", true)},
        {"blowup", blowup},
    };
    out << std::setw(2) << report << '\n';
    if (!opt.out.empty()) {
        fs::create_directories(opt.out);
        detail::writeJson(fs::path(opt.out) / "convergence.json", report);
    }
    return blowup ? kBlowup : kSuccess;
}

struct OracleOptions {
    std::string config;
    std::string out;
};

/// Compares the spectral machinery with the independent oracles that apply
/// to the configured kernel: the brute-force right-hand side always, the
/// characteristics solution for Burgers and the grid solver for Hunter-Saxton.
inline int cmdOracleCompare(const OracleOptions& opt, std::ostream& out, std::ostream& err)
{
    triad::RunConfig rc;
    double rhsTol = 1e-12, burgersTol = 1e-6, hsTol = 1e-8;
    try {
        const Json j = detail::loadConfig(opt.config);
        rc = triad::runConfigFromJson(j, detail::parentDir(opt.config));
        if (j.contains("oracle")) {
            const Json& o = j.at("oracle");
            rhsTol = o.value("rhsTolerance", rhsTol);
            burgersTol = o.value("burgersTolerance", burgersTol);
            hsTol = o.value("hunterSaxtonTolerance", hsTol);
        }
        if (!(rc.sim.tEnd >= 0.0)) throw triad::DomainError("oracle-compare runs forward in time only");
    } catch (const triad::DomainError& e) {
        err << "invalid config: " << e.what() << '\n';
        return kInvalidInput;
    } catch (const Json::exception& e) {
        err << "invalid config: " << e.what() << '\n';
        return kInvalidInput;
    }

    const triad::KernelSpec& kernel = rc.sim.kernel;
    const triad::SpectralField f = triad::project(rc.sim.initialData, rc.sim.N);
    Json checks = Json::array();
    bool passed = true;
    auto addCheck = [&](const std::string& name, double discrepancy, double tolerance, Json extra = Json::object()) {
        const bool ok = discrepancy <= tolerance;
        passed = passed && ok;
        extra["name"] = name;
        extra["discrepancy"] = discrepancy;
        extra["tolerance"] = tolerance;
        extra["passed"] = ok;
        checks.push_back(extra);
    };

    {
        const triad::SpectralField fast = triad::galerkinRHS(kernel, f);
        double scale = 1.0;
        for (const triad::Complex& c : fast.positive()) scale = std::max(scale, std::abs(c));
        addCheck("bruteForceRHS", triad::maxCoefficientDifference(triad::bruteForceRHS(kernel, f), fast) / scale,
                 rhsTol, {{"norm", "max coefficient difference relative to max(1, max |rhs|)"}});
    }

    if (kernel.name == "burgers") {
        const triad::BurgersCharacteristics exact(triad::fieldProfile(f));
        if (!(rc.sim.tEnd < exact.breakingTime())) {
            err << "invalid config: tEnd is not before the breaking time "
                << triad::detail::formatDouble(exact.breakingTime()) << '\n';
            return kInvalidInput;
        }
        const triad::IntegrationResult r = triad::integrate(rc.sim);
        const std::size_t M = 4 * static_cast<std::size_t>(rc.sim.N);
        const triad::GridField u = triad::synthesize(r.final, M);
        double maxErr = 0.0;
        for (std::size_t j = 0; j < M; ++j) {
            maxErr = std::max(maxErr, std::abs(u.samples[j] - exact(triad::gridPoint(j, M), rc.sim.tEnd)));
        }
        addCheck("burgersExact", maxErr, burgersTol,
                 {{"norm", "Linf"}, {"t", rc.sim.tEnd}, {"breakingTime", exact.breakingTime()}});
    } else if (kernel.name == "hunter_saxton") {
        triad::HunterSaxtonConfig hc;
        hc.N = rc.sim.N;
        hc.dt = rc.sim.dt;
        hc.tEnd = rc.sim.tEnd;
        hc.outputEvery = std::numeric_limits<int>::max();
        const triad::Trajectory direct =
            triad::hunterSaxtonDirect(triad::synthesize(f, 4 * static_cast<std::size_t>(rc.sim.N)), hc);
        const triad::IntegrationResult r = triad::integrate(rc.sim);
        addCheck("hunterSaxtonDirect", triad::sobolevNorm(r.final - direct.states.back(), 0.0), hsTol,
                 {{"norm", "L2"}, {"t", rc.sim.tEnd}});
    }

    const Json report{{"kernel", triad::kernelToJson(kernel)}, {"checks", checks}, {"passed", passed}};
    out << std::setw(2) << report << '\n';
    if (!opt.out.empty()) {
        fs::create_directories(opt.out);
        detail::writeJson(fs::path(opt.out) / "oracle.json", report);
    }
    return passed ? kSuccess : kOracleMismatch;
}

} // namespace triadwave
