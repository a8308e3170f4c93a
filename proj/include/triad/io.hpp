#pragma once

// JSON surfaces: field dumps, kernel config blocks, simulation configs and
// report records.

#include <triad/evolution.hpp>
#include <triad/field.hpp>
#include <triad/kernels.hpp>
#include <triad/theory.hpp>

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>

namespace triad {

using Json = nlohmann::json;

/// {"N": int, "coeffs": [{"k": int >= 1, "re": float, "im": float}, ...]}
inline Json fieldToJson(const SpectralField& u)
{
    Json coeffs = Json::array();
    for (long k = 1; k <= u.truncation(); ++k) {
        const Complex c = u(k);
        if (c == Complex{}) continue;
        coeffs.push_back({{"k", k}, {"re", c.real()}, {"im", c.imag()}});
    }
    return {{"N", u.truncation()}, {"coeffs", coeffs}};
}

inline SpectralField fieldFromJson(const Json& j)
{
    if (!j.is_object() || !j.contains("N") || !j.contains("coeffs")) {
        throw DomainError("field dump: expected an object with \"N\" and \"coeffs\"");
    }
    const int N = j.at("N").get<int>();
    SpectralField u(N);
    std::set<long> seen;
    for (const Json& entry : j.at("coeffs")) {
        const long k = entry.at("k").get<long>();
        if (k < 1 || k > N) {
            throw DomainError("field dump: wavenumber " + std::to_string(k) + " outside 1..N");
        }
        if (!seen.insert(k).second) {
            throw DomainError("field dump: duplicate wavenumber " + std::to_string(k));
        }
        u.set(k, {entry.at("re").get<double>(), entry.value("im", 0.0)});
    }
    return u;
}

inline Json readJsonFile(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw DomainError("'" + path + "': " + e.what());
    }
}

/// Kernel config block: {"name": ..., "params": {...}} or
/// {"name": "custom", "customExpression": ..., "degree": ..., "boundConstant": ...}.
inline KernelSpec kernelFromJson(const Json& j)
{
    if (j.is_string()) return builtinKernel(j.get<std::string>());
    if (!j.is_object()) throw DomainError("kernel block must be an object or a name");
    const std::string name = j.value("name", j.contains("customExpression") ? "custom" : "");
    if (name == "custom" || j.contains("customExpression")) {
        if (!j.contains("customExpression") || !j.contains("degree")) {
            throw DomainError("custom kernel needs \"customExpression\" and \"degree\"");
        }
        std::optional<double> c;
        if (j.contains("boundConstant") && !j.at("boundConstant").is_null()) {
            c = j.at("boundConstant").get<double>();
        }
        return customKernel(j.at("customExpression").get<std::string>(),
                            j.at("degree").get<double>(), c);
    }
    std::map<std::string, double> params;
    if (j.contains("params")) {
        for (const auto& [key, value] : j.at("params").items()) params[key] = value.get<double>();
    }
    return builtinKernel(name, params);
}

inline Json kernelToJson(const KernelSpec& k)
{
    Json j{{"name", k.name}, {"degree", k.degree}};
    if (!k.params.empty()) j["params"] = k.params;
    if (!k.expression.empty()) j["customExpression"] = k.expression;
    j["boundConstant"] = k.boundConstant ? Json(*k.boundConstant) : Json(nullptr);
    return j;
}

/// Initial data block: a field dump, {"file": path}, or a named profile
/// {"profile": "sine"|"cosine", "amplitude": a, "wavenumber": w}.
inline SpectralField initialDataFromJson(const Json& j, int N, const std::string& baseDir = ".")
{
    if (j.contains("coeffs")) return fieldFromJson(j);
    if (j.contains("file")) {
        std::string path = j.at("file").get<std::string>();
        if (!path.empty() && path.front() != '/') path = baseDir + "/" + path;
        return fieldFromJson(readJsonFile(path));
    }
    const std::string profile = j.value("profile", "");
    const double amplitude = j.value("amplitude", 0.0);
    const int w = j.value("wavenumber", 1);
    if (w < 1) throw DomainError("initial data: wavenumber must be >= 1");
    const int size = std::max(N, w);
    if (profile == "sine") return SpectralField::mode(size, w, {0.0, -0.5 * amplitude});
    if (profile == "cosine") return SpectralField::mode(size, w, {0.5 * amplitude, 0.0});
    throw DomainError("initial data: unknown profile '" + profile + "'");
}

/// Parsed run configuration.
struct RunConfig {
    SimConfig sim;
    Json raw;
    bool snapshots = false;
    int snapshotEvery = 0;
    /// Range used to certify the kernel's symmetries before a run.
    long certificationRange = 16;
};

inline RunConfig runConfigFromJson(const Json& j, const std::string& baseDir = ".")
{
    RunConfig rc;
    rc.raw = j;
    try {
        if (!j.contains("kernel")) throw DomainError("config: missing \"kernel\" section");
        if (!j.contains("simulation")) throw DomainError("config: missing \"simulation\" section");
        rc.sim.kernel = kernelFromJson(j.at("kernel"));
        const Json& s = j.at("simulation");
        rc.sim.N = s.at("N").get<int>();
        rc.sim.dt = s.at("dt").get<double>();
        rc.sim.tEnd = s.at("tEnd").get<double>();
        const std::string integrator = s.value("integrator", "rk4");
        if (integrator != "rk4") throw DomainError("config: unsupported integrator '" + integrator + "'");
        if (s.contains("trackedS")) rc.sim.trackedS = s.at("trackedS").get<std::vector<double>>();
        rc.sim.outputEvery = s.value("outputEvery", 1);
        if (s.contains("blowupNormThreshold")) rc.sim.blowupNormThreshold = s.at("blowupNormThreshold").get<double>();
        if (s.contains("envelopeS")) rc.sim.envelopeS = s.at("envelopeS").get<double>();
        rc.certificationRange = s.value("certificationRange", 16L);
        if (!j.contains("initialData")) throw DomainError("config: missing \"initialData\" section");
        rc.sim.initialData = initialDataFromJson(j.at("initialData"), rc.sim.N, baseDir);
        if (j.contains("output")) {
            rc.snapshots = j.at("output").value("snapshots", false);
            rc.snapshotEvery = j.at("output").value("snapshotEvery", 0);
        }
        rc.sim.validate();
    } catch (const Json::exception& e) {
        throw DomainError(std::string("config: ") + e.what());
    }
    return rc;
}

inline Json tripleJson(const Triple& t) { return Json::array({t[0], t[1], t[2]}); }

inline Json toJson(const SymmetryReport& r)
{
    Json j{{"passed", r.passed}, {"range", r.range}};
    if (!r.passed) {
        j["violatedCondition"] = r.violatedCondition;
        j["witness"] = tripleJson(r.witness);
        j["lhs"] = {r.lhs.real(), r.lhs.imag()};
        j["rhs"] = {r.rhs.real(), r.rhs.imag()};
    }
    return j;
}

inline Json toJson(const BoundReport& r)
{
    return {{"satisfied", r.satisfied},
            {"worstRatio", r.worstRatio},
            {"worstTriple", tripleJson(r.worstTriple)},
            {"rangeChecked", r.rangeChecked},
            {"halfRangeRatio", r.halfRangeRatio},
            {"fullLattice", r.fullLattice},
            {"boundConstant", r.boundConstant ? Json(*r.boundConstant) : Json(nullptr)},
            {"estimatedConstant", r.boundConstant ? Json(nullptr) : Json(r.worstRatio)}};
}

inline Json toJson(const TheoryConstants& c)
{
    auto opt = [](const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); };
    return {{"s", c.s},          {"lambda", c.lambda}, {"mu", opt(c.mu)},       {"Ms", opt(c.Ms)},
            {"Bs", opt(c.Bs)},   {"Cs", opt(c.Cs)},    {"Cslam", opt(c.Cslam)}, {"Ks", opt(c.Ks)},
            {"Kslam", opt(c.Kslam)}, {"tStar", opt(c.tStarUnitNorm)}};
}

} // namespace triad
