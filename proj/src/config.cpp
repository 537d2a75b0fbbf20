#include "mqc/config.hpp"

#include <json.hpp>

#include <set>

namespace mqc {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
    throw std::invalid_argument("config: field '" + field + "': " + what);
}

double number_at(const json& j, const std::string& key, double fallback, bool required) {
    if (!j.contains(key)) {
        if (required) fail(key, "missing required value");
        return fallback;
    }
    if (!j[key].is_number()) fail(key, "expected a number");
    double v = j[key].get<double>();
    if (!std::isfinite(v)) fail(key, "must be finite");
    return v;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config: parse error: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");

    static const std::set<std::string> known = {
        "N",          "J",           "Omega",        "gamma_ud",  "gamma_du",
        "gamma_el",   "t",           "axis",         "phi_samples", "backend",
        "frame",      "sweep_parameter", "sweep_values", "out_dir", "formats",
        "entropies",  "seed",        "workers"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.count(it.key())) fail(it.key(), "unknown key (strict parsing)");

    RunConfig c;
    if (!j.contains("N") || !j["N"].is_number_integer()) fail("N", "required integer");
    c.model.N = j["N"].get<int>();
    if (c.model.N < 1) fail("N", "must be >= 1");
    c.model.J = number_at(j, "J", 0.0, true);
    c.model.Omega = number_at(j, "Omega", 0.0, false);
    c.rates.ud = number_at(j, "gamma_ud", 0.0, false);
    c.rates.du = number_at(j, "gamma_du", 0.0, false);
    c.rates.el = number_at(j, "gamma_el", 0.0, false);
    if (c.rates.ud < 0 || c.rates.du < 0 || c.rates.el < 0)
        fail("gamma_*", "rates must be >= 0");
    c.t = number_at(j, "t", 0.0, true);
    if (c.t < 0) fail("t", "must be >= 0");

    if (j.contains("axis")) {
        const json& a = j["axis"];
        if (a.is_string()) {
            if (a.get<std::string>() != "optimize")
                fail("axis", "expected [nx,ny,nz] or \"optimize\"");
            c.optimize_axis = true;
        } else if (a.is_array() && a.size() == 3) {
            c.axis = {a[0].get<double>(), a[1].get<double>(), a[2].get<double>()};
            double n = c.axis.norm();
            if (n < 1e-12) fail("axis", "axis must be nonzero");
            c.axis.nx /= n;
            c.axis.ny /= n;
            c.axis.nz /= n;
            c.optimize_axis = false;
        } else {
            fail("axis", "expected [nx,ny,nz] or \"optimize\"");
        }
    }

    if (j.contains("phi_samples")) {
        if (!j["phi_samples"].is_number_integer()) fail("phi_samples", "expected integer");
        c.phi_samples = j["phi_samples"].get<int>();
        if (c.phi_samples != 0 && c.phi_samples < 2 * c.model.N + 1)
            fail("phi_samples", "below the Nyquist requirement 2N+1");
    }

    if (j.contains("backend")) {
        std::string b = j["backend"].get<std::string>();
        if (b == "auto") c.backend = BackendChoice::automatic;
        else if (b == "dicke") c.backend = BackendChoice::dicke;
        else if (b == "sym") c.backend = BackendChoice::sym;
        else if (b == "exact") c.backend = BackendChoice::exact;
        else fail("backend", "expected auto|dicke|sym|exact");
    }
    if (j.contains("frame")) {
        std::string f = j["frame"].get<std::string>();
        if (f == "z") c.frame = TwistFrame::z_frame;
        else if (f == "x") c.frame = TwistFrame::x_frame;
        else fail("frame", "expected z|x");
    }

    if (j.contains("sweep_parameter") != j.contains("sweep_values"))
        fail("sweep_parameter", "sweep_parameter and sweep_values must appear together");
    if (j.contains("sweep_parameter")) {
        c.sweep_parameter = j["sweep_parameter"].get<std::string>();
        static const std::set<std::string> params = {"t",        "gamma",    "gamma_ud",
                                                     "gamma_du", "gamma_el", "omega", "J"};
        if (!params.count(c.sweep_parameter))
            fail("sweep_parameter", "unsupported parameter");
        if (!j["sweep_values"].is_array() || j["sweep_values"].empty())
            fail("sweep_values", "expected a nonempty array");
        for (const auto& v : j["sweep_values"]) {
            double x = v.get<double>();
            if (!std::isfinite(x)) fail("sweep_values", "values must be finite");
            c.sweep_values.push_back(x);
        }
    }

    if (j.contains("out_dir")) c.out_dir = j["out_dir"].get<std::string>();
    if (j.contains("formats")) {
        if (!j["formats"].is_array()) fail("formats", "expected an array");
        c.format_csv = c.format_json = false;
        for (const auto& f : j["formats"]) {
            std::string s = f.get<std::string>();
            if (s == "csv") c.format_csv = true;
            else if (s == "json") c.format_json = true;
            else fail("formats", "expected subset of [csv, json]");
        }
        if (!c.format_csv && !c.format_json) fail("formats", "must not be empty");
    }
    if (j.contains("entropies")) c.want_entropies = j["entropies"].get<bool>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("workers")) {
        c.workers = j["workers"].get<int>();
        if (c.workers < 0) fail("workers", "must be >= 0");
    }

    // cross-field checks mirror the engine constraints so config errors are
    // caught before any computation starts
    if (c.model.Omega != 0.0 && c.rates.any() && c.model.N > 6 &&
        c.backend != BackendChoice::exact)
        fail("Omega", "transverse field with decoherence is only supported on the "
                      "exact backend (N <= 6); set Omega=0 or reduce N");
    if (c.backend == BackendChoice::sym && c.model.Omega != 0.0)
        fail("backend", "sym backend requires Omega = 0");
    if (c.backend == BackendChoice::dicke && c.rates.any())
        fail("backend", "dicke backend cannot simulate decoherence");
    if (c.backend == BackendChoice::exact && c.model.N > FullDensityMatrix::kMaxParticles)
        fail("backend", "exact backend capped at N = 12");
    if (c.sweep_parameter == "gamma" && !c.rates.any())
        fail("sweep_parameter",
             "gamma sweep scales the configured rates; set a nonzero ratio first");
    return c;
}

std::string serialize_config(const RunConfig& c) {
    json j;
    j["N"] = c.model.N;
    j["J"] = c.model.J;
    j["Omega"] = c.model.Omega;
    j["gamma_ud"] = c.rates.ud;
    j["gamma_du"] = c.rates.du;
    j["gamma_el"] = c.rates.el;
    j["t"] = c.t;
    if (c.optimize_axis) j["axis"] = "optimize";
    else j["axis"] = {c.axis.nx, c.axis.ny, c.axis.nz};
    j["phi_samples"] = c.phi_samples;
    switch (c.backend) {
        case BackendChoice::automatic: j["backend"] = "auto"; break;
        case BackendChoice::dicke: j["backend"] = "dicke"; break;
        case BackendChoice::sym: j["backend"] = "sym"; break;
        case BackendChoice::exact: j["backend"] = "exact"; break;
    }
    j["frame"] = (c.frame == TwistFrame::z_frame) ? "z" : "x";
    if (c.has_sweep()) {
        j["sweep_parameter"] = c.sweep_parameter;
        j["sweep_values"] = c.sweep_values;
    }
    j["out_dir"] = c.out_dir;
    std::vector<std::string> formats;
    if (c.format_csv) formats.push_back("csv");
    if (c.format_json) formats.push_back("json");
    j["formats"] = formats;
    j["entropies"] = c.want_entropies;
    j["seed"] = c.seed;
    j["workers"] = c.workers;
    return j.dump(2);
}

std::string config_hash(const RunConfig& config) {
    std::string s = serialize_config(config);
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Backend resolve_backend(const RunConfig& c) {
    switch (c.backend) {
        case BackendChoice::dicke: return Backend::dicke_pure;
        case BackendChoice::sym: return Backend::sym_liouville;
        case BackendChoice::exact: return Backend::exact_oracle;
        case BackendChoice::automatic: break;
    }
    if (!c.rates.any()) return Backend::dicke_pure;
    if (c.model.Omega == 0.0) return Backend::sym_liouville;
    if (c.model.N <= 6) return Backend::exact_oracle;
    throw std::invalid_argument(
        "config: no engine supports Omega != 0 with decoherence at N > 6; set "
        "Omega=0 (sym backend) or N <= 6 (exact backend)");
}

RunConfig apply_sweep_value(const RunConfig& base, double value) {
    RunConfig c = base;
    c.sweep_parameter.clear();
    c.sweep_values.clear();
    if (base.sweep_parameter == "t") {
        c.t = value;
    } else if (base.sweep_parameter == "gamma") {
        double total = base.rates.total();
        if (total <= 0.0)
            throw std::invalid_argument("sweep: gamma sweep needs nonzero base rates");
        double scale = value / total;
        if (value < 0.0) throw std::invalid_argument("sweep: gamma must be >= 0");
        c.rates.ud = base.rates.ud * scale;
        c.rates.du = base.rates.du * scale;
        c.rates.el = base.rates.el * scale;
    } else if (base.sweep_parameter == "gamma_ud") {
        c.rates.ud = value;
    } else if (base.sweep_parameter == "gamma_du") {
        c.rates.du = value;
    } else if (base.sweep_parameter == "gamma_el") {
        c.rates.el = value;
    } else if (base.sweep_parameter == "omega") {
        c.model.Omega = value;
    } else if (base.sweep_parameter == "J") {
        c.model.J = value;
    } else {
        throw std::invalid_argument("sweep: unsupported parameter " + base.sweep_parameter);
    }
    return c;
}

}  // namespace mqc
