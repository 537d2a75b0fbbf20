// mqc: simulate collective-spin echo experiments, extract multiple-quantum
// coherence spectra, and evaluate entanglement witnesses.

#include "mqc/runner.hpp"
#include "mqc/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace mqc;

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path find_preset(const std::string& name) {
    std::vector<fs::path> roots;
    if (const char* env = std::getenv("MQC_PRESET_DIR")) roots.emplace_back(env);
    roots.emplace_back("presets");
#ifdef MQC_SOURCE_DIR
    roots.emplace_back(fs::path(MQC_SOURCE_DIR) / "presets");
#endif
    for (const auto& root : roots) {
        fs::path p = root / (name + ".json");
        if (fs::exists(p)) return p;
    }
    throw std::runtime_error("preset not found: " + name +
                             " (searched $MQC_PRESET_DIR, ./presets, source tree)");
}

struct CommonOpts {
    std::string config_path, preset;
    std::string backend_override, out_override;
    std::vector<std::string> format_override;
    int workers = 0;
};

RunConfig load_config(const CommonOpts& opts) {
    if (opts.config_path.empty() == opts.preset.empty())
        throw std::runtime_error("provide exactly one of --config or --preset");
    std::string text = read_file(opts.config_path.empty() ? find_preset(opts.preset)
                                                          : fs::path(opts.config_path));
    RunConfig cfg = parse_config(text);
    if (!opts.backend_override.empty()) {
        nlohmann::json patch = nlohmann::json::parse(serialize_config(cfg));
        patch["backend"] = opts.backend_override == "auto" ? "auto"
                           : opts.backend_override == "dicke" ? "dicke"
                           : opts.backend_override == "sym" ? "sym"
                                                            : "exact";
        cfg = parse_config(patch.dump());
    }
    if (!opts.out_override.empty()) cfg.out_dir = opts.out_override;
    if (!opts.format_override.empty()) {
        cfg.format_csv = cfg.format_json = false;
        for (const auto& f : opts.format_override) {
            if (f == "csv") cfg.format_csv = true;
            else if (f == "json") cfg.format_json = true;
            else throw std::runtime_error("unknown format: " + f);
        }
    }
    if (opts.workers > 0) cfg.workers = opts.workers;
    return cfg;
}

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "path to a JSON run configuration");
    cmd->add_option("--preset", opts.preset, "named preset (fig1b, fig2, fig2b, fig3, ...)");
    cmd->add_option("--backend", opts.backend_override,
                    "override engine: auto|dicke|sym|exact")
        ->check(CLI::IsMember({"auto", "dicke", "sym", "exact"}));
    cmd->add_option("--out", opts.out_override, "output directory override");
    cmd->add_option("--format", opts.format_override, "output formats: csv and/or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--workers", opts.workers, "worker threads (default: MQC_WORKERS or all)");
}

void print_summary(const PointResult& res) {
    int N = res.direct_spectrum.N;
    std::cout << "backend: " << backend_name(res.backend) << "\n";
    std::cout << "axis: (" << format_number(res.axis.nx) << ", " << format_number(res.axis.ny)
              << ", " << format_number(res.axis.nz) << ")\n";
    std::cout << "F_I = " << format_number(res.report.f_i)
              << "  (protocol: " << format_number(res.f_i_protocol) << ")\n";
    std::cout << "F_Q = " << format_number(res.qfi) << "\n";
    std::cout << "F_I/N = " << format_number(res.report.f_i / N)
              << ", entanglement depth >= " << res.report.entanglement_depth << "\n";
    int n_viol = 0;
    for (bool v : res.report.violations) n_viol += v ? 1 : 0;
    std::cout << "separable-bound violations: " << n_viol << " coherence orders\n";
    if (!res.validity.valid)
        std::cout << "warning: " << res.validity.diagnostic << "\n";
}

int run_simulate(const CommonOpts& opts) {
    RunConfig cfg = load_config(opts);
    if (cfg.has_sweep()) {
        run_sweep(cfg);
        std::cout << "sweep complete: " << cfg.sweep_values.size() << " points -> "
                  << cfg.out_dir << "\n";
        return 0;
    }
    PointResult res = run(cfg);
    print_summary(res);
    std::cout << "results -> " << cfg.out_dir << "\n";
    return 0;
}

int run_mqc(const CommonOpts& opts, const std::string& method) {
    RunConfig cfg = load_config(opts);
    if (cfg.has_sweep()) throw std::runtime_error("mqc: use the sweep subcommand for sweeps");
    PointResult res = run(cfg);
    const MqcSpectrum& spec =
        method == "protocol" ? res.protocol_spectrum : res.direct_spectrum;
    std::cout << "m,I_m\n";
    for (int m = -spec.N; m <= spec.N; ++m)
        std::cout << m << "," << format_number(spec.at(m)) << "\n";
    return 0;
}

int run_witness(const std::string& spectrum_path, double qfi, bool has_qfi) {
    // spectrum CSV: header with m and I_m-like columns; metadata lines ignored
    std::ifstream in(spectrum_path);
    if (!in) throw std::runtime_error("cannot read " + spectrum_path);
    std::string line;
    std::vector<std::pair<int, double>> entries;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;  // column names: m,<intensity>[,...]
            continue;
        }
        std::istringstream ss(line);
        std::string m_str, v_str;
        if (!std::getline(ss, m_str, ',') || !std::getline(ss, v_str, ',')) continue;
        entries.emplace_back(std::stoi(m_str), std::stod(v_str));
    }
    if (entries.empty()) throw std::runtime_error("witness: no spectrum rows found");
    int N = 0;
    for (auto& [m, v] : entries) N = std::max(N, std::abs(m));
    MqcSpectrum spec = MqcSpectrum::zero(N);
    for (auto& [m, v] : entries) spec.at(m) = v;
    WitnessReport rep =
        witness_report(spec, N, has_qfi ? std::optional<double>(qfi) : std::nullopt);
    nlohmann::json j;
    j["version"] = kVersion;
    j["f_i"] = rep.f_i;
    j["entanglement_depth"] = rep.entanglement_depth;
    std::vector<int> violated;
    for (int m = -N; m <= N; ++m)
        if (rep.violations[m + N]) violated.push_back(m);
    j["violations"] = violated;
    std::vector<double> bounds(rep.separable_bounds.data(),
                               rep.separable_bounds.data() + 2 * N + 1);
    j["separable_bounds"] = bounds;
    if (rep.qfi) {
        j["qfi"] = *rep.qfi;
        j["qfi_entanglement_depth"] = *rep.qfi_entanglement_depth;
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"collective-spin echo simulator and MQC entanglement witness toolkit"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    CommonOpts sim_opts, mqc_opts, sweep_opts, val_opts;
    std::string mqc_method = "direct";
    std::string witness_spectrum;
    double witness_qfi = 0.0;

    CLI::App* sim = app.add_subcommand("simulate", "run one configuration (or its sweep)");
    add_common(sim, sim_opts);

    CLI::App* mqc_cmd = app.add_subcommand("mqc", "print the MQC spectrum of a run");
    add_common(mqc_cmd, mqc_opts);
    mqc_cmd->add_option("--method", mqc_method, "direct|protocol")
        ->check(CLI::IsMember({"direct", "protocol"}));

    CLI::App* wit = app.add_subcommand("witness", "evaluate witnesses for a spectrum file");
    wit->add_option("--spectrum", witness_spectrum, "CSV with m,I_m columns")->required();
    CLI::Option* qfi_opt = wit->add_option("--qfi", witness_qfi, "known QFI value");

    CLI::App* swp = app.add_subcommand("sweep", "run a parameter sweep");
    add_common(swp, sweep_opts);

    CLI::App* val = app.add_subcommand("validate-config", "parse and echo a configuration");
    add_common(val, val_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return run_simulate(sim_opts);
        if (mqc_cmd->parsed()) return run_mqc(mqc_opts, mqc_method);
        if (wit->parsed()) return run_witness(witness_spectrum, witness_qfi, !qfi_opt->empty());
        if (swp->parsed()) {
            RunConfig cfg = load_config(sweep_opts);
            if (!cfg.has_sweep())
                throw std::runtime_error("sweep: config has no sweep_parameter");
            run_sweep(cfg);
            std::cout << "sweep complete: " << cfg.sweep_values.size() << " points -> "
                      << cfg.out_dir << "\n";
            return 0;
        }
        if (val->parsed()) {
            RunConfig cfg = load_config(val_opts);
            std::cout << serialize_config(cfg) << "\n";
            std::cout << "# config_hash=" << config_hash(cfg) << "\n";
            std::cout << "# backend=" << backend_name(resolve_backend(cfg)) << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
