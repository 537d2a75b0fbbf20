#include "mqc/runner.hpp"

#include "mqc/parallel.hpp"
#include "mqc/version.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <numbers>

namespace mqc {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

ProtocolConfig protocol_config(const RunConfig& cfg, Backend backend,
                               const SpinAxis& axis) {
    ProtocolConfig pc;
    pc.params = cfg.model;
    pc.rates = cfg.rates;
    pc.t = cfg.t;
    pc.axis = axis;
    pc.phi_samples = cfg.phi_samples;
    pc.backend = backend;
    pc.frame = cfg.frame;
    pc.workers = cfg.workers;
    return pc;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);  // LF line endings everywhere
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

std::string csv_preamble(const RunConfig& cfg) {
    return std::string("# version=") + kVersion + "\n# config_hash=" + config_hash(cfg) +
           "\n";
}

}  // namespace

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

PointResult compute_point(const RunConfig& cfg, const std::optional<SpinAxis>& forced_axis) {
    Backend backend = resolve_backend(cfg);
    PointResult res;
    res.backend = backend;
    res.t = cfg.t;
    res.gamma_total = cfg.rates.total();
    res.validity = protocol_validity_check(cfg.rates);

    if (forced_axis) res.axis = *forced_axis;
    else if (cfg.optimize_axis)
        res.axis = optimize_axis(backend, cfg.model, cfg.rates, cfg.t, cfg.frame);
    else res.axis = cfg.axis;

    ProtocolConfig pc = protocol_config(cfg, backend, res.axis);
    res.samples = run_echo_protocol(pc);
    res.protocol_spectrum = extract_mqc(res.samples, cfg.model.N);
    res.f_i_protocol = f_i(res.protocol_spectrum);

    int N = cfg.model.N;
    switch (backend) {
        case Backend::dicke_pure: {
            PureEvolver evolver(cfg.model, cfg.frame);
            DickeState psi0 = (cfg.frame == TwistFrame::x_frame)
                                  ? prepare_all_up(N)
                                  : prepare_css(N, 0.5 * std::numbers::pi, 0.0);
            DickeState psi_t = evolver.evolve(psi0, cfg.t);
            res.direct_spectrum = mqc_direct_pure(psi_t, res.axis);
            res.qfi = qfi_pure(psi_t, res.axis);
            res.purity = 1.0;
            MatrixXcd Sx = spin_x_matrix(N), Sy = spin_y_matrix(N), Sz = spin_z_matrix(N);
            Eigen::Vector3d mean(expectation(psi_t, Sx).real(),
                                 expectation(psi_t, Sy).real(),
                                 expectation(psi_t, Sz).real());
            if (mean.norm() > 1e-9) {
                mean.normalize();
                res.squeezing_xi2 =
                    squeezing_parameter(psi_t, SpinAxis{mean.x(), mean.y(), mean.z()});
            }
            break;
        }
        case Backend::sym_liouville: {
            BlockLiouvillian gen = combine(build_interaction_blocks(N, cfg.model.J),
                                           build_dissipator(N, cfg.rates));
            SymmetricState rho_t = SymEvolver(gen).evolve(
                prepare_css_sym(N, 0.5 * std::numbers::pi, 0.0), cfg.t, Direction::forward);
            SymRotationEngine engine(N);
            res.direct_spectrum = mqc_from_sym(engine, rho_t, res.axis);
            res.purity = rho_t.purity();
            DickeTransform transform(N);
            DickeBlockMatrix blocks = transform.build(rho_t);
            res.qfi = qfi_mixed(blocks, res.axis);
            if (cfg.want_entropies) {
                res.state_entropy = entropies(blocks);
                if (N >= 2) {
                    SymmetricState reduced = partial_trace_sym(rho_t, N / 2);
                    res.half_chain_entropy =
                        entropies(DickeTransform(reduced.particle_count()).build(reduced));
                }
            }
            break;
        }
        case Backend::exact_oracle: {
            DickeState psi0 = (cfg.frame == TwistFrame::x_frame)
                                  ? prepare_all_up(N)
                                  : prepare_css(N, 0.5 * std::numbers::pi, 0.0);
            FullDensityMatrix rho_t =
                evolve_lindblad_full(dicke_to_full(psi0), cfg.model, cfg.rates, cfg.t,
                                     Direction::forward, cfg.frame);
            res.direct_spectrum = mqc_direct_full(rho_t, res.axis);
            res.qfi = qfi_mixed_full(rho_t, res.axis);
            res.purity = overlap(rho_t, rho_t);
            if (cfg.want_entropies) {
                res.state_entropy = EntropyReport{von_neumann_entropy_full(rho_t),
                                                  renyi2_entropy_full(rho_t)};
                if (N >= 2) {
                    FullDensityMatrix reduced = partial_trace_full(rho_t, N / 2);
                    res.half_chain_entropy = EntropyReport{
                        von_neumann_entropy_full(reduced), renyi2_entropy_full(reduced)};
                }
            }
            break;
        }
    }
    res.report = witness_report(res.direct_spectrum, N, res.qfi);
    res.report.squeezing_xi2 = res.squeezing_xi2;
    return res;
}

namespace {

void write_point_files(const fs::path& dir, const RunConfig& cfg, const PointResult& res) {
    fs::create_directories(dir);
    std::string meta = csv_preamble(cfg);

    if (cfg.format_csv) {
        std::string echo = meta + "phi,F\n";
        for (const auto& s : res.samples)
            echo += format_number(s.phi) + "," + format_number(s.F) + "\n";
        write_text(dir / "echo.csv", echo);

        std::string spec = meta + "m,I_direct,I_protocol,bound,violation\n";
        int N = res.direct_spectrum.N;
        for (int m = -N; m <= N; ++m) {
            spec += std::to_string(m) + "," + format_number(res.direct_spectrum.at(m)) +
                    "," + format_number(res.protocol_spectrum.at(m)) + "," +
                    format_number(res.report.separable_bounds[m + N]) + "," +
                    (res.report.violations[m + N] ? "1" : "0") + "\n";
        }
        write_text(dir / "spectrum.csv", spec);
    }

    if (cfg.format_json) {
        json j;
        j["version"] = kVersion;
        j["config_hash"] = config_hash(cfg);
        j["backend"] = backend_name(res.backend);
        j["axis"] = {res.axis.nx, res.axis.ny, res.axis.nz};
        j["t"] = res.t;
        j["gamma_total"] = res.gamma_total;
        j["f_i"] = res.report.f_i;
        j["f_i_protocol"] = res.f_i_protocol;
        j["qfi"] = res.qfi;
        j["purity"] = res.purity;
        j["entanglement_depth"] = res.report.entanglement_depth;
        if (res.report.qfi_entanglement_depth)
            j["qfi_entanglement_depth"] = *res.report.qfi_entanglement_depth;
        j["imag_residue"] = res.protocol_spectrum.imag_residue;
        j["protocol_valid"] = res.validity.valid;
        j["protocol_diagnostic"] = res.validity.diagnostic;
        std::vector<int> violated;
        int N = res.direct_spectrum.N;
        for (int m = -N; m <= N; ++m)
            if (res.report.violations[m + N]) violated.push_back(m);
        j["violations"] = violated;
        if (res.squeezing_xi2) j["squeezing_xi2"] = *res.squeezing_xi2;
        if (res.state_entropy) {
            j["state_entropy_vn"] = res.state_entropy->von_neumann;
            j["state_entropy_renyi2"] = res.state_entropy->renyi2;
        }
        if (res.half_chain_entropy) {
            j["half_chain_entropy_vn"] = res.half_chain_entropy->von_neumann;
            j["half_chain_entropy_renyi2"] = res.half_chain_entropy->renyi2;
        }
        j["config"] = json::parse(serialize_config(cfg));
        write_text(dir / "report.json", j.dump(2) + "\n");
    }
}

}  // namespace

PointResult run(const RunConfig& cfg) {
    PointResult res = compute_point(cfg);
    write_point_files(cfg.out_dir, cfg, res);
    return res;
}

bool SweepOutcome::all_ok() const {
    for (const auto& p : points)
        if (!p) return false;
    return true;
}

SweepOutcome run_sweep(const RunConfig& cfg) {
    if (!cfg.has_sweep()) throw std::invalid_argument("run_sweep: config has no sweep");
    SweepOutcome out;
    out.values = cfg.sweep_values;
    int n = int(cfg.sweep_values.size());
    out.points.resize(n);
    out.errors.assign(n, "");

    // gamma sweeps follow the convention of fixing the rotation axis at its
    // gamma = 0 optimum; other sweeps re-optimize per point
    std::optional<SpinAxis> forced_axis;
    bool gamma_sweep = cfg.sweep_parameter.rfind("gamma", 0) == 0;
    if (gamma_sweep && cfg.optimize_axis) {
        forced_axis = optimize_axis(Backend::dicke_pure, cfg.model, DecoherenceRates{},
                                    cfg.t, cfg.frame);
    }

    parallel_for(n, cfg.workers, [&](int i) {
        try {
            RunConfig point = apply_sweep_value(cfg, cfg.sweep_values[i]);
            point.workers = 1;  // points are the unit of parallelism
            out.points[i] = compute_point(point, forced_axis);
        } catch (const std::exception& e) {
            out.errors[i] = std::string("sweep point ") + std::to_string(i) + " (" +
                            cfg.sweep_parameter + "=" + format_number(cfg.sweep_values[i]) +
                            "): " + e.what();
        }
    });

    fs::path root(cfg.out_dir);
    fs::create_directories(root);
    for (int i = 0; i < n; ++i) {
        if (!out.points[i]) continue;
        char sub[32];
        std::snprintf(sub, sizeof(sub), "point_%03d", i);
        RunConfig point = apply_sweep_value(cfg, cfg.sweep_values[i]);
        write_point_files(root / sub, point, *out.points[i]);
    }

    std::string meta = csv_preamble(cfg);
    std::string table =
        meta +
        "index,value,f_i,f_i_protocol,qfi,purity,entanglement_depth,any_violation\n";
    std::string spectra = meta + "value,m,I_direct,I_protocol,bound,violation\n";
    for (int i = 0; i < n; ++i) {
        if (!out.points[i]) continue;
        const PointResult& r = *out.points[i];
        table += std::to_string(i) + "," + format_number(out.values[i]) + "," +
                 format_number(r.report.f_i) + "," + format_number(r.f_i_protocol) + "," +
                 format_number(r.qfi) + "," + format_number(r.purity) + "," +
                 std::to_string(r.report.entanglement_depth) + "," +
                 (r.report.any_violation() ? "1" : "0") + "\n";
        int N = r.direct_spectrum.N;
        for (int m = -N; m <= N; ++m)
            spectra += format_number(out.values[i]) + "," + std::to_string(m) + "," +
                       format_number(r.direct_spectrum.at(m)) + "," +
                       format_number(r.protocol_spectrum.at(m)) + "," +
                       format_number(r.report.separable_bounds[m + N]) + "," +
                       (r.report.violations[m + N] ? "1" : "0") + "\n";
    }
    write_text(root / "sweep.csv", table);
    write_text(root / "sweep_spectra.csv", spectra);

    if (!out.all_ok()) {
        std::string msg = "sweep finished with failures (partial results preserved):";
        for (const auto& e : out.errors)
            if (!e.empty()) msg += "\n  " + e;
        throw std::runtime_error(msg);
    }
    return out;
}

}  // namespace mqc
