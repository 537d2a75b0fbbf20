#include "mqc/protocol.hpp"

#include "mqc/combinatorics.hpp"
#include "mqc/parallel.hpp"

#include <Eigen/Eigenvalues>
#include <numbers>

namespace mqc {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> phi_grid(int count) {
    std::vector<double> phis(count);
    for (int k = 0; k < count; ++k) phis[k] = 2.0 * kPi * k / count;
    return phis;
}

DickeState canonical_pure_initial(int N, TwistFrame frame) {
    return frame == TwistFrame::x_frame ? prepare_all_up(N) : prepare_css(N, 0.5 * kPi, 0.0);
}

SymmetricState canonical_sym_initial(int N) { return prepare_css_sym(N, 0.5 * kPi, 0.0); }

FullDensityMatrix canonical_full_initial(int N, TwistFrame frame) {
    return dicke_to_full(canonical_pure_initial(N, frame));
}

}  // namespace

std::string backend_name(Backend b) {
    switch (b) {
        case Backend::dicke_pure: return "dicke_pure";
        case Backend::sym_liouville: return "sym_liouville";
        default: return "exact_oracle";
    }
}

void ProtocolConfig::validate() const {
    params.validate();
    rates.validate();
    axis.validate();
    if (!std::isfinite(t) || t < 0.0)
        throw std::invalid_argument("ProtocolConfig: t must be finite and >= 0");
    if (resolved_phi_samples() < 2 * params.N + 1)
        throw std::invalid_argument(
            "ProtocolConfig: phi_samples below the Nyquist requirement 2N+1");
    switch (backend) {
        case Backend::dicke_pure:
            if (rates.any())
                throw std::invalid_argument(
                    "ProtocolConfig: dicke_pure cannot simulate decoherence; use "
                    "sym_liouville (Omega=0) or exact_oracle (small N)");
            break;
        case Backend::sym_liouville:
            if (params.Omega != 0.0)
                throw std::invalid_argument(
                    "ProtocolConfig: sym_liouville supports Omega = 0 only; use "
                    "dicke_pure (no rates) or exact_oracle (N <= 6)");
            if (frame != TwistFrame::z_frame)
                throw std::invalid_argument(
                    "ProtocolConfig: sym_liouville twists about z; set frame=z");
            break;
        case Backend::exact_oracle:
            if (params.N > FullDensityMatrix::kMaxParticles)
                throw std::invalid_argument("ProtocolConfig: exact_oracle capped at N=12");
            break;
    }
}

SpinAxis map_axis_to_z_frame(const SpinAxis& lab) {
    return {lab.nz, lab.ny, -lab.nx};
}

SpinAxis map_axis_to_x_frame(const SpinAxis& engine) {
    return {-engine.nz, engine.ny, engine.nx};
}

std::vector<EchoSample> run_echo_protocol(const ProtocolConfig& cfg) {
    cfg.validate();
    switch (cfg.backend) {
        case Backend::dicke_pure:
            return run_echo_protocol(cfg, canonical_pure_initial(cfg.params.N, cfg.frame));
        case Backend::sym_liouville:
            return run_echo_protocol(cfg, canonical_sym_initial(cfg.params.N));
        default:
            return run_echo_protocol(cfg, canonical_full_initial(cfg.params.N, cfg.frame));
    }
}

std::vector<EchoSample> run_echo_protocol(const ProtocolConfig& cfg,
                                          const DickeState& initial) {
    cfg.validate();
    if (cfg.backend != Backend::dicke_pure)
        throw std::invalid_argument("run_echo_protocol: DickeState needs dicke_pure");
    initial.validate();
    PureEvolver evolver(cfg.params, cfg.frame);
    PureRotator rotator(cfg.params.N, cfg.axis);
    DickeState forward = evolver.evolve(initial, cfg.t);
    auto phis = phi_grid(cfg.resolved_phi_samples());
    std::vector<EchoSample> out(phis.size());
    parallel_for(int(phis.size()), cfg.workers, [&](int k) {
        DickeState rotated = rotator.rotate(forward, phis[k]);
        DickeState back = evolver.evolve(rotated, -cfg.t);
        out[k] = {phis[k], fidelity(initial, back)};
    });
    return out;
}

std::vector<EchoSample> run_echo_protocol(const ProtocolConfig& cfg,
                                          const SymmetricState& initial) {
    cfg.validate();
    if (cfg.backend != Backend::sym_liouville)
        throw std::invalid_argument("run_echo_protocol: SymmetricState needs sym_liouville");
    initial.validate();
    int N = cfg.params.N;
    BlockLiouvillian gen = combine(build_interaction_blocks(N, cfg.params.J),
                                   build_dissipator(N, cfg.rates));
    SymEvolver evolver(gen);
    auto engine = std::make_shared<const SymRotationEngine>(N);
    SymAxisRotator rotator(engine, cfg.axis);
    SymmetricState forward = evolver.evolve(initial, cfg.t, Direction::forward);
    auto phis = phi_grid(cfg.resolved_phi_samples());
    std::vector<EchoSample> out(phis.size());
    parallel_for(int(phis.size()), cfg.workers, [&](int k) {
        SymmetricState rotated = rotator.apply(forward, phis[k]);
        SymmetricState back = evolver.evolve(rotated, cfg.t, Direction::backward);
        out[k] = {phis[k], overlap_sym(back, initial)};
    });
    return out;
}

std::vector<EchoSample> run_echo_protocol(const ProtocolConfig& cfg,
                                          const FullDensityMatrix& initial) {
    cfg.validate();
    if (cfg.backend != Backend::exact_oracle)
        throw std::invalid_argument("run_echo_protocol: FullDensityMatrix needs exact_oracle");
    initial.validate();
    int N = cfg.params.N;
    FullDensityMatrix forward =
        evolve_lindblad_full(initial, cfg.params, cfg.rates, cfg.t, Direction::forward,
                             cfg.frame);
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(full_spin_axis(N, cfg.axis));
    const MatrixXcd& V = es.eigenvectors();
    const VectorXd& lam = es.eigenvalues();
    MatrixXcd forward_axis = V.adjoint() * forward.rho * V;
    auto phis = phi_grid(cfg.resolved_phi_samples());
    std::vector<EchoSample> out(phis.size());
    parallel_for(int(phis.size()), cfg.workers, [&](int k) {
        VectorXcd phase(lam.size());
        for (int i = 0; i < lam.size(); ++i) phase[i] = std::polar(1.0, -lam[i] * phis[k]);
        FullDensityMatrix rotated;
        rotated.N = N;
        rotated.rho = V * (phase.asDiagonal() * forward_axis * phase.asDiagonal().inverse()) *
                      V.adjoint();
        FullDensityMatrix back = evolve_lindblad_full(rotated, cfg.params, cfg.rates, cfg.t,
                                                      Direction::backward, cfg.frame);
        out[k] = {phis[k], overlap(initial, back)};
    });
    return out;
}

MqcSpectrum extract_mqc(const std::vector<EchoSample>& samples, int N) {
    int K = int(samples.size());
    if (K < 2 * N + 1)
        throw std::invalid_argument("extract_mqc: need at least 2N+1 samples");
    double step = 2.0 * kPi / K;
    for (int k = 0; k < K; ++k)
        if (std::abs(samples[k].phi - k * step) > 1e-9 * 2.0 * kPi)
            throw std::invalid_argument("extract_mqc: non-uniform phi grid");

    MqcSpectrum spec = MqcSpectrum::zero(N, SpectrumSource::protocol);
    double max_imag = 0.0;
    for (int m = -N; m <= N; ++m) {
        cplx acc(0, 0);
        for (int k = 0; k < K; ++k)
            acc += samples[k].F * std::polar(1.0, m * samples[k].phi);
        acc /= double(K);
        max_imag = std::max(max_imag, std::abs(acc.imag()));
        spec.at(m) = acc.real();
    }
    spec.imag_residue = max_imag;
    for (int m = 0; m <= N; ++m) {  // enforce I_m = I_{-m}
        double avg = 0.5 * (spec.at(m) + spec.at(-m));
        spec.at(m) = avg;
        spec.at(-m) = avg;
    }
    for (int m = -N; m <= N; ++m) {
        if (spec.at(m) < -1e-8)
            throw std::runtime_error(
                "extract_mqc: structurally negative intensity, pipeline inconsistency");
        if (spec.at(m) < 0.0) spec.at(m) = 0.0;
    }
    return spec;
}

double f_i(const MqcSpectrum& spectrum) { return spectrum.second_moment_bound(); }

MqcSpectrum single_particle_mqc(double p) {
    if (p < 0.0 || p > 1.0)
        throw std::invalid_argument("single_particle_mqc: p must be in [0,1]");
    MqcSpectrum s = MqcSpectrum::zero(1);
    s.at(0) = p * p + (1 - p) * (1 - p);
    s.at(1) = s.at(-1) = p * (1 - p);
    return s;
}

MqcSpectrum mqc_product(const MqcSpectrum& a, const MqcSpectrum& b) {
    MqcSpectrum out = MqcSpectrum::zero(a.N + b.N, a.source);
    for (int ka = -a.N; ka <= a.N; ++ka) {
        if (a.at(ka) == 0.0) continue;
        for (int kb = -b.N; kb <= b.N; ++kb) out.at(ka + kb) += a.at(ka) * b.at(kb);
    }
    return out;
}

ValidityCheck protocol_validity_check(const DecoherenceRates& rates) {
    rates.validate();
    if (!rates.any()) return {true, "no decoherence"};
    if (std::abs(rates.ud - rates.du) <= 1e-12) {
        if (rates.ud == 0.0) return {true, "elastic dephasing only"};
        return {true, "balanced Raman rates (gamma_ud = gamma_du)"};
    }
    return {false,
            "gamma_ud != gamma_du: extracted spectra are uncalibrated (the echo "
            "overlap no longer equals tr[rho_t rho_t(phi)])"};
}

bool WitnessReport::any_violation() const {
    for (bool v : violations)
        if (v) return true;
    return false;
}

int entanglement_depth_from(double f, int N) {
    int depth = 0;
    for (int k = 1; k < N; ++k)
        if (f > qfi_threshold(N, k) + 1e-12) depth = k + 1;
    return depth;
}

WitnessReport witness_report(const MqcSpectrum& spectrum, int N,
                             std::optional<double> qfi) {
    if (spectrum.N != N) throw std::invalid_argument("witness_report: N mismatch");
    WitnessReport rep;
    rep.spectrum = spectrum;
    rep.f_i = f_i(spectrum);
    rep.separable_bounds = VectorXd::Zero(2 * N + 1);
    rep.violations.assign(2 * N + 1, false);
    for (int m = -N; m <= N; ++m) {
        double bound = separable_bound(N, m);
        rep.separable_bounds[m + N] = bound;
        rep.violations[m + N] = spectrum.at(m) > bound + 1e-12;
    }
    rep.qfi = qfi;
    rep.entanglement_depth = entanglement_depth_from(rep.f_i, N);
    if (qfi) rep.qfi_entanglement_depth = entanglement_depth_from(*qfi, N);
    return rep;
}

double squeezing_parameter(const DickeState& state, const SpinAxis& mean_spin_axis) {
    state.validate();
    mean_spin_axis.validate();
    int N = state.N;
    MatrixXcd Sx = spin_x_matrix(N), Sy = spin_y_matrix(N), Sz = spin_z_matrix(N);
    Eigen::Vector3d mean(expectation(state, Sx).real(), expectation(state, Sy).real(),
                         expectation(state, Sz).real());
    if (mean.norm() < 1e-9)
        throw std::invalid_argument("squeezing_parameter: mean spin vanishes");
    Eigen::Vector3d n(mean_spin_axis.nx, mean_spin_axis.ny, mean_spin_axis.nz);
    // orthonormal pair perpendicular to the provided mean-spin direction
    Eigen::Vector3d seed = std::abs(n.z()) < 0.9 ? Eigen::Vector3d(0, 0, 1)
                                                 : Eigen::Vector3d(1, 0, 0);
    Eigen::Vector3d e1 = n.cross(seed).normalized();
    Eigen::Vector3d e2 = n.cross(e1).normalized();
    auto spin_along = [&](const Eigen::Vector3d& v) {
        return (v.x() * Sx + v.y() * Sy + v.z() * Sz).eval();
    };
    MatrixXcd S1 = spin_along(e1), S2 = spin_along(e2);
    double m1 = expectation(state, S1).real(), m2 = expectation(state, S2).real();
    double v11 = expectation(state, S1 * S1).real() - m1 * m1;
    double v22 = expectation(state, S2 * S2).real() - m2 * m2;
    double v12 = 0.5 * expectation(state, S1 * S2 + S2 * S1).real() - m1 * m2;
    double mean_shift = 0.5 * (v11 + v22);
    double radius = std::sqrt(0.25 * (v11 - v22) * (v11 - v22) + v12 * v12);
    double var_min = mean_shift - radius;
    return double(N) * var_min / mean.squaredNorm();
}

namespace {

SpinAxis canonical_axis(SpinAxis a) {
    auto flip = [&]() {
        a.nx = -a.nx;
        a.ny = -a.ny;
        a.nz = -a.nz;
    };
    if (a.nz < -1e-12) flip();
    else if (std::abs(a.nz) <= 1e-12) {
        if (a.nx < -1e-12) flip();
        else if (std::abs(a.nx) <= 1e-12 && a.ny < 0) flip();
    }
    return a;
}

double golden_section(const std::function<double(double)>& f, double lo, double hi,
                      double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

SpinAxis optimize_axis_metric(const std::function<double(const SpinAxis&)>& metric,
                              int n_theta, int n_phi) {
    // hemisphere n_z >= 0; antipodal axes give identical spectra
    int theta_steps = std::max(2, n_theta / 2);
    double best_val = -std::numeric_limits<double>::infinity();
    double best_theta = 0.0, best_phi = 0.0;
    for (int i = 0; i <= theta_steps; ++i) {
        double theta = 0.5 * kPi * i / theta_steps;
        for (int j = 0; j < n_phi; ++j) {
            double phi = 2.0 * kPi * j / n_phi;
            double v = metric(SpinAxis::from_angles(theta, phi));
            if (v > best_val + 1e-15) {
                best_val = v;
                best_theta = theta;
                best_phi = phi;
            }
        }
    }
    double dt = 0.5 * kPi / theta_steps, dp = 2.0 * kPi / n_phi;
    for (int round = 0; round < 2; ++round) {
        double t0 = std::max(0.0, best_theta - dt), t1 = std::min(0.5 * kPi, best_theta + dt);
        best_theta = golden_section(
            [&](double th) { return metric(SpinAxis::from_angles(th, best_phi)); }, t0, t1,
            1e-6);
        best_phi = golden_section(
            [&](double ph) { return metric(SpinAxis::from_angles(best_theta, ph)); },
            best_phi - dp, best_phi + dp, 1e-6);
        dt *= 0.25;
        dp *= 0.25;
    }
    return canonical_axis(SpinAxis::from_angles(best_theta, best_phi));
}

SpinAxis optimize_axis(Backend backend, const ModelParams& params,
                       const DecoherenceRates& rates, double t, TwistFrame frame,
                       int n_theta, int n_phi) {
    params.validate();
    rates.validate();
    switch (backend) {
        case Backend::dicke_pure: {
            if (rates.any())
                throw std::invalid_argument("optimize_axis: dicke_pure requires zero rates");
            PureEvolver evolver(params, frame);
            DickeState st = evolver.evolve(canonical_pure_initial(params.N, frame), t);
            return optimize_axis_metric(
                [&](const SpinAxis& a) { return qfi_pure(st, a); }, n_theta, n_phi);
        }
        case Backend::sym_liouville: {
            if (params.Omega != 0.0)
                throw std::invalid_argument("optimize_axis: sym_liouville needs Omega=0");
            BlockLiouvillian gen = combine(build_interaction_blocks(params.N, params.J),
                                           build_dissipator(params.N, rates));
            SymmetricState st = SymEvolver(gen).evolve(canonical_sym_initial(params.N), t,
                                                       Direction::forward);
            SymRotationEngine engine(params.N);
            return optimize_axis_metric(
                [&](const SpinAxis& a) { return f_i(mqc_from_sym(engine, st, a)); },
                n_theta, n_phi);
        }
        default: {
            FullDensityMatrix st =
                evolve_lindblad_full(canonical_full_initial(params.N, frame), params, rates,
                                     t, Direction::forward, frame);
            return optimize_axis_metric(
                [&](const SpinAxis& a) { return f_i(mqc_direct_full(st, a)); }, n_theta,
                n_phi);
        }
    }
}

}  // namespace mqc
