#pragma once

#include "mqc/dicke.hpp"
#include "mqc/dicke_blocks.hpp"
#include "mqc/full_space.hpp"
#include "mqc/sym_liouville.hpp"
#include "mqc/sym_rotation.hpp"

#include <optional>

namespace mqc {

enum class Backend { dicke_pure, sym_liouville, exact_oracle };

std::string backend_name(Backend b);

/// Configuration of one time-reversal echo experiment. The model presentation
/// follows `frame` (z_frame by default: twist about z, initial CSS along +x,
/// dissipators in the z basis). Backend constraints:
///  - dicke_pure requires all rates zero;
///  - sym_liouville requires Omega = 0 and the z frame;
///  - exact_oracle is limited by the 2^N guard.
struct ProtocolConfig {
    ModelParams params;
    DecoherenceRates rates;
    double t = 0.0;
    SpinAxis axis = SpinAxis::z();
    int phi_samples = 0;  // 0 -> default 4(N+1), oversampled 2x beyond Nyquist
    Backend backend = Backend::dicke_pure;
    TwistFrame frame = TwistFrame::z_frame;
    int workers = 0;

    int resolved_phi_samples() const {
        return phi_samples > 0 ? phi_samples : 4 * (params.N + 1);
    }
    void validate() const;
};

/// Map an axis between the two model frames: x_frame (nx,ny,nz) corresponds
/// to z_frame (nz,ny,-nx).
SpinAxis map_axis_to_z_frame(const SpinAxis& lab);
SpinAxis map_axis_to_x_frame(const SpinAxis& engine);

struct EchoSample {
    double phi = 0;
    double F = 0;
};

/// Forward-evolve, rotate by phi about the axis, backward-evolve (Hamiltonian
/// sign flipped, dissipators unchanged), and record tr[rho_0 rho_f] on a
/// uniform phi grid over [0, 2pi). Initial state: all-up (x frame) or the
/// +x coherent state (z frame).
std::vector<EchoSample> run_echo_protocol(const ProtocolConfig& cfg);
std::vector<EchoSample> run_echo_protocol(const ProtocolConfig& cfg,
                                          const DickeState& initial);
std::vector<EchoSample> run_echo_protocol(const ProtocolConfig& cfg,
                                          const SymmetricState& initial);
std::vector<EchoSample> run_echo_protocol(const ProtocolConfig& cfg,
                                          const FullDensityMatrix& initial);

/// Inverse DFT of the echo signal: F(phi) = sum_m I_m e^{-im phi}. Requires a
/// uniform grid with at least 2N+1 samples. I_m is symmetrized in +-m; values
/// in (-1e-8, 0) are clipped to zero and anything more negative throws.
MqcSpectrum extract_mqc(const std::vector<EchoSample>& samples, int N);

/// F_I = 2 sum m^2 I_m.
double f_i(const MqcSpectrum& spectrum);

/// Spectrum of one spin in sqrt(p)|up> + e^{i phi} sqrt(1-p)|down>:
/// I_0 = p^2 + (1-p)^2, I_{+-1} = p(1-p).
MqcSpectrum single_particle_mqc(double p);

/// Tensor-product rule: I_m(A x B) = sum_k I_k(A) I_{m-k}(B).
MqcSpectrum mqc_product(const MqcSpectrum& a, const MqcSpectrum& b);

struct ValidityCheck {
    bool valid = false;
    std::string diagnostic;
};

/// The echo extraction stays exact when the dissipator is self-adjoint:
/// gamma_ud = gamma_du (elastic dephasing alone always qualifies).
ValidityCheck protocol_validity_check(const DecoherenceRates& rates);

struct WitnessReport {
    MqcSpectrum spectrum;
    double f_i = 0;
    VectorXd separable_bounds;        // indexed like spectrum.values
    std::vector<bool> violations;     // spectrum > bound + 1e-12
    std::optional<double> qfi;
    int entanglement_depth = 0;       // largest k with F_I > b_{k-1}; 0 if none
    std::optional<int> qfi_entanglement_depth;
    std::optional<double> squeezing_xi2;

    bool any_violation() const;
};

WitnessReport witness_report(const MqcSpectrum& spectrum, int N,
                             std::optional<double> qfi = std::nullopt);

/// Largest witnessed entanglement depth for a given F value (0 if F <= N).
int entanglement_depth_from(double f, int N);

/// Wineland-type squeezing parameter xi^2 = N min_perp Var(S_perp)/|<S>|^2,
/// minimized over axes perpendicular to mean_spin_axis.
double squeezing_parameter(const DickeState& state, const SpinAxis& mean_spin_axis);

/// Maximize F_I (pure backend: the QFI) over the unit sphere: coarse
/// theta-phi grid on the n_z >= 0 hemisphere plus golden-section refinement,
/// deterministic lexicographic tie-breaking.
SpinAxis optimize_axis_metric(const std::function<double(const SpinAxis&)>& metric,
                              int n_theta = 24, int n_phi = 48);
SpinAxis optimize_axis(Backend backend, const ModelParams& params,
                       const DecoherenceRates& rates, double t,
                       TwistFrame frame = TwistFrame::z_frame, int n_theta = 24,
                       int n_phi = 48);

}  // namespace mqc
