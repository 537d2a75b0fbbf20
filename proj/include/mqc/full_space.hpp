#pragma once

#include "mqc/dicke.hpp"
#include "mqc/types.hpp"

namespace mqc {

/// Brute-force density matrix on the full 2^N product space. Ground truth for
/// small N; every other engine is tested against it.
struct FullDensityMatrix {
    int N = 1;
    MatrixXcd rho;

    static constexpr int kMaxParticles = 12;  // resource guard

    static FullDensityMatrix from_pure(int N, const VectorXcd& psi);
    static FullDensityMatrix maximally_mixed(int N);

    std::int64_t dim() const { return rho.rows(); }
    double trace_error() const { return std::abs(rho.trace().real() - 1.0) + std::abs(rho.trace().imag()); }
    double hermiticity_error() const { return (rho - rho.adjoint()).cwiseAbs().maxCoeff(); }
    double min_eigenvalue() const;
    void validate() const;
};

/// Operator acting as `op` on site j and identity elsewhere. Site 0 is the
/// least significant bit; bit value 0 means spin up.
MatrixXcd site_operator(int N, int site, const Eigen::Matrix2cd& op);

MatrixXcd full_spin_x(int N);
MatrixXcd full_spin_y(int N);
MatrixXcd full_spin_z(int N);
MatrixXcd full_spin_axis(int N, const SpinAxis& axis);
MatrixXcd full_hamiltonian(const ModelParams& params, TwistFrame frame);

/// Embed a Dicke-manifold state into the 2^N space.
VectorXcd embed_dicke(const DickeState& state);
FullDensityMatrix dicke_to_full(const DickeState& state);

/// Integrate the Lindblad master equation
///   drho/dt = -i[±H, rho] + sum_j L(ud,j) + L(du,j) + L(el,j)
/// with site-resolved jump operators sqrt(G_ud)|d><u|, sqrt(G_du)|u><d|,
/// sqrt(G_el)|u><u|, using adaptive Dormand-Prince RK45
/// (rtol 1e-10, atol 1e-12). The backward direction flips only H.
FullDensityMatrix evolve_lindblad_full(const FullDensityMatrix& rho,
                                       const ModelParams& params,
                                       const DecoherenceRates& rates, double t,
                                       Direction direction = Direction::forward,
                                       TwistFrame frame = TwistFrame::x_frame);

/// I_m with coherence orders binned by S_n eigenvalue differences
/// (eigenspaces grouped with tolerance 1e-9).
MqcSpectrum mqc_direct_full(const FullDensityMatrix& rho, const SpinAxis& axis);

/// Mixed-state QFI, 2 sum_{kl} (l_k-l_l)^2/(l_k+l_l) |<k|A|l>|^2, pairs with
/// l_k+l_l <= 1e-12 skipped. Eigenvalues are clipped at 0 and renormalized.
double qfi_mixed_full(const FullDensityMatrix& rho, const SpinAxis& axis);

/// tr[rho1 rho2].
double overlap(const FullDensityMatrix& rho1, const FullDensityMatrix& rho2);

/// Trace out the last n_traced sites.
FullDensityMatrix partial_trace_full(const FullDensityMatrix& rho, int n_traced);

double von_neumann_entropy_full(const FullDensityMatrix& rho);
double renyi2_entropy_full(const FullDensityMatrix& rho);

}  // namespace mqc
