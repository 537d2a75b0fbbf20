#pragma once

#include "mqc/types.hpp"

namespace mqc {

/// Pure state on the fully symmetric (N+1)-dimensional Dicke manifold.
/// amps[k] is the amplitude of |J=N/2, M=N/2-k>, i.e. M descending. This
/// indexing is the binding convention for all modules.
struct DickeState {
    int N = 1;
    VectorXcd amps;

    double norm() const { return amps.norm(); }
    void validate() const {
        if (N < 1 || amps.size() != N + 1)
            throw std::invalid_argument("DickeState: amplitude vector must have length N+1");
        if (std::abs(norm() - 1.0) > 1e-10)
            throw std::invalid_argument("DickeState: state must be normalized");
    }
};

/// |up>^N: amplitude 1 at M = N/2.
DickeState prepare_all_up(int N);

/// Coherent spin state with amplitudes
///   a_k = sqrt(C(N,k)) sin(theta/2)^(N-k) cos(theta/2)^k e^{i k phi}.
/// theta = pi gives all-up, theta = 0 all-down, theta = pi/2 the equator.
DickeState prepare_css(int N, double theta, double phi);

/// GHZ state (|up>^N + |down>^N)/sqrt(2).
DickeState prepare_ghz(int N);

/// Collective spin matrices on the Dicke manifold (dimension N+1).
MatrixXcd spin_z_matrix(int N);
MatrixXcd spin_plus_matrix(int N);
MatrixXcd spin_x_matrix(int N);
MatrixXcd spin_y_matrix(int N);
MatrixXcd spin_axis_matrix(int N, const SpinAxis& axis);

/// H in the requested frame:
///   x_frame: -(J/N) Sx^2 - Omega Sz
///   z_frame: -(J/N) Sz^2 - Omega Sx
MatrixXcd collective_hamiltonian(const ModelParams& params, TwistFrame frame);

/// Unitary evolution exp(-iHt) with the Hamiltonian eigendecomposed once and
/// reused across t values; t-sweeps dominate workloads.
class PureEvolver {
  public:
    PureEvolver(const ModelParams& params, TwistFrame frame = TwistFrame::x_frame);

    DickeState evolve(const DickeState& state, double t) const;
    int particle_count() const { return N_; }

  private:
    int N_;
    VectorXd eigenvalues_;
    MatrixXcd eigenvectors_;
};

/// One-shot evolution under the Eq.-form Hamiltonian -(J/N)Sx^2 - Omega Sz.
DickeState evolve_pure(const DickeState& state, const ModelParams& params, double t);

/// exp(-i S_n phi) applied via the eigendecomposition of S_n; reusable
/// across phi values for a fixed axis.
class PureRotator {
  public:
    PureRotator(int N, const SpinAxis& axis);

    DickeState rotate(const DickeState& state, double phi) const;
    /// Amplitudes in the eigenbasis of S_n, ordered by descending eigenvalue.
    VectorXcd to_axis_basis(const DickeState& state) const;

  private:
    int N_;
    MatrixXcd eigenvectors_;  // columns ordered so column k has eigenvalue N/2-k
};

DickeState rotate_pure(const DickeState& state, const SpinAxis& axis, double phi);

/// I_m = sum_M |a_M|^2 |a_{M+m}|^2 in the eigenbasis of S_n.
MqcSpectrum mqc_direct_pure(const DickeState& state, const SpinAxis& axis);

/// Pure-state QFI, 4 Var(S_n).
double qfi_pure(const DickeState& state, const SpinAxis& axis);

/// <psi|Op|psi> for an operator on the Dicke manifold.
cplx expectation(const DickeState& state, const MatrixXcd& op);

double fidelity(const DickeState& a, const DickeState& b);

}  // namespace mqc
