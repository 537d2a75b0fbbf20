#include "mqc/dicke.hpp"

#include "mqc/combinatorics.hpp"

#include <Eigen/Eigenvalues>

namespace mqc {

DickeState prepare_all_up(int N) {
    if (N < 1) throw std::invalid_argument("prepare_all_up: N must be >= 1");
    DickeState s;
    s.N = N;
    s.amps = VectorXcd::Zero(N + 1);
    s.amps[0] = 1.0;
    return s;
}

DickeState prepare_css(int N, double theta, double phi) {
    if (N < 1) throw std::invalid_argument("prepare_css: N must be >= 1");
    DickeState s;
    s.N = N;
    s.amps = VectorXcd::Zero(N + 1);
    double sh = std::sin(0.5 * theta), ch = std::cos(0.5 * theta);
    for (int k = 0; k <= N; ++k) {
        double mag = std::sqrt(binomial(N, k)) * std::pow(sh, N - k) * std::pow(ch, k);
        s.amps[k] = mag * std::polar(1.0, k * phi);
    }
    s.amps.normalize();  // removes rounding drift from the pow products
    return s;
}

DickeState prepare_ghz(int N) {
    DickeState s = prepare_all_up(N);
    s.amps[0] = 1.0 / std::sqrt(2.0);
    s.amps[N] = 1.0 / std::sqrt(2.0);
    return s;
}

MatrixXcd spin_z_matrix(int N) {
    MatrixXcd m = MatrixXcd::Zero(N + 1, N + 1);
    double J = 0.5 * N;
    for (int k = 0; k <= N; ++k) m(k, k) = J - k;
    return m;
}

MatrixXcd spin_plus_matrix(int N) {
    MatrixXcd m = MatrixXcd::Zero(N + 1, N + 1);
    double twoJ = double(N);
    // S+|M=J-k> = sqrt(k(2J-k+1)) |M=J-k+1>
    for (int k = 1; k <= N; ++k) m(k - 1, k) = std::sqrt(double(k) * (twoJ - k + 1));
    return m;
}

MatrixXcd spin_x_matrix(int N) {
    MatrixXcd sp = spin_plus_matrix(N);
    return 0.5 * (sp + sp.adjoint()).eval();
}

MatrixXcd spin_y_matrix(int N) {
    MatrixXcd sp = spin_plus_matrix(N);
    return cplx(0, -0.5) * (sp - sp.adjoint()).eval();
}

MatrixXcd spin_axis_matrix(int N, const SpinAxis& axis) {
    axis.validate();
    return axis.nx * spin_x_matrix(N) + axis.ny * spin_y_matrix(N) +
           axis.nz * spin_z_matrix(N);
}

MatrixXcd collective_hamiltonian(const ModelParams& params, TwistFrame frame) {
    params.validate();
    int N = params.N;
    MatrixXcd twist, field;
    if (frame == TwistFrame::x_frame) {
        twist = spin_x_matrix(N);
        field = spin_z_matrix(N);
    } else {
        twist = spin_z_matrix(N);
        field = spin_x_matrix(N);
    }
    return (-params.J / N) * (twist * twist) - params.Omega * field;
}

PureEvolver::PureEvolver(const ModelParams& params, TwistFrame frame) : N_(params.N) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(collective_hamiltonian(params, frame));
    if (es.info() != Eigen::Success)
        throw std::runtime_error("PureEvolver: eigendecomposition failed");
    eigenvalues_ = es.eigenvalues();
    eigenvectors_ = es.eigenvectors();
}

DickeState PureEvolver::evolve(const DickeState& state, double t) const {
    if (state.N != N_) throw std::invalid_argument("PureEvolver: dimension mismatch");
    if (!std::isfinite(t)) throw std::invalid_argument("PureEvolver: t must be finite");
    VectorXcd c = eigenvectors_.adjoint() * state.amps;
    for (int k = 0; k <= N_; ++k) c[k] *= std::polar(1.0, -eigenvalues_[k] * t);
    DickeState out;
    out.N = N_;
    out.amps = eigenvectors_ * c;
    return out;
}

DickeState evolve_pure(const DickeState& state, const ModelParams& params, double t) {
    return PureEvolver(params, TwistFrame::x_frame).evolve(state, t);
}

PureRotator::PureRotator(int N, const SpinAxis& axis) : N_(N) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(spin_axis_matrix(N, axis));
    if (es.info() != Eigen::Success)
        throw std::runtime_error("PureRotator: eigendecomposition failed");
    // solver returns ascending eigenvalues; flip so column k <-> M = N/2 - k
    eigenvectors_ = es.eigenvectors().rowwise().reverse();
}

DickeState PureRotator::rotate(const DickeState& state, double phi) const {
    if (state.N != N_) throw std::invalid_argument("PureRotator: dimension mismatch");
    VectorXcd c = eigenvectors_.adjoint() * state.amps;
    double J = 0.5 * N_;
    for (int k = 0; k <= N_; ++k) c[k] *= std::polar(1.0, -(J - k) * phi);
    DickeState out;
    out.N = N_;
    out.amps = eigenvectors_ * c;
    return out;
}

VectorXcd PureRotator::to_axis_basis(const DickeState& state) const {
    if (state.N != N_) throw std::invalid_argument("PureRotator: dimension mismatch");
    return eigenvectors_.adjoint() * state.amps;
}

DickeState rotate_pure(const DickeState& state, const SpinAxis& axis, double phi) {
    return PureRotator(state.N, axis).rotate(state, phi);
}

MqcSpectrum mqc_direct_pure(const DickeState& state, const SpinAxis& axis) {
    state.validate();
    int N = state.N;
    VectorXcd b = PureRotator(N, axis).to_axis_basis(state);
    VectorXd pop(N + 1);
    for (int k = 0; k <= N; ++k) pop[k] = std::norm(b[k]);
    MqcSpectrum spec = MqcSpectrum::zero(N, SpectrumSource::direct);
    for (int m = -N; m <= N; ++m) {
        double s = 0.0;
        for (int k = std::max(0, -m); k <= std::min(N, N - m); ++k) s += pop[k] * pop[k + m];
        spec.at(m) = s;
    }
    return spec;
}

double qfi_pure(const DickeState& state, const SpinAxis& axis) {
    state.validate();
    MatrixXcd A = spin_axis_matrix(state.N, axis);
    VectorXcd Ap = A * state.amps;
    double mean = std::real(state.amps.dot(Ap));
    double second = std::real(Ap.dot(Ap));
    return 4.0 * (second - mean * mean);
}

cplx expectation(const DickeState& state, const MatrixXcd& op) {
    return state.amps.dot(op * state.amps);
}

double fidelity(const DickeState& a, const DickeState& b) {
    if (a.N != b.N) throw std::invalid_argument("fidelity: dimension mismatch");
    return std::norm(a.amps.dot(b.amps));
}

}  // namespace mqc
