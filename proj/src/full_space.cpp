#include "mqc/full_space.hpp"

#include "mqc/combinatorics.hpp"

#include <Eigen/Eigenvalues>
#include <bit>

namespace mqc {

namespace {

void check_particle_guard(int N) {
    if (N < 1 || N > FullDensityMatrix::kMaxParticles)
        throw std::invalid_argument("full space: N must be in [1, 12]");
}

Eigen::Matrix2cd pauli_plus() {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(0, 1) = 1.0;
    return m;
}

Eigen::Matrix2cd pauli_minus() { return pauli_plus().transpose(); }

Eigen::Matrix2cd project_up() {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(0, 0) = 1.0;
    return m;
}

Eigen::Matrix2cd pauli_z() {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}

}  // namespace

FullDensityMatrix FullDensityMatrix::from_pure(int N, const VectorXcd& psi) {
    check_particle_guard(N);
    if (psi.size() != (std::int64_t(1) << N))
        throw std::invalid_argument("from_pure: state dimension mismatch");
    FullDensityMatrix out;
    out.N = N;
    VectorXcd v = psi.normalized();
    out.rho = v * v.adjoint();
    return out;
}

FullDensityMatrix FullDensityMatrix::maximally_mixed(int N) {
    check_particle_guard(N);
    FullDensityMatrix out;
    out.N = N;
    std::int64_t d = std::int64_t(1) << N;
    out.rho = MatrixXcd::Identity(d, d) / double(d);
    return out;
}

double FullDensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(0.5 * (rho + rho.adjoint()),
                                                Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

void FullDensityMatrix::validate() const {
    check_particle_guard(N);
    if (rho.rows() != (std::int64_t(1) << N) || rho.cols() != rho.rows())
        throw std::invalid_argument("FullDensityMatrix: dimension mismatch");
    if (hermiticity_error() > 1e-10)
        throw std::invalid_argument("FullDensityMatrix: not Hermitian");
    if (trace_error() > 1e-10) throw std::invalid_argument("FullDensityMatrix: trace != 1");
    if (min_eigenvalue() < -1e-9)
        throw std::invalid_argument("FullDensityMatrix: negative eigenvalue");
}

MatrixXcd site_operator(int N, int site, const Eigen::Matrix2cd& op) {
    check_particle_guard(N);
    if (site < 0 || site >= N) throw std::invalid_argument("site_operator: bad site");
    std::int64_t d = std::int64_t(1) << N;
    MatrixXcd out = MatrixXcd::Zero(d, d);
    std::int64_t mask = std::int64_t(1) << site;
    for (std::int64_t col = 0; col < d; ++col) {
        int cbit = (col & mask) ? 1 : 0;
        for (int rbit = 0; rbit < 2; ++rbit) {
            cplx v = op(rbit, cbit);
            if (v == cplx(0, 0)) continue;
            std::int64_t row = (col & ~mask) | (std::int64_t(rbit) << site);
            out(row, col) += v;
        }
    }
    return out;
}

MatrixXcd full_spin_x(int N) {
    std::int64_t d = std::int64_t(1) << N;
    MatrixXcd out = MatrixXcd::Zero(d, d);
    Eigen::Matrix2cd sx;
    sx << 0, 1, 1, 0;
    for (int j = 0; j < N; ++j) out += 0.5 * site_operator(N, j, sx);
    return out;
}

MatrixXcd full_spin_y(int N) {
    std::int64_t d = std::int64_t(1) << N;
    MatrixXcd out = MatrixXcd::Zero(d, d);
    Eigen::Matrix2cd sy;
    sy << 0, cplx(0, -1), cplx(0, 1), 0;
    for (int j = 0; j < N; ++j) out += 0.5 * site_operator(N, j, sy);
    return out;
}

MatrixXcd full_spin_z(int N) {
    check_particle_guard(N);
    std::int64_t d = std::int64_t(1) << N;
    MatrixXcd out = MatrixXcd::Zero(d, d);
    for (std::int64_t b = 0; b < d; ++b)
        out(b, b) = 0.5 * N - double(std::popcount(std::uint64_t(b)));
    return out;
}

MatrixXcd full_spin_axis(int N, const SpinAxis& axis) {
    axis.validate();
    return axis.nx * full_spin_x(N) + axis.ny * full_spin_y(N) + axis.nz * full_spin_z(N);
}

MatrixXcd full_hamiltonian(const ModelParams& params, TwistFrame frame) {
    params.validate();
    check_particle_guard(params.N);
    MatrixXcd twist = (frame == TwistFrame::x_frame) ? full_spin_x(params.N)
                                                     : full_spin_z(params.N);
    MatrixXcd field = (frame == TwistFrame::x_frame) ? full_spin_z(params.N)
                                                     : full_spin_x(params.N);
    return (-params.J / params.N) * (twist * twist) - params.Omega * field;
}

VectorXcd embed_dicke(const DickeState& state) {
    check_particle_guard(state.N);
    int N = state.N;
    VectorXcd psi = VectorXcd::Zero(std::int64_t(1) << N);
    for (std::int64_t b = 0; b < psi.size(); ++b) {
        int k = std::popcount(std::uint64_t(b));  // number of down spins
        psi[b] = state.amps[k] / std::sqrt(binomial(N, k));
    }
    return psi;
}

FullDensityMatrix dicke_to_full(const DickeState& state) {
    return FullDensityMatrix::from_pure(state.N, embed_dicke(state));
}

namespace {

/// Right-hand side of the master equation, assembled from cached operators.
struct LindbladRhs {
    MatrixXcd H;
    std::vector<MatrixXcd> jumps;      // sqrt(rate)-scaled jump operators
    std::vector<MatrixXcd> jump_sq;    // L^dag L for each jump
    bool has_hamiltonian = false;

    MatrixXcd operator()(const MatrixXcd& rho) const {
        MatrixXcd out = MatrixXcd::Zero(rho.rows(), rho.cols());
        if (has_hamiltonian) out = cplx(0, -1) * (H * rho - rho * H);
        for (std::size_t k = 0; k < jumps.size(); ++k) {
            out += jumps[k] * rho * jumps[k].adjoint();
            out -= 0.5 * (jump_sq[k] * rho + rho * jump_sq[k]);
        }
        return out;
    }
};

/// Embedded Dormand-Prince 5(4) with PI-free standard step control.
MatrixXcd integrate_rk45(const LindbladRhs& rhs, MatrixXcd y, double t_final,
                         double rtol, double atol) {
    if (t_final <= 0.0) return y;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                     a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                     a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                     b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                     e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                     e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

    double t = 0.0;
    double h = t_final / 64.0;
    MatrixXcd k1 = rhs(y);
    int rejected_in_a_row = 0;
    while (t < t_final) {
        h = std::min(h, t_final - t);
        MatrixXcd k2 = rhs(y + h * a21 * k1);
        MatrixXcd k3 = rhs(y + h * (a31 * k1 + a32 * k2));
        MatrixXcd k4 = rhs(y + h * (a41 * k1 + a42 * k2 + a43 * k3));
        MatrixXcd k5 = rhs(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        MatrixXcd k6 = rhs(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        MatrixXcd ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        MatrixXcd k7 = rhs(ynew);
        MatrixXcd err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        double scale = atol + rtol * std::max(y.cwiseAbs().maxCoeff(),
                                              ynew.cwiseAbs().maxCoeff());
        double err_norm = err.cwiseAbs().maxCoeff() / scale;
        if (err_norm <= 1.0) {
            t += h;
            y.swap(ynew);
            k1.swap(k7);  // first-same-as-last
            rejected_in_a_row = 0;
        } else if (++rejected_in_a_row > 60) {
            throw std::runtime_error("evolve_lindblad_full: integration does not converge");
        }
        double factor = 0.9 * std::pow(std::max(err_norm, 1e-10), -0.2);
        h *= std::clamp(factor, 0.2, 5.0);
        if (h < t_final * 1e-14)
            throw std::runtime_error("evolve_lindblad_full: step size underflow");
    }
    return y;
}

}  // namespace

FullDensityMatrix evolve_lindblad_full(const FullDensityMatrix& rho,
                                       const ModelParams& params,
                                       const DecoherenceRates& rates, double t,
                                       Direction direction, TwistFrame frame) {
    params.validate();
    rates.validate();
    check_particle_guard(params.N);
    if (rho.N != params.N) throw std::invalid_argument("evolve_lindblad_full: N mismatch");
    if (t < 0.0) throw std::invalid_argument("evolve_lindblad_full: t must be >= 0");

    LindbladRhs rhs;
    int N = params.N;
    if (params.J != 0.0 || params.Omega != 0.0) {
        rhs.H = full_hamiltonian(params, frame);
        if (direction == Direction::backward) rhs.H = -rhs.H;
        rhs.has_hamiltonian = true;
    }
    auto add_jumps = [&](double rate, const Eigen::Matrix2cd& op) {
        if (rate <= 0.0) return;
        for (int j = 0; j < N; ++j) {
            MatrixXcd L = std::sqrt(rate) * site_operator(N, j, op);
            rhs.jump_sq.push_back(L.adjoint() * L);
            rhs.jumps.push_back(std::move(L));
        }
    };
    add_jumps(rates.ud, pauli_minus());
    add_jumps(rates.du, pauli_plus());
    add_jumps(rates.el, project_up());

    FullDensityMatrix out;
    out.N = N;
    out.rho = integrate_rk45(rhs, rho.rho, t, 1e-10, 1e-12);
    out.rho = 0.5 * (out.rho + out.rho.adjoint()).eval();  // shave integration noise
    return out;
}

MqcSpectrum mqc_direct_full(const FullDensityMatrix& rho, const SpinAxis& axis) {
    int N = rho.N;
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(full_spin_axis(N, axis));
    if (es.info() != Eigen::Success)
        throw std::runtime_error("mqc_direct_full: eigendecomposition failed");
    const VectorXd& lam = es.eigenvalues();
    // group degenerate eigenvalues; the collective spectrum is -N/2..N/2 in
    // unit steps, so integer offsets from the minimum label the groups
    std::vector<int> group(lam.size());
    for (int i = 0; i < lam.size(); ++i) {
        double offset = lam[i] - lam[0];
        int g = int(std::lround(offset));
        if (std::abs(offset - g) > 1e-9)
            throw std::runtime_error("mqc_direct_full: unexpected eigenvalue spacing");
        group[i] = g;
    }
    MatrixXcd r = es.eigenvectors().adjoint() * rho.rho * es.eigenvectors();
    MqcSpectrum spec = MqcSpectrum::zero(N, SpectrumSource::direct);
    for (int i = 0; i < r.rows(); ++i)
        for (int j = 0; j < r.cols(); ++j) {
            int m = group[i] - group[j];
            if (std::abs(m) <= N) spec.at(m) += std::norm(r(i, j));
        }
    return spec;
}

double qfi_mixed_full(const FullDensityMatrix& rho, const SpinAxis& axis) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(0.5 * (rho.rho + rho.rho.adjoint()));
    if (es.info() != Eigen::Success)
        throw std::runtime_error("qfi_mixed_full: eigendecomposition failed");
    VectorXd lam = es.eigenvalues();
    if (lam.minCoeff() < -1e-8)
        throw std::invalid_argument("qfi_mixed_full: density matrix not positive");
    lam = lam.cwiseMax(0.0);
    lam /= lam.sum();
    MatrixXcd A =
        es.eigenvectors().adjoint() * full_spin_axis(rho.N, axis) * es.eigenvectors();
    double qfi = 0.0;
    for (int k = 0; k < lam.size(); ++k)
        for (int l = 0; l < lam.size(); ++l) {
            double s = lam[k] + lam[l];
            if (s <= 1e-12) continue;
            double d = lam[k] - lam[l];
            qfi += d * d / s * std::norm(A(k, l));
        }
    return 2.0 * qfi;
}

double overlap(const FullDensityMatrix& rho1, const FullDensityMatrix& rho2) {
    if (rho1.N != rho2.N) throw std::invalid_argument("overlap: dimension mismatch");
    cplx tr = (rho1.rho.transpose().cwiseProduct(rho2.rho)).sum();
    return tr.real();
}

FullDensityMatrix partial_trace_full(const FullDensityMatrix& rho, int n_traced) {
    if (n_traced < 0 || n_traced >= rho.N)
        throw std::invalid_argument("partial_trace_full: need 0 <= n_traced < N");
    if (n_traced == 0) return rho;
    int keep = rho.N - n_traced;
    std::int64_t dk = std::int64_t(1) << keep;
    std::int64_t dt = std::int64_t(1) << n_traced;
    FullDensityMatrix out;
    out.N = keep;
    out.rho = MatrixXcd::Zero(dk, dk);
    for (std::int64_t k = 0; k < dt; ++k)
        out.rho += rho.rho.block(k * dk, k * dk, dk, dk);
    return out;
}

double von_neumann_entropy_full(const FullDensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(rho.rho, Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (double l : es.eigenvalues())
        if (l > 1e-14) s -= l * std::log(l);
    return s;
}

double renyi2_entropy_full(const FullDensityMatrix& rho) {
    double purity = overlap(rho, rho);
    return -std::log(purity);
}

}  // namespace mqc
