#include "mqc/sym_rotation.hpp"

#include "mqc/combinatorics.hpp"

#include <Eigen/Eigenvalues>
#include <numbers>

namespace mqc {

namespace {

constexpr cplx kI(0.0, 1.0);

cplx i_power(int k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return {1, 0};
        case 1: return {0, 1};
        case 2: return {-1, 0};
        default: return {0, -1};
    }
}

}  // namespace

SymRotationEngine::SymRotationEngine(int N) : N_(N), zpm_(N), xyz_(N) {
    // Generator of Sym^r(G(alpha)) in the scaled occupation basis, indexed by
    // a = number of e1 slots: K(a-1,a) = sqrt(a(r-a+1)), K(a+1,a) = -sqrt((r-a)(a+1)).
    // iK is Hermitian; its eigensystem gives exp(alpha K) exactly unitary.
    gen_vectors_.resize(N + 1);
    gen_freqs_.resize(N + 1);
    for (int r = 0; r <= N; ++r) {
        MatrixXcd iK = MatrixXcd::Zero(r + 1, r + 1);
        for (int a = 1; a <= r; ++a) {
            double v = std::sqrt(double(a) * double(r - a + 1));
            iK(a - 1, a) = kI * v;
            iK(a, a - 1) = -kI * v;
        }
        Eigen::SelfAdjointEigenSolver<MatrixXcd> es(iK);
        if (es.info() != Eigen::Success)
            throw std::runtime_error("SymRotationEngine: generator eigensolve failed");
        gen_vectors_[r] = es.eigenvectors();
        gen_freqs_[r] = es.eigenvalues();
    }

    // (z+-) -> (xyz) blocks: fixed n_z and s = n_+ + n_- = n_x + n_y.
    // Per site sigma_+- mix into (sigma_x, sigma_y) via diag(1,i) G(pi/4) diag(1,-1).
    for (int n_z = 0; n_z <= N; ++n_z)
        for (int s = 0; s + n_z <= N; ++s) {
            IndexBlock blk;
            blk.in.resize(s + 1);
            blk.out.resize(s + 1);
            for (int a = 0; a <= s; ++a) {
                blk.in[a] = zpm_.index(a, s - a, n_z);   // a = n_+
                blk.out[a] = xyz_.index(a, s - a, n_z);  // a = n_x
            }
            MatrixXcd M = sym_power_rotation(s, std::numbers::pi / 4);
            for (int row = 0; row <= s; ++row)
                for (int col = 0; col <= s; ++col)
                    M(row, col) *= i_power(s - row) * ((s - col) % 2 ? -1.0 : 1.0);
            change_blocks_.push_back(std::move(blk));
            change_mats_.push_back(std::move(M));
        }

    // y-rotation blocks in (xyz): fixed n_y and r = n_x + n_z; the per-site
    // map is z -> cos z + sin x, i.e. G(theta) with e1 = z, e2 = x.
    for (int n_y = 0; n_y <= N; ++n_y)
        for (int r = 0; r + n_y <= N; ++r) {
            IndexBlock blk;
            blk.in.resize(r + 1);
            for (int a = 0; a <= r; ++a) blk.in[a] = xyz_.index(r - a, n_y, a);  // a = n_z
            blk.out = blk.in;
            y_index_blocks_.push_back(std::move(blk));
            y_block_order_.push_back(r);
        }
}

MatrixXcd SymRotationEngine::sym_power_rotation(int r, double alpha) const {
    const MatrixXcd& V = gen_vectors_[r];
    VectorXcd phases(r + 1);
    for (int k = 0; k <= r; ++k) phases[k] = std::polar(1.0, -alpha * gen_freqs_[r][k]);
    return V * phases.asDiagonal() * V.adjoint();
}

VectorXcd SymRotationEngine::zpm_to_xyz(const VectorXcd& scaled) const {
    VectorXcd out = VectorXcd::Zero(scaled.size());
    for (std::size_t b = 0; b < change_blocks_.size(); ++b) {
        const auto& blk = change_blocks_[b];
        int n = int(blk.in.size());
        VectorXcd v(n);
        for (int k = 0; k < n; ++k) v[k] = scaled[blk.in[k]];
        VectorXcd w = change_mats_[b] * v;
        for (int k = 0; k < n; ++k) out[blk.out[k]] = w[k];
    }
    return out;
}

VectorXcd SymRotationEngine::xyz_to_zpm(const VectorXcd& scaled) const {
    VectorXcd out = VectorXcd::Zero(scaled.size());
    for (std::size_t b = 0; b < change_blocks_.size(); ++b) {
        const auto& blk = change_blocks_[b];
        int n = int(blk.in.size());
        VectorXcd v(n);
        for (int k = 0; k < n; ++k) v[k] = scaled[blk.out[k]];
        VectorXcd w = change_mats_[b].adjoint() * v;
        for (int k = 0; k < n; ++k) out[blk.in[k]] = w[k];
    }
    return out;
}

VectorXcd SymRotationEngine::rotate_z(const VectorXcd& scaled_zpm, double phi) const {
    VectorXcd out(scaled_zpm.size());
    for (int i = 0; i < scaled_zpm.size(); ++i) {
        auto [np, nm, nz] = zpm_.occupations(i);
        out[i] = scaled_zpm[i] * std::polar(1.0, -double(np - nm) * phi);
    }
    return out;
}

std::vector<MatrixXcd> SymRotationEngine::y_blocks(double theta) const {
    std::vector<MatrixXcd> blocks;
    blocks.reserve(y_index_blocks_.size());
    for (int r : y_block_order_) blocks.push_back(sym_power_rotation(r, theta));
    return blocks;
}

VectorXcd SymRotationEngine::apply_y_blocks_xyz(const std::vector<MatrixXcd>& blocks,
                                                const VectorXcd& scaled_xyz) const {
    VectorXcd out = VectorXcd::Zero(scaled_xyz.size());
    for (std::size_t b = 0; b < y_index_blocks_.size(); ++b) {
        const auto& blk = y_index_blocks_[b];
        int n = int(blk.in.size());
        VectorXcd v(n);
        for (int k = 0; k < n; ++k) v[k] = scaled_xyz[blk.in[k]];
        VectorXcd w = blocks[b] * v;
        for (int k = 0; k < n; ++k) out[blk.out[k]] = w[k];
    }
    return out;
}

VectorXcd SymRotationEngine::rotate_y(const VectorXcd& scaled_zpm, double theta) const {
    return xyz_to_zpm(apply_y_blocks_xyz(y_blocks(theta), zpm_to_xyz(scaled_zpm)));
}

VectorXcd SymRotationEngine::rotate(const VectorXcd& scaled_zpm, const SpinAxis& axis,
                                    double phi) const {
    axis.validate();
    double th = axis.theta(), ph = axis.phi();
    if (th == 0.0) return rotate_z(scaled_zpm, phi);
    VectorXcd v = rotate_z(scaled_zpm, -ph);
    v = rotate_y(v, -th);
    v = rotate_z(v, phi);
    v = rotate_y(v, th);
    return rotate_z(v, ph);
}

VectorXcd SymRotationEngine::align_axis_to_z(const VectorXcd& scaled_zpm,
                                             const SpinAxis& axis) const {
    axis.validate();
    double th = axis.theta(), ph = axis.phi();
    if (th == 0.0) return scaled_zpm;
    return rotate_y(rotate_z(scaled_zpm, -ph), -th);
}

SymAxisRotator::SymAxisRotator(std::shared_ptr<const SymRotationEngine> engine,
                               const SpinAxis& axis)
    : engine_(std::move(engine)), axis_(axis) {
    axis_.validate();
    theta_ = axis_.theta();
    phi_axis_ = axis_.phi();
    if (theta_ != 0.0) {
        y_pos_ = engine_->y_blocks(theta_);
        y_neg_ = engine_->y_blocks(-theta_);
    }
}

SymmetricState SymAxisRotator::apply(const SymmetricState& state, double phi) const {
    const auto& e = *engine_;
    if (theta_ == 0.0)
        return SymmetricState(state.particle_count(), e.rotate_z(state.scaled(), phi));
    VectorXcd v = e.rotate_z(state.scaled(), -phi_axis_);
    v = e.xyz_to_zpm(e.apply_y_blocks_xyz(y_neg_, e.zpm_to_xyz(v)));
    v = e.rotate_z(v, phi);
    v = e.xyz_to_zpm(e.apply_y_blocks_xyz(y_pos_, e.zpm_to_xyz(v)));
    v = e.rotate_z(v, phi_axis_);
    return SymmetricState(state.particle_count(), std::move(v));
}

SymmetricState rotate_sym(const SymmetricState& state, const SpinAxis& axis, double phi) {
    SymRotationEngine engine(state.particle_count());
    return SymmetricState(state.particle_count(), engine.rotate(state.scaled(), axis, phi));
}

MqcSpectrum mqc_from_sym(const SymRotationEngine& engine, const SymmetricState& state,
                         const SpinAxis& axis) {
    VectorXcd aligned = engine.align_axis_to_z(state.scaled(), axis);
    return mqc_sym_z(SymmetricState(state.particle_count(), std::move(aligned)));
}

MqcSpectrum mqc_from_sym(const SymmetricState& state, const SpinAxis& axis) {
    SymRotationEngine engine(state.particle_count());
    return mqc_from_sym(engine, state, axis);
}

AxisMoments axis_moments_sym(const SymRotationEngine& engine, const SymmetricState& state,
                             const SpinAxis& axis) {
    SymmetricState aligned(state.particle_count(),
                           engine.align_axis_to_z(state.scaled(), axis));
    SymObservables obs = observables_sym(aligned);
    return {obs.sz, obs.sz2};
}

VectorXcd sym_state_to_xyz_raw(const SymmetricState& state) {
    int N = state.particle_count();
    SymRotationEngine engine(N);
    VectorXcd scaled = engine.zpm_to_xyz(state.scaled());
    VectorXcd raw(scaled.size());
    for (int i = 0; i < scaled.size(); ++i) {
        auto [nx, ny, nz] = engine.xyz_basis().occupations(i);
        raw[i] = scaled[i] / std::sqrt(xyz_weight(N, nx, ny, nz));
    }
    return raw;
}

SymmetricState sym_state_from_xyz_raw(int N, const VectorXcd& raw_xyz) {
    SymRotationEngine engine(N);
    if (raw_xyz.size() != engine.xyz_basis().dim())
        throw std::invalid_argument("sym_state_from_xyz_raw: wrong vector length");
    VectorXcd scaled(raw_xyz.size());
    for (int i = 0; i < scaled.size(); ++i) {
        auto [nx, ny, nz] = engine.xyz_basis().occupations(i);
        scaled[i] = raw_xyz[i] * std::sqrt(xyz_weight(N, nx, ny, nz));
    }
    return SymmetricState(N, engine.xyz_to_zpm(scaled));
}

}  // namespace mqc
