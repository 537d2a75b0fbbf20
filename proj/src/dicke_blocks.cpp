#include "mqc/dicke_blocks.hpp"

#include "mqc/combinatorics.hpp"
#include "mqc/dicke.hpp"
#include "mqc/sym_rotation.hpp"

#include <Eigen/Eigenvalues>
#include <numbers>

namespace mqc {

namespace {

/// Parameters of the constraint set {gamma : n_up - n_dn = q, n_+ - n_- = m}
/// for fixed N, parameterized by n_-. Empty if half_sum < 0.
struct ConstraintSet {
    int q = 0, m = 0, half_sum = 0;  // half_sum = n_dn + n_- = (N - q - m)/2
    int nm_min = 0, nm_max = -1;

    ConstraintSet() = default;
    ConstraintSet(int N, int twoM, int twoMp) {
        q = (twoM + twoMp) / 2;
        m = (twoM - twoMp) / 2;
        int rem = N - q - m;
        if (rem < 0 || rem % 2 != 0) return;  // empty
        half_sum = rem / 2;
        nm_min = std::max(0, -m);
        nm_max = std::min(half_sum, half_sum + q);
    }

    int n_dn(int nm) const { return half_sum - nm; }
    int n_up(int nm) const { return half_sum - nm + q; }
    int n_plus(int nm) const { return nm + m; }
    bool empty() const { return nm_max < nm_min; }
};

}  // namespace

std::int64_t DickeBlockMatrix::degeneracy_of(int j) const {
    return dicke_degeneracy(N, twoJ(j));
}

double DickeBlockMatrix::total_trace() const {
    double t = 0.0;
    for (int j = 0; j < count(); ++j)
        t += double(degeneracy_of(j)) * blocks[j].trace().real();
    return t;
}

double DickeBlockMatrix::purity() const {
    double t = 0.0;
    for (int j = 0; j < count(); ++j)
        t += double(degeneracy_of(j)) * (blocks[j] * blocks[j]).trace().real();
    return t;
}

double DickeBlockMatrix::hermiticity_error() const {
    double e = 0.0;
    for (const auto& b : blocks) e = std::max(e, (b - b.adjoint()).cwiseAbs().maxCoeff());
    return e;
}

DickeTransform::DickeTransform(int N) : N_(N), zpm_(N), ud_(N) {
    // scaled (z+-) -> up/down change, blockwise per (n_+, n_-): the (1, z)
    // slots mix through the symmetric power of the Hadamard map
    SymRotationEngine engine(N);  // reuse its stable symmetric-power blocks
    updown_mats_.reserve((N + 1) * (N + 2) / 2);
    for (int np = 0; np <= N; ++np)
        for (int nm = 0; nm + np <= N; ++nm) {
            int r = N - np - nm;
            MatrixXcd G = engine.sym_power_rotation(r, std::numbers::pi / 4);
            MatrixXd M(r + 1, r + 1);
            for (int a_up = 0; a_up <= r; ++a_up)
                for (int n_z = 0; n_z <= r; ++n_z)
                    M(a_up, n_z) = G(a_up, r - n_z).real() * ((n_z % 2) ? -1.0 : 1.0);
            updown_mats_.push_back(std::move(M));
        }

    // ladder functionals, top block down
    int n_blocks = N / 2 + 1;
    func_.resize(n_blocks);
    // accumulated degeneracy-weighted diagonal functionals, keyed by twoM
    std::vector<Functional> diag_acc(2 * N + 1);
    auto acc_of = [&](int twoM) -> Functional& { return diag_acc[twoM + N]; };

    for (int j = 0; j < n_blocks; ++j) {
        int twoJ = N - 2 * j;
        int dim = twoJ + 1;
        auto& F = func_[j];
        F.resize(std::size_t(dim) * dim);
        auto at = [&](int k, int kp) -> Functional& { return F[std::size_t(k) * dim + kp]; };

        double inv_deg = 1.0 / double(dicke_degeneracy(N, twoJ));

        // seed f_{J,J,J}: (e_{gamma0} - G_acc) / n_{N,J}
        {
            ConstraintSet cs(N, twoJ, twoJ);
            Functional seed;
            seed.nm_min = cs.nm_min;
            seed.vals.assign(cs.nm_max - cs.nm_min + 1, 0.0);
            seed.vals[0 - cs.nm_min] = 1.0;  // gamma0 has n_- = 0
            const Functional& acc = acc_of(twoJ);
            for (std::size_t i = 0; i < acc.vals.size(); ++i) {
                int nm = acc.nm_min + int(i);
                seed.vals[nm - cs.nm_min] -= acc.vals[i];
            }
            for (double& v : seed.vals) v *= inv_deg;
            at(0, 0) = std::move(seed);
        }

        // column steps: f_{M,M'-1}[beta] = (n_dn(beta) f[nm+1] + n_+(beta) f[nm]) / s_-
        auto column_step = [&](const Functional& f, int twoM, int twoMp_src) {
            ConstraintSet cs(N, twoM, twoMp_src - 2);
            Functional out;
            out.nm_min = cs.nm_min;
            out.vals.assign(std::max(0, cs.nm_max - cs.nm_min + 1), 0.0);
            double s =
                std::sqrt(double(twoJ + twoMp_src) * double(twoJ - twoMp_src + 2)) / 2.0;
            auto fval = [&](int nm) -> double {
                int i = nm - f.nm_min;
                return (i >= 0 && i < int(f.vals.size())) ? f.vals[i] : 0.0;
            };
            for (int nm = cs.nm_min; nm <= cs.nm_max; ++nm)
                out.vals[nm - cs.nm_min] =
                    (double(cs.n_dn(nm)) * fval(nm + 1) + double(cs.n_plus(nm)) * fval(nm)) / s;
            return out;
        };

        // top row
        for (int kp = 1; kp < dim; ++kp)
            at(0, kp) = column_step(at(0, kp - 1), twoJ, twoJ - 2 * (kp - 1));

        // remaining rows: anchor by Hermitian flip of the top row, then steps
        for (int k = 1; k < dim; ++k) {
            int twoM = twoJ - 2 * k;
            const Functional& top = at(0, k);  // f_{J, M}
            ConstraintSet cs(N, twoM, twoJ);
            Functional anchor;
            anchor.nm_min = cs.nm_min;
            anchor.vals.assign(std::max(0, cs.nm_max - cs.nm_min + 1), 0.0);
            // f_{M,J}[gamma] = f_{J,M}[gamma^dag]; gamma^dag has n_- = n_+(gamma)
            for (int nm = cs.nm_min; nm <= cs.nm_max; ++nm) {
                int nm_dag = cs.n_plus(nm);
                int i = nm_dag - top.nm_min;
                if (i >= 0 && i < int(top.vals.size()))
                    anchor.vals[nm - cs.nm_min] = top.vals[i];
            }
            at(k, 0) = std::move(anchor);
            for (int kp = 1; kp < dim; ++kp)
                at(k, kp) = column_step(at(k, kp - 1), twoM, twoJ - 2 * (kp - 1));
        }

        // fold this block's diagonal into the accumulators
        double deg = double(dicke_degeneracy(N, twoJ));
        for (int k = 0; k < dim; ++k) {
            int twoM = twoJ - 2 * k;
            Functional& acc = acc_of(twoM);
            const Functional& f = at(k, k);
            if (acc.vals.empty()) {
                acc.nm_min = f.nm_min;
                acc.vals.assign(f.vals.size(), 0.0);
            }
            for (std::size_t i = 0; i < f.vals.size(); ++i) {
                int nm = f.nm_min + int(i);
                acc.vals[nm - acc.nm_min] += deg * f.vals[i];
            }
        }
    }
}

VectorXcd DickeTransform::updown_tilde(const SymmetricState& state) const {
    VectorXcd tilde = VectorXcd::Zero(ud_.dim());
    int id = 0;
    for (int np = 0; np <= N_; ++np)
        for (int nm = 0; nm + np <= N_; ++nm, ++id) {
            int r = N_ - np - nm;
            int off_z = zpm_.block_offset(np, nm);
            VectorXcd seg = updown_mats_[id] * state.scaled().segment(off_z, r + 1);
            int off_u = ud_.block_offset(np, nm);
            for (int a_up = 0; a_up <= r; ++a_up) {
                double p = permutation_count(N_, a_up, r - a_up, np, nm);
                tilde[off_u + a_up] = seg[a_up] * std::sqrt(p);
            }
        }
    return tilde;
}

SymmetricState DickeTransform::state_from_tilde(const VectorXcd& tilde) const {
    if (tilde.size() != ud_.dim())
        throw std::invalid_argument("state_from_tilde: wrong vector length");
    VectorXcd scaled = VectorXcd::Zero(zpm_.dim());
    int id = 0;
    for (int np = 0; np <= N_; ++np)
        for (int nm = 0; nm + np <= N_; ++nm, ++id) {
            int r = N_ - np - nm;
            int off_u = ud_.block_offset(np, nm);
            VectorXcd seg(r + 1);
            for (int a_up = 0; a_up <= r; ++a_up) {
                double p = permutation_count(N_, a_up, r - a_up, np, nm);
                seg[a_up] = tilde[off_u + a_up] / std::sqrt(p);
            }
            scaled.segment(zpm_.block_offset(np, nm), r + 1) =
                updown_mats_[id].transpose() * seg;
        }
    return SymmetricState(N_, std::move(scaled));
}

DickeBlockMatrix DickeTransform::blocks_from_tilde(const VectorXcd& tilde) const {
    DickeBlockMatrix out;
    out.N = N_;
    out.blocks.resize(func_.size());
    for (std::size_t j = 0; j < func_.size(); ++j) {
        int twoJ = N_ - 2 * int(j);
        int dim = twoJ + 1;
        MatrixXcd B(dim, dim);
        for (int k = 0; k < dim; ++k)
            for (int kp = 0; kp < dim; ++kp) {
                int twoM = twoJ - 2 * k, twoMp = twoJ - 2 * kp;
                ConstraintSet cs(N_, twoM, twoMp);
                const Functional& f = func_[j][std::size_t(k) * dim + kp];
                cplx v(0, 0);
                for (std::size_t i = 0; i < f.vals.size(); ++i) {
                    if (f.vals[i] == 0.0) continue;
                    int nm = f.nm_min + int(i);
                    v += f.vals[i] *
                         tilde[ud_.index(cs.n_plus(nm), nm, cs.n_up(nm))];
                }
                B(k, kp) = v;
            }
        out.blocks[j] = std::move(B);
    }
    return out;
}

DickeBlockMatrix DickeTransform::build(const SymmetricState& state) const {
    DickeBlockMatrix out = blocks_from_tilde(updown_tilde(state));
    double tr_sym = state.trace();
    double tr_blocks = out.total_trace();
    if (std::abs(tr_blocks - tr_sym) > 1e-7)
        throw std::runtime_error("build_dicke_blocks: recursion inconsistency (trace)");
    double pur_sym = state.purity();
    double pur_blocks = out.purity();
    if (std::abs(pur_blocks - pur_sym) > 1e-7 * std::max(1.0, pur_sym))
        throw std::runtime_error("build_dicke_blocks: recursion inconsistency (purity)");
    return out;
}

DickeBlockMatrix build_dicke_blocks(const SymmetricState& state) {
    return DickeTransform(state.particle_count()).build(state);
}

VectorXcd zpm_to_updown(const SymmetricState& state) {
    return DickeTransform(state.particle_count()).updown_tilde(state);
}

SymmetricState updown_to_zpm(int N, const VectorXcd& tilde) {
    return DickeTransform(N).state_from_tilde(tilde);
}

double qfi_mixed(const DickeBlockMatrix& blocks, const SpinAxis& axis) {
    axis.validate();
    double total = 0.0;
    std::vector<VectorXd> lams(blocks.count());
    std::vector<MatrixXcd> vecs(blocks.count());
    for (int j = 0; j < blocks.count(); ++j) {
        MatrixXcd H = 0.5 * (blocks.blocks[j] + blocks.blocks[j].adjoint());
        Eigen::SelfAdjointEigenSolver<MatrixXcd> es(H);
        VectorXd lam = es.eigenvalues();
        if (lam.minCoeff() < -1e-8)
            throw std::invalid_argument("qfi_mixed: block not positive semidefinite");
        lams[j] = lam.cwiseMax(0.0);
        vecs[j] = es.eigenvectors();
        total += double(blocks.degeneracy_of(j)) * lams[j].sum();
    }
    double qfi = 0.0;
    for (int j = 0; j < blocks.count(); ++j) {
        VectorXd lam = lams[j] / total;
        int twoJ = blocks.twoJ(j);
        MatrixXcd A = vecs[j].adjoint() * spin_axis_matrix(twoJ, axis) * vecs[j];
        double block_sum = 0.0;
        for (int k = 0; k <= twoJ; ++k)
            for (int l = 0; l <= twoJ; ++l) {
                double s = lam[k] + lam[l];
                if (s <= 1e-12) continue;
                double d = lam[k] - lam[l];
                block_sum += d * d / s * std::norm(A(k, l));
            }
        qfi += double(blocks.degeneracy_of(j)) * block_sum;
    }
    return 2.0 * qfi;
}

SymmetricState partial_trace_sym(const SymmetricState& state, int n_traced) {
    int N = state.particle_count();
    if (n_traced < 0 || n_traced >= N)
        throw std::invalid_argument("partial_trace_sym: need 0 <= n_traced < N");
    if (n_traced == 0) return state;
    int M = N - n_traced;
    SymBasis small(M);
    VectorXcd scaled = VectorXcd::Zero(small.dim());
    const SymBasis& big = state.basis();
    for (int i = 0; i < small.dim(); ++i) {
        auto [np, nm, nz] = small.occupations(i);
        int n1 = N - np - nm - nz;  // identity slots in the big system
        // scaled factor sqrt(2^n prod_{k<n} (n1-k)/(N-k))
        double f = std::pow(2.0, n_traced);
        for (int k = 0; k < n_traced; ++k) f *= double(n1 - k) / double(N - k);
        scaled[i] = state.scaled()[big.index(np, nm, nz)] * std::sqrt(f);
    }
    return SymmetricState(M, std::move(scaled));
}

EntropyReport entropies(const DickeBlockMatrix& blocks) {
    EntropyReport rep;
    double sum_sq = 0.0;
    for (int j = 0; j < blocks.count(); ++j) {
        MatrixXcd H = 0.5 * (blocks.blocks[j] + blocks.blocks[j].adjoint());
        Eigen::SelfAdjointEigenSolver<MatrixXcd> es(H, Eigen::EigenvaluesOnly);
        double deg = double(blocks.degeneracy_of(j));
        for (double l : es.eigenvalues()) {
            if (l > 1e-14) rep.von_neumann -= deg * l * std::log(l);
            if (l > 0.0) sum_sq += deg * l * l;
        }
    }
    rep.renyi2 = -std::log(sum_sq);
    return rep;
}

}  // namespace mqc
