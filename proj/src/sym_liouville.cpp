#include "mqc/sym_liouville.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

namespace mqc {

namespace {

constexpr cplx kI(0.0, 1.0);

int block_count(int N) { return (N + 1) * (N + 2) / 2; }

/// Visit blocks in SymBasis order (lexicographic in (n_+, n_-)).
template <typename F>
void for_each_block(int N, F&& f) {
    int id = 0;
    for (int np = 0; np <= N; ++np)
        for (int nm = 0; nm + np <= N; ++nm) f(id++, np, nm);
}

}  // namespace

BlockLiouvillian& BlockLiouvillian::operator+=(const BlockLiouvillian& other) {
    if (N != other.N) throw std::invalid_argument("BlockLiouvillian: N mismatch");
    for (std::size_t b = 0; b < ham.size(); ++b) {
        ham[b] += other.ham[b];
        diss[b] += other.diss[b];
    }
    return *this;
}

BlockLiouvillian combine(const BlockLiouvillian& a, const BlockLiouvillian& b) {
    BlockLiouvillian out = a;
    out += b;
    return out;
}

BlockLiouvillian build_interaction_blocks(int N, double J) {
    if (N < 1) throw std::invalid_argument("build_interaction_blocks: N must be >= 1");
    BlockLiouvillian gen;
    gen.N = N;
    gen.ham.resize(block_count(N));
    gen.diss.resize(block_count(N));
    for_each_block(N, [&](int id, int np, int nm) {
        int s = np + nm, size = N - s + 1, m = np - nm;
        MatrixXcd H = MatrixXcd::Zero(size, size);
        if (m != 0) {
            // scaled form of the sigma_z sigma_z commutator elements; the
            // J/(2N) mapping onto -(J/N)Sz^2 makes the prefactor i J m / N
            cplx pref = kI * (J / double(N)) * double(m);
            for (int k = 0; k + 1 < size; ++k) {
                double v = std::sqrt(double(k + 1) * double(N - s - k));
                H(k + 1, k) += pref * v;
                H(k, k + 1) += pref * v;
            }
        }
        gen.ham[id] = std::move(H);
        gen.diss[id] = MatrixXcd::Zero(size, size);
    });
    return gen;
}

BlockLiouvillian build_dissipator(int N, const DecoherenceRates& rates) {
    if (N < 1) throw std::invalid_argument("build_dissipator: N must be >= 1");
    rates.validate();
    BlockLiouvillian gen;
    gen.N = N;
    gen.ham.resize(block_count(N));
    gen.diss.resize(block_count(N));
    for_each_block(N, [&](int id, int np, int nm) {
        int s = np + nm, size = N - s + 1;
        MatrixXcd D = MatrixXcd::Zero(size, size);
        for (int k = 0; k < size; ++k) {
            D(k, k) = -(rates.ud + rates.du) * (k + 0.5 * s) - rates.el * 0.5 * s;
            if (k + 1 < size)
                D(k + 1, k) =
                    (rates.du - rates.ud) * std::sqrt(double(k + 1) * double(N - s - k));
        }
        gen.ham[id] = MatrixXcd::Zero(size, size);
        gen.diss[id] = std::move(D);
    });
    return gen;
}

SymEvolver::BlockExp SymEvolver::decompose(const MatrixXcd& G) {
    BlockExp b;
    b.gen = G;
    if (G.rows() == 1) {
        b.use_eig = true;
        b.V = MatrixXcd::Identity(1, 1);
        b.Vinv = b.V;
        b.lambda = VectorXcd::Constant(1, G(0, 0));
        return b;
    }
    // purely coherent blocks are i * (real symmetric); use the stable solver
    if (G.real().cwiseAbs().maxCoeff() == 0.0) {
        MatrixXd T = G.imag();
        if ((T - T.transpose()).cwiseAbs().maxCoeff() == 0.0) {
            Eigen::SelfAdjointEigenSolver<MatrixXd> es(T);
            b.use_eig = true;
            b.V = es.eigenvectors().cast<cplx>();
            b.Vinv = b.V.adjoint();
            b.lambda = (kI * es.eigenvalues().cast<cplx>().array()).matrix();
            return b;
        }
    }
    Eigen::ComplexEigenSolver<MatrixXcd> es(G);
    if (es.info() == Eigen::Success) {
        MatrixXcd V = es.eigenvectors();
        Eigen::PartialPivLU<MatrixXcd> lu(V);
        MatrixXcd Vinv = lu.inverse();
        double scale = std::max(1.0, G.cwiseAbs().maxCoeff());
        double resid =
            (V * es.eigenvalues().asDiagonal() * Vinv - G).cwiseAbs().maxCoeff();
        if (resid <= 1e-13 * scale) {
            b.use_eig = true;
            b.V = std::move(V);
            b.Vinv = std::move(Vinv);
            b.lambda = es.eigenvalues();
        }
    }
    return b;  // use_eig false -> per-call matrix exponential
}

void SymEvolver::apply(const BlockExp& b, const VectorXcd& in, double t, VectorXcd& out) {
    if (b.use_eig) {
        VectorXcd c = b.Vinv * in;
        for (int k = 0; k < c.size(); ++k) c[k] *= std::exp(b.lambda[k] * t);
        out = b.V * c;
    } else {
        out = (b.gen * t).exp() * in;
    }
}

SymEvolver::SymEvolver(const BlockLiouvillian& gen) : N_(gen.N) {
    forward_.reserve(gen.ham.size());
    backward_.reserve(gen.ham.size());
    for (std::size_t i = 0; i < gen.ham.size(); ++i) {
        forward_.push_back(decompose(gen.ham[i] + gen.diss[i]));
        backward_.push_back(decompose(-gen.ham[i] + gen.diss[i]));
    }
}

SymmetricState SymEvolver::evolve(const SymmetricState& state, double t,
                                  Direction direction) const {
    if (state.particle_count() != N_)
        throw std::invalid_argument("SymEvolver: dimension mismatch");
    if (t < 0.0) throw std::invalid_argument("SymEvolver: t must be >= 0");
    const auto& blocks = (direction == Direction::forward) ? forward_ : backward_;
    const SymBasis& basis = state.basis();
    VectorXcd out(state.scaled().size());
    VectorXcd tmp;
    for_each_block(N_, [&](int id, int np, int nm) {
        int off = basis.block_offset(np, nm);
        int size = basis.block_size(np, nm);
        apply(blocks[id], state.scaled().segment(off, size), t, tmp);
        out.segment(off, size) = tmp;
    });
    return SymmetricState(N_, std::move(out));
}

SymmetricState evolve_sym(const SymmetricState& state, const BlockLiouvillian& gen,
                          double t, Direction direction) {
    return SymEvolver(gen).evolve(state, t, direction);
}

}  // namespace mqc
