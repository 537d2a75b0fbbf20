#pragma once

#include "mqc/sym_state.hpp"

namespace mqc {

/// Generator of the master equation in the (z+-) basis, block diagonal over
/// (n_+, n_-) with tridiagonal blocks over n_z (scaled-coefficient
/// convention). The coherent and dissipative parts are kept separate so the
/// backward direction can flip only the Hamiltonian.
struct BlockLiouvillian {
    int N = 0;
    // indexed like SymBasis blocks: lexicographic (n_+, n_-)
    std::vector<MatrixXcd> ham;
    std::vector<MatrixXcd> diss;

    BlockLiouvillian& operator+=(const BlockLiouvillian& other);
};

/// -i[H, .] for H = -(J/N) Sz^2 (one-axis twisting about z). Blocks with
/// n_+ = n_- vanish identically: the m = 0 sector is stationary.
BlockLiouvillian build_interaction_blocks(int N, double J);

/// Single-particle dissipators: Raman flips at gamma_ud/gamma_du and elastic
/// dephasing at gamma_el. Diagonal when gamma_ud = gamma_du, otherwise with
/// one extra subdiagonal in n_z.
BlockLiouvillian build_dissipator(int N, const DecoherenceRates& rates);

BlockLiouvillian combine(const BlockLiouvillian& a, const BlockLiouvillian& b);

/// exp(L t) applied blockwise, with eigendecompositions of every block cached
/// at construction (forward and backward). Blocks whose eigendecomposition is
/// ill-conditioned fall back to a scaling-and-squaring matrix exponential.
class SymEvolver {
  public:
    explicit SymEvolver(const BlockLiouvillian& gen);

    SymmetricState evolve(const SymmetricState& state, double t,
                          Direction direction = Direction::forward) const;
    int particle_count() const { return N_; }

  private:
    struct BlockExp {
        bool use_eig = false;
        MatrixXcd V, Vinv;
        VectorXcd lambda;
        MatrixXcd gen;  // retained for the fallback path
    };
    static BlockExp decompose(const MatrixXcd& G);
    static void apply(const BlockExp& b, const VectorXcd& in, double t, VectorXcd& out);

    int N_;
    std::vector<BlockExp> forward_, backward_;
};

/// One-shot evolution (builds the cached evolver internally).
SymmetricState evolve_sym(const SymmetricState& state, const BlockLiouvillian& gen,
                          double t, Direction direction = Direction::forward);

}  // namespace mqc
