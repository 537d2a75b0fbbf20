#pragma once

#include "mqc/sym_state.hpp"

namespace mqc {

/// Block-diagonal form of a permutation-symmetric density matrix in the
/// angular-momentum basis |J,M,beta>: one representative (2J+1)x(2J+1) block
/// per J with multiplicity n_{N,J}. Row/column index k corresponds to
/// M = J - k (descending, matching the Dicke amplitude convention).
struct DickeBlockMatrix {
    int N = 0;
    std::vector<MatrixXcd> blocks;  // entry j has twoJ = N - 2j

    int count() const { return int(blocks.size()); }
    int twoJ(int j) const { return N - 2 * j; }
    std::int64_t degeneracy_of(int j) const;

    /// sum_J n_{N,J} tr(block_J); 1 for a valid state.
    double total_trace() const;
    /// sum_J n_{N,J} tr(block_J^2).
    double purity() const;
    double hermiticity_error() const;
};

/// Cached change of representation from the symmetric (z+-) coefficients to
/// Dicke blocks for a fixed N. Construction builds, once, the linear
/// functionals d_{J,M,M'} = f . c_tilde via the ladder recursion seeded by
/// <N/2 N/2|rho|N/2 N/2> = c_tilde(N,0,0,0) and the degeneracy-weighted
/// trace identity for lower J.
class DickeTransform {
  public:
    explicit DickeTransform(int N);

    int particle_count() const { return N_; }
    const SymBasis& updown_basis() const { return ud_; }

    /// Up/down-basis coefficients including the permutation reweighting
    /// N!/(n_up! n_dn! n_+! n_-!), the normalization the recursion expects.
    VectorXcd updown_tilde(const SymmetricState& state) const;
    /// Inverse of updown_tilde.
    SymmetricState state_from_tilde(const VectorXcd& tilde) const;

    DickeBlockMatrix blocks_from_tilde(const VectorXcd& tilde) const;
    DickeBlockMatrix build(const SymmetricState& state) const;

  private:
    struct Functional {
        int nm_min = 0;
        std::vector<double> vals;  // indexed by n_- - nm_min
    };

    int N_;
    SymBasis zpm_;
    SymBasis ud_;  // slots (n_+, n_-, n_up)
    std::vector<std::vector<Functional>> func_;  // [j][k * (twoJ+1) + k']
    // scaled-basis change per (n_+,n_-) block: n_z segment -> n_up segment
    std::vector<MatrixXd> updown_mats_;
};

/// Build the Dicke-block representation (convenience, uncached).
DickeBlockMatrix build_dicke_blocks(const SymmetricState& state);

/// Up/down coefficient vector (reweighted), enumeration (n_+, n_-, n_up).
VectorXcd zpm_to_updown(const SymmetricState& state);
SymmetricState updown_to_zpm(int N, const VectorXcd& tilde);

/// Mixed-state QFI from the block decomposition,
///   F_Q = 2 sum_J n_{N,J} sum_{kl} (l_k-l_l)^2/(l_k+l_l) |<k|S_n^(J)|l>|^2.
double qfi_mixed(const DickeBlockMatrix& blocks, const SpinAxis& axis);

/// Trace out n_traced particles: coefficients with n_z+n_+ +n_- <= N-n
/// survive, rescaled by 2^n (raw convention).
SymmetricState partial_trace_sym(const SymmetricState& state, int n_traced);

struct EntropyReport {
    double von_neumann = 0;
    double renyi2 = 0;
};
EntropyReport entropies(const DickeBlockMatrix& blocks);

}  // namespace mqc
