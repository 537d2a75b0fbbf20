#pragma once

#include "mqc/types.hpp"

#include <array>
#include <cstdint>

namespace mqc {

/// Occupation triple labelling a symmetrized operator basis element. In the
/// (z+-) basis the slots are (n_z, n_+, n_-) with n_1 = N - n_z - n_+ - n_-
/// implicit; the same enumeration is reused for the (xyz) basis with slots
/// (n_x, n_y, n_z) and for the up/down basis with slots (n_+, n_-, n_up).
struct SymBasisIndex {
    int n_z = 0, n_plus = 0, n_minus = 0;
    int coherence_order() const { return n_plus - n_minus; }
};

/// Enumeration of occupations (a, b, c) with a + b + c <= N, block-major in
/// (a, b) so that fixed-(a,b) blocks are contiguous in memory. For the (z+-)
/// basis the pair (a, b) = (n_+, n_-), matching the block structure of the
/// twisting Liouvillian.
class SymBasis {
  public:
    explicit SymBasis(int N);

    int particle_count() const { return N_; }
    int dim() const { return int(occ_.size()); }

    int index(int a, int b, int c) const;
    const std::array<int, 3>& occupations(int idx) const { return occ_[idx]; }

    int block_offset(int a, int b) const;
    int block_size(int a, int b) const { return N_ - a - b + 1; }

  private:
    int N_;
    std::vector<int> offsets_;  // (N+1)^2 table, -1 for invalid (a,b)
    std::vector<std::array<int, 3>> occ_;
};

/// Hilbert-Schmidt weight tr[rho_a rho_a^dag] of a unit-weight (z+-) basis
/// element, 2^(n_1+n_z) N! / (n_1! n_z! n_+! n_-!).
double zpm_weight(int N, int n_z, int n_plus, int n_minus);

/// Weight of an (xyz) basis element, 2^N N! / (n_1! n_x! n_y! n_z!).
double xyz_weight(int N, int n_x, int n_y, int n_z);

/// Number of distinct site arrangements N! / (n_up! n_dn! n_+! n_-!).
double permutation_count(int N, int n_up, int n_dn, int n_plus, int n_minus);

}  // namespace mqc
