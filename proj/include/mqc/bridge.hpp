#pragma once

#include "mqc/full_space.hpp"
#include "mqc/sym_state.hpp"

namespace mqc {

/// Expand a symmetric state into the full 2^N density matrix by summing the
/// unit-weight basis strings. Exponential cost; intended for small-N
/// cross-validation against the brute-force oracle.
FullDensityMatrix sym_to_full(const SymmetricState& state);

/// Project a (permutation-symmetric) full density matrix onto the
/// symmetrized basis via Hilbert-Schmidt inner products.
SymmetricState full_to_sym(const FullDensityMatrix& rho);

}  // namespace mqc
