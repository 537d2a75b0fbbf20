#pragma once

#include "mqc/sym_basis.hpp"
#include "mqc/types.hpp"

#include <memory>

namespace mqc {

/// Mixed state of N spins in the permutation-symmetric (z+-) operator basis.
///
/// Internally the coefficients are stored in the Hilbert-Schmidt orthonormal
/// convention, scaled[i] = c_raw[i] * sqrt(zpm_weight(i)). In this convention
/// rotations are exactly unitary, the purity is squaredNorm(), and I_m is a
/// plain sector sum of |scaled|^2. The raw unit-weight coefficients of the
/// symmetrized basis expansion are exposed through raw_coeff().
class SymmetricState {
  public:
    SymmetricState(int N, VectorXcd scaled_coeffs);

    int particle_count() const { return N_; }
    const SymBasis& basis() const { return *basis_; }
    const VectorXcd& scaled() const { return scaled_; }
    VectorXcd& scaled() { return scaled_; }

    cplx raw_coeff(int n_z, int n_plus, int n_minus) const;
    void set_raw_coeff(int n_z, int n_plus, int n_minus, cplx value);

    double trace() const;   // 2^N * c_raw(0,0,0)
    double purity() const;  // tr[rho^2]
    double hermiticity_error() const;
    void validate() const;

  private:
    int N_;
    std::shared_ptr<const SymBasis> basis_;  // immutable, shared between copies
    VectorXcd scaled_;
};

/// |up><up|^N = sum_{n_z} 2^-N (n_z, 0, 0).
SymmetricState initial_all_up_sym(int N);

/// Product state with every spin along (theta, phi) on the Bloch sphere.
SymmetricState prepare_css_sym(int N, double theta, double phi);

/// tr[rho sigma] for two symmetric states (sigma Hermitian).
double overlap_sym(const SymmetricState& rho, const SymmetricState& sigma);

struct SymObservables {
    double sx = 0, sy = 0, sz = 0;
    double sz2 = 0;
    double p0 = 0;       // probability of the all-up state
    VectorXd pn;         // P_n, probability that n spins are flipped from up
};

/// Collective observables in the z quantization; every formula follows the
/// symmetrized-basis expansion. P_n uses the finite double binomial sum. The
/// sign convention is fixed by N_up = N/2 + <S_z> (all-up gives +N/2, P_0=1).
SymObservables observables_sym(const SymmetricState& state);

/// I_m of the state with respect to S_z: sector sums of |scaled|^2 over
/// n_+ - n_- = m. For a general axis use mqc_from_sym in sym_rotation.hpp.
MqcSpectrum mqc_sym_z(const SymmetricState& state);

}  // namespace mqc
