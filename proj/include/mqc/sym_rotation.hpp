#pragma once

#include "mqc/sym_state.hpp"

namespace mqc {

/// Rotation superoperators rho -> U rho U^dag on the symmetric operator
/// space, built from exact block structure:
///  - z rotations are diagonal phases e^{-i(n_+ - n_-)phi} in the (z+-) basis;
///  - y rotations are block diagonal in the (xyz) basis, with blocks given by
///    symmetric powers of the 2x2 rotation mixing the z and x slots;
///  - the (z+-)<->(xyz) change is block diagonal over (n_z, n_+ + n_-).
/// Every block is assembled from the eigendecomposition of its antisymmetric
/// tridiagonal generator, which keeps all maps unitary to machine precision
/// at any N (the closed-form coefficient sums cancel catastrophically for
/// N ~ 48 and are used only as small-N test oracles).
class SymRotationEngine {
  public:
    explicit SymRotationEngine(int N);

    int particle_count() const { return N_; }
    const SymBasis& zpm_basis() const { return zpm_; }
    const SymBasis& xyz_basis() const { return xyz_; }

    /// Scaled-coefficient transforms between the two bases (unitary).
    VectorXcd zpm_to_xyz(const VectorXcd& scaled) const;
    VectorXcd xyz_to_zpm(const VectorXcd& scaled) const;

    VectorXcd rotate_z(const VectorXcd& scaled_zpm, double phi) const;
    VectorXcd rotate_y(const VectorXcd& scaled_zpm, double theta) const;

    /// rho -> e^{-i S_n phi} rho e^{+i S_n phi}.
    VectorXcd rotate(const VectorXcd& scaled_zpm, const SpinAxis& axis, double phi) const;

    /// Map the state so that coherences about `axis` become coherences about
    /// z (conjugation by the inverse axis-aligning rotation).
    VectorXcd align_axis_to_z(const VectorXcd& scaled_zpm, const SpinAxis& axis) const;

    /// Dense y-rotation blocks at a fixed angle, for reuse across many phi.
    std::vector<MatrixXcd> y_blocks(double theta) const;
    VectorXcd apply_y_blocks_xyz(const std::vector<MatrixXcd>& blocks,
                                 const VectorXcd& scaled_xyz) const;

    /// Symmetric power of the SO(2) rotation G(alpha) (e1 -> cos e1 + sin e2)
    /// on r sites, in scaled occupation basis indexed by the e1 count.
    MatrixXcd sym_power_rotation(int r, double alpha) const;

  private:
    struct IndexBlock {
        std::vector<int> in, out;
    };

    int N_;
    SymBasis zpm_;   // (n_+, n_-, n_z)
    SymBasis xyz_;   // (n_x, n_y, n_z)
    // eigendecomposition of the generator per symmetric-power order r
    std::vector<MatrixXcd> gen_vectors_;
    std::vector<VectorXd> gen_freqs_;
    // basis-change blocks over (n_z, s): zpm indices -> xyz indices
    std::vector<IndexBlock> change_blocks_;
    std::vector<MatrixXcd> change_mats_;  // fixed, angle pi/4 with phase factors
    // y-rotation blocks over (n_y, r): xyz indices, in == out
    std::vector<IndexBlock> y_index_blocks_;
    std::vector<int> y_block_order_;  // r per block, for sym_power assembly
};

/// One-parameter family of rotations about a fixed axis; caches the two
/// y-rotation block sets so that a phi scan costs only diagonal phases and
/// block mat-vecs.
class SymAxisRotator {
  public:
    SymAxisRotator(std::shared_ptr<const SymRotationEngine> engine, const SpinAxis& axis);

    SymmetricState apply(const SymmetricState& state, double phi) const;

  private:
    std::shared_ptr<const SymRotationEngine> engine_;
    SpinAxis axis_;
    double theta_, phi_axis_;
    std::vector<MatrixXcd> y_pos_, y_neg_;
};

/// One-shot rotation; builds an engine internally.
SymmetricState rotate_sym(const SymmetricState& state, const SpinAxis& axis, double phi);

/// I_m with respect to S_n.
MqcSpectrum mqc_from_sym(const SymmetricState& state, const SpinAxis& axis);
MqcSpectrum mqc_from_sym(const SymRotationEngine& engine, const SymmetricState& state,
                         const SpinAxis& axis);

/// Collective first and second moments along an arbitrary axis.
struct AxisMoments {
    double mean = 0, second = 0;
    double variance() const { return second - mean * mean; }
};
AxisMoments axis_moments_sym(const SymRotationEngine& engine, const SymmetricState& state,
                             const SpinAxis& axis);

/// Raw-convention (unit-weight) xyz coefficient vector of a state, and its
/// inverse; the two are mutual inverses. Enumeration order follows
/// SymRotationEngine::xyz_basis().
VectorXcd sym_state_to_xyz_raw(const SymmetricState& state);
SymmetricState sym_state_from_xyz_raw(int N, const VectorXcd& raw_xyz);

}  // namespace mqc
