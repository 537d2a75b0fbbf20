#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace mqc {

using cplx = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

/// Collective model parameters for H = -(J/N) S_t^2 - Omega S_f, where the
/// twist axis t and field axis f depend on the chosen frame (see TwistFrame).
struct ModelParams {
    int N = 1;           // particle count
    double J = 0.0;      // Ising coupling, 1/time
    double Omega = 0.0;  // transverse field, 1/time

    void validate() const {
        if (N < 1) throw std::invalid_argument("ModelParams: N must be >= 1");
        if (!std::isfinite(J) || !std::isfinite(Omega))
            throw std::invalid_argument("ModelParams: J and Omega must be finite");
    }
};

/// Single-particle decoherence rates (Lindblad jump rates, 1/time).
struct DecoherenceRates {
    double ud = 0.0;  // |up> -> |down| Raman flips
    double du = 0.0;  // |down> -> |up>
    double el = 0.0;  // elastic dephasing

    bool any() const { return ud > 0.0 || du > 0.0 || el > 0.0; }
    /// Total rate Gamma = (ud + du + el)/2, the convention used for sweeps.
    double total() const { return 0.5 * (ud + du + el); }

    void validate() const {
        if (ud < 0 || du < 0 || el < 0)
            throw std::invalid_argument("DecoherenceRates: rates must be >= 0");
    }
};

/// Unit vector defining the generator A = S_n of collective rotations.
struct SpinAxis {
    double nx = 0.0, ny = 0.0, nz = 1.0;

    static SpinAxis x() { return {1, 0, 0}; }
    static SpinAxis y() { return {0, 1, 0}; }
    static SpinAxis z() { return {0, 0, 1}; }

    /// Spherical construction, theta from +z, phi from +x.
    static SpinAxis from_angles(double theta, double phi) {
        return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                std::cos(theta)};
    }

    double norm() const { return std::sqrt(nx * nx + ny * ny + nz * nz); }
    double theta() const { return std::acos(std::clamp(nz, -1.0, 1.0)); }
    double phi() const { return (nx == 0.0 && ny == 0.0) ? 0.0 : std::atan2(ny, nx); }

    void validate() const {
        if (std::abs(norm() - 1.0) > 1e-12)
            throw std::invalid_argument("SpinAxis: axis must be unit norm");
    }
};

enum class SpectrumSource { direct, protocol };
enum class Direction { forward, backward };

/// Which presentation of the transverse-field Ising model is simulated.
/// Both are unitarily equivalent; axes map as (nx,ny,nz) -> (nz,ny,-nx)
/// from x_frame to z_frame.
///   x_frame: H = -(J/N) Sx^2 - Omega Sz, initial state all-up along z.
///   z_frame: H = -(J/N) Sz^2 - Omega Sx, initial state CSS along +x.
enum class TwistFrame { x_frame, z_frame };

/// Multiple-quantum-coherence intensities I_m for m = -N..N.
struct MqcSpectrum {
    int N = 0;
    VectorXd values;  // length 2N+1, index i <-> m = i - N
    SpectrumSource source = SpectrumSource::direct;
    double imag_residue = 0.0;  // protocol extraction diagnostic

    double at(int m) const {
        if (std::abs(m) > N) throw std::out_of_range("MqcSpectrum: |m| > N");
        return values[m + N];
    }
    double& at(int m) {
        if (std::abs(m) > N) throw std::out_of_range("MqcSpectrum: |m| > N");
        return values[m + N];
    }
    double sum() const { return values.sum(); }
    /// F_I = 2 sum_m m^2 I_m, the lower bound on the QFI.
    double second_moment_bound() const {
        double s = 0.0;
        for (int m = -N; m <= N; ++m) s += double(m) * double(m) * at(m);
        return 2.0 * s;
    }

    static MqcSpectrum zero(int N, SpectrumSource src = SpectrumSource::direct) {
        MqcSpectrum s;
        s.N = N;
        s.values = VectorXd::Zero(2 * N + 1);
        s.source = src;
        return s;
    }
};

}  // namespace mqc
