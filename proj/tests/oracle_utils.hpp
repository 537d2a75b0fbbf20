#pragma once

// Test-only oracles kept independent of the library's production paths:
// closed-form transformation coefficients evaluated directly, a dense
// superoperator integrator, and seeded random-state generators.

#include "mqc/bridge.hpp"
#include "mqc/combinatorics.hpp"
#include "mqc/dicke.hpp"
#include "mqc/full_space.hpp"
#include "mqc/sym_basis.hpp"
#include "mqc/sym_state.hpp"

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <random>

namespace mqc::testing {

inline double factorial_d(int n) { return std::tgamma(double(n) + 1.0); }

/// Closed-form (z+-) -> (xyz) expansion coefficient A_{n+,n-}^{nx,ny} with
/// ny = n+ + n- - nx (raw unit-weight convention).
inline cplx quoted_zpm_to_xyz_coeff(int np, int nm, int nx) {
    int ny = np + nm - nx;
    if (nx < 0 || ny < 0) return 0.0;
    cplx sum(0, 0);
    for (int nxp = std::max(0, nx - nm); nxp <= std::min(nx, np); ++nxp) {
        cplx ip = std::pow(cplx(0, 1), np - nxp) * std::pow(cplx(0, -1), nm - (nx - nxp));
        sum += binomial(np, nxp) * binomial(nm, nx - nxp) * ip;
    }
    double pref = factorial_d(nx) * factorial_d(ny) /
                  (factorial_d(np) * factorial_d(nm) * std::pow(2.0, np + nm));
    return pref * sum;
}

/// Closed-form reverse expansion A_{nx,ny}^{n+,n-} with n- = nx + ny - n+.
inline cplx quoted_xyz_to_zpm_coeff(int nx, int ny, int np) {
    int nm = nx + ny - np;
    if (np < 0 || nm < 0) return 0.0;
    cplx sum(0, 0);
    for (int npx = std::max(0, np - ny); npx <= std::min(nx, np); ++npx) {
        cplx ip = std::pow(cplx(0, -1), np - npx) * std::pow(cplx(0, 1), ny - (np - npx));
        sum += binomial(nx, npx) * binomial(ny, np - npx) * ip;
    }
    return factorial_d(np) * factorial_d(nm) / (factorial_d(nx) * factorial_d(ny)) * sum;
}

/// Closed-form y-rotation coefficient A_{nx,nz}^{nx',nz'} (nz' = nx+nz-nx').
inline double quoted_y_rotation_coeff(int nx, int nz, int nxp, double phi) {
    int nzp = nx + nz - nxp;
    if (nxp < 0 || nzp < 0) return 0.0;
    double sum = 0.0;
    for (int nxz = std::max(0, nxp - nz); nxz <= std::min(nxp, nx); ++nxz) {
        double term = binomial(nx, nxz) * binomial(nz, nxp - nxz) *
                      std::pow(std::cos(phi), nz - nxp + 2 * nxz) *
                      std::pow(std::sin(phi), nx + nxp - 2 * nxz);
        sum += ((nx - nxz) % 2 ? -term : term);
    }
    return factorial_d(nxp) * factorial_d(nzp) / (factorial_d(nx) * factorial_d(nz)) * sum;
}

/// Closed-form (z+-) -> (up/down) coefficient A_{n1 nz}^{nu nd}.
inline double quoted_updown_coeff(int n1, int nz, int nu) {
    int nd = n1 + nz - nu;
    if (nu < 0 || nd < 0) return 0.0;
    double sum = 0.0;
    for (int p = std::max(0, nu - nz); p <= std::min(n1, nu); ++p) {
        double term = binomial(n1, p) * binomial(nz, nu - p);
        sum += ((nz - nu + p) % 2 == 0 || (nz - nu + p) % 2 == -0) &&
                       (((nz - nu + p) % 2 + 2) % 2 == 0)
                   ? term
                   : -term;
    }
    return factorial_d(nu) * factorial_d(nd) / (factorial_d(n1) * factorial_d(nz)) * sum;
}

/// Finite hypergeometric 2F1(-n, -nz; c; -1) via the defining series.
inline double hyp2f1_neg(int n, int nz, double c) {
    double sum = 0.0, term = 1.0;
    for (int k = 0;; ++k) {
        sum += term;
        if (k >= n || k >= nz) break;
        term *= (double(-n + k) * double(-nz + k)) / ((c + k) * (k + 1)) * (-1.0);
    }
    return sum;
}

/// Dense Liouvillian superoperator (column-major vectorization), the
/// independent route for validating the RK45 integrator.
inline MatrixXcd dense_superoperator(const ModelParams& params,
                                     const DecoherenceRates& rates, Direction dir,
                                     TwistFrame frame) {
    int N = params.N;
    std::int64_t d = std::int64_t(1) << N;
    MatrixXcd id = MatrixXcd::Identity(d, d);
    MatrixXcd H = full_hamiltonian(params, frame);
    if (dir == Direction::backward) H = -H;
    MatrixXcd L = cplx(0, -1) * (Eigen::kroneckerProduct(id, H).eval() -
                                 Eigen::kroneckerProduct(H.transpose(), id).eval());
    auto add = [&](double rate, const Eigen::Matrix2cd& op) {
        if (rate <= 0) return;
        for (int j = 0; j < N; ++j) {
            MatrixXcd A = std::sqrt(rate) * site_operator(N, j, op);
            MatrixXcd AdA = A.adjoint() * A;
            L += Eigen::kroneckerProduct(A.conjugate(), A).eval();
            L -= 0.5 * Eigen::kroneckerProduct(id, AdA).eval();
            L -= 0.5 * Eigen::kroneckerProduct(AdA.transpose(), id).eval();
        }
    };
    Eigen::Matrix2cd sp = Eigen::Matrix2cd::Zero(), sm = Eigen::Matrix2cd::Zero(),
                     pu = Eigen::Matrix2cd::Zero();
    sp(0, 1) = 1;
    sm(1, 0) = 1;
    pu(0, 0) = 1;
    add(rates.ud, sm);
    add(rates.du, sp);
    add(rates.el, pu);
    return L;
}

inline FullDensityMatrix evolve_superop(const FullDensityMatrix& rho,
                                        const ModelParams& params,
                                        const DecoherenceRates& rates, double t,
                                        Direction dir = Direction::forward,
                                        TwistFrame frame = TwistFrame::x_frame) {
    MatrixXcd L = dense_superoperator(params, rates, dir, frame);
    std::int64_t d = rho.rho.rows();
    VectorXcd vec = Eigen::Map<const VectorXcd>(rho.rho.data(), d * d);
    VectorXcd out = (L * t).exp() * vec;
    FullDensityMatrix res;
    res.N = rho.N;
    res.rho = Eigen::Map<const MatrixXcd>(out.data(), d, d);
    return res;
}

inline DickeState random_dicke(int N, std::mt19937& rng) {
    std::normal_distribution<double> g;
    DickeState s;
    s.N = N;
    s.amps = VectorXcd(N + 1);
    for (int k = 0; k <= N; ++k) s.amps[k] = cplx(g(rng), g(rng));
    s.amps.normalize();
    return s;
}

inline SpinAxis random_axis(std::mt19937& rng) {
    std::normal_distribution<double> g;
    double x = g(rng), y = g(rng), z = g(rng);
    double n = std::sqrt(x * x + y * y + z * z);
    return {x / n, y / n, z / n};
}

/// Random mixed state as a mixture of a few random pure product-of-Haar
/// states (guaranteed positive).
inline FullDensityMatrix random_full_state(int N, int terms, std::mt19937& rng) {
    std::normal_distribution<double> g;
    std::int64_t d = std::int64_t(1) << N;
    MatrixXcd rho = MatrixXcd::Zero(d, d);
    double wsum = 0.0;
    std::uniform_real_distribution<double> u(0.1, 1.0);
    for (int k = 0; k < terms; ++k) {
        VectorXcd psi(d);
        for (int i = 0; i < d; ++i) psi[i] = cplx(g(rng), g(rng));
        psi.normalize();
        double w = u(rng);
        rho += w * (psi * psi.adjoint());
        wsum += w;
    }
    FullDensityMatrix out;
    out.N = N;
    out.rho = rho / wsum;
    return out;
}

}  // namespace mqc::testing
