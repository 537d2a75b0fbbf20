#include "mqc/sym_state.hpp"

#include "mqc/combinatorics.hpp"

#include <mutex>
#include <unordered_map>

namespace mqc {

namespace {

// SymBasis construction is cheap but states are copied constantly; share one
// immutable instance per N.
std::shared_ptr<const SymBasis> shared_basis(int N) {
    static std::mutex mu;
    static std::unordered_map<int, std::shared_ptr<const SymBasis>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& entry = cache[N];
    if (!entry) entry = std::make_shared<SymBasis>(N);
    return entry;
}

}  // namespace

SymmetricState::SymmetricState(int N, VectorXcd scaled_coeffs)
    : N_(N), basis_(shared_basis(N)), scaled_(std::move(scaled_coeffs)) {
    if (scaled_.size() != basis_->dim())
        throw std::invalid_argument("SymmetricState: coefficient vector has wrong length");
}

cplx SymmetricState::raw_coeff(int n_z, int n_plus, int n_minus) const {
    int i = basis_->index(n_plus, n_minus, n_z);
    return scaled_[i] / std::sqrt(zpm_weight(N_, n_z, n_plus, n_minus));
}

void SymmetricState::set_raw_coeff(int n_z, int n_plus, int n_minus, cplx value) {
    int i = basis_->index(n_plus, n_minus, n_z);
    scaled_[i] = value * std::sqrt(zpm_weight(N_, n_z, n_plus, n_minus));
}

double SymmetricState::trace() const {
    return std::pow(2.0, N_) * raw_coeff(0, 0, 0).real();
}

double SymmetricState::purity() const { return scaled_.squaredNorm(); }

double SymmetricState::hermiticity_error() const {
    double err = 0.0;
    for (int i = 0; i < basis_->dim(); ++i) {
        auto [a, b, c] = basis_->occupations(i);
        int j = basis_->index(b, a, c);  // adjoint swaps n_+ and n_-
        err = std::max(err, std::abs(scaled_[i] - std::conj(scaled_[j])));
    }
    return err;
}

void SymmetricState::validate() const {
    if (std::abs(trace() - 1.0) > 1e-9)
        throw std::invalid_argument("SymmetricState: trace != 1");
    if (hermiticity_error() > 1e-9)
        throw std::invalid_argument("SymmetricState: not Hermitian");
}

SymmetricState initial_all_up_sym(int N) {
    SymBasis basis(N);
    VectorXcd v = VectorXcd::Zero(basis.dim());
    // c_raw(n_z,0,0) = 2^-N, scaled by sqrt(2^N C(N,n_z))
    for (int n_z = 0; n_z <= N; ++n_z)
        v[basis.index(0, 0, n_z)] =
            std::pow(2.0, -0.5 * N) * std::sqrt(binomial(N, n_z));
    return SymmetricState(N, std::move(v));
}

SymmetricState prepare_css_sym(int N, double theta, double phi) {
    // per-site rho = (1 + n.sigma)/2 with coefficients
    //   c_1 = 1/2, c_z = cos(theta)/2, c_+ = sin(theta) e^{-i phi}/2 = conj(c_-)
    SymBasis basis(N);
    VectorXcd v = VectorXcd::Zero(basis.dim());
    cplx c1(0.5, 0.0), cz(0.5 * std::cos(theta), 0.0);
    cplx cp = 0.5 * std::sin(theta) * std::polar(1.0, -phi);
    cplx cm = std::conj(cp);
    for (int i = 0; i < basis.dim(); ++i) {
        auto [np, nm, nz] = basis.occupations(i);
        int n1 = N - np - nm - nz;
        cplx raw = std::pow(c1, n1) * std::pow(cz, nz) * std::pow(cp, np) * std::pow(cm, nm);
        v[i] = raw * std::sqrt(zpm_weight(N, nz, np, nm));
    }
    return SymmetricState(N, std::move(v));
}

double overlap_sym(const SymmetricState& rho, const SymmetricState& sigma) {
    if (rho.particle_count() != sigma.particle_count())
        throw std::invalid_argument("overlap_sym: dimension mismatch");
    return sigma.scaled().dot(rho.scaled()).real();
}

SymObservables observables_sym(const SymmetricState& state) {
    int N = state.particle_count();
    SymObservables obs;
    double pow2N = std::pow(2.0, N);
    obs.sz = state.raw_coeff(1, 0, 0).real() * (0.5 * N) * pow2N;
    cplx cpm = state.raw_coeff(0, 0, 1);  // sigma_- string
    cplx cpp = state.raw_coeff(0, 1, 0);  // sigma_+ string
    obs.sx = ((cpm + cpp) * (0.25 * N) * pow2N).real();
    obs.sy = (cplx(0, 1) * (cpp - cpm) * (0.25 * N) * pow2N).real();
    if (N >= 2)
        obs.sz2 = 0.25 * N +
                  0.5 * pow2N * binomial(N, 2) * state.raw_coeff(2, 0, 0).real();
    else
        obs.sz2 = 0.25;

    std::vector<cplx> diag(N + 1);
    for (int n_z = 0; n_z <= N; ++n_z) diag[n_z] = state.raw_coeff(n_z, 0, 0);

    obs.p0 = 0.0;
    for (int n_z = 0; n_z <= N; ++n_z)
        obs.p0 += (diag[n_z] * binomial(N, n_z)).real();

    obs.pn = VectorXd::Zero(N + 1);
    for (int n = 0; n <= N; ++n) {
        long double acc = 0.0L;
        for (int n_z = 0; n_z <= N; ++n_z) {
            long double inner = 0.0L;
            for (int k = 0; k <= n; ++k) {
                double b1 = binomial(N - n, n_z - k);
                if (b1 == 0.0) continue;
                inner += ((k % 2) ? -1.0L : 1.0L) * (long double)(b1 * binomial(n, k));
            }
            acc += (long double)diag[n_z].real() * inner;
        }
        obs.pn[n] = double(acc * (long double)binomial(N, n));
    }
    return obs;
}

MqcSpectrum mqc_sym_z(const SymmetricState& state) {
    int N = state.particle_count();
    const SymBasis& basis = state.basis();
    MqcSpectrum spec = MqcSpectrum::zero(N, SpectrumSource::direct);
    for (int i = 0; i < basis.dim(); ++i) {
        auto [np, nm, nz] = basis.occupations(i);
        spec.at(np - nm) += std::norm(state.scaled()[i]);
    }
    return spec;
}

}  // namespace mqc
