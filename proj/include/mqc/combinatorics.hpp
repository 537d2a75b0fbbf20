#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace mqc {

/// ln(n!) via lgamma.
inline double log_factorial(double n) { return std::lgamma(n + 1.0); }

/// Exact binomial coefficient as a double. Safe while the result fits in the
/// 53-bit integer range, which covers every N used in this library (N <= 60
/// for the central coefficient).
double binomial(int n, int k);

/// ln C(n,k) for large arguments.
inline double log_binomial(double n, double k) {
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

/// Dimension of the permutation-symmetric operator space, C(N+3,3).
inline std::int64_t sym_dimension(int N) {
    return std::int64_t(N + 1) * (N + 2) * (N + 3) / 6;
}

/// MQC spectrum of an equatorial coherent spin state:
///   I_m = (2N)! / (4^N (N-m)! (N+m)!)
/// evaluated by iterative ratios to avoid overflow.
double css_spectrum_closed_form(int N, int m);

/// Maximal I_m over fully separable states (optimized over the number of
/// equatorial spins N_+; spins at the poles do not change the spectrum).
double separable_bound(int N, int m);

/// QFI entanglement threshold b_k = n k^2 + (N - n k)^2 with n = floor(N/k).
/// F_Q > b_k witnesses (k+1)-particle entanglement.
double qfi_threshold(int N, int k);

/// Multiplicity n_{N,J} of the spin-J sector of N spin-1/2 particles,
/// n_{N,J} = C(N, N/2-J) - C(N, N/2-J-1). J is passed as 2J to stay integer.
std::int64_t dicke_degeneracy(int N, int twoJ);

}  // namespace mqc
