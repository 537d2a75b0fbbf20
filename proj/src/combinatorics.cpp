#include "mqc/combinatorics.hpp"

#include <algorithm>

namespace mqc {

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double r = 1.0;
    for (int j = 1; j <= k; ++j) r = r * double(n - k + j) / double(j);
    // values are integers; round away the accumulated division noise
    return (r < 9.0e15) ? std::round(r) : r;
}

double css_spectrum_closed_form(int N, int m) {
    if (N < 1) throw std::invalid_argument("css_spectrum_closed_form: N must be >= 1");
    m = std::abs(m);
    if (m > N) throw std::invalid_argument("css_spectrum_closed_form: |m| > N");
    // I_0 = C(2N,N)/4^N = prod_{j=1..N} (2j-1)/(2j)
    double v = 1.0;
    for (int j = 1; j <= N; ++j) v *= double(2 * j - 1) / double(2 * j);
    // I_{k+1}/I_k = (N-k)/(N+k+1)
    for (int k = 0; k < m; ++k) v *= double(N - k) / double(N + k + 1);
    return v;
}

double separable_bound(int N, int m) {
    if (N < 1) throw std::invalid_argument("separable_bound: N must be >= 1");
    m = std::abs(m);
    if (m > N) throw std::invalid_argument("separable_bound: |m| > N");
    if (m == 0) return 1.0;  // N_+ = 0 term (pure pole state) dominates
    double best = 0.0;
    for (int np = m; np <= N; ++np) best = std::max(best, css_spectrum_closed_form(np, m));
    return best;
}

double qfi_threshold(int N, int k) {
    if (k < 1 || k > N) throw std::invalid_argument("qfi_threshold: k must be in [1,N]");
    int n = N / k;
    double rem = double(N - n * k);
    return double(n) * double(k) * double(k) + rem * rem;
}

std::int64_t dicke_degeneracy(int N, int twoJ) {
    if (twoJ < 0 || twoJ > N || (N - twoJ) % 2 != 0)
        throw std::invalid_argument("dicke_degeneracy: invalid J for this N");
    int k = (N - twoJ) / 2;  // number of lowering steps from J = N/2
    double d = binomial(N, k) - binomial(N, k - 1);
    return std::int64_t(d);
}

}  // namespace mqc
