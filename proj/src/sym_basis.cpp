#include "mqc/sym_basis.hpp"

#include "mqc/combinatorics.hpp"

namespace mqc {

SymBasis::SymBasis(int N) : N_(N) {
    if (N < 1) throw std::invalid_argument("SymBasis: N must be >= 1");
    offsets_.assign((N + 1) * (N + 1), -1);
    occ_.reserve(sym_dimension(N));
    for (int a = 0; a <= N; ++a)
        for (int b = 0; b + a <= N; ++b) {
            offsets_[a * (N + 1) + b] = int(occ_.size());
            for (int c = 0; c + a + b <= N; ++c) occ_.push_back({a, b, c});
        }
}

int SymBasis::index(int a, int b, int c) const {
    if (a < 0 || b < 0 || c < 0 || a + b + c > N_)
        throw std::out_of_range("SymBasis::index: invalid occupations");
    return offsets_[a * (N_ + 1) + b] + c;
}

int SymBasis::block_offset(int a, int b) const {
    if (a < 0 || b < 0 || a + b > N_)
        throw std::out_of_range("SymBasis::block_offset: invalid block");
    return offsets_[a * (N_ + 1) + b];
}

double zpm_weight(int N, int n_z, int n_plus, int n_minus) {
    int n_1 = N - n_z - n_plus - n_minus;
    if (n_1 < 0) throw std::invalid_argument("zpm_weight: occupations exceed N");
    // multinomial as a product of binomials, then the 2^(n_1+n_z) factor
    double w = binomial(N, n_1) * binomial(N - n_1, n_z) * binomial(n_plus + n_minus, n_plus);
    return w * std::pow(2.0, n_1 + n_z);
}

double xyz_weight(int N, int n_x, int n_y, int n_z) {
    int n_1 = N - n_x - n_y - n_z;
    if (n_1 < 0) throw std::invalid_argument("xyz_weight: occupations exceed N");
    double w = binomial(N, n_1) * binomial(N - n_1, n_x) * binomial(n_y + n_z, n_y);
    return w * std::pow(2.0, N);
}

double permutation_count(int N, int n_up, int n_dn, int n_plus, int n_minus) {
    if (n_up < 0 || n_dn < 0 || n_plus < 0 || n_minus < 0 ||
        n_up + n_dn + n_plus + n_minus != N)
        throw std::invalid_argument("permutation_count: occupations must sum to N");
    return binomial(N, n_up) * binomial(N - n_up, n_dn) * binomial(n_plus + n_minus, n_plus);
}

}  // namespace mqc
