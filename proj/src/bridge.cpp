#include "mqc/bridge.hpp"

#include "mqc/sym_basis.hpp"

namespace mqc {

namespace {

// per-site operator action: for column bit c, row bit and value of the only
// nonzero entry, or value 0 if the column is annihilated
// labels: 0 = identity, 1 = sigma_z, 2 = sigma_+, 3 = sigma_-
struct SiteAction {
    int row_bit;
    double value;
};

SiteAction site_action(int label, int col_bit) {
    switch (label) {
        case 0: return {col_bit, 1.0};
        case 1: return {col_bit, col_bit ? -1.0 : 1.0};
        case 2: return (col_bit == 1) ? SiteAction{0, 1.0} : SiteAction{0, 0.0};
        default: return (col_bit == 0) ? SiteAction{1, 1.0} : SiteAction{1, 0.0};
    }
}

template <typename F>
void for_each_label_string(int N, F&& f) {
    std::vector<int> labels(N, 0);
    std::int64_t total = 1;
    for (int i = 0; i < N; ++i) total *= 4;
    for (std::int64_t code = 0; code < total; ++code) {
        std::int64_t c = code;
        int nz = 0, np = 0, nm = 0;
        for (int i = 0; i < N; ++i) {
            labels[i] = int(c & 3);
            c >>= 2;
            if (labels[i] == 1) ++nz;
            else if (labels[i] == 2) ++np;
            else if (labels[i] == 3) ++nm;
        }
        f(labels, nz, np, nm);
    }
}

}  // namespace

FullDensityMatrix sym_to_full(const SymmetricState& state) {
    int N = state.particle_count();
    if (N > 10) throw std::invalid_argument("sym_to_full: too many particles");
    std::int64_t d = std::int64_t(1) << N;
    FullDensityMatrix out;
    out.N = N;
    out.rho = MatrixXcd::Zero(d, d);
    for_each_label_string(N, [&](const std::vector<int>& labels, int nz, int np, int nm) {
        cplx coeff = state.raw_coeff(nz, np, nm);
        if (coeff == cplx(0, 0)) return;
        for (std::int64_t col = 0; col < d; ++col) {
            std::int64_t row = 0;
            double v = 1.0;
            for (int site = 0; site < N && v != 0.0; ++site) {
                SiteAction a = site_action(labels[site], int((col >> site) & 1));
                v *= a.value;
                row |= std::int64_t(a.row_bit) << site;
            }
            if (v != 0.0) out.rho(row, col) += coeff * v;
        }
    });
    return out;
}

SymmetricState full_to_sym(const FullDensityMatrix& rho) {
    int N = rho.N;
    if (N > 10) throw std::invalid_argument("full_to_sym: too many particles");
    SymBasis basis(N);
    std::int64_t d = std::int64_t(1) << N;
    VectorXcd scaled = VectorXcd::Zero(basis.dim());
    // scaled[alpha] = tr[rho_alpha^dag rho] / sqrt(w_alpha); strings of one
    // symmetrized element all share (nz,np,nm), so accumulate per string
    for_each_label_string(N, [&](const std::vector<int>& labels, int nz, int np, int nm) {
        cplx tr(0, 0);
        for (std::int64_t col = 0; col < d; ++col) {
            std::int64_t row = 0;
            double v = 1.0;
            for (int site = 0; site < N && v != 0.0; ++site) {
                SiteAction a = site_action(labels[site], int((col >> site) & 1));
                v *= a.value;
                row |= std::int64_t(a.row_bit) << site;
            }
            // tr[S^dag rho] = sum_col conj(S(row,col)) rho(row,col)
            if (v != 0.0) tr += v * rho.rho(row, col);
        }
        scaled[basis.index(np, nm, nz)] += tr;
    });
    for (int i = 0; i < basis.dim(); ++i) {
        auto [np, nm, nz] = basis.occupations(i);
        scaled[i] /= std::sqrt(zpm_weight(N, nz, np, nm));
    }
    return SymmetricState(N, std::move(scaled));
}

}  // namespace mqc
