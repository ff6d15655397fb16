#include "varspec/lmg.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace varspec {

void LmgParams::validate() const {
    if (n_particles < 1) {
        throw std::invalid_argument("LmgParams: n_particles must be >= 1");
    }
    if (!(epsilon > 0.0)) {
        throw std::invalid_argument("LmgParams: epsilon must be > 0");
    }
    if (!std::isfinite(v) || !std::isfinite(w)) {
        throw std::invalid_argument("LmgParams: V and W must be finite");
    }
}

QuasispinBasis QuasispinBasis::for_particles(int n_particles) {
    const double j = n_particles / 2.0;
    std::vector<double> m_values;
    m_values.reserve(static_cast<std::size_t>(n_particles) + 1);
    for (int k = 0; k <= n_particles; ++k) {
        m_values.push_back(-j + k);
    }
    return {j, std::move(m_values)};
}

DenseHermitian build_quasispin(const LmgParams& params) {
    params.validate();
    const auto basis = QuasispinBasis::for_particles(params.n_particles);
    const double j = basis.j;
    const double jj = j * (j + 1.0);
    const int dim = params.n_particles + 1;

    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) {
        const double m = basis.m_values[static_cast<std::size_t>(k)];
        // J+J- + J-J+ = 2(J^2 - Jz^2) is diagonal.
        h(k, k) = params.epsilon * m + params.w * (jj - m * m);
    }
    for (int k = 0; k + 2 < dim; ++k) {
        const double m = basis.m_values[static_cast<std::size_t>(k)];
        const double raise_1 = std::sqrt(jj - m * (m + 1.0));
        const double raise_2 = std::sqrt(jj - (m + 1.0) * (m + 2.0));
        const double coupling = -0.5 * params.v * raise_1 * raise_2;
        h(k + 2, k) = coupling;
        h(k, k + 2) = coupling;
    }
    return DenseHermitian(std::move(h));
}

namespace {

// Mode layout: particle label p in [0, N), level sigma in {0 = lower, 1 =
// upper}; mode index 2p + sigma. Jordan-Wigner-style sign: acting on mode k
// picks up (-1)^(number of occupied modes below k).
struct FockOp {
    int mode;
    bool create;
};

bool apply_op(std::uint64_t& mask, int& sign, const FockOp& op) {
    const auto bit = std::uint64_t{1} << op.mode;
    if (op.create ? (mask & bit) != 0 : (mask & bit) == 0) {
        return false;
    }
    if (std::popcount(mask & (bit - 1)) % 2 != 0) {
        sign = -sign;
    }
    mask ^= bit;
    return true;
}

}  // namespace

DenseHermitian build_fock_sector(const LmgParams& params) {
    params.validate();
    const int n = params.n_particles;
    if (n > 6) {
        throw std::length_error("build_fock_sector: N > 6 exceeds the supported sector size");
    }
    const int n_modes = 2 * n;
    const auto mode_of = [](int p, int sigma) { return 2 * p + sigma; };

    std::vector<std::uint64_t> basis;
    std::unordered_map<std::uint64_t, int> index_of;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n_modes); ++mask) {
        if (std::popcount(mask) == n) {
            index_of[mask] = static_cast<int>(basis.size());
            basis.push_back(mask);
        }
    }
    const int dim = static_cast<int>(basis.size());
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);

    const auto add_quartic = [&](double coeff, const FockOp (&ops)[4], int col) {
        std::uint64_t mask = basis[static_cast<std::size_t>(col)];
        int sign = 1;
        for (const auto& op : ops) {
            if (!apply_op(mask, sign, op)) {
                return;
            }
        }
        h(index_of.at(mask), col) += coeff * sign;
    };

    for (int col = 0; col < dim; ++col) {
        const std::uint64_t mask = basis[static_cast<std::size_t>(col)];

        // (eps/2) sum_{p,sigma} sigma n_{p,sigma}
        int upper = 0;
        for (int p = 0; p < n; ++p) {
            if (mask & (std::uint64_t{1} << mode_of(p, 1))) ++upper;
        }
        const int lower = n - upper;
        h(col, col) += 0.5 * params.epsilon * (upper - lower);

        // Reordering Eq-style quartics into J-operator products leaves a
        // -W/2 * N constant behind; add it back so the sector Hamiltonian
        // restricts exactly to the quasispin form.
        h(col, col) += 0.5 * params.w * n;

        for (int sigma = 0; sigma <= 1; ++sigma) {
            const int other = 1 - sigma;
            for (int p = 0; p < n; ++p) {
                for (int pp = 0; pp < n; ++pp) {
                    // Pair scattering: adag_{p,s} adag_{p',s} a_{p',-s} a_{p,-s}
                    const FockOp pair_ops[4] = {{mode_of(p, other), false},
                                                {mode_of(pp, other), false},
                                                {mode_of(pp, sigma), true},
                                                {mode_of(p, sigma), true}};
                    add_quartic(-0.5 * params.v, pair_ops, col);

                    // Exchange: adag_{p,s} adag_{p',-s} a_{p',s} a_{p,-s}
                    const FockOp exch_ops[4] = {{mode_of(p, other), false},
                                                {mode_of(pp, sigma), false},
                                                {mode_of(pp, other), true},
                                                {mode_of(p, sigma), true}};
                    add_quartic(0.5 * params.w, exch_ops, col);
                }
            }
        }
    }
    return DenseHermitian(std::move(h));
}

}  // namespace varspec
