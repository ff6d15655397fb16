// Test-side oracles, independent of the implementation paths they check:
// dense Pauli matrices via explicit Kronecker products, and the quasispin
// Hamiltonian composed literally from ladder matrices.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include "varspec/lmg.hpp"
#include "varspec/pauli.hpp"

namespace oracles {

using varspec::cplx;

inline Eigen::Matrix2cd single_pauli(char letter) {
    Eigen::Matrix2cd m;
    const cplx i{0.0, 1.0};
    switch (letter) {
        case 'I': m << 1, 0, 0, 1; break;
        case 'X': m << 0, 1, 1, 0; break;
        case 'Y': m << 0, -i, i, 0; break;
        case 'Z': m << 1, 0, 0, -1; break;
        default: throw std::invalid_argument("bad letter");
    }
    return m;
}

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        for (Eigen::Index c = 0; c < a.cols(); ++c) {
            out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
        }
    }
    return out;
}

// Dense matrix of a Pauli string with qubit 0 as the leftmost factor.
inline Eigen::MatrixXcd dense_string(const std::string& letters) {
    Eigen::MatrixXcd m = single_pauli(letters[0]);
    for (std::size_t q = 1; q < letters.size(); ++q) {
        m = kron(m, single_pauli(letters[q]));
    }
    return m;
}

inline Eigen::MatrixXcd dense_sum(const varspec::PauliSum& h) {
    const Eigen::Index dim = Eigen::Index{1} << h.n_qubits();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& t : h.terms()) {
        m += t.coeff * dense_string(t.string.letters());
    }
    return m;
}

// Pauli coefficients of a Hermitian matrix by the trace formula, computed
// with the Kronecker-product matrices above.
inline cplx trace_coefficient(const std::string& letters, const Eigen::MatrixXcd& h) {
    const Eigen::MatrixXcd p = dense_string(letters);
    return (p * h).trace() / static_cast<double>(h.rows());
}

// Quasispin Hamiltonian composed literally from ladder matrices:
//   H = eps Jz - (V/2)(J+^2 + J-^2) + (W/2)(J+J- + J-J+)
// in the ascending-m basis (the pair term carries the sign convention that
// reproduces the published N=3 matrix for positive V).
inline Eigen::MatrixXd ladder_quasispin(const varspec::LmgParams& p) {
    const int dim = p.n_particles + 1;
    const double j = p.n_particles / 2.0;
    Eigen::MatrixXd jz = Eigen::MatrixXd::Zero(dim, dim);
    Eigen::MatrixXd jplus = Eigen::MatrixXd::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) {
        const double m = -j + k;
        jz(k, k) = m;
        if (k + 1 < dim) {
            jplus(k + 1, k) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
        }
    }
    const Eigen::MatrixXd jminus = jplus.transpose();
    return p.epsilon * jz - 0.5 * p.v * (jplus * jplus + jminus * jminus) +
           0.5 * p.w * (jplus * jminus + jminus * jplus);
}

// Deterministic random Hermitian matrix with entries of order 1.
inline Eigen::MatrixXcd random_hermitian(int dim, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::MatrixXcd m(dim, dim);
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
            m(r, c) = cplx{u(rng), u(rng)};
        }
    }
    return 0.5 * (m + m.adjoint().eval());
}

// Random real-coefficient Pauli sum on n qubits.
inline varspec::PauliSum random_real_sum(int n_qubits, int n_terms, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> letter(0, 3);
    const char alphabet[4] = {'I', 'X', 'Y', 'Z'};
    std::vector<varspec::PauliTerm> terms;
    for (int t = 0; t < n_terms; ++t) {
        std::string letters;
        for (int q = 0; q < n_qubits; ++q) {
            letters.push_back(alphabet[letter(rng)]);
        }
        terms.push_back({cplx{u(rng), 0.0}, varspec::PauliString(letters)});
    }
    return varspec::PauliSum(n_qubits, std::move(terms));
}

}  // namespace oracles
