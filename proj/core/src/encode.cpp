#include "varspec/encode.hpp"

#include <Eigen/Eigenvalues>
#include <stdexcept>

namespace varspec {

PaddingPolicy PaddingPolicy::default_for(const DenseHermitian& h) {
    return penalty(10.0 * h.max_abs_entry() * h.dim());
}

int qubits_for_dim(int dim) {
    if (dim < 1) {
        throw std::invalid_argument("qubits_for_dim: dim must be >= 1");
    }
    int n = 1;
    while ((1 << n) < dim) {
        ++n;
    }
    return n;
}

DenseHermitian pad_to_power_of_two(const DenseHermitian& h, const PaddingPolicy& policy) {
    const int dim = h.dim();
    const int padded_dim = 1 << qubits_for_dim(dim);
    if (padded_dim == dim) {
        return h;
    }
    if (policy.mode == PaddingPolicy::Mode::penalty) {
        // Gershgorin upper bound on the physical block; the penalty has to
        // clear it or the padded states mix into the low spectrum.
        double bound = 0.0;
        for (int r = 0; r < dim; ++r) {
            double row = h(r, r).real();
            for (int c = 0; c < dim; ++c) {
                if (c != r) row += std::abs(h(r, c));
            }
            bound = std::max(bound, row);
        }
        if (policy.penalty_value <= bound) {
            throw std::invalid_argument(
                "pad_to_power_of_two: penalty_value must exceed the max-eigenvalue estimate of "
                "the physical block");
        }
    }
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(padded_dim, padded_dim);
    m.topLeftCorner(dim, dim) = h.matrix();
    if (policy.mode == PaddingPolicy::Mode::penalty) {
        for (int r = dim; r < padded_dim; ++r) {
            m(r, r) = policy.penalty_value;
        }
    }
    return DenseHermitian(std::move(m));
}

PauliSum decompose(const DenseHermitian& h, const PaddingPolicy& policy) {
    const DenseHermitian padded = pad_to_power_of_two(h, policy);
    const int n = qubits_for_dim(padded.dim());
    const auto dim = std::uint64_t{1} << n;
    const auto& m = padded.matrix();

    // Iterate all 4^n strings; Tr(P h) needs only one column index per row
    // because P has a single non-zero per row: P|c> = phase(c) |c ^ flip>.
    std::vector<PauliTerm> terms;
    std::string letters(static_cast<std::size_t>(n), 'I');
    std::vector<int> digits(static_cast<std::size_t>(n), 0);
    const char alphabet[4] = {'I', 'X', 'Y', 'Z'};
    const auto total = std::uint64_t{1} << (2 * n);
    for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t c = code;
        for (int q = n - 1; q >= 0; --q) {
            digits[static_cast<std::size_t>(q)] = static_cast<int>(c & 3);
            c >>= 2;
        }
        for (int q = 0; q < n; ++q) {
            letters[static_cast<std::size_t>(q)] = alphabet[digits[static_cast<std::size_t>(q)]];
        }
        PauliString p(letters);
        const std::uint64_t flip = p.flip_mask();
        cplx trace = 0.0;
        for (std::uint64_t col = 0; col < dim; ++col) {
            trace += p.phase_on_basis(col) *
                     m(static_cast<std::int64_t>(col), static_cast<std::int64_t>(col ^ flip));
        }
        const cplx coeff = trace / static_cast<double>(dim);
        if (std::abs(coeff) >= PauliSum::kDropTol) {
            terms.push_back({coeff, std::move(p)});
        }
    }
    return PauliSum(n, std::move(terms));
}

std::vector<double> spectrum(const DenseHermitian& h) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.matrix(),
                                                           Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("spectrum: eigensolver failed to converge");
    }
    const auto& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

}  // namespace varspec
