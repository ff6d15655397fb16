#pragma once

#include <vector>

#include "varspec/dense.hpp"
#include "varspec/pauli.hpp"

namespace varspec {

// How a matrix whose dimension is not a power of two is padded up to 2^n.
// `zero` pads with zero rows/columns (useful for round-trip testing);
// `penalty` puts a large positive constant on the padded diagonal so the
// spurious states sit far above the physical spectrum.
struct PaddingPolicy {
    enum class Mode { zero, penalty };

    Mode mode = Mode::penalty;
    double penalty_value = 0.0;  // ignored in zero mode

    static PaddingPolicy zero() { return {Mode::zero, 0.0}; }
    static PaddingPolicy penalty(double value) { return {Mode::penalty, value}; }
    // Default heuristic: 10 * max|entry| * dim, comfortably above any
    // eigenvalue of the physical block.
    static PaddingPolicy default_for(const DenseHermitian& h);
};

// Number of qubits needed for a dim-dimensional Hermitian: ceil(log2 dim),
// at least 1.
int qubits_for_dim(int dim);

// Pads h to 2^n per the policy.
DenseHermitian pad_to_power_of_two(const DenseHermitian& h, const PaddingPolicy& policy);

// Reduced encoding: the unique expansion of the (padded) matrix over all 4^n
// Pauli strings with coefficients a_P = Tr(P h) / 2^n, dropping |a_P| below
// the canonical tolerance. Round-trips: to_matrix(decompose(h)) == h_padded.
PauliSum decompose(const DenseHermitian& h, const PaddingPolicy& policy);

// Ascending eigenvalues from a dense Hermitian eigensolver.
std::vector<double> spectrum(const DenseHermitian& h);

}  // namespace varspec
