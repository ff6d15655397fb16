#pragma once

#include <vector>

#include "varspec/dense.hpp"

namespace varspec {

// Physics inputs of the two-level pairing model: N particles on two levels
// split by epsilon, pair-scattering strength V and exchange-scattering
// strength W, both in units of epsilon.
struct LmgParams {
    int n_particles = 3;
    double epsilon = 1.0;
    double v = 0.5;
    double w = 0.0;

    void validate() const;
};

// Collective-spin basis for N particles: j = N/2, m ascending from -j to +j.
struct QuasispinBasis {
    double j;
    std::vector<double> m_values;

    static QuasispinBasis for_particles(int n_particles);
};

// (N+1)-dimensional Hamiltonian in the ascending-m quasispin basis:
//   H = eps*Jz - (V/2)(J+^2 + J-^2) + (W/2)(J+J- + J-J+)
// with the standard ladder elements J±|j,m> = sqrt(j(j+1) - m(m±1))|j,m±1>.
// Sign convention: positive V produces negative m<->m+2 couplings, matching
// the published N=3, V/eps=0.5 matrix.
DenseHermitian build_quasispin(const LmgParams& params);

// Same Hamiltonian built in the N-particle occupation-number sector of the
// 2N-mode Fock space (dimension C(2N, N)), with fermionic sign bookkeeping.
// Serves as the independent oracle: every quasispin eigenvalue must appear
// in this spectrum. Capacity-limited to N <= 6.
DenseHermitian build_fock_sector(const LmgParams& params);

}  // namespace varspec
