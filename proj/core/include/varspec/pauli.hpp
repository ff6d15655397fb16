#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "varspec/dense.hpp"

namespace varspec {

// Tensor product of single-qubit Pauli operators, one letter per qubit.
// Convention used everywhere in this project: qubit 0 is the LEFTMOST tensor
// factor, i.e. the most-significant bit of the basis index. So "ZI" means
// Z (x) I and acts with Z on the high bit of a 2-qubit basis state.
class PauliString {
  public:
    // letters must be non-empty and drawn from {I, X, Y, Z}.
    explicit PauliString(std::string letters);

    static PauliString identity(int n_qubits);

    int n_qubits() const { return static_cast<int>(letters_.size()); }
    char letter(int qubit) const { return letters_[static_cast<std::size_t>(qubit)]; }
    const std::string& letters() const { return letters_; }

    bool is_identity() const;

    // Basis-index bitmask of the qubits carrying a non-identity letter
    // (qubit q maps to basis bit n-1-q). Used for measurement parities.
    std::uint64_t support_mask() const;

    // P|c> = phase(c) |c ^ flip>: bitmask of basis bits flipped by X/Y letters.
    std::uint64_t flip_mask() const;
    // The phase P contributes when acting on basis state |c>.
    cplx phase_on_basis(std::uint64_t c) const;

    Eigen::MatrixXcd to_matrix() const;

    friend bool operator==(const PauliString&, const PauliString&) = default;
    friend auto operator<=>(const PauliString& a, const PauliString& b) {
        return a.letters_ <=> b.letters_;
    }

  private:
    std::string letters_;
};

// Exact product of two equal-length strings. The phase is one of
// {1, i, -1, -i}, tracked as a power of i so no floating-point phase
// arithmetic is involved: to_matrix(p) * to_matrix(q) == phase * to_matrix(r).
struct StringProduct {
    cplx phase;
    PauliString string;
};
StringProduct multiply_strings(const PauliString& p, const PauliString& q);

struct PauliTerm {
    cplx coeff;
    PauliString string;
};

// Real- or complex-weighted sum of Pauli strings on a fixed qubit count,
// kept in canonical form: terms sorted by string, duplicates merged, and
// coefficients below the drop tolerance removed.
class PauliSum {
  public:
    static constexpr double kDropTol = 1e-12;

    PauliSum(int n_qubits, std::vector<PauliTerm> terms);

    int n_qubits() const { return n_qubits_; }
    const std::vector<PauliTerm>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    // Coefficient of the all-identity string (0 if absent).
    cplx identity_coefficient() const;
    // True when every coefficient has |imag| < 1e-12 (Hamiltonian-valued sums).
    bool is_real(double tol = 1e-12) const;

    Eigen::MatrixXcd to_matrix() const;
    DenseHermitian to_hermitian() const;

    friend bool operator==(const PauliSum&, const PauliSum&) = default;

  private:
    int n_qubits_;
    std::vector<PauliTerm> terms_;
};

// H^2 as a canonical Pauli sum; requires real coefficients. Cross terms of
// anticommuting strings cancel pairwise, so the result is real again.
PauliSum square(const PauliSum& h);

// Text format: one term per line, `<signed decimal coeff> <letters>`, e.g.
// `-0.866 XI`. Arbitrary whitespace; '#' lines and blank lines are skipped.
PauliSum read_pauli_sum(std::istream& in);
PauliSum read_pauli_sum_file(const std::string& path);
void write_pauli_sum(std::ostream& out, const PauliSum& h, const std::string& header = "");
void write_pauli_sum_file(const std::string& path, const PauliSum& h,
                          const std::string& header = "");

}  // namespace varspec
