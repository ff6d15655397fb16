#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "varspec/pauli.hpp"
#include "varspec/seed.hpp"

namespace varspec {

// 2^n complex amplitudes; qubit 0 is the most-significant bit of the basis
// index, consistent with the leftmost-tensor-factor convention in pauli.hpp.
class Statevector {
  public:
    explicit Statevector(int n_qubits);  // |0...0>

    int n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return amps_.size(); }
    const std::vector<cplx>& amplitudes() const { return amps_; }
    cplx amplitude(std::uint64_t basis_index) const { return amps_[basis_index]; }

    double norm() const;
    std::vector<double> probabilities() const;

    void apply_single_qubit(int qubit, const cplx m[2][2]);
    void apply_cnot(int control, int target);

  private:
    std::uint64_t qubit_mask(int qubit) const;

    int n_qubits_;
    std::vector<cplx> amps_;
};

struct Gate {
    enum class Kind { Ry, Cnot, H, Sdg, X };

    Kind kind;
    int target = 0;
    int control = -1;  // Cnot only
    double theta = 0.0;  // Ry only

    static Gate ry(double theta, int target) { return {Kind::Ry, target, -1, theta}; }
    static Gate cnot(int control, int target) { return {Kind::Cnot, target, control, 0.0}; }
    static Gate h(int target) { return {Kind::H, target, -1, 0.0}; }
    static Gate sdg(int target) { return {Kind::Sdg, target, -1, 0.0}; }
    static Gate x(int target) { return {Kind::X, target, -1, 0.0}; }
};

using Circuit = std::vector<Gate>;

// Variational parameters of the two-parameter ansatz.
struct AnsatzParams {
    double theta1 = 0.0;
    double theta2 = 0.0;
};

// The two-qubit ansatz: Ry(theta1) on qubit 1, CNOT with control qubit 1 and
// target qubit 0, then Ry(theta2) on qubit 0. With qubit 0 as the MSB this
// wiring reaches all four eigenvectors of the block-structured 4x4
// Hamiltonians this project targets (theta1 = 0 spans the even-index block,
// theta1 = pi the odd one).
Circuit build_ansatz(const AnsatzParams& params);

// Applies the circuit to |0...0>; Ry uses the real convention
// [[cos t/2, -sin t/2], [sin t/2, cos t/2]].
Statevector run(const Circuit& circuit, int n_qubits);

// Exact <psi|O|psi>; imaginary residue below 1e-9 is discarded, anything
// larger indicates a non-Hermitian operand and throws.
double expectation(const Statevector& state, const PauliSum& obs);
double expectation(const Statevector& state, const PauliString& p);

// Bitstring histogram from projective measurement. Keys are n-character
// strings, qubit 0 first.
struct ShotHistogram {
    std::map<std::string, std::uint64_t> counts;
    std::uint64_t shots = 0;
    int n_qubits = 0;
};

std::string bitstring_of(std::uint64_t index, int n_qubits);
std::uint64_t index_of(const std::string& bitstring);

// Samples `shots` basis outcomes from |amp|^2 by cumulative-probability
// inversion with the project RNG; deterministic for a fixed seed.
ShotHistogram sample_histogram(const Statevector& state, std::uint64_t shots, std::uint64_t seed);

// The measurement circuit for a Pauli string: the ansatz followed by basis
// rotations (H for X, Sdg then H for Y) on the string's support.
Circuit measured_circuit(const AnsatzParams& params, const PauliString& p);

// Mean of (-1)^parity over the support bits of p. The support mask must be
// taken modulo the basis rotations, i.e. from the original string.
double parity_mean(const ShotHistogram& hist, std::uint64_t support_mask);
double parity_mean(const std::vector<double>& probabilities, std::uint64_t support_mask);

// Shot-sampled estimate of <P> at the given ansatz point. p must not be the
// all-identity string (identity contributions are exact, callers add them
// analytically).
double measure_pauli(const AnsatzParams& params, const PauliString& p, std::uint64_t shots,
                     std::uint64_t seed);

}  // namespace varspec
