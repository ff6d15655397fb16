#include "varspec/sim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace varspec {

Statevector::Statevector(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits_ < 1 || n_qubits_ > 24) {
        throw std::invalid_argument("Statevector: qubit count out of range");
    }
    amps_.assign(std::size_t{1} << n_qubits_, cplx{0.0, 0.0});
    amps_[0] = 1.0;
}

std::uint64_t Statevector::qubit_mask(int qubit) const {
    if (qubit < 0 || qubit >= n_qubits_) {
        throw std::out_of_range("Statevector: qubit index out of range");
    }
    return std::uint64_t{1} << (n_qubits_ - 1 - qubit);
}

double Statevector::norm() const {
    double s = 0.0;
    for (const auto& a : amps_) {
        s += std::norm(a);
    }
    return std::sqrt(s);
}

std::vector<double> Statevector::probabilities() const {
    std::vector<double> p(amps_.size());
    std::transform(amps_.begin(), amps_.end(), p.begin(),
                   [](const cplx& a) { return std::norm(a); });
    return p;
}

void Statevector::apply_single_qubit(int qubit, const cplx m[2][2]) {
    const std::uint64_t mask = qubit_mask(qubit);
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
        if (i & mask) continue;
        const cplx a0 = amps_[i];
        const cplx a1 = amps_[i | mask];
        amps_[i] = m[0][0] * a0 + m[0][1] * a1;
        amps_[i | mask] = m[1][0] * a0 + m[1][1] * a1;
    }
}

void Statevector::apply_cnot(int control, int target) {
    if (control == target) {
        throw std::invalid_argument("apply_cnot: control equals target");
    }
    const std::uint64_t cmask = qubit_mask(control);
    const std::uint64_t tmask = qubit_mask(target);
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
        if ((i & cmask) && !(i & tmask)) {
            std::swap(amps_[i], amps_[i | tmask]);
        }
    }
}

Circuit build_ansatz(const AnsatzParams& params) {
    return {Gate::ry(params.theta1, 1), Gate::cnot(1, 0), Gate::ry(params.theta2, 0)};
}

Statevector run(const Circuit& circuit, int n_qubits) {
    static const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Statevector state(n_qubits);
    for (const auto& g : circuit) {
        switch (g.kind) {
            case Gate::Kind::Ry: {
                const double c = std::cos(g.theta / 2.0);
                const double s = std::sin(g.theta / 2.0);
                const cplx m[2][2] = {{c, -s}, {s, c}};
                state.apply_single_qubit(g.target, m);
                break;
            }
            case Gate::Kind::Cnot:
                state.apply_cnot(g.control, g.target);
                break;
            case Gate::Kind::H: {
                const cplx m[2][2] = {{inv_sqrt2, inv_sqrt2}, {inv_sqrt2, -inv_sqrt2}};
                state.apply_single_qubit(g.target, m);
                break;
            }
            case Gate::Kind::Sdg: {
                const cplx m[2][2] = {{1.0, 0.0}, {0.0, cplx{0.0, -1.0}}};
                state.apply_single_qubit(g.target, m);
                break;
            }
            case Gate::Kind::X: {
                const cplx m[2][2] = {{0.0, 1.0}, {1.0, 0.0}};
                state.apply_single_qubit(g.target, m);
                break;
            }
        }
    }
    return state;
}

double expectation(const Statevector& state, const PauliString& p) {
    if (p.n_qubits() != state.n_qubits()) {
        throw std::invalid_argument("expectation: qubit counts differ");
    }
    const auto& amps = state.amplitudes();
    const std::uint64_t flip = p.flip_mask();
    cplx acc = 0.0;
    for (std::uint64_t c = 0; c < amps.size(); ++c) {
        acc += std::conj(amps[c ^ flip]) * p.phase_on_basis(c) * amps[c];
    }
    if (std::abs(acc.imag()) > 1e-9) {
        throw std::runtime_error("expectation: non-real value for a Pauli string");
    }
    return acc.real();
}

double expectation(const Statevector& state, const PauliSum& obs) {
    if (obs.n_qubits() != state.n_qubits()) {
        throw std::invalid_argument("expectation: qubit counts differ");
    }
    const auto& amps = state.amplitudes();
    cplx acc = 0.0;
    for (const auto& term : obs.terms()) {
        const std::uint64_t flip = term.string.flip_mask();
        cplx term_val = 0.0;
        for (std::uint64_t c = 0; c < amps.size(); ++c) {
            term_val += std::conj(amps[c ^ flip]) * term.string.phase_on_basis(c) * amps[c];
        }
        acc += term.coeff * term_val;
    }
    if (std::abs(acc.imag()) > 1e-9 * std::max(1.0, std::abs(acc.real()))) {
        throw std::runtime_error("expectation: non-real expectation (non-Hermitian sum?)");
    }
    return acc.real();
}

std::string bitstring_of(std::uint64_t index, int n_qubits) {
    std::string s(static_cast<std::size_t>(n_qubits), '0');
    for (int q = 0; q < n_qubits; ++q) {
        if (index & (std::uint64_t{1} << (n_qubits - 1 - q))) {
            s[static_cast<std::size_t>(q)] = '1';
        }
    }
    return s;
}

std::uint64_t index_of(const std::string& bitstring) {
    std::uint64_t idx = 0;
    for (char c : bitstring) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("index_of: bad bitstring '" + bitstring + "'");
        }
        idx = (idx << 1) | static_cast<std::uint64_t>(c == '1');
    }
    return idx;
}

ShotHistogram sample_histogram(const Statevector& state, std::uint64_t shots,
                               std::uint64_t seed) {
    const auto probs = state.probabilities();
    std::vector<double> cdf(probs.size());
    std::partial_sum(probs.begin(), probs.end(), cdf.begin());
    cdf.back() = 1.0;  // guard against rounding in the last bin

    std::vector<std::uint64_t> counts(probs.size(), 0);
    Rng rng(seed);
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = uniform01(rng);
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        ++counts[static_cast<std::size_t>(it - cdf.begin())];
    }

    ShotHistogram hist;
    hist.shots = shots;
    hist.n_qubits = state.n_qubits();
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] > 0) {
            hist.counts[bitstring_of(i, state.n_qubits())] = counts[i];
        }
    }
    return hist;
}

Circuit measured_circuit(const AnsatzParams& params, const PauliString& p) {
    Circuit circuit = build_ansatz(params);
    for (int q = 0; q < p.n_qubits(); ++q) {
        switch (p.letter(q)) {
            case 'X':
                circuit.push_back(Gate::h(q));
                break;
            case 'Y':
                circuit.push_back(Gate::sdg(q));
                circuit.push_back(Gate::h(q));
                break;
            default: break;
        }
    }
    return circuit;
}

double parity_mean(const ShotHistogram& hist, std::uint64_t support_mask) {
    if (hist.shots == 0) {
        throw std::invalid_argument("parity_mean: empty histogram");
    }
    std::int64_t sum = 0;
    for (const auto& [bits, count] : hist.counts) {
        const int parity = std::popcount(index_of(bits) & support_mask) & 1;
        sum += parity ? -static_cast<std::int64_t>(count) : static_cast<std::int64_t>(count);
    }
    return static_cast<double>(sum) / static_cast<double>(hist.shots);
}

double parity_mean(const std::vector<double>& probabilities, std::uint64_t support_mask) {
    double sum = 0.0;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        const int parity = std::popcount(i & support_mask) & 1;
        sum += parity ? -probabilities[i] : probabilities[i];
    }
    return sum;
}

double measure_pauli(const AnsatzParams& params, const PauliString& p, std::uint64_t shots,
                     std::uint64_t seed) {
    if (p.is_identity()) {
        throw std::invalid_argument("measure_pauli: identity string is handled analytically");
    }
    if (shots == 0) {
        throw std::invalid_argument("measure_pauli: shots must be > 0");
    }
    const Statevector state = run(measured_circuit(params, p), p.n_qubits());
    const ShotHistogram hist = sample_histogram(state, shots, seed);
    return parity_mean(hist, p.support_mask());
}

}  // namespace varspec
