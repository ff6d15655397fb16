#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "varspec/sim.hpp"

namespace varspec {

// Independent per-qubit readout bit flips: a true 0 reads 1 with probability
// p01, a true 1 reads 0 with probability p10. All-zero probabilities give the
// identity channel.
struct ReadoutNoiseModel {
    struct QubitFlips {
        double p01 = 0.0;
        double p10 = 0.0;
    };

    std::vector<QubitFlips> qubits;

    static ReadoutNoiseModel uniform(int n_qubits, double p01, double p10);
    int n_qubits() const { return static_cast<int>(qubits.size()); }
    bool is_identity() const;
    void validate() const;

    // Sequential application of `this` followed by `later`, still a
    // per-qubit flip model (per-qubit confusion matrices multiply).
    ReadoutNoiseModel then(const ReadoutNoiseModel& later) const;
};

// Column-stochastic 2^n x 2^n confusion matrix, A[observed][true] = product
// over qubits of the per-bit confusion entries.
struct CalibrationMatrix {
    Eigen::MatrixXd a;
    int n_qubits = 0;

    static CalibrationMatrix from_model(const ReadoutNoiseModel& model);
};

// Flips each recorded bit independently per the model; total shots preserved,
// deterministic for a fixed seed.
ShotHistogram corrupt(const ShotHistogram& h, const ReadoutNoiseModel& model,
                      std::uint64_t seed);

// Readout-bias correction: solves A x = empirical frequencies, clips negative
// entries to zero and renormalises. The clipping is a (small) bias source but
// keeps the output a valid probability vector. Throws on singular A.
std::vector<double> mitigate(const ShotHistogram& h, const CalibrationMatrix& a);

}  // namespace varspec
