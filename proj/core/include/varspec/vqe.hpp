#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "varspec/noise.hpp"
#include "varspec/pauli.hpp"
#include "varspec/sim.hpp"

namespace varspec {

// How expectation values are obtained: exactly from the statevector, or from
// seeded shot sampling (optionally through a readout noise channel with
// calibration-matrix correction).
struct EstimatorConfig {
    enum class Mode { exact, shots };

    Mode mode = Mode::exact;
    std::uint64_t shots = 20000;  // per Pauli term
    std::uint64_t seed = 0;
    std::optional<ReadoutNoiseModel> noise;
    bool mitigation = false;

    void validate() const;
};

// One converged (or budget-exhausted) minimisation outcome.
struct VqeResult {
    AnsatzParams theta;
    double energy = 0.0;    // units of epsilon
    double variance = 0.0;
    bool converged = false;
    int evaluations = 0;
    std::uint64_t seed = 0;
};

// All distinct variance minima found by the multistart search, ascending in
// energy; adjacent energies differ by more than dedup_radius.
struct SpectrumReport {
    std::vector<VqeResult> levels;
    double dedup_radius = 0.0;
    bool incomplete = false;  // fewer distinct minima than the matrix dimension
};

// <H> at the ansatz point. Shot mode sums c_i * measured parity means with
// the identity coefficient added analytically; a configured noise model is
// applied to each histogram (and corrected when mitigation is on) first.
double energy_cost(const AnsatzParams& theta, const PauliSum& h, const EstimatorConfig& cfg);

// sigma^2 = <H^2> - <H>^2. The caller precomputes h2 = square(h) once; shot
// mode reuses one histogram per distinct string across both sums, and the
// plug-in estimator (squared <H> estimate) carries an O(1/shots) bias.
double variance_cost(const AnsatzParams& theta, const PauliSum& h, const PauliSum& h2,
                     const EstimatorConfig& cfg);

struct MinimizeOptions {
    double initial_edge = 0.3;    // radians
    double spread_tol = 1e-6;     // max simplex coordinate spread
    int max_evaluations = 500;
};

struct MinimizeResult {
    AnsatzParams theta;
    double value = 0.0;
    bool converged = false;
    int evaluations = 0;
};

using CostFunction = std::function<double(const AnsatzParams&)>;

// Nelder-Mead simplex over (theta1, theta2). Returns the best vertex; an
// exhausted evaluation budget flags converged = false instead of throwing.
MinimizeResult minimize(const CostFunction& cost, const AnsatzParams& start,
                        const MinimizeOptions& opts);

// Variance minimisation from one start. Shot mode draws a fresh derived seed
// for every cost evaluation (so noise is averaged, not memorised) and
// re-estimates energy and variance at the final point.
VqeResult minimize_variance(const PauliSum& h, const PauliSum& h2, const EstimatorConfig& cfg,
                            const AnsatzParams& start, const MinimizeOptions& opts);

// Multistart spectrum recovery: minimise the variance from a grid_starts x
// grid_starts grid over [0, 2pi)^2, keep minima below the acceptance
// tolerance (1e-8 exact, 0.05 shots; shot-mode candidates must also pass a
// fresh-seed re-evaluation), deduplicate energies within radius 0.1.
SpectrumReport find_spectrum(const PauliSum& h, const EstimatorConfig& cfg, int grid_starts = 8);

// Ansatz parameters that prepare each eigenvector of a parity-block 4x4
// Hamiltonian exactly (theta1 = 0 for the even-index block, pi for the odd
// one; theta2 from the 2x2 eigenvector angle). Ascending in energy.
struct EigenstatePoint {
    double energy;
    AnsatzParams theta;
};
std::vector<EigenstatePoint> reference_eigenstate_points(const DenseHermitian& h);

// Wraps an angle into the canonical reporting domain [0, 2pi).
double wrap_angle(double theta);

}  // namespace varspec
