#include "varspec/vqe.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cassert>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include <Eigen/Eigenvalues>

#include "varspec/seed.hpp"

namespace varspec {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Seed-space offsets reserved for post-optimisation estimates so they never
// collide with the per-evaluation stream (eval k uses derive(seed, k),
// k < max_evaluations << 2^20).
constexpr std::uint64_t kFinalVarianceStream = std::uint64_t{1} << 20;
constexpr std::uint64_t kFinalEnergyStream = (std::uint64_t{1} << 20) + 1;
constexpr std::uint64_t kGuardStream = (std::uint64_t{1} << 20) + 2;

// Shot estimate of <P> for one non-identity string, including the configured
// readout channel. sub_seed feeds three independent streams: sampling,
// corruption, (calibration is analytic, no sampling).
double estimate_string(const AnsatzParams& theta, const PauliString& p,
                       const EstimatorConfig& cfg, const CalibrationMatrix* calib,
                       std::uint64_t sub_seed) {
    const Statevector state = run(measured_circuit(theta, p), p.n_qubits());
    ShotHistogram hist = sample_histogram(state, cfg.shots, derive_seed(sub_seed, 0));
    if (cfg.noise && !cfg.noise->is_identity()) {
        hist = corrupt(hist, *cfg.noise, derive_seed(sub_seed, 1));
        if (cfg.mitigation && calib != nullptr) {
            return parity_mean(mitigate(hist, *calib), p.support_mask());
        }
    }
    return parity_mean(hist, p.support_mask());
}

// Distinct non-identity strings of h (and optionally h2), in first-seen
// order, so shot batches are shared wherever the two sums overlap.
std::vector<PauliString> distinct_strings(const PauliSum& h, const PauliSum* h2) {
    std::vector<PauliString> strings;
    const auto add_from = [&strings](const PauliSum& sum) {
        for (const auto& t : sum.terms()) {
            if (t.string.is_identity()) continue;
            if (std::find(strings.begin(), strings.end(), t.string) == strings.end()) {
                strings.push_back(t.string);
            }
        }
    };
    add_from(h);
    if (h2 != nullptr) {
        add_from(*h2);
    }
    return strings;
}

double sum_with_estimates(const PauliSum& h, const std::vector<PauliString>& strings,
                          const std::vector<double>& estimates) {
    double total = h.identity_coefficient().real();
    for (const auto& t : h.terms()) {
        if (t.string.is_identity()) continue;
        const auto it = std::find(strings.begin(), strings.end(), t.string);
        total += t.coeff.real() * estimates[static_cast<std::size_t>(it - strings.begin())];
    }
    return total;
}

#ifndef NDEBUG
// Debug spot check that h2 really is h squared: compare on one probe state.
bool consistent_square(const PauliSum& h, const PauliSum& h2) {
    const auto dim = std::int64_t{1} << h.n_qubits();
    Eigen::VectorXcd probe(dim);
    for (std::int64_t i = 0; i < dim; ++i) {
        probe(i) = cplx{1.0 + static_cast<double>(i % 3), 0.5 * static_cast<double>(i % 5)};
    }
    probe.normalize();
    const Eigen::MatrixXcd hm = h.to_matrix();
    const Eigen::MatrixXcd h2m = h2.to_matrix();
    return (h2m * probe - hm * (hm * probe)).norm() < 1e-8;
}
#endif

}  // namespace

void EstimatorConfig::validate() const {
    if (mode == Mode::shots && shots == 0) {
        throw std::invalid_argument("EstimatorConfig: shots must be > 0 in shot mode");
    }
    if (noise) {
        noise->validate();
    }
}

double wrap_angle(double theta) {
    double t = std::fmod(theta, kTwoPi);
    if (t < 0.0) {
        t += kTwoPi;
    }
    return t;
}

double energy_cost(const AnsatzParams& theta, const PauliSum& h, const EstimatorConfig& cfg) {
    cfg.validate();
    if (!h.is_real()) {
        throw std::invalid_argument("energy_cost: Hamiltonian coefficients must be real");
    }
    if (cfg.mode == EstimatorConfig::Mode::exact) {
        return expectation(run(build_ansatz(theta), h.n_qubits()), h);
    }
    const auto strings = distinct_strings(h, nullptr);
    CalibrationMatrix calib;
    if (cfg.noise && cfg.mitigation) {
        calib = CalibrationMatrix::from_model(*cfg.noise);
    }
    std::vector<double> estimates;
    estimates.reserve(strings.size());
    for (std::size_t i = 0; i < strings.size(); ++i) {
        estimates.push_back(estimate_string(theta, strings[i], cfg,
                                            cfg.mitigation ? &calib : nullptr,
                                            derive_seed(cfg.seed, i)));
    }
    return sum_with_estimates(h, strings, estimates);
}

double variance_cost(const AnsatzParams& theta, const PauliSum& h, const PauliSum& h2,
                     const EstimatorConfig& cfg) {
    cfg.validate();
    assert(consistent_square(h, h2));
    if (cfg.mode == EstimatorConfig::Mode::exact) {
        const Statevector state = run(build_ansatz(theta), h.n_qubits());
        const double e = expectation(state, h);
        return expectation(state, h2) - e * e;
    }
    const auto strings = distinct_strings(h, &h2);
    CalibrationMatrix calib;
    if (cfg.noise && cfg.mitigation) {
        calib = CalibrationMatrix::from_model(*cfg.noise);
    }
    std::vector<double> estimates;
    estimates.reserve(strings.size());
    for (std::size_t i = 0; i < strings.size(); ++i) {
        estimates.push_back(estimate_string(theta, strings[i], cfg,
                                            cfg.mitigation ? &calib : nullptr,
                                            derive_seed(cfg.seed, i)));
    }
    const double e = sum_with_estimates(h, strings, estimates);
    const double e2 = sum_with_estimates(h2, strings, estimates);
    return e2 - e * e;
}

MinimizeResult minimize(const CostFunction& cost, const AnsatzParams& start,
                        const MinimizeOptions& opts) {
    struct Vertex {
        std::array<double, 2> x;
        double f;
    };

    int evaluations = 0;
    const auto eval = [&](const std::array<double, 2>& x) {
        ++evaluations;
        return cost({x[0], x[1]});
    };

    std::array<Vertex, 3> simplex;
    simplex[0].x = {start.theta1, start.theta2};
    simplex[1].x = {start.theta1 + opts.initial_edge, start.theta2};
    simplex[2].x = {start.theta1, start.theta2 + opts.initial_edge};
    for (auto& v : simplex) {
        v.f = eval(v.x);
    }

    const auto spread = [&simplex]() {
        double s = 0.0;
        for (int d = 0; d < 2; ++d) {
            double lo = simplex[0].x[static_cast<std::size_t>(d)];
            double hi = lo;
            for (const auto& v : simplex) {
                lo = std::min(lo, v.x[static_cast<std::size_t>(d)]);
                hi = std::max(hi, v.x[static_cast<std::size_t>(d)]);
            }
            s = std::max(s, hi - lo);
        }
        return s;
    };

    bool converged = false;
    while (evaluations < opts.max_evaluations) {
        std::stable_sort(simplex.begin(), simplex.end(),
                         [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
        if (spread() < opts.spread_tol) {
            converged = true;
            break;
        }

        const auto& best = simplex[0];
        const auto& second = simplex[1];
        auto& worst = simplex[2];
        const std::array<double, 2> centroid = {(best.x[0] + second.x[0]) / 2.0,
                                                (best.x[1] + second.x[1]) / 2.0};
        const auto along = [&](double t) {
            return std::array<double, 2>{centroid[0] + t * (centroid[0] - worst.x[0]),
                                         centroid[1] + t * (centroid[1] - worst.x[1])};
        };

        const auto reflected = along(1.0);
        const double f_reflected = eval(reflected);
        if (f_reflected < best.f) {
            const auto expanded = along(2.0);
            const double f_expanded = eval(expanded);
            if (f_expanded < f_reflected) {
                worst = {expanded, f_expanded};
            } else {
                worst = {reflected, f_reflected};
            }
            continue;
        }
        if (f_reflected < second.f) {
            worst = {reflected, f_reflected};
            continue;
        }

        const bool outside = f_reflected < worst.f;
        const auto contracted = along(outside ? 0.5 : -0.5);
        const double f_contracted = eval(contracted);
        if ((outside && f_contracted <= f_reflected) || (!outside && f_contracted < worst.f)) {
            worst = {contracted, f_contracted};
            continue;
        }

        // Shrink toward the best vertex.
        for (std::size_t i = 1; i < simplex.size(); ++i) {
            for (int d = 0; d < 2; ++d) {
                simplex[i].x[static_cast<std::size_t>(d)] =
                    best.x[static_cast<std::size_t>(d)] +
                    0.5 * (simplex[i].x[static_cast<std::size_t>(d)] -
                           best.x[static_cast<std::size_t>(d)]);
            }
            simplex[i].f = eval(simplex[i].x);
        }
    }

    std::stable_sort(simplex.begin(), simplex.end(),
                     [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    return {{wrap_angle(simplex[0].x[0]), wrap_angle(simplex[0].x[1])},
            simplex[0].f,
            converged,
            evaluations};
}

VqeResult minimize_variance(const PauliSum& h, const PauliSum& h2, const EstimatorConfig& cfg,
                            const AnsatzParams& start, const MinimizeOptions& opts) {
    cfg.validate();
    const bool shot_mode = cfg.mode == EstimatorConfig::Mode::shots;

    std::uint64_t eval_counter = 0;
    const CostFunction cost = [&](const AnsatzParams& theta) {
        EstimatorConfig eval_cfg = cfg;
        if (shot_mode) {
            eval_cfg.seed = derive_seed(cfg.seed, eval_counter++);
        }
        return variance_cost(theta, h, h2, eval_cfg);
    };

    const MinimizeResult opt = minimize(cost, start, opts);

    VqeResult result;
    result.theta = opt.theta;
    result.converged = opt.converged;
    result.evaluations = opt.evaluations;
    result.seed = cfg.seed;
    if (shot_mode) {
        EstimatorConfig final_cfg = cfg;
        final_cfg.seed = derive_seed(cfg.seed, kFinalVarianceStream);
        result.variance = variance_cost(opt.theta, h, h2, final_cfg);
        final_cfg.seed = derive_seed(cfg.seed, kFinalEnergyStream);
        result.energy = energy_cost(opt.theta, h, final_cfg);
    } else {
        result.variance = opt.value;
        result.energy = energy_cost(opt.theta, h, cfg);
    }
    return result;
}

SpectrumReport find_spectrum(const PauliSum& h, const EstimatorConfig& cfg, int grid_starts) {
    cfg.validate();
    if (grid_starts < 1) {
        throw std::invalid_argument("find_spectrum: grid_starts must be >= 1");
    }
    const bool shot_mode = cfg.mode == EstimatorConfig::Mode::shots;
    const double accept_tol = shot_mode ? 0.05 : 1e-8;
    const PauliSum h2 = square(h);

    MinimizeOptions opts;
    opts.spread_tol = shot_mode ? 1e-2 : 1e-6;

    const int n_starts = grid_starts * grid_starts;
    std::vector<VqeResult> runs(static_cast<std::size_t>(n_starts));

    // Starts are independent; each gets its own derived seed, and results are
    // merged by start index, so the outcome does not depend on scheduling.
    std::atomic<int> next{0};
    const auto worker = [&]() {
        for (int s = next.fetch_add(1); s < n_starts; s = next.fetch_add(1)) {
            const AnsatzParams start = {
                kTwoPi * (s / grid_starts) / grid_starts,
                kTwoPi * (s % grid_starts) / grid_starts,
            };
            EstimatorConfig start_cfg = cfg;
            start_cfg.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(s));
            runs[static_cast<std::size_t>(s)] =
                minimize_variance(h, h2, start_cfg, start, opts);
        }
    };
    const unsigned n_threads =
        std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()),
                           static_cast<unsigned>(n_starts));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n_threads; ++t) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto& t : pool) {
        t.join();
    }

    std::vector<VqeResult> accepted;
    for (const auto& r : runs) {
        if (r.variance >= accept_tol) continue;
        if (shot_mode) {
            // Guard against statistical false positives: the variance must
            // stay below threshold under a fresh seed.
            EstimatorConfig guard_cfg = cfg;
            guard_cfg.seed = derive_seed(r.seed, kGuardStream);
            if (variance_cost(r.theta, h, square(h), guard_cfg) >= accept_tol) {
                continue;
            }
        }
        accepted.push_back(r);
    }
    std::stable_sort(accepted.begin(), accepted.end(),
                     [](const VqeResult& a, const VqeResult& b) { return a.energy < b.energy; });

    SpectrumReport report;
    report.dedup_radius = 0.1;
    for (const auto& r : accepted) {
        if (!report.levels.empty() &&
            r.energy - report.levels.back().energy <= report.dedup_radius) {
            if (r.variance < report.levels.back().variance) {
                report.levels.back() = r;
            }
            continue;
        }
        report.levels.push_back(r);
    }
    const auto dim = std::size_t{1} << h.n_qubits();
    report.incomplete = report.levels.size() < dim;
    return report;
}

std::vector<EigenstatePoint> reference_eigenstate_points(const DenseHermitian& h) {
    if (h.dim() != 4) {
        throw std::invalid_argument("reference_eigenstate_points: need a 4x4 Hamiltonian");
    }
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            if ((r + c) % 2 == 1 && std::abs(h(r, c)) > 1e-10) {
                throw std::invalid_argument(
                    "reference_eigenstate_points: Hamiltonian lacks the even/odd block "
                    "structure");
            }
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.matrix());
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("reference_eigenstate_points: eigensolver failed");
    }

    std::vector<EigenstatePoint> points;
    for (int k = 0; k < 4; ++k) {
        Eigen::VectorXcd v = solver.eigenvectors().col(k);
        // Rotate the global phase so the vector is real.
        int pivot = 0;
        for (int i = 1; i < 4; ++i) {
            if (std::abs(v(i)) > std::abs(v(pivot))) pivot = i;
        }
        v *= std::abs(v(pivot)) / v(pivot);

        const double even_norm = std::hypot(std::abs(v(0)), std::abs(v(2)));
        const double odd_norm = std::hypot(std::abs(v(1)), std::abs(v(3)));
        AnsatzParams theta;
        if (even_norm > odd_norm) {
            // theta1 = 0 prepares cos(t2/2)|00> + sin(t2/2)|10>.
            theta = {0.0, wrap_angle(2.0 * std::atan2(v(2).real(), v(0).real()))};
        } else {
            // theta1 = pi prepares -sin(t2/2)|01> + cos(t2/2)|11>.
            theta = {std::numbers::pi, wrap_angle(2.0 * std::atan2(-v(1).real(), v(3).real()))};
        }
        points.push_back({solver.eigenvalues()(k), theta});
    }
    std::sort(points.begin(), points.end(),
              [](const EigenstatePoint& a, const EigenstatePoint& b) {
                  return a.energy < b.energy;
              });
    return points;
}

}  // namespace varspec
