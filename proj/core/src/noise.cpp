#include "varspec/noise.hpp"

#include <Eigen/LU>
#include <cmath>
#include <stdexcept>

#include "varspec/seed.hpp"

namespace varspec {

ReadoutNoiseModel ReadoutNoiseModel::uniform(int n_qubits, double p01, double p10) {
    ReadoutNoiseModel m;
    m.qubits.assign(static_cast<std::size_t>(n_qubits), {p01, p10});
    m.validate();
    return m;
}

bool ReadoutNoiseModel::is_identity() const {
    for (const auto& q : qubits) {
        if (q.p01 != 0.0 || q.p10 != 0.0) {
            return false;
        }
    }
    return true;
}

void ReadoutNoiseModel::validate() const {
    for (const auto& q : qubits) {
        if (q.p01 < 0.0 || q.p01 > 1.0 || q.p10 < 0.0 || q.p10 > 1.0) {
            throw std::invalid_argument("ReadoutNoiseModel: probabilities must be in [0, 1]");
        }
    }
}

ReadoutNoiseModel ReadoutNoiseModel::then(const ReadoutNoiseModel& later) const {
    if (later.n_qubits() != n_qubits()) {
        throw std::invalid_argument("ReadoutNoiseModel::then: width mismatch");
    }
    ReadoutNoiseModel out;
    out.qubits.reserve(qubits.size());
    for (std::size_t k = 0; k < qubits.size(); ++k) {
        const auto& a = qubits[k];
        const auto& b = later.qubits[k];
        // P(obs 1 | true 0) through both channels, and symmetrically.
        const double q01 = (1.0 - a.p01) * b.p01 + a.p01 * (1.0 - b.p10);
        const double q10 = (1.0 - a.p10) * b.p10 + a.p10 * (1.0 - b.p01);
        out.qubits.push_back({q01, q10});
    }
    return out;
}

CalibrationMatrix CalibrationMatrix::from_model(const ReadoutNoiseModel& model) {
    model.validate();
    const int n = model.n_qubits();
    const auto dim = std::int64_t{1} << n;
    Eigen::MatrixXd a = Eigen::MatrixXd::Ones(dim, dim);
    for (std::int64_t obs = 0; obs < dim; ++obs) {
        for (std::int64_t tru = 0; tru < dim; ++tru) {
            for (int q = 0; q < n; ++q) {
                const bool obs_bit = (obs >> (n - 1 - q)) & 1;
                const bool tru_bit = (tru >> (n - 1 - q)) & 1;
                const auto& f = model.qubits[static_cast<std::size_t>(q)];
                const double entry = tru_bit ? (obs_bit ? 1.0 - f.p10 : f.p10)
                                             : (obs_bit ? f.p01 : 1.0 - f.p01);
                a(obs, tru) *= entry;
            }
        }
    }
    return {std::move(a), n};
}

ShotHistogram corrupt(const ShotHistogram& h, const ReadoutNoiseModel& model,
                      std::uint64_t seed) {
    if (model.n_qubits() != h.n_qubits) {
        throw std::invalid_argument("corrupt: model width does not match histogram");
    }
    model.validate();
    const int n = h.n_qubits;

    ShotHistogram out;
    out.shots = h.shots;
    out.n_qubits = n;
    Rng rng(seed);
    for (const auto& [bits, count] : h.counts) {
        const std::uint64_t truth = index_of(bits);
        for (std::uint64_t s = 0; s < count; ++s) {
            std::uint64_t observed = truth;
            for (int q = 0; q < n; ++q) {
                const std::uint64_t mask = std::uint64_t{1} << (n - 1 - q);
                const auto& f = model.qubits[static_cast<std::size_t>(q)];
                const double p_flip = (truth & mask) ? f.p10 : f.p01;
                if (p_flip > 0.0 && uniform01(rng) < p_flip) {
                    observed ^= mask;
                }
            }
            ++out.counts[bitstring_of(observed, n)];
        }
    }
    return out;
}

std::vector<double> mitigate(const ShotHistogram& h, const CalibrationMatrix& a) {
    const auto dim = std::int64_t{1} << h.n_qubits;
    if (a.n_qubits != h.n_qubits || a.a.rows() != dim) {
        throw std::invalid_argument("mitigate: calibration matrix dimension mismatch");
    }
    if (h.shots == 0) {
        throw std::invalid_argument("mitigate: empty histogram");
    }

    Eigen::VectorXd freq = Eigen::VectorXd::Zero(dim);
    for (const auto& [bits, count] : h.counts) {
        freq(static_cast<std::int64_t>(index_of(bits))) =
            static_cast<double>(count) / static_cast<double>(h.shots);
    }

    Eigen::FullPivLU<Eigen::MatrixXd> lu(a.a);
    if (!lu.isInvertible()) {
        throw std::runtime_error("mitigate: calibration matrix is singular");
    }
    Eigen::VectorXd x = lu.solve(freq);

    double total = 0.0;
    for (std::int64_t i = 0; i < dim; ++i) {
        if (x(i) < 0.0) x(i) = 0.0;
        total += x(i);
    }
    if (total <= 0.0) {
        throw std::runtime_error("mitigate: correction collapsed to the zero vector");
    }
    std::vector<double> probs(static_cast<std::size_t>(dim));
    for (std::int64_t i = 0; i < dim; ++i) {
        probs[static_cast<std::size_t>(i)] = x(i) / total;
    }
    return probs;
}

}  // namespace varspec
