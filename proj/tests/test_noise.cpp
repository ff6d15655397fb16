#include <doctest.h>

#include <cmath>

#include "varspec/encode.hpp"
#include "varspec/lmg.hpp"
#include "varspec/noise.hpp"
#include "varspec/vqe.hpp"

using namespace varspec;

namespace {

ShotHistogram all_zeros(std::uint64_t shots) {
    ShotHistogram h;
    h.shots = shots;
    h.n_qubits = 2;
    h.counts["00"] = shots;
    return h;
}

}  // namespace

TEST_CASE("model validation and identity channel") {
    CHECK_THROWS_AS(ReadoutNoiseModel::uniform(2, 1.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(ReadoutNoiseModel::uniform(2, -0.1, 0.0), std::invalid_argument);
    CHECK(ReadoutNoiseModel::uniform(2, 0.0, 0.0).is_identity());
    CHECK_FALSE(ReadoutNoiseModel::uniform(2, 0.01, 0.0).is_identity());

    const ShotHistogram h = all_zeros(100);
    const ShotHistogram out = corrupt(h, ReadoutNoiseModel::uniform(2, 0.0, 0.0), 1);
    CHECK(out.counts == h.counts);
}

TEST_CASE("corrupt flips bits at the configured binomial rates") {
    const std::uint64_t shots = 20000;
    const ShotHistogram out = corrupt(all_zeros(shots), ReadoutNoiseModel::uniform(2, 0.02, 0.0),
                                      20240601);
    CHECK(out.shots == shots);

    const auto count = [&](const char* bits) {
        const auto it = out.counts.find(bits);
        return it == out.counts.end() ? 0.0 : static_cast<double>(it->second);
    };
    const double n = static_cast<double>(shots);
    const auto sigma = [&](double p) { return std::sqrt(n * p * (1.0 - p)); };
    // Expected counts 0.98^2, 0.98*0.02 (twice), 0.02^2 of 20000; 5-sigma
    // binomial bands.
    CHECK(std::abs(count("00") - n * 0.9604) < 5.0 * sigma(0.9604));
    CHECK(std::abs(count("01") - n * 0.0196) < 5.0 * sigma(0.0196));
    CHECK(std::abs(count("10") - n * 0.0196) < 5.0 * sigma(0.0196));
    CHECK(std::abs(count("11") - n * 0.0004) < 5.0 * sigma(0.0004));
}

TEST_CASE("deterministic flip with probability one") {
    ShotHistogram h;
    h.shots = 1;
    h.n_qubits = 2;
    h.counts["10"] = 1;
    ReadoutNoiseModel model;
    model.qubits = {{0.0, 1.0}, {0.0, 0.0}};
    const ShotHistogram out = corrupt(h, model, 99);
    CHECK(out.counts.at("00") == 1);

    ShotHistogram wrong_width = h;
    wrong_width.n_qubits = 3;
    CHECK_THROWS_AS(corrupt(wrong_width, model, 1), std::invalid_argument);
}

TEST_CASE("calibration matrix is column stochastic") {
    const auto a = CalibrationMatrix::from_model(ReadoutNoiseModel::uniform(2, 0.03, 0.07));
    REQUIRE(a.a.rows() == 4);
    for (int c = 0; c < 4; ++c) {
        CHECK(std::abs(a.a.col(c).sum() - 1.0) < 1e-12);
        for (int r = 0; r < 4; ++r) {
            CHECK(a.a(r, c) >= 0.0);
            CHECK(a.a(r, c) <= 1.0);
        }
    }
    // Spot value: P(observe 00 | true 00) = (1-p01)^2.
    CHECK(a.a(0, 0) == doctest::Approx(0.97 * 0.97).epsilon(1e-12));
}

TEST_CASE("sequential channels multiply") {
    // Exhaustive over a small probability grid on 1 and 2 qubits.
    const double grid[] = {0.0, 0.05, 0.2};
    for (const double pa : grid) {
        for (const double pb : grid) {
            for (const double pc : grid) {
                for (const double pd : grid) {
                    for (int n = 1; n <= 2; ++n) {
                        const auto m1 = ReadoutNoiseModel::uniform(n, pa, pb);
                        const auto m2 = ReadoutNoiseModel::uniform(n, pc, pd);
                        const auto composed = CalibrationMatrix::from_model(m1.then(m2));
                        const Eigen::MatrixXd product = CalibrationMatrix::from_model(m2).a *
                                                        CalibrationMatrix::from_model(m1).a;
                        CHECK((composed.a - product).cwiseAbs().maxCoeff() < 1e-12);
                    }
                }
            }
        }
    }
}

TEST_CASE("mitigate inverts an exactly known channel") {
    const auto identity = CalibrationMatrix::from_model(ReadoutNoiseModel::uniform(2, 0.0, 0.0));
    ShotHistogram h;
    h.shots = 8;
    h.n_qubits = 2;
    h.counts = {{"00", 4}, {"01", 2}, {"10", 2}};
    const auto same = mitigate(h, identity);
    CHECK(same[0] == doctest::Approx(0.5));
    CHECK(same[1] == doctest::Approx(0.25));
    CHECK(same[2] == doctest::Approx(0.25));
    CHECK(same[3] == doctest::Approx(0.0));

    // Apply A to the point distribution (1,0,0,0) by hand, then recover it.
    const auto a = CalibrationMatrix::from_model(ReadoutNoiseModel::uniform(2, 0.04, 0.02));
    const std::uint64_t shots = 1000000;
    ShotHistogram forward;
    forward.shots = shots;
    forward.n_qubits = 2;
    // Use exact frequencies scaled to integer counts: A has rational columns.
    for (int obs = 0; obs < 4; ++obs) {
        const double f = a.a(obs, 0);
        if (f > 0) {
            forward.counts[bitstring_of(static_cast<std::uint64_t>(obs), 2)] =
                static_cast<std::uint64_t>(std::llround(f * static_cast<double>(shots)));
        }
    }
    const auto recovered = mitigate(forward, a);
    CHECK(std::abs(recovered[0] - 1.0) < 1e-10);
    for (int i = 1; i < 4; ++i) {
        CHECK(std::abs(recovered[i]) < 1e-10);
    }
}

TEST_CASE("mitigate rejects a singular calibration") {
    const auto singular = CalibrationMatrix::from_model(ReadoutNoiseModel::uniform(2, 0.5, 0.5));
    CHECK_THROWS(mitigate(all_zeros(10), singular));
}

TEST_CASE("mitigated output is a probability vector") {
    const auto model = ReadoutNoiseModel::uniform(2, 0.02, 0.02);
    const auto a = CalibrationMatrix::from_model(model);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const ShotHistogram noisy = corrupt(all_zeros(5000), model, seed);
        const auto probs = mitigate(noisy, a);
        double total = 0.0;
        for (const double p : probs) {
            CHECK(p >= 0.0);
            total += p;
        }
        CHECK(std::abs(total - 1.0) < 1e-12);
    }
}

TEST_CASE("mitigation recovers the true distribution within shot noise") {
    // corrupt(|00>, p01 = 0.02), 20000 shots, then mitigate: P(00) comes back
    // above 0.999 within 3/sqrt(shots), across 20 seeds.
    const auto model = ReadoutNoiseModel::uniform(2, 0.02, 0.0);
    const auto a = CalibrationMatrix::from_model(model);
    const double tol = 3.0 / std::sqrt(20000.0);
    for (std::uint64_t seed = 100; seed < 120; ++seed) {
        const ShotHistogram noisy = corrupt(all_zeros(20000), model, seed);
        const auto probs = mitigate(noisy, a);
        CHECK(probs[0] >= 0.999 - tol);
    }
}

TEST_CASE("mitigation improves energy estimates at every tested point") {
    // 50 paired seeds at p01 = p10 = 0.02: mean |<H> - exact| must shrink at
    // each of the four eigenstate points and at the origin.
    const PauliSum h = decompose(build_quasispin({3, 1.0, 0.5, 0.0}), PaddingPolicy::zero());
    std::vector<AnsatzParams> points{{0.0, 0.0}};
    for (const auto& p : reference_eigenstate_points(h.to_hermitian())) {
        points.push_back(p.theta);
    }

    EstimatorConfig base;
    base.mode = EstimatorConfig::Mode::shots;
    base.shots = 4000;
    base.noise = ReadoutNoiseModel::uniform(2, 0.02, 0.02);

    EstimatorConfig exact_cfg;  // reference
    for (const auto& theta : points) {
        const double exact = energy_cost(theta, h, exact_cfg);
        double dev_raw = 0.0, dev_mit = 0.0;
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            EstimatorConfig cfg = base;
            cfg.seed = seed * 1337 + 11;
            cfg.mitigation = false;
            dev_raw += std::abs(energy_cost(theta, h, cfg) - exact);
            cfg.mitigation = true;
            dev_mit += std::abs(energy_cost(theta, h, cfg) - exact);
        }
        CHECK(dev_mit < dev_raw);
    }
}
