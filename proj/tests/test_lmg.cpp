#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "varspec/encode.hpp"
#include "varspec/lmg.hpp"

using namespace varspec;

namespace {

// Every eigenvalue of `sub` must appear in `super` (multiplicity >= 1).
void check_spectral_inclusion(const std::vector<double>& sub, const std::vector<double>& super,
                              double tol) {
    for (const double e : sub) {
        const bool found = std::any_of(super.begin(), super.end(),
                                       [&](double s) { return std::abs(s - e) < tol; });
        CHECK_MESSAGE(found, "eigenvalue ", e, " missing from the larger spectrum");
    }
}

}  // namespace

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(build_quasispin({0, 1.0, 0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(build_quasispin({3, 0.0, 0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(build_fock_sector({7, 1.0, 0.0, 0.0}), std::length_error);
}

TEST_CASE("quasispin basis runs from -j to +j") {
    const auto basis = QuasispinBasis::for_particles(3);
    CHECK(basis.j == 1.5);
    REQUIRE(basis.m_values.size() == 4);
    CHECK(basis.m_values.front() == -1.5);
    CHECK(basis.m_values.back() == 1.5);
}

TEST_CASE("N=3 quasispin matrix matches the published form") {
    const DenseHermitian h = build_quasispin({3, 1.0, 0.5, 0.0});
    REQUIRE(h.dim() == 4);
    Eigen::MatrixXcd expected(4, 4);
    const double g = std::sqrt(3.0) / 2.0;
    expected << -1.5, 0, -g, 0,
                 0, -0.5, 0, -g,
                 -g, 0, 0.5, 0,
                 0, -g, 0, 1.5;
    CHECK((h.matrix() - expected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("N=1 is a bare level splitting") {
    const DenseHermitian h = build_quasispin({1, 1.0, 0.0, 0.0});
    REQUIRE(h.dim() == 2);
    CHECK(h(0, 0) == cplx{-0.5, 0.0});
    CHECK(h(1, 1) == cplx{0.5, 0.0});
    CHECK(std::abs(h(0, 1)) < 1e-15);
}

TEST_CASE("quasispin builder matches the ladder-matrix composition") {
    // Closed-form matrix elements vs literal operator products of the ladder
    // matrices, including the frozen N=2, V=0.3, W=0.1 case.
    const LmgParams frozen{2, 1.0, 0.3, 0.1};
    const DenseHermitian h = build_quasispin(frozen);
    Eigen::MatrixXd expected(3, 3);
    expected << -0.9, 0.0, -0.3,
                 0.0, 0.2, 0.0,
                -0.3, 0.0, 1.1;
    CHECK((h.matrix() - expected.cast<cplx>()).cwiseAbs().maxCoeff() < 1e-12);

    std::mt19937_64 rng(424242);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int n = 1; n <= 5; ++n) {
        for (int trial = 0; trial < 5; ++trial) {
            const LmgParams p{n, 1.0, u(rng), u(rng)};
            const Eigen::MatrixXd oracle = oracles::ladder_quasispin(p);
            CHECK((build_quasispin(p).matrix() - oracle.cast<cplx>()).cwiseAbs().maxCoeff() <
                  1e-12);
        }
    }
}

TEST_CASE("quasispin output is exactly symmetric and parity-blocked") {
    std::mt19937_64 rng(5150);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        const LmgParams p{4, 1.0, u(rng), u(rng)};
        const auto& m = build_quasispin(p).matrix();
        CHECK((m - m.transpose().eval()).cwiseAbs().maxCoeff() == 0.0);
        CHECK(m.imag().cwiseAbs().maxCoeff() == 0.0);
        // States of opposite (j+m) parity never couple.
        for (int r = 0; r < m.rows(); ++r) {
            for (int c = 0; c < m.cols(); ++c) {
                if ((r + c) % 2 == 1) {
                    CHECK(std::abs(m(r, c)) == 0.0);
                }
            }
        }
    }
}

TEST_CASE("odd-N spectrum pairs up at W=0") {
    const auto eigs = spectrum(build_quasispin({3, 1.0, 0.5, 0.0}));
    REQUIRE(eigs.size() == 4);
    CHECK(std::abs(eigs[0] + eigs[3]) < 1e-12);
    CHECK(std::abs(eigs[1] + eigs[2]) < 1e-12);

    const auto eigs5 = spectrum(build_quasispin({5, 1.0, -0.35, 0.0}));
    for (std::size_t i = 0; i < eigs5.size(); ++i) {
        CHECK(std::abs(eigs5[i] + eigs5[eigs5.size() - 1 - i]) < 1e-12);
    }
}

TEST_CASE("fock sector worked examples") {
    // One particle on two levels: eigenvalues -1/2 and +1/2.
    const DenseHermitian h1 = build_fock_sector({1, 1.0, 0.0, 0.0});
    REQUIRE(h1.dim() == 2);
    const auto e1 = spectrum(h1);
    CHECK(std::abs(e1[0] + 0.5) < 1e-12);
    CHECK(std::abs(e1[1] - 0.5) < 1e-12);

    // N=3: the 20-dimensional sector contains all four published levels.
    const DenseHermitian h3 = build_fock_sector({3, 1.0, 0.5, 0.0});
    REQUIRE(h3.dim() == 20);
    check_spectral_inclusion(spectrum(build_quasispin({3, 1.0, 0.5, 0.0})), spectrum(h3), 1e-9);

    // N=2 with both interactions on: 6-dimensional sector.
    const DenseHermitian h2 = build_fock_sector({2, 1.0, 0.3, 0.1});
    REQUIRE(h2.dim() == 6);
    check_spectral_inclusion(spectrum(build_quasispin({2, 1.0, 0.3, 0.1})), spectrum(h2), 1e-9);
}

TEST_CASE("quasispin spectra embed in the fock sector for random couplings") {
    std::mt19937_64 rng(8675309);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int n = 1; n <= 3; ++n) {
        for (int trial = 0; trial < 10; ++trial) {
            const LmgParams p{n, 1.0, u(rng), u(rng)};
            check_spectral_inclusion(spectrum(build_quasispin(p)),
                                     spectrum(build_fock_sector(p)), 1e-9);
        }
    }
}
