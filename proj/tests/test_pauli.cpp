#include <doctest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "varspec/pauli.hpp"

using namespace varspec;

namespace {

PauliSum lmg_pauli_rounded() {
    // The published 3-decimal encoding of the N=3 Hamiltonian.
    return PauliSum(2, {{-1.0, PauliString("ZI")},
                        {-0.5, PauliString("IZ")},
                        {-0.866, PauliString("XI")}});
}

}  // namespace

TEST_CASE("pauli string validation") {
    CHECK_THROWS_AS(PauliString(""), std::invalid_argument);
    CHECK_THROWS_AS(PauliString("XA"), std::invalid_argument);
    CHECK(PauliString("IXYZ").n_qubits() == 4);
    CHECK(PauliString::identity(3).is_identity());
    CHECK_FALSE(PauliString("IZ").is_identity());
}

TEST_CASE("multiply_strings worked examples") {
    const auto [ph1, r1] = multiply_strings(PauliString("II"), PauliString("ZX"));
    CHECK(ph1 == cplx{1, 0});
    CHECK(r1.letters() == "ZX");

    const auto [ph2, r2] = multiply_strings(PauliString("XI"), PauliString("YI"));
    CHECK(ph2 == cplx{0, 1});
    CHECK(r2.letters() == "ZI");

    const auto [ph3, r3] = multiply_strings(PauliString("ZX"), PauliString("XX"));
    CHECK(ph3 == cplx{0, 1});
    CHECK(r3.letters() == "YI");

    CHECK_THROWS_AS(multiply_strings(PauliString("X"), PauliString("XX")),
                    std::invalid_argument);
}

TEST_CASE("multiply_strings matches dense products exhaustively") {
    // All 16 one-qubit and 256 two-qubit pairs against Kronecker-product
    // matrices built independently of the implementation.
    const std::string alphabet = "IXYZ";
    for (int n = 1; n <= 2; ++n) {
        std::vector<std::string> strings;
        if (n == 1) {
            for (char a : alphabet) strings.push_back(std::string(1, a));
        } else {
            for (char a : alphabet)
                for (char b : alphabet) strings.push_back({a, b});
        }
        for (const auto& p : strings) {
            for (const auto& q : strings) {
                const auto [phase, r] = multiply_strings(PauliString(p), PauliString(q));
                const Eigen::MatrixXcd lhs = oracles::dense_string(p) * oracles::dense_string(q);
                const Eigen::MatrixXcd rhs = phase * oracles::dense_string(r.letters());
                CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-14);
            }
        }
    }
}

TEST_CASE("pauli strings are unitary hermitian involutions") {
    for (const std::string& s : {"X", "Y", "IZ", "XY", "ZYX"}) {
        const Eigen::MatrixXcd m = PauliString(s).to_matrix();
        const auto dim = m.rows();
        CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
        CHECK((m * m - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff() < 1e-15);
    }
}

TEST_CASE("canonicalisation merges, sorts and drops") {
    const PauliSum h(2, {{0.5, PauliString("ZI")},
                         {0.25, PauliString("IX")},
                         {0.5, PauliString("ZI")},
                         {1e-13, PauliString("YY")}});
    REQUIRE(h.size() == 2);
    CHECK(h.terms()[0].string.letters() == "IX");
    CHECK(h.terms()[1].string.letters() == "ZI");
    CHECK(h.terms()[1].coeff == cplx{1.0, 0.0});

    // Idempotence: rebuilding from the canonical terms changes nothing.
    const PauliSum again(2, h.terms());
    CHECK(again == h);
}

TEST_CASE("square of single and cancelling sums") {
    const PauliSum zi(2, {{1.0, PauliString("ZI")}});
    const PauliSum zi2 = square(zi);
    REQUIRE(zi2.size() == 1);
    CHECK(zi2.terms()[0].string.is_identity());
    CHECK(zi2.terms()[0].coeff.real() == doctest::Approx(1.0).epsilon(1e-14));

    // Cross terms XY + YX cancel exactly.
    const PauliSum xy(1, {{0.5, PauliString("X")}, {0.5, PauliString("Y")}});
    const PauliSum xy2 = square(xy);
    REQUIRE(xy2.size() == 1);
    CHECK(xy2.terms()[0].string.is_identity());
    CHECK(xy2.terms()[0].coeff.real() == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("square of the published two-qubit Hamiltonian") {
    const PauliSum h2 = square(lmg_pauli_rounded());
    REQUIRE(h2.size() == 3);
    // 1.0^2 + 0.5^2 + 0.866^2 on the identity; cross terms 2*1.0*0.5 on ZZ
    // and 2*0.5*0.866 on XZ; the ZI/XI cross terms anticommute and cancel.
    CHECK(h2.terms()[0].string.letters() == "II");
    CHECK(h2.terms()[0].coeff.real() == doctest::Approx(1.999956).epsilon(1e-12));
    CHECK(h2.terms()[1].string.letters() == "XZ");
    CHECK(h2.terms()[1].coeff.real() == doctest::Approx(0.866).epsilon(1e-12));
    CHECK(h2.terms()[2].string.letters() == "ZZ");
    CHECK(h2.terms()[2].coeff.real() == doctest::Approx(1.0).epsilon(1e-12));

    const Eigen::MatrixXcd dense = oracles::dense_sum(lmg_pauli_rounded());
    CHECK((h2.to_matrix() - dense * dense).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("square matches dense squares on random real sums") {
    std::mt19937_64 rng(20240811);
    for (int trial = 0; trial < 50; ++trial) {
        const PauliSum h = oracles::random_real_sum(2, 6, rng);
        const PauliSum h2 = square(h);
        const Eigen::MatrixXcd dense = oracles::dense_sum(h);
        CHECK((h2.to_matrix() - dense * dense).cwiseAbs().maxCoeff() < 1e-10);
        for (const auto& t : h2.terms()) {
            CHECK(std::abs(t.coeff.imag()) < 1e-12);
        }
    }
    CHECK_THROWS_AS(square(PauliSum(1, {{cplx{0.0, 1.0}, PauliString("X")}})),
                    std::invalid_argument);
}

TEST_CASE("to_matrix worked examples") {
    const PauliSum identity(2, {{1.0, PauliString("II")}});
    CHECK((identity.to_matrix() - Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff() <
          1e-15);

    const PauliSum iz(2, {{-0.5, PauliString("IZ")}});
    Eigen::VectorXcd diag = iz.to_matrix().diagonal();
    CHECK(diag(0) == cplx{-0.5, 0.0});
    CHECK(diag(1) == cplx{0.5, 0.0});
    CHECK(diag(2) == cplx{-0.5, 0.0});
    CHECK(diag(3) == cplx{0.5, 0.0});

    // The published Pauli form reproduces the published matrix.
    Eigen::MatrixXcd expected(4, 4);
    expected << -1.5, 0, -0.866, 0,
                 0, -0.5, 0, -0.866,
                 -0.866, 0, 0.5, 0,
                 0, -0.866, 0, 1.5;
    CHECK((lmg_pauli_rounded().to_matrix() - expected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("to_matrix agrees with the kronecker oracle on random sums") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        const PauliSum h = oracles::random_real_sum(3, 5, rng);
        CHECK((h.to_matrix() - oracles::dense_sum(h)).cwiseAbs().maxCoeff() < 1e-13);
    }
}

TEST_CASE("pauli sum text round trip") {
    std::ostringstream out;
    write_pauli_sum(out, lmg_pauli_rounded(), "# comment line\n");
    std::istringstream in(out.str());
    const PauliSum back = read_pauli_sum(in);
    CHECK(back == lmg_pauli_rounded());

    std::istringstream spaced("  -0.866   XI\n\n# note\n -1 ZI\n\t-0.5 IZ");
    CHECK(read_pauli_sum(spaced) == lmg_pauli_rounded());

    std::istringstream bad("0.5 XQ");
    CHECK_THROWS(read_pauli_sum(bad));
    std::istringstream empty("# nothing\n");
    CHECK_THROWS(read_pauli_sum(empty));
}
