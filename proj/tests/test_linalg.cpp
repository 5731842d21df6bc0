#include <gtest/gtest.h>

#include <random>

#include "densecode/linalg.hpp"
#include "densecode/states.hpp"
#include "oracles.hpp"

using namespace densecode;

namespace {

ComplexMatrix pauli_x() { return ComplexMatrix(2, {0, 1, 1, 0}); }

ComplexMatrix basis_projector(std::size_t dim, std::size_t i) {
    ComplexMatrix m(dim);
    m(i, i) = 1.0;
    return m;
}

double residual(const ComplexMatrix& a, const EigenResult& eig, std::size_t k) {
    const auto v = eig.vector(k);
    const auto av = mat_vec(a, v);
    double worst = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) worst = std::max(worst, std::abs(av[i] - eig.values[k] * v[i]));
    return worst;
}

}  // namespace

TEST(Kron, IdentityTimesIdentity) {
    EXPECT_EQ(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2)), ComplexMatrix::identity(4));
}

TEST(Kron, BasisProjectors) {
    // |0><0| (x) |1><1| = |01><01|
    EXPECT_EQ(kron(basis_projector(2, 0), basis_projector(2, 1)), basis_projector(4, 1));
}

TEST(Kron, XXFixesPhiPlus) {
    const ComplexMatrix xx = kron(pauli_x(), pauli_x());
    // By hand: XX swaps |00> <-> |11> and |01> <-> |10>.
    const ComplexMatrix expected(4, {0, 0, 0, 1,  //
                                     0, 0, 1, 0,  //
                                     0, 1, 0, 0,  //
                                     1, 0, 0, 0});
    EXPECT_EQ(xx, expected);
    const auto phi = bell(Bell::PhiPlus);
    const auto out = mat_vec(xx, phi.amplitudes());
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(out[i] - phi[i]), 0.0, 1e-15);
}

TEST(Kron, EntryLayout) {
    const ComplexMatrix a(2, {1, 2, 3, 4});
    const ComplexMatrix b(2, {5, Complex(0, 1), 7, 8});
    const ComplexMatrix k = kron(a, b);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t r = 0; r < 2; ++r)
                for (std::size_t c = 0; c < 2; ++c) EXPECT_EQ(k(i * 2 + r, j * 2 + c), a(i, j) * b(r, c));
}

TEST(Kron, RejectsOversizedComposite) {
    try {
        kron(ComplexMatrix::identity(9), ComplexMatrix::identity(8));
        FAIL() << "expected an error";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument);
        EXPECT_NE(std::string(e.what()).find("dimension too large"), std::string::npos);
    }
    EXPECT_NO_THROW(kron(ComplexMatrix::identity(8), ComplexMatrix::identity(8)));
    EXPECT_THROW(kron(ComplexMatrix::identity(3), ComplexMatrix::identity(3), 8), Error);
}

TEST(Kron, AssociativeOnIntegerInputs) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> u(-3, 3);
    auto random_int = [&](std::size_t n) {
        ComplexMatrix m(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = Complex(u(rng), u(rng));
        return m;
    };
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = random_int(2), b = random_int(3), c = random_int(2);
        EXPECT_EQ(kron(kron(a, b), c), kron(a, kron(b, c)));
    }
}

TEST(ComplexMatrix, RejectsBadEntries) {
    EXPECT_THROW(ComplexMatrix(2, {1, 2, 3}), Error);
    EXPECT_THROW(ComplexMatrix(2, {1, 2, 3, std::nan("")}), Error);
    EXPECT_THROW(ComplexMatrix(1, {Complex(0, INFINITY)}), Error);
}

TEST(PartialTrace, MaximallyEntangledMarginal) {
    const ComplexMatrix rho = bell(Bell::PhiPlus).projector();
    const ComplexMatrix half = ComplexMatrix::identity(2) * Complex(0.5);
    EXPECT_LE(max_abs_diff(partial_trace(rho, 2, 2, Keep::B), half), 1e-15);
    EXPECT_LE(max_abs_diff(partial_trace(rho, 2, 2, Keep::A), half), 1e-15);
}

TEST(PartialTrace, MaximallyMixed) {
    const ComplexMatrix rho = ComplexMatrix::identity(4) * Complex(0.25);
    EXPECT_LE(max_abs_diff(partial_trace(rho, 2, 2, Keep::A), ComplexMatrix::identity(2) * Complex(0.5)), 1e-15);
}

TEST(PartialTrace, IsotropicQutritMarginalIsFlat) {
    for (double p : {0.0, 0.3, 0.716, 1.0}) {
        const auto rho = isotropic(3, p);
        EXPECT_LE(max_abs_diff(partial_trace(rho.matrix(), 3, 3, Keep::B),
                               ComplexMatrix::identity(3) * Complex(1.0 / 3.0)),
                  1e-12)
            << "p = " << p;
    }
}

TEST(PartialTrace, ProductStateProperty) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const auto a = oracle::random_hermitian(rng, 3);
        const auto b = oracle::random_density(rng, 2);
        const ComplexMatrix traced = partial_trace(kron(a, b), 3, 2, Keep::A);
        EXPECT_LE(max_abs_diff(traced, a * trace(b)), 1e-12);
        // Trace is preserved.
        EXPECT_NEAR(std::abs(trace(partial_trace(kron(a, b), 3, 2, Keep::B)) - trace(kron(a, b))), 0.0, 1e-12);
    }
}

TEST(PartialTrace, DimensionMismatch) {
    EXPECT_THROW(partial_trace(ComplexMatrix::identity(4), 3, 2, Keep::A), Error);
    EXPECT_THROW(partial_trace(ComplexMatrix::identity(4), 0, 4, Keep::A), Error);
}

TEST(StandardSuite, TraceDaggerMatmul) {
    EXPECT_NEAR(std::abs(trace(ComplexMatrix::identity(4) * Complex(0.25)) - Complex(1.0)), 0.0, 1e-15);

    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    ComplexMatrix a(5);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) a(i, j) = Complex(g(rng), g(rng));
    EXPECT_EQ(dagger(dagger(a)), a);

    const auto h = oracle::random_hermitian(rng, 6);
    EXPECT_LE(std::abs(trace(h).imag()), 1e-12);

    EXPECT_THROW(matmul(ComplexMatrix::identity(2), ComplexMatrix::identity(3)), Error);
    EXPECT_THROW(ComplexMatrix::identity(2) + ComplexMatrix::identity(3), Error);
}

TEST(StandardSuite, PurityOfPureWerner) {
    // werner(1) is the singlet projector; rho^2 = rho.
    const ComplexMatrix rho = werner(1.0).matrix();
    EXPECT_NEAR(trace(rho * rho).real(), 1.0, 1e-15);
    EXPECT_NEAR(frobenius_norm(rho), 1.0, 1e-15);
}

TEST(EigHermitian, Identity) {
    const auto eig = eig_hermitian(ComplexMatrix::identity(2));
    ASSERT_EQ(eig.values.size(), 2u);
    EXPECT_DOUBLE_EQ(eig.values[0], 1.0);
    EXPECT_DOUBLE_EQ(eig.values[1], 1.0);
}

TEST(EigHermitian, DiagonalInputIsSortedDiagonal) {
    const std::vector<double> diag{0.3, -2.0, 5.0, 1.0, 0.0};
    const auto eig = eig_hermitian(ComplexMatrix::diagonal(diag));
    EXPECT_EQ(eig.values, (std::vector<double>{5.0, 1.0, 0.3, 0.0, -2.0}));
}

TEST(EigHermitian, WernerClosedForm) {
    for (double p : {0.0, 0.25, 0.5, 0.7476, 1.0}) {
        const auto eig = eig_hermitian(werner(p).matrix());
        const auto expected = oracle::werner_spectrum(p);
        for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(eig.values[k], expected[k], 1e-12) << "p = " << p;
    }
}

TEST(EigHermitian, QutritIsotropicClosedForm) {
    for (double p : {0.0, 0.1, 0.41667, 0.716, 0.9}) {
        const auto eig = eig_hermitian(isotropic(3, p).matrix());
        const auto expected = oracle::isotropic_spectrum(3, p);
        for (std::size_t k = 0; k < 9; ++k) EXPECT_NEAR(eig.values[k], expected[k], 1e-12) << "p = " << p;
    }
}

TEST(EigHermitian, ComplexTwoByTwo) {
    // [[2, i], [-i, 2]] has eigenvalues 3 and 1.
    const ComplexMatrix a(2, {2, Complex(0, 1), Complex(0, -1), 2});
    const auto eig = eig_hermitian(a);
    EXPECT_NEAR(eig.values[0], 3.0, 1e-14);
    EXPECT_NEAR(eig.values[1], 1.0, 1e-14);
    EXPECT_LE(residual(a, eig, 0), 1e-14);
    EXPECT_LE(residual(a, eig, 1), 1e-14);
}

TEST(EigHermitian, RandomHermitianProperties) {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<std::size_t> dim(1, 9);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = dim(rng);
        const auto a = oracle::random_hermitian(rng, n);
        const auto eig = eig_hermitian(a);

        double sum = 0.0;
        for (double v : eig.values) sum += v;
        EXPECT_NEAR(sum, trace(a).real(), 1e-9);

        for (std::size_t k = 0; k < n; ++k) EXPECT_LE(residual(a, eig, k), 1e-10) << "n = " << n;

        const ComplexMatrix gram = dagger(eig.vectors) * eig.vectors;
        EXPECT_LE(max_abs_diff(gram, ComplexMatrix::identity(n)), 1e-10);

        for (std::size_t k = 1; k < n; ++k) EXPECT_GE(eig.values[k - 1], eig.values[k]);
    }
}

TEST(EigHermitian, LargestSupportedDimension) {
    std::mt19937_64 rng(99);
    const auto a = oracle::random_hermitian(rng, 64);
    const auto eig = eig_hermitian(a);
    for (std::size_t k = 0; k < 64; ++k) EXPECT_LE(residual(a, eig, k), 1e-10);
}

TEST(EigHermitian, RejectsNonHermitian) {
    const ComplexMatrix a(2, {1, 2, 3, 4});
    try {
        eig_hermitian(a);
        FAIL() << "expected an error";
    } catch (const Error& e) {
        EXPECT_STREQ(e.what(), "not Hermitian");
    }
    // Asymmetry below the tolerance is symmetrized away.
    const ComplexMatrix nearly(2, {1, 1e-12, 0, 1});
    EXPECT_NO_THROW(eig_hermitian(nearly));
}

TEST(EigHermitian, StallsWhenSweepsRunOut) {
    std::mt19937_64 rng(5);
    const auto a = oracle::random_hermitian(rng, 6);
    try {
        eig_hermitian(a, {1e-14, 0});
        FAIL() << "expected an error";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Numerical);
        EXPECT_STREQ(e.what(), "eigensolver stalled");
    }
}

TEST(ClampSpectrum, ClampsNoiseRejectsNegatives) {
    EXPECT_EQ(clamp_spectrum({0.5, 0.5, -1e-12}), (std::vector<double>{0.5, 0.5, 0.0}));
    EXPECT_THROW(clamp_spectrum({1.1, -0.1}), Error);
}
