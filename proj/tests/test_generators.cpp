#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "normlab/generators.hpp"
#include "normlab/linalg.hpp"

using namespace normlab;

TEST_CASE("splitmix streams are deterministic and independent") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

    // Trial substreams do not interfere: drawing more from stream 3 does
    // not change stream 4.
    Rng s4a = Rng::substream(42, 4);
    const std::uint64_t first = s4a.next_u64();
    Rng s3 = Rng::substream(42, 3);
    for (int i = 0; i < 1000; ++i) s3.next_u64();
    Rng s4b = Rng::substream(42, 4);
    CHECK(s4b.next_u64() == first);

    // And different indices give different streams.
    Rng s5 = Rng::substream(42, 5);
    CHECK(s5.next_u64() != first);
}

TEST_CASE("identical draws give bit-identical matrices") {
    Rng r1 = Rng::substream(7, 9);
    Rng r2 = Rng::substream(7, 9);
    const HermitianMatrix a = random_psd(r1, 5);
    const HermitianMatrix b = random_psd(r2, 5);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) CHECK(a(i, j) == b(i, j));
}

TEST_CASE("psd ensemble contract") {
    for (int t = 0; t < 300; ++t) {
        Rng rng = Rng::substream(201, (std::uint64_t)t);
        const int n = 1 + rng.below(8);
        const HermitianMatrix a = random_psd(rng, n);
        const Spectrum s = eig_hermitian(a);
        CHECK(s.eigenvalues.back() >= -1e-12);
    }
}

TEST_CASE("rank-deficient ensemble has the requested kernel") {
    Rng rng = Rng::substream(203, 0);
    const HermitianMatrix a = random_psd_rank_deficient(rng, 3, 1);
    const Spectrum s = eig_hermitian(a);
    CHECK(s.eigenvalues[0] > 0.0);
    CHECK(std::abs(s.eigenvalues[1]) <= 1e-10);
    CHECK(std::abs(s.eigenvalues[2]) <= 1e-10);

    for (int t = 0; t < 50; ++t) {
        Rng r = Rng::substream(203, 10 + (std::uint64_t)t);
        const int n = 2 + r.below(7);
        const int rank = 1 + r.below(n - 1);
        const Spectrum sp = eig_hermitian(random_psd_rank_deficient(r, n, rank));
        for (int i = rank; i < n; ++i)
            CHECK(std::abs(sp.eigenvalues[(size_t)i]) <= 1e-10);
        CHECK(sp.eigenvalues.back() >= -1e-12);
    }
}

TEST_CASE("prescribed spectra are reproduced") {
    Rng rng = Rng::substream(207, 0);
    const HermitianMatrix a = random_psd_with_spectrum(rng, {2.0, 2.0, 1.0});
    const Spectrum s = eig_hermitian(a);
    CHECK(s.eigenvalues[0] == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(s.eigenvalues[1] == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(s.eigenvalues[2] == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("degenerate ensemble really repeats an eigenvalue") {
    for (int t = 0; t < 50; ++t) {
        Rng rng = Rng::substream(209, (std::uint64_t)t);
        const int n = 2 + rng.below(7);
        const Spectrum s = eig_hermitian(random_psd_degenerate(rng, n));
        double min_gap = 1e300;
        for (size_t i = 1; i < s.eigenvalues.size(); ++i)
            min_gap = std::min(min_gap, s.eigenvalues[i - 1] - s.eigenvalues[i]);
        CHECK(min_gap <= 1e-9);
        CHECK(s.eigenvalues.back() >= -1e-10);
    }
}

TEST_CASE("expansive, contraction and unitary ensembles") {
    for (int t = 0; t < 200; ++t) {
        Rng rng = Rng::substream(211, (std::uint64_t)t);
        const int n = 1 + rng.below(8);
        CHECK(singular_values(random_expansive(rng, n)).back() >= 1.0 - 1e-10);
        CHECK(singular_values(random_contraction(rng, n)).front() <= 1.0 + 1e-10);
        const ComplexMatrix u = random_unitary(rng, n);
        CHECK((u.adjoint() * u - ComplexMatrix::identity(n)).frobenius_norm() <=
              1e-10);
    }
}

TEST_CASE("near-identity expansives") {
    Rng rng = Rng::substream(213, 0);
    const ComplexMatrix z0 = random_expansive_near_identity(rng, 4, 0.0);
    CHECK((z0 - ComplexMatrix::identity(4)).frobenius_norm() == 0.0);
    const ComplexMatrix z = random_expansive_near_identity(rng, 4, 0.01);
    CHECK(singular_values(z).back() >= 1.0 - 1e-10);
    CHECK((z - ComplexMatrix::identity(4)).frobenius_norm() <= 0.5);
}

TEST_CASE("contractive families sum below the identity") {
    for (int t = 0; t < 100; ++t) {
        Rng rng = Rng::substream(217, (std::uint64_t)t);
        const int n = 1 + rng.below(6);
        const int m = 1 + rng.below(4);
        const auto family = random_contractive_family(rng, n, m);
        REQUIRE(family.size() == (size_t)m);
        HermitianMatrix sum = HermitianMatrix::zero(n);
        for (const ComplexMatrix& z : family)
            sum = sum + HermitianMatrix(z.adjoint() * z);
        const Spectrum s = eig_hermitian(sum);
        CHECK(s.eigenvalues.front() <= 1.0 + 1e-10);
        // The construction makes the sum a multiple of the identity.
        CHECK(s.eigenvalues.front() - s.eigenvalues.back() <= 1e-10);
    }
}

TEST_CASE("gaussian moments are sane") {
    Rng rng(12345);
    double sum = 0.0, sumsq = 0.0;
    const int count = 20000;
    for (int i = 0; i < count / 2; ++i) {
        const auto [x, y] = rng.gaussian_pair();
        sum += x + y;
        sumsq += x * x + y * y;
    }
    CHECK(std::abs(sum / count) < 0.05);
    CHECK(std::abs(sumsq / count - 1.0) < 0.05);
}
