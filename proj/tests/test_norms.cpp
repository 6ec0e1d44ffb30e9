#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "normlab/generators.hpp"
#include "normlab/norms.hpp"

using namespace normlab;

namespace {

ComplexMatrix ones2() {
    ComplexMatrix m(2);
    m(0, 0) = m(0, 1) = m(1, 0) = m(1, 1) = 1.0;
    return m;
}

}  // namespace

TEST_CASE("norm examples") {
    const ComplexMatrix d = ComplexMatrix::diagonal({3.0, 1.0});
    CHECK(norm(d, NormSpec::ky_fan(1)) == doctest::Approx(3.0));
    CHECK(norm(d, NormSpec::ky_fan(2)) == doctest::Approx(4.0));

    // Singular values of the all-ones matrix are {2, 0}.
    CHECK(norm(ones2(), NormSpec::schatten(2.0)) ==
          doctest::Approx(2.0).epsilon(1e-12));

    Rng rng = Rng::substream(101, 0);
    const ComplexMatrix u = random_unitary(rng, 3);
    CHECK(norm(u, NormSpec::schatten(1.0)) == doctest::Approx(3.0).epsilon(1e-12));

    CHECK_THROWS_AS(norm(d, NormSpec::ky_fan(3)), PreconditionError);
}

TEST_CASE("norm aliases agree") {
    for (int t = 0; t < 40; ++t) {
        Rng rng = Rng::substream(103, (std::uint64_t)t);
        const int n = 1 + rng.below(8);
        const ComplexMatrix m = random_general(rng, n);
        const double scale = std::max(1.0, norm(m, NormSpec::trace()));
        CHECK(std::abs(norm(m, NormSpec::op()) - norm(m, NormSpec::ky_fan(1))) <=
              1e-10 * scale);
        CHECK(std::abs(norm(m, NormSpec::op()) -
                       norm(m, NormSpec::schatten(
                                   std::numeric_limits<double>::infinity()))) <=
              1e-10 * scale);
        CHECK(std::abs(norm(m, NormSpec::trace()) - norm(m, NormSpec::ky_fan(n))) <=
              1e-10 * scale);
        CHECK(std::abs(norm(m, NormSpec::trace()) -
                       norm(m, NormSpec::schatten(1.0))) <= 1e-10 * scale);
        CHECK(std::abs(norm(m, NormSpec::frobenius()) -
                       norm(m, NormSpec::schatten(2.0))) <= 1e-10 * scale);
        CHECK(std::abs(norm(m, NormSpec::frobenius()) - m.frobenius_norm()) <=
              1e-10 * scale);
    }
}

TEST_CASE("norms are unitarily invariant, homogeneous and subadditive") {
    const std::vector<NormSpec> specs = {
        NormSpec::op(),          NormSpec::trace(),       NormSpec::frobenius(),
        NormSpec::ky_fan(2),     NormSpec::schatten(1.5), NormSpec::schatten(3.0),
    };
    for (int t = 0; t < 25; ++t) {
        Rng rng = Rng::substream(107, (std::uint64_t)t);
        const int n = 2 + rng.below(5);
        const ComplexMatrix m = random_general(rng, n);
        const ComplexMatrix m2 = random_general(rng, n);
        const ComplexMatrix u = random_unitary(rng, n);
        const ComplexMatrix v = random_unitary(rng, n);
        const double alpha = rng.uniform(-3.0, 3.0);
        for (const NormSpec& spec : specs) {
            const double base = norm(m, spec);
            const double scale = std::max(1.0, base);
            CHECK(std::abs(norm(u * m * v, spec) - base) <= 1e-9 * scale);
            CHECK(std::abs(norm(m * cxd(alpha, 0.0), spec) -
                           std::abs(alpha) * base) <= 1e-9 * scale);
            CHECK(norm(m + m2, spec) <=
                  base + norm(m2, spec) + 1e-9 * std::max(1.0, base));
        }
    }
}

TEST_CASE("ky fan norms grow in k, schatten norms shrink in p") {
    for (int t = 0; t < 20; ++t) {
        Rng rng = Rng::substream(109, (std::uint64_t)t);
        const int n = 2 + rng.below(6);
        const ComplexMatrix m = random_general(rng, n);
        for (int k = 1; k < n; ++k)
            CHECK(norm(m, NormSpec::ky_fan(k)) <=
                  norm(m, NormSpec::ky_fan(k + 1)) + 1e-12);
        const double ps[] = {1.0, 1.5, 2.0, 3.0,
                             std::numeric_limits<double>::infinity()};
        for (size_t i = 0; i + 1 < 5; ++i)
            CHECK(norm(m, NormSpec::schatten(ps[i])) >=
                  norm(m, NormSpec::schatten(ps[i + 1])) - 1e-10);
    }
}

TEST_CASE("ky_fan_dominance examples") {
    SUBCASE("diag(1,1) dominated by diag(2,0) despite no Loewner order") {
        const DominanceResult r = ky_fan_dominance(
            ComplexMatrix::diagonal({1.0, 1.0}), ComplexMatrix::diagonal({2.0, 0.0}));
        CHECK(r.holds);
        CHECK(r.margins[0] == doctest::Approx(1.0));
        CHECK(r.margins[1] == doctest::Approx(0.0));
        // Loewner comparison fails in both directions.
        const HermitianMatrix x = HermitianMatrix::diagonal({1.0, 1.0});
        const HermitianMatrix y = HermitianMatrix::diagonal({2.0, 0.0});
        CHECK_FALSE(loewner_leq(x, y).holds);
        CHECK_FALSE(loewner_leq(y, x).holds);
    }
    SUBCASE("fails at k=1 the other way round") {
        const DominanceResult r = ky_fan_dominance(
            ComplexMatrix::diagonal({2.0, 0.0}), ComplexMatrix::diagonal({1.0, 1.0}));
        CHECK_FALSE(r.holds);
        CHECK(r.binding_k == 1);
        CHECK(r.margins[0] == doctest::Approx(-1.0));
        CHECK(r.margins[1] == doctest::Approx(0.0));
    }
    SUBCASE("a matrix dominates itself with zero margins") {
        Rng rng = Rng::substream(113, 0);
        const ComplexMatrix m = random_general(rng, 4);
        const DominanceResult r = ky_fan_dominance(m, m);
        CHECK(r.holds);
        for (double margin : r.margins)
            CHECK(margin == doctest::Approx(0.0).epsilon(1e-14));
    }
}

TEST_CASE("weak majorization") {
    CHECK(weak_majorization({1.0, 1.0}, {2.0, 0.0}));
    CHECK_FALSE(weak_majorization({2.0, 0.0}, {1.0, 1.0}));
    CHECK(weak_majorization({1.0, 2.0, 3.0}, {3.0, 2.0, 1.0}));
    CHECK_THROWS_AS(weak_majorization({1.0}, {1.0, 2.0}), DimensionError);
}

TEST_CASE("monotone convex transfer") {
    SUBCASE("hand example with g = t^2") {
        const HermitianMatrix x = HermitianMatrix::diagonal({1.0, 1.0});
        const HermitianMatrix y = HermitianMatrix::diagonal({2.0, 0.0});
        const DominanceResult r =
            monotone_convex_transfer_check(x, y, ScalarFunction::power(2.0));
        CHECK(r.holds);
        CHECK(r.margins[0] == doctest::Approx(3.0));
        CHECK(r.margins[1] == doctest::Approx(2.0));
    }
    SUBCASE("identity-like affine reduces to the precondition") {
        const HermitianMatrix x = HermitianMatrix::diagonal({1.0, 1.0});
        const HermitianMatrix y = HermitianMatrix::diagonal({2.0, 0.0});
        CHECK(monotone_convex_transfer_check(x, y, ScalarFunction::affine(1.0, 0.0))
                  .holds);
    }
    SUBCASE("equal inputs transfer trivially") {
        Rng rng = Rng::substream(127, 1);
        const HermitianMatrix x = random_psd(rng, 3);
        CHECK(monotone_convex_transfer_check(x, x, ScalarFunction::power(3.0))
                  .holds);
    }
    SUBCASE("precondition violations throw") {
        const HermitianMatrix x = HermitianMatrix::diagonal({2.0, 0.0});
        const HermitianMatrix y = HermitianMatrix::diagonal({1.0, 1.0});
        CHECK_THROWS_AS(
            monotone_convex_transfer_check(x, y, ScalarFunction::power(2.0)),
            PreconditionError);
        CHECK_THROWS_AS(
            monotone_convex_transfer_check(y, y, ScalarFunction::sqrt()),
            PreconditionError);  // concave g rejected
    }
}
