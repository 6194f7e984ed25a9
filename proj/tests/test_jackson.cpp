#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "chebcert/jackson.hpp"
#include "test_util.hpp"

using namespace chebcert;
using std::numbers::pi;

TEST_CASE("frozen coefficient values") {
    CHECK(jackson_coefficient(0, 1) == doctest::Approx(1.0));
    CHECK(jackson_coefficient(1, 1) == doctest::Approx(0.5));
    CHECK(jackson_coefficient(1, 2) == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-12));
    CHECK(jackson_coefficient(2, 2) == doctest::Approx(0.25));
}

TEST_CASE("coefficient bounds for r up to 50") {
    for (int r = 1; r <= 50; ++r) {
        double prev = 1.0;
        for (int k = 1; k <= r; ++k) {
            const double l = jackson_coefficient(k, r);
            CHECK(l > 0.0);
            CHECK(l <= 1.0 + 1e-12);
            CHECK(l <= prev + 1e-12);  // decreasing in k
            const double bound = pi * pi * k * k / ((r + 2.0) * (r + 2.0));
            CHECK(1.0 - l <= bound + 1e-12);
            prev = l;
        }
    }
    CHECK_THROWS(jackson_coefficient(-1, 3));
    CHECK_THROWS(jackson_coefficient(4, 3));
    CHECK_THROWS(jackson_coefficient(0, 0));
}

TEST_CASE("kernel is nonnegative on a 101x101 grid") {
    for (int r = 1; r <= 12; ++r) {
        for (int i = 0; i <= 100; ++i)
            for (int j = 0; j <= 100; ++j) {
                const double x = -1.0 + 0.02 * i;
                const double y = -1.0 + 0.02 * j;
                CHECK(jackson_kernel_value(r, x, y) >= -1e-9);
            }
    }
}

TEST_CASE("product kernel coefficients multiply") {
    const auto K = product_kernel(3, 4);
    CHECK(K.lambda(MultiIndex{0, 0, 0}) == doctest::Approx(1.0));
    CHECK(K.lambda(MultiIndex{1, 2, 0}) ==
          doctest::Approx(jackson_coefficient(1, 4) * jackson_coefficient(2, 4)));
    CHECK(K.lambda(MultiIndex{5, 0, 0}) == doctest::Approx(0.0));
    CHECK(K.covers(MultiIndex{4, 4, 4}));
    CHECK_FALSE(K.covers(MultiIndex{5, 0, 0}));
}

TEST_CASE("smoothing shrinks coefficients and preserves the mean term") {
    std::mt19937 rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 1 + trial % 2;
        const Poly f = testutil::random_poly(rng, n, 4, Basis::Chebyshev);
        const auto K = product_kernel(n, 4);
        const Poly g = smooth(f, K);
        CHECK(g.coefficient(MultiIndex(n)) ==
              doctest::Approx(f.coefficient(MultiIndex(n))));
        for (const auto& [alpha, c] : g.terms())
            CHECK(std::abs(c) <= std::abs(f.coefficient(alpha)) + 1e-12);
    }
}

TEST_CASE("smoothing rejects terms outside the kernel support") {
    Poly f(1, Basis::Chebyshev);
    f.add_term(MultiIndex{5}, 1.0);
    CHECK_THROWS(smooth(f, product_kernel(1, 4)));
}

TEST_CASE("smoothed polynomial bounds the original from below after the gap shift") {
    // f(x) >= fhat(x) - (max_alpha (1 - lambda_alpha)) * ||f||_1 pointwise
    std::mt19937 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const Poly f = testutil::random_poly(rng, 1, 4, Basis::Chebyshev);
        const auto K = product_kernel(1, 6);
        const Poly g = smooth(f, K);
        double gap = 0.0;
        for (const auto& [alpha, c] : f.terms())
            gap += (1.0 - K.lambda(alpha)) * std::abs(c);
        for (int pt = 0; pt < 20; ++pt) {
            const auto x = testutil::random_point(rng, 1);
            CHECK(std::abs(g.evaluate(x) - f.evaluate(x)) <= gap + 1e-10);
        }
    }
}

TEST_CASE("a-priori gap bound") {
    // pi^2 d^2 / (r+2)^2 * norm, only when pi d < r + 2
    for (int d = 1; d <= 4; ++d)
        for (int r = 1; r <= 20; ++r) {
            const auto b = apriori_gap_bound(d, r, 2.0);
            if (pi * d < r + 2) {
                REQUIRE(b.has_value());
                CHECK(*b == doctest::Approx(pi * pi * d * d / ((r + 2.0) * (r + 2.0)) * 2.0));
            } else {
                CHECK_FALSE(b.has_value());
            }
        }
    const auto b11 = apriori_gap_bound(1, 4, 1.0);
    REQUIRE(b11.has_value());
    CHECK(*b11 == doctest::Approx(pi * pi / 36.0));
    const auto b12 = apriori_gap_bound(1, 2, 1.0);
    REQUIRE(b12.has_value());
    CHECK(*b12 == doctest::Approx(pi * pi / 16.0));
}

TEST_CASE("true smoothing loss never exceeds the coefficient bound, n up to 3") {
    for (std::size_t n = 1; n <= 3; ++n)
        for (int d = 1; d <= 4; ++d)
            for (int r = d; r <= 20; ++r) {
                const auto K = product_kernel(n, r);
                // worst deviation max |1 - lambda_alpha| over |alpha| <= d
                double worst = 0.0;
                for (const auto& alpha : multi_indices_up_to(n, d))
                    worst = std::max(worst, 1.0 - K.lambda(alpha));
                if (pi * d < r + 2) {
                    const double bound = pi * pi * d * d / ((r + 2.0) * (r + 2.0));
                    CHECK(worst <= bound + 1e-12);
                }
            }
}
