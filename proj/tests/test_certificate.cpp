#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "chebcert/certificate.hpp"
#include "test_util.hpp"

using namespace chebcert;

TEST_CASE("univariate closed forms") {
    for (int k = 1; k <= 10; ++k)
        for (int sign : {-1, +1}) {
            const Certificate c = decompose_univariate(k, sign);
            CHECK(c.verify() < 1e-10);
            CHECK(c.max_term_degree() == k);
            CHECK(c.respects_degree_cap());
        }
}

TEST_CASE("1 - T_3 = (1 - x) W_1^2 with W_1 = 2x + 1") {
    const Certificate c = decompose_univariate(3, -1);
    REQUIRE(c.summands().size() == 1);
    const auto& s = c.summands()[0];
    REQUIRE(s.generators.size() == 1);
    CHECK(s.generators[0].sign == -1);
    REQUIRE(s.sos.size() == 1);
    CHECK(s.sos[0].q.coefficient(MultiIndex{1}) == doctest::Approx(2.0));
    CHECK(s.sos[0].q.coefficient(MultiIndex{0}) == doctest::Approx(1.0));
}

TEST_CASE("multivariate decomposition of 1 +- T_alpha") {
    for (int sign : {-1, +1}) {
        const Certificate c = decompose_multi(MultiIndex{1, 1}, sign);
        CHECK(c.verify() < 1e-10);
        CHECK(c.max_term_degree() <= 2);
    }
    const Certificate c = decompose_multi(MultiIndex{2, 1, 3}, -1);
    CHECK(c.verify() < 1e-10);
    CHECK(c.max_term_degree() <= 6);
    CHECK(c.respects_degree_cap());
}

TEST_CASE("200 random decomposition and norm-gap instances verify below 1e-9") {
    std::mt19937 rng(20260823);
    std::uniform_int_distribution<int> nd(1, 4);
    int done = 0;
    while (done < 200) {
        const std::size_t n = nd(rng);
        std::uniform_int_distribution<int> dd(1, 8);
        if (done % 2 == 0) {
            // decompose_multi on a random nonzero alpha with |alpha| <= 8
            MultiIndex alpha(n);
            int budget = dd(rng);
            std::uniform_int_distribution<int> vd(0, static_cast<int>(n) - 1);
            while (budget > 0) {
                alpha[vd(rng)] += 1;
                --budget;
            }
            const int sign = (rng() & 1) ? 1 : -1;
            const Certificate c = decompose_multi(alpha, sign);
            CHECK(c.verify() < 1e-9);
            CHECK(c.max_term_degree() <= alpha.total_degree());
        } else {
            const int deg = 1 + dd(rng) % 6;
            const Poly p = testutil::random_poly(rng, n, deg, Basis::Monomial, 0.4);
            const Certificate c = norm_gap_certificate(p);
            CHECK(c.verify() < 1e-9);
        }
        ++done;
    }
}

TEST_CASE("norm gap certificate is sound pointwise") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + trial % 3;
        const Poly p = testutil::random_poly(rng, n, 4, Basis::Monomial, 0.5);
        const double norm = p.coeff_one_norm(Basis::Chebyshev);
        const Certificate c = norm_gap_certificate(p);
        CHECK(c.verify() < 1e-9);
        const auto x = testutil::random_point(rng, n);
        // target = ||p|| - p must be nonnegative on the cube
        CHECK(c.target().evaluate(x) >= -1e-9);
        CHECK(c.target().evaluate(x) == doctest::Approx(norm - p.evaluate(x)).epsilon(1e-8));
    }
}

TEST_CASE("corrupting a certificate leaves a visible residual") {
    Certificate c = decompose_multi(MultiIndex{2, 2}, -1);
    REQUIRE(c.verify() < 1e-10);
    auto j = c.to_json();
    // perturb the first sos weight
    j["summands"][0]["sos"][0]["w"] = j["summands"][0]["sos"][0]["w"].get<double>() + 0.1;
    const Certificate bad = Certificate::from_json(j);
    CHECK(bad.verify() >= 0.05);
}

TEST_CASE("json round trip preserves the certificate") {
    const Certificate c = decompose_multi(MultiIndex{1, 2}, +1);
    const Certificate back = Certificate::from_json(c.to_json());
    CHECK(back.verify() < 1e-10);
    CHECK(back.degree_cap() == c.degree_cap());
    CHECK(back.summands().size() == c.summands().size());
}

TEST_CASE("certificate algebra tracks targets") {
    const Certificate a = decompose_univariate(2, +1);
    const Certificate b = decompose_univariate(1, -1);
    CHECK(cert_add(a, b).verify() < 1e-10);
    CHECK(cert_product(a, b).verify() < 1e-10);
    CHECK(cert_scale(a, 3.5).verify() < 1e-10);
}

TEST_CASE("shift certificate bounds f from below by -||p - f||") {
    std::mt19937 rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        const Poly f = testutil::random_poly(rng, 2, 3);
        const Poly p = testutil::random_poly(rng, 2, 3);
        const Certificate certP = norm_gap_certificate(-p);  // target ||p|| + p
        const Certificate shifted = shift_certificate(f, p, certP);
        CHECK(shifted.verify() < 1e-8);
    }
}
