// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "chebcert/certificate.hpp"
#include "chebcert/jackson.hpp"
#include "chebcert/kernel_lift.hpp"
#include "chebcert/sos.hpp"
#include "test_util.hpp"

using namespace chebcert;
using std::numbers::pi;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("criterion %d: %s — %s\n", criterion, pass ? "PASS" : "FAIL",
                detail.c_str());
    if (!pass) ++failures;
    std::fflush(stdout);
}

// Reference tables (4-decimal published values), row r, columns d = 1..r.
const std::vector<std::vector<double>> kTableN1 = {
    {0.5000},
    {0.2929, 0.5556},
    {0.1910, 0.5001, 0.6001},
    {0.1340, 0.3320, 0.5284, 0.6214},
    {0.0991, 0.2929, 0.5001, 0.5556, 0.6405},
    {0.0762, 0.2159, 0.3585, 0.5177, 0.5783, 0.6527},
    {0.0604, 0.1910, 0.3140, 0.5001, 0.5374, 0.6001, 0.6641},
    {0.0490, 0.1502, 0.2929, 0.3723, 0.5123, 0.5556, 0.6108, 0.6723},
};
const std::vector<std::vector<double>> kTableN2 = {
    {0.7500},
    {0.5001, 0.7648},
    {0.3455, 0.7501, 0.8278},
    {0.2501, 0.5295, 0.7575, 0.8338},
};

// max_{0 < |alpha| <= d} (1 - prod_i lambda_{alpha_i}) for the product of
// univariate degree-rp kernels; 1 when some alpha_i exceeds rp.
double product_jackson_value(std::size_t n, int d, int rp) {
    const auto K = product_kernel(n, rp);
    double worst = 0.0;
    for (const auto& alpha : multi_indices_up_to(n, d)) {
        if (alpha.is_zero()) continue;
        worst = std::max(worst, 1.0 - K.lambda(alpha));
    }
    return worst;
}

void criterion_1_and_2() {
    char buf[256];
    bool pass1 = true;
    std::string worst1;
    double worst_err = 0.0;

    std::map<std::tuple<int, int, int>, double> theta;  // (n, r, d) -> bound

    auto run_cells = [&](int n, const std::vector<std::vector<double>>& table, double tol) {
        for (std::size_t ri = 0; ri < table.size(); ++ri)
            for (std::size_t di = 0; di < table[ri].size(); ++di) {
                const int r = static_cast<int>(ri) + 1, d = static_cast<int>(di) + 1;
                const double got = theta_upper_bound(n, d, r).bound;
                theta[{n, r, d}] = got;
                const double err = std::abs(got - table[ri][di]);
                if (err > tol) pass1 = false;
                if (err > worst_err) {
                    worst_err = err;
                    std::snprintf(buf, sizeof buf, "(n=%d,r=%d,d=%d) got %.4f want %.4f",
                                  n, r, d, got, table[ri][di]);
                    worst1 = buf;
                }
            }
    };
    run_cells(1, kTableN1, 1e-3);
    run_cells(2, kTableN2, 2e-3);
    const double t31 = theta_upper_bound(3, 1, 2).bound;
    const double t33 = theta_upper_bound(3, 3, 3).bound;
    theta[{3, 2, 1}] = t31;
    theta[{3, 3, 3}] = t33;
    if (std::abs(t31 - 0.5918) > 5e-3 || std::abs(t33 - 0.9026) > 5e-3) pass1 = false;
    std::snprintf(buf, sizeof buf,
                  "table cells n=1 (r<=8), n=2 (r<=4), n=3 spots; worst %s; "
                  "n=3 got %.4f/%.4f",
                  worst1.c_str(), t31, t33);
    report(1, pass1, buf);

    // Criterion 2: Jackson consistency.
    bool pass2 = true;
    const double j11 = 1.0 - jackson_coefficient(1, 1);
    const double j12 = 1.0 - jackson_coefficient(1, 2);
    if (std::abs(j11 - 0.5000) > 5e-5 || std::abs(j12 - 0.2929) > 5e-5) pass2 = false;
    if (std::abs(theta[{1, 1, 1}] - j11) > 1e-3) pass2 = false;
    if (std::abs(theta[{1, 2, 1}] - j12) > 1e-3) pass2 = false;

    bool strict_seen = false;
    for (const auto& [key, sdp] : theta) {
        const auto [n, r, d] = key;
        if (n < 2 || r % n != 0) continue;
        const double jk = product_jackson_value(n, d, r / n);
        if (sdp > jk + 1e-3) pass2 = false;
        if (sdp < jk - 1e-3) strict_seen = true;
    }
    if (!strict_seen) pass2 = false;
    std::snprintf(buf, sizeof buf,
                  "1-lambda(1,1)=%.4f, 1-lambda(1,2)=%.7f meet the SDP cells; "
                  "SDP <= product-kernel value at r = n*r' cells, strictly below at some",
                  j11, j12);
    report(2, pass2, buf);
}

void criterion_3() {
    const Poly f = testutil::motzkin_shifted();
    struct Row {
        int d;
        double rho_ref;
        double l0, l1, l2;
    };
    const std::vector<Row> rows = {
        {3, 1.6e-2, 5.445e-3, 5.367e-3, 5.367e-3},
        {4, 2.0e-3, 2.4e-4, 9.36e-4, 9.36e-4},
        {5, 8.0e-5, 4.0e-7, 4.34e-5, 4.34e-5},
    };
    bool pass = true;
    char buf[256];
    std::string detail = "rho(Motzkin) d=3,4,5:";
    for (const auto& row : rows) {
        const auto res = rho(f, row.d);
        if (std::abs(res.rho - row.rho_ref) > 0.10 * row.rho_ref) pass = false;
        const double refs[3] = {row.l0, row.l1, row.l2};
        for (int i = 0; i < 3; ++i) {
            // 15% relative plus a small absolute floor for components printed
            // to one significant digit
            if (std::abs(res.lambda[i] - refs[i]) > 0.15 * refs[i] + 1e-7) pass = false;
        }
        std::snprintf(buf, sizeof buf, " %.3e", res.rho);
        detail += buf;
    }
    report(3, pass, detail);
}

void criterion_4() {
    const auto res = lower_bound(testutil::motzkin_shifted(), 6, SchemeKind::PlusMinus);
    char buf[128];
    std::snprintf(buf, sizeof buf, "lower_bound(Motzkin, 6) = %.2e >= -1e-5", res.value);
    report(4, res.value >= -1e-5, buf);
}

void criterion_5() {
    std::mt19937 rng(20260823);
    std::uniform_int_distribution<int> nd(1, 4);
    int ok = 0;
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = nd(rng);
        double residual;
        if (i % 2 == 0) {
            MultiIndex alpha(n);
            std::uniform_int_distribution<int> vd(0, static_cast<int>(n) - 1);
            for (int b = 1 + static_cast<int>(rng() % 8); b > 0; --b) alpha[vd(rng)] += 1;
            residual = decompose_multi(alpha, (rng() & 1) ? 1 : -1).verify();
        } else {
            const Poly p = testutil::random_poly(rng, n, 1 + i % 8, Basis::Monomial, 0.35);
            residual = norm_gap_certificate(p).verify();
        }
        if (residual < 1e-9) ++ok;
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "%d/200 random certificates verify below 1e-9", ok);
    report(5, ok == 200, buf);
}

void criterion_6() {
    std::mt19937 rng(7);
    int ok = 0;
    for (int i = 0; i < 100; ++i) {
        const std::size_t n = 1 + i % 2;
        const Poly p = testutil::random_poly(rng, n, 1 + i % 6);
        const Poly pc = p.to_basis(Basis::Chebyshev);

        // direct oracle sum p_alpha T_alpha(x) T_alpha(y)
        Poly expected(2 * n, Basis::Chebyshev, "xy");
        for (const auto& [alpha, c] : pc.terms()) {
            MultiIndex beta(2 * n);
            for (std::size_t v = 0; v < n; ++v) beta[v] = beta[n + v] = alpha[v];
            expected.add_term(beta, c);
        }
        bool good = true;
        const Poly diff = lift_polynomial(p) - expected;
        for (const auto& [a, c] : diff.terms())
            if (std::abs(c) > 1e-10) good = false;

        const Certificate cert = norm_gap_certificate(p);
        const Certificate lifted = lift_certificate(cert);
        if (lifted.verify() > 1e-9) good = false;
        const Poly tdiff = lifted.target() -
                           lift_polynomial(cert.target()).to_basis(Basis::Monomial);
        for (const auto& [a, c] : tdiff.terms())
            if (std::abs(c) > 1e-9) good = false;

        if (good) ++ok;
    }
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "%d/100 kernel lifts match the direct sum and lifted certificates verify",
                  ok);
    report(6, ok == 100, buf);
}

void criterion_7() {
    std::mt19937 rng(11);
    std::map<std::tuple<int, int, int>, double> theta_cache;
    auto theta_at = [&](int n, int d, int r) {
        const auto key = std::make_tuple(n, d, r);
        auto it = theta_cache.find(key);
        if (it == theta_cache.end())
            it = theta_cache.emplace(key, theta_upper_bound(n, d, r).bound).first;
        return it->second;
    };
    bool pass = true;
    char buf[256];
    std::string worst;
    for (int i = 0; i < 30; ++i) {
        const int n = 1 + i % 2;
        const int d = 1 + i % 3;
        const Poly f = testutil::random_poly(rng, n, d);
        if (f.degree() < 1) continue;
        const double fmin = testutil::grid_min(f);
        const double norm = f.coeff_one_norm(Basis::Chebyshev);
        for (int r : {d, d + 2, d + 4}) {
            const double lb = lower_bound(f, r, SchemeKind::PlusMinus).value;
            const double gap = fmin - lb;
            const double cap = theta_at(n, d, r) * norm + 1e-6;
            if (gap > cap) {
                pass = false;
                std::snprintf(buf, sizeof buf, "n=%d d=%d r=%d gap %.3e cap %.3e", n, d,
                              r, gap, cap);
                worst = buf;
            }
            if (r % n == 0) {
                const int rp = r / n;
                if (pi * d < rp + 2) {
                    const double acap =
                        pi * pi * d * d / ((rp + 2.0) * (rp + 2.0)) * norm + 1e-6;
                    if (gap > acap) {
                        pass = false;
                        std::snprintf(buf, sizeof buf,
                                      "analytic: n=%d d=%d r=%d gap %.3e cap %.3e", n, d,
                                      r, gap, acap);
                        worst = buf;
                    }
                }
            }
        }
    }
    report(7, pass,
           pass ? "f_min - lower_bound within the kernel and analytic caps (30 instances)"
                : worst);
}

void criterion_8() {
    std::mt19937 rng(17);
    bool pass = true;
    char buf[128];
    std::string worst;
    const SolveOptions tight{1e-9, 1e-9, 300, 0.98};
    for (int i = 0; i < 30; ++i) {
        const int n = 1 + i % 2;
        const Poly f = testutil::random_poly(rng, n, 4);
        const int r = 4;
        const double lo = lower_bound(f, r, SchemeKind::Squares, tight).value;
        const double mid = lower_bound(f, r, SchemeKind::PlusMinus, tight).value;
        const double hi = lower_bound(f, 2 * r, SchemeKind::Squares, tight).value;
        if (lo > mid + 1e-7 * (1.0 + std::abs(mid)) ||
            mid > hi + 1e-7 * (1.0 + std::abs(hi))) {
            pass = false;
            std::snprintf(buf, sizeof buf, "instance %d: %.6f / %.6f / %.6f", i, lo, mid,
                          hi);
            worst = buf;
        }
    }
    report(8, pass,
           pass ? "squares_r <= plusminus_r <= squares_2r on 30 instances" : worst);
}

}  // namespace

int main() {
    criterion_1_and_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    if (failures == 0) {
        std::printf("all acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
}
