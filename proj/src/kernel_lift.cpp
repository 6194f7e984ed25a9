#include "chebcert/kernel_lift.hpp"

#include <cmath>

namespace chebcert {

namespace {

constexpr const char* kLayoutGroup = "uxy";

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// (1 - x_i^2)(1 - y_i^2) in the 3n layout.
Poly radical_square(std::size_t n, std::size_t i) {
    const std::size_t N = 3 * n;
    Poly one_minus_x2 = Poly::constant(N, 1.0, Basis::Monomial, kLayoutGroup);
    MultiIndex x2(N);
    x2[n + i] = 2;
    one_minus_x2.add_term(x2, -1.0);
    Poly one_minus_y2 = Poly::constant(N, 1.0, Basis::Monomial, kLayoutGroup);
    MultiIndex y2(N);
    y2[2 * n + i] = 2;
    one_minus_y2.add_term(y2, -1.0);
    return one_minus_x2 * one_minus_y2;
}

Poly layout_variable(std::size_t n, std::size_t index) {
    return Poly::variable(3 * n, index, Basis::Monomial, kLayoutGroup);
}

Poly layout_generator(std::size_t n, std::size_t index, int sign) {
    Poly p = Poly::constant(3 * n, 1.0, Basis::Monomial, kLayoutGroup);
    MultiIndex e(3 * n);
    e[index] = 1;
    p.add_term(e, static_cast<double>(sign));
    return p;
}

}  // namespace

Poly embed_u(const Poly& p) {
    const Poly pm = p.to_basis(Basis::Monomial);
    const std::size_t n = p.nvars();
    Poly out(3 * n, Basis::Monomial, kLayoutGroup);
    for (const auto& [alpha, c] : pm.terms()) {
        MultiIndex beta(3 * n);
        for (std::size_t j = 0; j < n; ++j) beta[j] = alpha[j];
        out.add_term(beta, c);
    }
    return out;
}

SplitResult split(const Poly& q, std::size_t n, std::size_t i) {
    if (q.nvars() != 3 * n) throw std::invalid_argument("split: expected 3n-variable layout");
    const std::size_t N = 3 * n;
    const Poly s2 = radical_square(n, i);
    const Poly xy = layout_variable(n, n + i) * layout_variable(n, 2 * n + i);

    // Powers of (x_i y_i) and of s^2, grown on demand.
    std::vector<Poly> xy_pow{Poly::constant(N, 1.0, Basis::Monomial, kLayoutGroup)};
    std::vector<Poly> s2_pow{Poly::constant(N, 1.0, Basis::Monomial, kLayoutGroup)};
    auto xy_power = [&](int e) -> const Poly& {
        while (static_cast<int>(xy_pow.size()) <= e) xy_pow.push_back(xy_pow.back() * xy);
        return xy_pow[e];
    };
    auto s2_power = [&](int e) -> const Poly& {
        while (static_cast<int>(s2_pow.size()) <= e) s2_pow.push_back(s2_pow.back() * s2);
        return s2_pow[e];
    };

    Poly q0(N, Basis::Monomial, kLayoutGroup);
    Poly q1(N, Basis::Monomial, kLayoutGroup);
    for (const auto& [alpha, c] : q.terms()) {
        const int m = alpha[i];
        MultiIndex rest = alpha;
        rest[i] = 0;
        const Poly rest_term = Poly::term(rest, c, Basis::Monomial, kLayoutGroup);
        if (m == 0) {
            q0 = q0 + rest_term;
            continue;
        }
        // (x_i y_i + s)^m = sum_j C(m,j) (x_i y_i)^{m-j} s^j
        for (int j = 0; j <= m; ++j) {
            const Poly piece =
                rest_term * (binomial(m, j) * (xy_power(m - j) * s2_power(j / 2)));
            if (j % 2 == 0)
                q0 = q0 + piece;
            else
                q1 = q1 + piece;
        }
    }
    return {std::move(q0), std::move(q1)};
}

Poly kappa(const Poly& q, std::size_t n, std::size_t i) { return split(q, n, i).q0; }

namespace {

// Drops the (empty) u slots: 3n-var layout -> 2n-var (x, y) polynomial.
Poly project_xy(const Poly& p, std::size_t n) {
    Poly out(2 * n, Basis::Monomial, "xy");
    for (const auto& [alpha, c] : p.terms()) {
        MultiIndex beta(2 * n);
        for (std::size_t j = 0; j < n; ++j) {
            if (alpha[j] != 0) throw std::logic_error("project_xy: residual u variable");
            beta[j] = alpha[n + j];
            beta[n + j] = alpha[2 * n + j];
        }
        out.add_term(beta, c);
    }
    return out;
}

}  // namespace

Poly lift_polynomial(const Poly& p) {
    const std::size_t n = p.nvars();
    Poly cur = embed_u(p);
    for (std::size_t i = 0; i < n; ++i) cur = kappa(cur, n, i);
    return project_xy(cur, n).to_basis(Basis::Chebyshev);
}

Poly restrict_to_diagonal(const Poly& kernel_xy) {
    const std::size_t n = kernel_xy.nvars() / 2;
    const Poly km = kernel_xy.to_basis(Basis::Monomial);
    Poly out(n, Basis::Monomial);
    for (const auto& [alpha, c] : km.terms()) {
        MultiIndex beta(n);
        for (std::size_t j = 0; j < n; ++j) beta[j] = alpha[j];  // y_j = 1
        out.add_term(beta, c);
    }
    return out;
}

Certificate lift_certificate(const Certificate& cert) {
    if (cert.verify() > 1e-9)
        throw std::invalid_argument("lift_certificate: input certificate does not verify");
    const std::size_t n = cert.target().nvars();

    // Working summands in the 3n layout.
    std::vector<Summand> work;
    for (const auto& s : cert.summands()) {
        for (const auto& t : s.sos) {
            Summand w;
            w.generators = s.generators;  // u-indices coincide with layout indices
            w.sos.push_back({t.weight, embed_u(t.q)});
            work.push_back(std::move(w));
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t xi = n + i, yi = 2 * n + i;
        std::vector<Summand> next;
        for (const auto& s : work) {
            std::vector<Generator> others;
            int minus = 0, plus = 0;
            for (const auto& g : s.generators) {
                if (g.var == i)
                    (g.sign < 0 ? minus : plus) = 1;
                else
                    others.push_back(g);
            }
            const auto& [w, q] = s.sos.front();
            auto [q0, q1] = split(q, n, i);

            auto emit = [&](double weight, Poly poly,
                            std::initializer_list<Generator> extra) {
                Summand ns;
                ns.generators = others;
                ns.generators.insert(ns.generators.end(), extra);
                std::sort(ns.generators.begin(), ns.generators.end());
                ns.sos.push_back({weight, std::move(poly)});
                next.push_back(std::move(ns));
            };

            if (!minus && !plus) {
                // kappa^i(q^2) = q0^2 + (1-x_i^2)(1-y_i^2) q1^2
                emit(w, q0, {});
                if (!q1.is_zero())
                    emit(w, q1, {{xi, -1}, {xi, +1}, {yi, -1}, {yi, +1}});
            } else if (minus && !plus) {
                // 2 kappa^i((1-u_i) q^2) = (1-x)(1+y)(q0 - (1+x)(1-y)q1)^2
                //                        + (1+x)(1-y)(q0 - (1-x)(1+y)q1)^2
                emit(w / 2, q0 - layout_generator(n, xi, +1) * layout_generator(n, yi, -1) * q1,
                     {{xi, -1}, {yi, +1}});
                emit(w / 2, q0 - layout_generator(n, xi, -1) * layout_generator(n, yi, +1) * q1,
                     {{xi, +1}, {yi, -1}});
            } else if (!minus && plus) {
                emit(w / 2, q0 + layout_generator(n, xi, -1) * layout_generator(n, yi, -1) * q1,
                     {{xi, +1}, {yi, +1}});
                emit(w / 2, q0 + layout_generator(n, xi, +1) * layout_generator(n, yi, +1) * q1,
                     {{xi, -1}, {yi, -1}});
            } else {
                // kappa^i((1-u_i^2) q^2) = (1-y^2)(x q0 - y(1-x^2) q1)^2
                //                        + (1-x^2)(y q0 - x(1-y^2) q1)^2
                Poly one_minus_x2 =
                    layout_generator(n, xi, -1) * layout_generator(n, xi, +1);
                Poly one_minus_y2 =
                    layout_generator(n, yi, -1) * layout_generator(n, yi, +1);
                emit(w, layout_variable(n, xi) * q0 - layout_variable(n, yi) * one_minus_x2 * q1,
                     {{yi, -1}, {yi, +1}});
                emit(w, layout_variable(n, yi) * q0 - layout_variable(n, xi) * one_minus_y2 * q1,
                     {{xi, -1}, {xi, +1}});
            }
        }
        work = std::move(next);
    }

    // Re-index into the 2n-variable (x, y) space.
    const Poly lifted_target =
        lift_polynomial(cert.target()).to_basis(Basis::Monomial);
    Certificate out(lifted_target, 2 * cert.degree_cap());
    for (const auto& s : work) {
        Summand ns;
        // x_i: layout n+i -> i; y_i: layout 2n+i -> n+i
        for (const auto& g : s.generators) ns.generators.push_back({g.var - n, g.sign});
        std::sort(ns.generators.begin(), ns.generators.end());
        for (const auto& t : s.sos) {
            Poly q(2 * n, Basis::Monomial, "xy");
            for (const auto& [alpha, c] : t.q.terms()) {
                MultiIndex beta(2 * n);
                for (std::size_t j = 0; j < n; ++j) {
                    if (alpha[j] != 0)
                        throw std::logic_error("lift_certificate: residual u variable");
                    beta[j] = alpha[n + j];
                    beta[n + j] = alpha[2 * n + j];
                }
                q.add_term(beta, c);
            }
            ns.sos.push_back({t.weight, std::move(q)});
        }
        out.add_summand(std::move(ns));
    }
    return out;
}

}  // namespace chebcert
