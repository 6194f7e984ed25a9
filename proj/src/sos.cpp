#include "chebcert/sos.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace chebcert {

namespace {

Poly generator_factor(std::size_t n, std::size_t var, int sign, const std::string& group) {
    Poly p = Poly::constant(n, 1.0, Basis::Chebyshev, group);
    MultiIndex e(n);
    e[var] = 1;
    p.add_term(e, static_cast<double>(sign));
    return p;
}

std::string solver_error(const char* what, const SolveReport& rep) {
    return std::string(what) + ": solver returned " + to_string(rep.status);
}

}  // namespace

PreorderingScheme::PreorderingScheme(SchemeKind kind, std::size_t nvars, int r)
    : kind_(kind), nvars_(nvars), r_(r) {
    if (r < 0) throw std::invalid_argument("PreorderingScheme: negative degree cap");
    const std::size_t gens = kind == SchemeKind::PlusMinus ? 2 * nvars : nvars;
    const int gen_degree = kind == SchemeKind::PlusMinus ? 1 : 2;
    for (std::size_t mask = 0; mask < (std::size_t{1} << gens); ++mask) {
        const int card = std::popcount(mask);
        const int deg = card * gen_degree;
        if (deg > r) continue;
        SchemeSubset sub;
        sub.degree = deg;
        sub.product = Poly::constant(nvars, 1.0, Basis::Chebyshev);
        for (std::size_t g = 0; g < gens; ++g) {
            if (!(mask >> g & 1)) continue;
            if (kind == SchemeKind::PlusMinus) {
                const std::size_t var = g / 2;
                const int sign = (g % 2 == 0) ? -1 : +1;
                sub.generators.emplace_back(var, sign);
                sub.product = cheb_mul(sub.product, generator_factor(nvars, var, sign, "x"));
            } else {
                sub.generators.emplace_back(g, 0);
                sub.product = cheb_mul(
                    sub.product, cheb_mul(generator_factor(nvars, g, -1, "x"),
                                          generator_factor(nvars, g, +1, "x")));
            }
        }
        sub.gram_basis = multi_indices_up_to(nvars, (r - deg) / 2);
        subsets_.push_back(std::move(sub));
    }
}

namespace {

// Shared compilation of sum_I <G_I, basis outer products> * prod g_i into
// per-Chebyshev-coefficient constraint rows.
std::map<MultiIndex, SdpConstraint> membership_rows(SdpProblem& sdp,
                                                    const PreorderingScheme& scheme) {
    std::map<MultiIndex, SdpConstraint> rows;
    for (const auto& sub : scheme.subsets()) {
        std::string label = "gram";
        for (const auto& [var, sign] : sub.generators)
            label += (sign == 0 ? "_s" : sign < 0 ? "_m" : "_p") + std::to_string(var);
        const int b = sdp.add_block(label, static_cast<int>(sub.gram_basis.size()));
        for (std::size_t j = 0; j < sub.gram_basis.size(); ++j) {
            const Poly tj = Poly::term(sub.gram_basis[j], 1.0, Basis::Chebyshev);
            for (std::size_t k = j; k < sub.gram_basis.size(); ++k) {
                const Poly tk = Poly::term(sub.gram_basis[k], 1.0, Basis::Chebyshev);
                const Poly prod = cheb_mul(cheb_mul(tj, tk), sub.product);
                for (const auto& [gamma, c] : prod.terms()) {
                    auto& row = rows.try_emplace(gamma, SdpConstraint{}).first->second;
                    row.entries.push_back(
                        {b, static_cast<int>(j), static_cast<int>(k), c});
                }
            }
        }
    }
    return rows;
}

}  // namespace

BoundResult lower_bound(const Poly& f, int r, SchemeKind scheme,
                        const SolveOptions& options) {
    if (f.degree() > r) throw std::invalid_argument("lower_bound: deg f exceeds r");
    const Poly fc = f.to_basis(Basis::Chebyshev);
    const std::size_t n = f.nvars();

    SdpProblem sdp;
    const PreorderingScheme pre(scheme, n, r);
    auto rows = membership_rows(sdp, pre);
    const int lambda = sdp.add_free_variable(-1.0);  // maximize lambda

    for (const auto& [gamma, c] : fc.terms())
        rows.try_emplace(gamma, SdpConstraint{});
    for (auto& [gamma, row] : rows) {
        if (gamma.is_zero()) row.free_entries.emplace_back(lambda, 1.0);
        row.rhs = fc.coefficient(gamma);
        sdp.add_constraint(std::move(row));
    }

    SolveReport rep = solve(sdp, options);
    if (rep.status != SolveStatus::Optimal && rep.status != SolveStatus::MaxIterations)
        throw std::runtime_error(solver_error("lower_bound", rep));
    return {-rep.primal_objective, std::move(rep)};
}

ThetaResult theta_upper_bound(std::size_t n, int d, int r,
                              const SolveOptions& options) {
    if (d < 1 || d > r) throw std::invalid_argument("theta_upper_bound: need 1 <= d <= r");

    SdpProblem sdp;
    const PreorderingScheme pre(SchemeKind::PlusMinus, n, r);
    auto rows = membership_rows(sdp, pre);

    std::map<MultiIndex, int> p_index;
    for (const auto& alpha : multi_indices_up_to(n, r))
        if (!alpha.is_zero()) p_index.emplace(alpha, sdp.add_free_variable(0.0));
    const int t = sdp.add_free_variable(1.0);

    for (auto& [gamma, row] : rows) {
        if (gamma.is_zero()) {
            row.rhs = 1.0;
        } else {
            const double w = std::pow(2.0, gamma.support_size());
            row.free_entries.emplace_back(p_index.at(gamma), -w);
            row.rhs = 0.0;
        }
        sdp.add_constraint(std::move(row));
    }

    // |1 - p_alpha| <= t via two nonnegative slacks per constrained alpha.
    for (const auto& [alpha, idx] : p_index) {
        if (alpha.total_degree() > d) continue;
        const int s1 = sdp.add_block("slack_lo", 1);
        SdpConstraint c1;  // s1 - t - p_alpha = -1
        c1.entries.push_back({s1, 0, 0, 1.0});
        c1.free_entries.emplace_back(t, -1.0);
        c1.free_entries.emplace_back(idx, -1.0);
        c1.rhs = -1.0;
        sdp.add_constraint(std::move(c1));
        const int s2 = sdp.add_block("slack_hi", 1);
        SdpConstraint c2;  // s2 - t + p_alpha = 1
        c2.entries.push_back({s2, 0, 0, 1.0});
        c2.free_entries.emplace_back(t, -1.0);
        c2.free_entries.emplace_back(idx, 1.0);
        c2.rhs = 1.0;
        sdp.add_constraint(std::move(c2));
    }

    SolveReport rep = solve(sdp, options);
    if (rep.status != SolveStatus::Optimal && rep.status != SolveStatus::MaxIterations)
        throw std::runtime_error(solver_error("theta_upper_bound", rep));

    ThetaResult res;
    res.n = n;
    res.d = d;
    res.r = r;
    res.bound = rep.free_values(t);
    for (const auto& [alpha, idx] : p_index)
        res.kernel_coefficients[alpha] = rep.free_values(idx);
    res.report = std::move(rep);
    return res;
}

RhoResult rho(const Poly& f, int d, const SolveOptions& options) {
    if (d < 1) throw std::invalid_argument("rho: d >= 1 required");
    if (f.degree() > 2 * d) throw std::invalid_argument("rho: deg f exceeds 2d");
    const Poly fm = f.to_basis(Basis::Monomial);
    const std::size_t n = f.nvars();

    SdpProblem sdp;
    const auto basis = multi_indices_up_to(n, d);
    const int gram = sdp.add_block("gram", static_cast<int>(basis.size()));
    std::vector<int> lam(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        lam[i] = sdp.add_block("lambda" + std::to_string(i), 1);
        sdp.add_objective_entry(lam[i], 0, 0, 1.0);
    }

    std::map<MultiIndex, SdpConstraint> rows;
    for (std::size_t j = 0; j < basis.size(); ++j)
        for (std::size_t k = j; k < basis.size(); ++k) {
            auto& row = rows.try_emplace(basis[j] + basis[k], SdpConstraint{}).first->second;
            row.entries.push_back({gram, static_cast<int>(j), static_cast<int>(k), 1.0});
        }

    for (auto& [gamma, row] : rows) {
        if (gamma.is_zero()) row.entries.push_back({lam[0], 0, 0, -1.0});
        for (std::size_t i = 0; i < n; ++i) {
            if (gamma.total_degree() == 2 * d && gamma[i] == 2 * d)
                row.entries.push_back({lam[i + 1], 0, 0, -1.0});
        }
        row.rhs = fm.coefficient(gamma);
        sdp.add_constraint(std::move(row));
    }

    SolveReport rep = solve(sdp, options);
    if (rep.status != SolveStatus::Optimal && rep.status != SolveStatus::MaxIterations)
        throw std::runtime_error(solver_error("rho", rep));

    RhoResult res;
    res.d = d;
    res.rho = rep.primal_objective;
    res.lambda.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i) res.lambda[i] = rep.X[lam[i]](0, 0);
    res.report = std::move(rep);
    return res;
}

double corollary_lower_bound(const Poly& f, int d) { return -rho(f, d).rho; }

}  // namespace chebcert
