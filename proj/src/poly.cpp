#include "chebcert/poly.hpp"

#include <cmath>
#include <cstdlib>
#include <mutex>

namespace chebcert {

namespace {

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// x^k in the univariate Chebyshev basis: coefficient of T_j, j = k, k-2, ...
std::vector<std::pair<int, double>> power_in_cheb(int k) {
    std::vector<std::pair<int, double>> out;
    if (k == 0) {
        out.emplace_back(0, 1.0);
        return out;
    }
    const double scale = std::pow(2.0, 1 - k);
    for (int j = k; j >= 0; j -= 2) {
        double c = scale * binomial(k, (k - j) / 2);
        if (j == 0) c *= 0.5;
        out.emplace_back(j, c);
    }
    return out;
}

}  // namespace

Poly Poly::constant(std::size_t nvars, double c, Basis basis, std::string group) {
    Poly p(nvars, basis, std::move(group));
    p.add_term(MultiIndex(nvars), c);
    return p;
}

Poly Poly::term(MultiIndex alpha, double c, Basis basis, std::string group) {
    Poly p(alpha.size(), basis, std::move(group));
    p.add_term(std::move(alpha), c);
    return p;
}

Poly Poly::variable(std::size_t nvars, std::size_t i, Basis basis, std::string group) {
    MultiIndex alpha(nvars);
    alpha[i] = 1;
    return term(std::move(alpha), 1.0, basis, std::move(group));
}

double Poly::coefficient(const MultiIndex& alpha) const {
    auto it = terms_.find(alpha);
    return it == terms_.end() ? 0.0 : it->second;
}

void Poly::set_coefficient(const MultiIndex& alpha, double c) {
    if (alpha.size() != nvars_) throw std::invalid_argument("multi-index length != nvars");
    if (std::abs(c) < kCoeffEpsilon)
        terms_.erase(alpha);
    else
        terms_[alpha] = c;
}

void Poly::add_term(const MultiIndex& alpha, double c) {
    if (alpha.size() != nvars_) throw std::invalid_argument("multi-index length != nvars");
    auto [it, inserted] = terms_.try_emplace(alpha, 0.0);
    it->second += c;
    if (std::abs(it->second) < kCoeffEpsilon) terms_.erase(it);
}

int Poly::degree() const {
    int d = 0;
    for (const auto& [alpha, c] : terms_) d = std::max(d, alpha.total_degree());
    return d;
}

int Poly::degree_in(const std::vector<std::size_t>& vars) const {
    int d = 0;
    for (const auto& [alpha, c] : terms_) {
        int t = 0;
        for (std::size_t v : vars) t += alpha[v];
        d = std::max(d, t);
    }
    return d;
}

void Poly::require_compatible(const Poly& o) const {
    if (nvars_ != o.nvars_) throw std::invalid_argument("nvars mismatch");
    if (basis_ != o.basis_) throw std::invalid_argument("basis mismatch");
    if (group_ != o.group_) throw std::invalid_argument("variable-group mismatch");
}

Poly Poly::operator+(const Poly& o) const {
    require_compatible(o);
    Poly r(*this);
    for (const auto& [alpha, c] : o.terms_) r.add_term(alpha, c);
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    require_compatible(o);
    Poly r(*this);
    for (const auto& [alpha, c] : o.terms_) r.add_term(alpha, -c);
    return r;
}

Poly Poly::operator-() const { return *this * -1.0; }

Poly Poly::operator*(double s) const {
    Poly r(nvars_, basis_, group_);
    for (const auto& [alpha, c] : terms_) r.add_term(alpha, c * s);
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    require_compatible(o);
    switch (basis_) {
        case Basis::Monomial: {
            Poly r(nvars_, basis_, group_);
            for (const auto& [a, ca] : terms_)
                for (const auto& [b, cb] : o.terms_) r.add_term(a + b, ca * cb);
            return r;
        }
        case Basis::Chebyshev:
            return cheb_mul(*this, o);
        case Basis::NormalizedChebyshev:
            return cheb_mul(to_basis(Basis::Chebyshev), o.to_basis(Basis::Chebyshev))
                .to_basis(Basis::NormalizedChebyshev);
    }
    throw std::logic_error("unreachable");
}

double Poly::evaluate(const std::vector<double>& point) const {
    if (point.size() != nvars_) throw std::invalid_argument("point length != nvars");
    if (terms_.empty()) return 0.0;

    if (basis_ == Basis::Monomial) {
        double sum = 0.0;
        for (const auto& [alpha, c] : terms_) {
            double t = c;
            for (std::size_t i = 0; i < nvars_; ++i)
                for (int e = 0; e < alpha[i]; ++e) t *= point[i];
            sum += t;
        }
        return sum;
    }

    // Chebyshev bases: tabulate T_k(x_i) by the three-term recurrence.
    std::vector<int> maxdeg(nvars_, 0);
    for (const auto& [alpha, c] : terms_)
        for (std::size_t i = 0; i < nvars_; ++i) maxdeg[i] = std::max(maxdeg[i], alpha[i]);
    std::vector<std::vector<double>> tk(nvars_);
    for (std::size_t i = 0; i < nvars_; ++i) {
        tk[i].resize(maxdeg[i] + 1);
        tk[i][0] = 1.0;
        if (maxdeg[i] >= 1) tk[i][1] = point[i];
        for (int k = 2; k <= maxdeg[i]; ++k)
            tk[i][k] = 2.0 * point[i] * tk[i][k - 1] - tk[i][k - 2];
    }
    const bool normalized = basis_ == Basis::NormalizedChebyshev;
    double sum = 0.0;
    for (const auto& [alpha, c] : terms_) {
        double t = c;
        for (std::size_t i = 0; i < nvars_; ++i) t *= tk[i][alpha[i]];
        if (normalized) t *= std::pow(2.0, 0.5 * alpha.support_size());
        sum += t;
    }
    return sum;
}

Poly Poly::to_basis(Basis target) const {
    if (target == basis_) return *this;
    // Chebyshev is the hub basis.
    if (basis_ == Basis::Monomial) return monomial_to_chebyshev(*this).to_basis(target);
    if (basis_ == Basis::NormalizedChebyshev) {
        Poly r(nvars_, Basis::Chebyshev, group_);
        for (const auto& [alpha, c] : terms_)
            r.add_term(alpha, c * std::pow(2.0, 0.5 * alpha.support_size()));
        return r.to_basis(target);
    }
    // from Chebyshev
    if (target == Basis::Monomial) return chebyshev_to_monomial(*this);
    Poly r(nvars_, Basis::NormalizedChebyshev, group_);
    for (const auto& [alpha, c] : terms_)
        r.add_term(alpha, c * std::pow(2.0, -0.5 * alpha.support_size()));
    return r;
}

double Poly::coeff_one_norm(Basis in_basis) const {
    const Poly q = to_basis(in_basis);
    double s = 0.0;
    for (const auto& [alpha, c] : q.terms()) s += std::abs(c);
    return s;
}

void Poly::canonicalize() {
    for (auto it = terms_.begin(); it != terms_.end();)
        it = std::abs(it->second) < kCoeffEpsilon ? terms_.erase(it) : std::next(it);
}

Poly cheb_mul(const Poly& a, const Poly& b) {
    if (a.basis() != Basis::Chebyshev || b.basis() != Basis::Chebyshev)
        throw std::invalid_argument("cheb_mul requires Chebyshev basis");
    if (a.nvars() != b.nvars() || a.var_group() != b.var_group())
        throw std::invalid_argument("cheb_mul operand mismatch");
    const std::size_t n = a.nvars();
    Poly r(n, Basis::Chebyshev, a.var_group());
    for (const auto& [ia, ca] : a.terms()) {
        for (const auto& [ib, cb] : b.terms()) {
            // T_j T_k = (T_{j+k} + T_{|j-k|}) / 2 per variable
            std::vector<std::pair<MultiIndex, double>> acc{{MultiIndex(n), ca * cb}};
            for (std::size_t i = 0; i < n; ++i) {
                const int j = ia[i], k = ib[i];
                if (j == 0 || k == 0) {
                    for (auto& [gamma, w] : acc) gamma[i] = j + k;
                } else {
                    std::vector<std::pair<MultiIndex, double>> next;
                    next.reserve(acc.size() * 2);
                    for (auto& [gamma, w] : acc) {
                        MultiIndex g2 = gamma;
                        gamma[i] = j + k;
                        g2[i] = std::abs(j - k);
                        next.emplace_back(std::move(gamma), w * 0.5);
                        next.emplace_back(std::move(g2), w * 0.5);
                    }
                    acc = std::move(next);
                }
            }
            for (auto& [gamma, w] : acc) r.add_term(gamma, w);
        }
    }
    return r;
}

Poly monomial_to_chebyshev(const Poly& p) {
    if (p.basis() != Basis::Monomial)
        throw std::invalid_argument("monomial_to_chebyshev: basis mismatch");
    const std::size_t n = p.nvars();
    Poly r(n, Basis::Chebyshev, p.var_group());
    for (const auto& [alpha, c] : p.terms()) {
        std::vector<std::pair<MultiIndex, double>> acc{{MultiIndex(n), c}};
        for (std::size_t i = 0; i < n; ++i) {
            const auto univ = power_in_cheb(alpha[i]);
            std::vector<std::pair<MultiIndex, double>> next;
            next.reserve(acc.size() * univ.size());
            for (const auto& [gamma, w] : acc) {
                for (const auto& [j, cj] : univ) {
                    MultiIndex g = gamma;
                    g[i] = j;
                    next.emplace_back(std::move(g), w * cj);
                }
            }
            acc = std::move(next);
        }
        for (auto& [gamma, w] : acc) r.add_term(gamma, w);
    }
    return r;
}

Poly chebyshev_t(int k) {
    static std::mutex mu;
    static std::vector<Poly> cache;
    std::lock_guard<std::mutex> lock(mu);
    if (cache.empty()) {
        cache.push_back(Poly::constant(1, 1.0));
        cache.push_back(Poly::variable(1, 0));
    }
    const Poly two_x = Poly::variable(1, 0) * 2.0;
    while (static_cast<int>(cache.size()) <= k)
        cache.push_back(two_x * cache[cache.size() - 1] - cache[cache.size() - 2]);
    return cache[k];
}

Poly chebyshev_to_monomial(const Poly& p) {
    if (p.basis() != Basis::Chebyshev)
        throw std::invalid_argument("chebyshev_to_monomial: basis mismatch");
    const std::size_t n = p.nvars();
    Poly r(n, Basis::Monomial, p.var_group());
    for (const auto& [alpha, c] : p.terms()) {
        Poly prod = Poly::constant(n, c, Basis::Monomial, p.var_group());
        for (std::size_t i = 0; i < n; ++i) {
            if (alpha[i] == 0) continue;
            const Poly& tk = chebyshev_t(alpha[i]);
            // multiply prod by tk(x_i)
            Poly next(n, Basis::Monomial, p.var_group());
            for (const auto& [beta, cb] : prod.terms()) {
                for (const auto& [e, ce] : tk.terms()) {
                    MultiIndex g = beta;
                    g[i] += e[0];
                    next.add_term(g, cb * ce);
                }
            }
            prod = std::move(next);
        }
        r = r + prod;
    }
    return r;
}

}  // namespace chebcert
