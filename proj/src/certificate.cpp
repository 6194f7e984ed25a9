#include "chebcert/certificate.hpp"

#include <algorithm>
#include <cmath>

#include "chebcert/poly_io.hpp"

namespace chebcert {

using nlohmann::json;

namespace {

Poly second_kind_family(int k, const Poly& p0, const Poly& p1) {
    if (k == 0) return p0;
    if (k == 1) return p1;
    Poly prev = p0, cur = p1;
    const Poly two_t = Poly::variable(1, 0) * 2.0;
    for (int i = 2; i <= k; ++i) {
        Poly next = two_t * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

// Re-homes a univariate certificate into n variables at position var.
Certificate embed_univariate(const Certificate& c, std::size_t nvars, std::size_t var,
                             const std::string& group) {
    auto embed_poly = [&](const Poly& p) {
        Poly out(nvars, Basis::Monomial, group);
        for (const auto& [e, coef] : p.terms()) {
            MultiIndex alpha(nvars);
            alpha[var] = e[0];
            out.add_term(alpha, coef);
        }
        return out;
    };
    Certificate out(embed_poly(c.target()), c.degree_cap());
    for (const auto& s : c.summands()) {
        Summand ns;
        for (const auto& g : s.generators) ns.generators.push_back({var, g.sign});
        for (const auto& t : s.sos) ns.sos.push_back({t.weight, embed_poly(t.q)});
        out.add_summand(std::move(ns));
    }
    return out;
}

Poly generator_poly(const Generator& g, std::size_t nvars, const std::string& group) {
    Poly p = Poly::constant(nvars, 1.0, Basis::Monomial, group);
    MultiIndex alpha(nvars);
    alpha[g.var] = 1;
    p.add_term(alpha, static_cast<double>(g.sign));
    return p;
}

}  // namespace

Poly chebyshev_u(int k) {
    return second_kind_family(k, Poly::constant(1, 1.0), Poly::variable(1, 0) * 2.0);
}

Poly chebyshev_v(int k) {
    Poly p1 = Poly::variable(1, 0) * 2.0;
    p1.add_term(MultiIndex{0}, -1.0);
    return second_kind_family(k, Poly::constant(1, 1.0), p1);
}

Poly chebyshev_w(int k) {
    Poly p1 = Poly::variable(1, 0) * 2.0;
    p1.add_term(MultiIndex{0}, 1.0);
    return second_kind_family(k, Poly::constant(1, 1.0), p1);
}

Poly Certificate::expand() const {
    Poly sum(target_.nvars(), Basis::Monomial, target_.var_group());
    for (const auto& s : summands_) {
        Poly sos_sum(target_.nvars(), Basis::Monomial, target_.var_group());
        for (const auto& t : s.sos) sos_sum = sos_sum + (t.q * t.q) * t.weight;
        for (const auto& g : s.generators)
            sos_sum = sos_sum * generator_poly(g, target_.nvars(), target_.var_group());
        sum = sum + sos_sum;
    }
    return sum;
}

double Certificate::verify() const {
    const Poly diff = expand() - target_;
    double r = 0.0;
    for (const auto& [alpha, c] : diff.terms()) r = std::max(r, std::abs(c));
    return r;
}

int Certificate::max_term_degree() const {
    int d = 0;
    for (const auto& s : summands_)
        for (const auto& t : s.sos)
            d = std::max(d, static_cast<int>(s.generators.size()) + 2 * t.q.degree());
    return d;
}

int Certificate::term_degree_in(const Summand& s, const SosTerm& t,
                                const std::vector<std::size_t>& vars) {
    int gens = 0;
    for (const auto& g : s.generators)
        if (std::find(vars.begin(), vars.end(), g.var) != vars.end()) ++gens;
    return gens + 2 * t.q.degree_in(vars);
}

json Certificate::to_json() const {
    json j;
    j["target"] = poly_to_json(target_);
    j["degree_cap"] = degree_cap_;
    json summands = json::array();
    for (const auto& s : summands_) {
        json js;
        js["I"] = json::array();
        for (const auto& g : s.generators)
            js["I"].push_back({{"i", g.var}, {"sign", g.sign}});
        js["sos"] = json::array();
        for (const auto& t : s.sos)
            js["sos"].push_back({{"w", t.weight}, {"q", poly_to_json(t.q)}});
        summands.push_back(std::move(js));
    }
    j["summands"] = std::move(summands);
    return j;
}

Certificate Certificate::from_json(const json& j) {
    Poly target = poly_from_json(j.at("target"));
    Certificate c(target.to_basis(Basis::Monomial), j.value("degree_cap", 0));
    for (const auto& js : j.at("summands")) {
        Summand s;
        for (const auto& jg : js.at("I"))
            s.generators.push_back({jg.at("i").get<std::size_t>(), jg.at("sign").get<int>()});
        for (const auto& jt : js.at("sos"))
            s.sos.push_back({jt.at("w").get<double>(),
                             poly_from_json(jt.at("q")).to_basis(Basis::Monomial)});
        c.add_summand(std::move(s));
    }
    if (c.degree_cap() == 0) c.degree_cap_ = c.max_term_degree();
    return c;
}

Certificate cert_scale(const Certificate& c, double w) {
    Certificate out(c.target() * w, c.degree_cap());
    for (const auto& s : c.summands()) {
        Summand ns;
        ns.generators = s.generators;
        for (const auto& t : s.sos) ns.sos.push_back({t.weight * w, t.q});
        out.add_summand(std::move(ns));
    }
    return out;
}

Certificate cert_add(const Certificate& a, const Certificate& b) {
    Certificate out(a.target() + b.target(), std::max(a.degree_cap(), b.degree_cap()));
    for (const auto& s : a.summands()) out.add_summand(s);
    for (const auto& s : b.summands()) out.add_summand(s);
    return out;
}

Certificate cert_product(const Certificate& a, const Certificate& b) {
    Certificate out(a.target() * b.target(), a.degree_cap() + b.degree_cap());
    for (const auto& sa : a.summands()) {
        for (const auto& sb : b.summands()) {
            Summand ns;
            ns.generators = sa.generators;
            ns.generators.insert(ns.generators.end(), sb.generators.begin(),
                                 sb.generators.end());
            std::sort(ns.generators.begin(), ns.generators.end());
            for (const auto& ta : sa.sos)
                for (const auto& tb : sb.sos)
                    ns.sos.push_back({ta.weight * tb.weight, ta.q * tb.q});
            out.add_summand(std::move(ns));
        }
    }
    return out;
}

Certificate decompose_univariate(int k, int sign) {
    if (k < 1) throw std::invalid_argument("decompose_univariate: k >= 1 required");
    if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +-1");

    Poly target = Poly::constant(1, 1.0) + chebyshev_t(k) * static_cast<double>(sign);
    Certificate cert(std::move(target), k);
    Summand s;
    const int m = k / 2;
    if (k % 2 == 0) {
        if (sign > 0) {
            // 1 + T_{2m} = 2 T_m^2
            s.sos.push_back({2.0, chebyshev_t(m)});
        } else {
            // 1 - T_{2m} = 2 (1-t)(1+t) U_{m-1}^2
            s.generators = {{0, -1}, {0, +1}};
            s.sos.push_back({2.0, chebyshev_u(m - 1)});
        }
    } else {
        if (sign > 0) {
            // 1 + T_{2m+1} = (1+t) V_m^2
            s.generators = {{0, +1}};
            s.sos.push_back({1.0, chebyshev_v(m)});
        } else {
            // 1 - T_{2m+1} = (1-t) W_m^2
            s.generators = {{0, -1}};
            s.sos.push_back({1.0, chebyshev_w(m)});
        }
    }
    cert.add_summand(std::move(s));
    return cert;
}

Certificate decompose_multi(const MultiIndex& alpha, int sign, const std::string& group) {
    if (alpha.is_zero()) throw std::invalid_argument("decompose_multi: alpha must be nonzero");
    if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +-1");
    const std::size_t n = alpha.size();

    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < n; ++i)
        if (alpha[i] > 0) support.push_back(i);

    if (support.size() == 1)
        return embed_univariate(decompose_univariate(alpha[support[0]], sign), n, support[0],
                                group);

    // Peel the lowest-index variable: with a = T_{alpha_i}(x_i), b = T_rest,
    //   1 + ab = [(1+a)(1+b) + (1-a)(1-b)] / 2
    //   1 - ab = [(1-a)(1+b) + (1+a)(1-b)] / 2
    const std::size_t i = support[0];
    MultiIndex rest = alpha;
    rest[i] = 0;

    const Certificate a_plus = embed_univariate(decompose_univariate(alpha[i], +1), n, i, group);
    const Certificate a_minus = embed_univariate(decompose_univariate(alpha[i], -1), n, i, group);
    const Certificate b_plus = decompose_multi(rest, +1, group);
    const Certificate b_minus = decompose_multi(rest, -1, group);

    Certificate out = (sign > 0)
                          ? cert_add(cert_product(a_plus, b_plus), cert_product(a_minus, b_minus))
                          : cert_add(cert_product(a_minus, b_plus), cert_product(a_plus, b_minus));
    return cert_scale(out, 0.5);
}

Certificate norm_gap_certificate(const Poly& p) {
    const Poly pc = p.to_basis(Basis::Chebyshev);
    const std::size_t n = p.nvars();
    const double norm = pc.coeff_one_norm(Basis::Chebyshev);

    Poly target = Poly::constant(n, norm, Basis::Monomial, p.var_group()) -
                  p.to_basis(Basis::Monomial);
    Certificate out(std::move(target), pc.degree());
    for (const auto& [alpha, c] : pc.terms()) {
        if (alpha.is_zero()) {
            // |p_0| - p_0: zero unless p_0 < 0, then the constant 2|p_0|
            if (c < 0) {
                Summand s;
                s.sos.push_back(
                    {-2.0 * c, Poly::constant(n, 1.0, Basis::Monomial, p.var_group())});
                out.add_summand(std::move(s));
            }
            continue;
        }
        const Certificate piece =
            cert_scale(decompose_multi(alpha, c > 0 ? -1 : +1, p.var_group()), std::abs(c));
        for (const auto& s : piece.summands()) out.add_summand(s);
    }
    return out;
}

Certificate shift_certificate(const Poly& f, const Poly& p, const Certificate& certP) {
    if (certP.degree_cap() < f.degree())
        throw std::invalid_argument("shift_certificate: degree cap below deg f");
    const Certificate gap = norm_gap_certificate(p - f);
    // f + ||p - f||_{1,T} = p + (||p - f||_{1,T} - (p - f))
    Certificate out = cert_add(certP, gap);
    return out;
}

}  // namespace chebcert
