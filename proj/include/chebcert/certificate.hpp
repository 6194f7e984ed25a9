#ifndef CHEBCERT_CERTIFICATE_HPP
#define CHEBCERT_CERTIFICATE_HPP

#include <json.hpp>

#include "chebcert/poly.hpp"

namespace chebcert {

// 1 + sign * x_var, a degree-1 generator of the pre-ordering
// T(1-x_1, 1+x_1, ..., 1-x_n, 1+x_n).
struct Generator {
    std::size_t var;
    int sign;  // +1 or -1

    auto operator<=>(const Generator&) const = default;
};

struct SosTerm {
    double weight;  // >= 0
    Poly q;         // monomial basis
};

// One branch  (sum_j w_j q_j^2) * prod_{g in I} (1 + sign_g x_g).
struct Summand {
    std::vector<Generator> generators;
    std::vector<SosTerm> sos;
};

// Pre-ordering decomposition with degree bookkeeping.  Polys are stored in
// the monomial basis; conversion happens at the boundary.
class Certificate {
public:
    Certificate() = default;
    Certificate(Poly target, int degree_cap)
        : target_(std::move(target)), degree_cap_(degree_cap) {}

    const Poly& target() const { return target_; }
    const std::vector<Summand>& summands() const { return summands_; }
    int degree_cap() const { return degree_cap_; }

    void add_summand(Summand s) { summands_.push_back(std::move(s)); }

    // sum_I (sum_j w_j q_j^2) prod_{g in I} g, in the monomial basis.
    Poly expand() const;

    // Max-abs monomial coefficient of expand() - target().
    double verify() const;

    // max over sos terms of |I| + 2 deg(q)
    int max_term_degree() const;
    bool respects_degree_cap() const { return max_term_degree() <= degree_cap_; }

    // Per-variable-subset degree of a summand term, for doubled-group checks.
    static int term_degree_in(const Summand& s, const SosTerm& t,
                              const std::vector<std::size_t>& vars);

    nlohmann::json to_json() const;
    static Certificate from_json(const nlohmann::json& j);

private:
    Poly target_;
    std::vector<Summand> summands_;
    int degree_cap_ = 0;
};

// Algebra on certificates; targets combine accordingly.
Certificate cert_scale(const Certificate& c, double w);
Certificate cert_add(const Certificate& a, const Certificate& b);
Certificate cert_product(const Certificate& a, const Certificate& b);

// Closed-form certificate for 1 + sign*T_k(t), univariate, of degree exactly k.
Certificate decompose_univariate(int k, int sign);

// Certificate for 1 + sign*T_alpha in T(1 +- x_1, ..., 1 +- x_n)_{|alpha|},
// built by recursing on the 1 +- ab product identities.
Certificate decompose_multi(const MultiIndex& alpha, int sign,
                            const std::string& var_group = "x");

// Certificate for ||p||_{1,T} - p of degree <= deg p.
Certificate norm_gap_certificate(const Poly& p);

// Given certP for p in T(1 +- x)_d with d >= deg f, certifies
// f + ||p - f||_{1,T} in T(1 +- x)_d.
Certificate shift_certificate(const Poly& f, const Poly& p, const Certificate& certP);

// Chebyshev polynomials of the second/third/fourth kinds (monomial basis,
// one variable), all from the shared recurrence p_{k+1} = 2t p_k - p_{k-1}.
Poly chebyshev_u(int k);
Poly chebyshev_v(int k);
Poly chebyshev_w(int k);

}  // namespace chebcert

#endif
