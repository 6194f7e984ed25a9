#ifndef CHEBCERT_SOS_HPP
#define CHEBCERT_SOS_HPP

#include <map>

#include "chebcert/poly.hpp"
#include "chebcert/sdp.hpp"

namespace chebcert {

enum class SchemeKind { PlusMinus, Squares };

// One admissible generator subset I together with its expanded product
// prod_{g in I} g (Chebyshev basis) and the Gram monomial basis attached
// to it under the total degree cap r.
struct SchemeSubset {
    std::vector<std::pair<std::size_t, int>> generators;  // (var, sign); sign 0 = 1-x^2
    Poly product;                                         // Chebyshev basis
    int degree;                                           // deg of the product
    std::vector<MultiIndex> gram_basis;                   // Chebyshev monomials T_beta
};

// Enumerated truncated pre-ordering: 2^{2n} subsets of {1 -+ x_i} for
// PlusMinus, 2^n subsets of {1 - x_i^2} for Squares, pruned at degree > r.
class PreorderingScheme {
public:
    PreorderingScheme(SchemeKind kind, std::size_t nvars, int r);

    SchemeKind kind() const { return kind_; }
    std::size_t nvars() const { return nvars_; }
    int degree_cap() const { return r_; }
    const std::vector<SchemeSubset>& subsets() const { return subsets_; }

private:
    SchemeKind kind_;
    std::size_t nvars_;
    int r_;
    std::vector<SchemeSubset> subsets_;
};

struct BoundResult {
    double value;
    SolveReport report;
};

// sup lambda with f - lambda in the degree-r truncated pre-ordering, by
// Chebyshev-coefficient matching against Gram-matrix expansions.
// Requires deg f <= r.
BoundResult lower_bound(const Poly& f, int r, SchemeKind scheme,
                        const SolveOptions& options = {});

struct ThetaResult {
    std::size_t n;
    int d;
    int r;
    double bound;
    std::map<MultiIndex, double> kernel_coefficients;  // p_alpha, 0 < |alpha| <= r
    SolveReport report;
};

// min t  s.t.  -t <= 1 - p_alpha <= t for 0 < |alpha| <= d  and
//              1 + sum_{0 < |alpha| <= r} 2^{omega(alpha)} p_alpha T_alpha
//              lies in T(1 -+ x)_r.
ThetaResult theta_upper_bound(std::size_t n, int d, int r,
                              const SolveOptions& options = {});

struct RhoResult {
    int d;
    double rho;                  // sum of lambda_star
    std::vector<double> lambda;  // lambda_0 .. lambda_n
    SolveReport report;
};

// min sum_i lambda_i  s.t.  f + lambda_0 + sum_i lambda_i x_i^{2d} is a
// degree-2d sum of squares, lambda >= 0 (monomial-basis matching).
// Requires deg f <= 2d.
RhoResult rho(const Poly& f, int d, const SolveOptions& options = {});

// -rho_d(f), a certified lower bound for f on the hypercube.
double corollary_lower_bound(const Poly& f, int d);

}  // namespace chebcert

#endif
