#ifndef CHEBCERT_JACKSON_HPP
#define CHEBCERT_JACKSON_HPP

#include <optional>

#include "chebcert/poly.hpp"

namespace chebcert {

// lambda_k^r of the degree-r Jackson kernel
//   K_r(x,y) = 1 + sum_{k=1}^r lambda_k^r That_k(x) That_k(y).
// lambda_0^r = 1 and 0 < lambda_k^r <= 1 for 1 <= k <= r.
double jackson_coefficient(int k, int r);

// Product kernel K(x,y) = prod_i K_r^ja(x_i, y_i); coefficients are computed
// per multi-index from the memoized univariate factors, never as a dense
// (r+1)^n tensor.
class KernelCoefficients {
public:
    KernelCoefficients(std::size_t nvars, int degree_cap_per_var);

    std::size_t nvars() const { return nvars_; }
    int degree_cap() const { return r_; }

    // lambda_alpha = prod_i lambda_{alpha_i}^r; zero once any alpha_i > r.
    double lambda(const MultiIndex& alpha) const;

    // Does every alpha_i stay within the univariate kernel degree?
    bool covers(const MultiIndex& alpha) const;

private:
    std::size_t nvars_;
    int r_;
    std::vector<double> univariate_;  // lambda_0..lambda_r
};

KernelCoefficients product_kernel(std::size_t nvars, int r);

// Coefficientwise smoothing: f_alpha -> lambda_alpha f_alpha in the
// Chebyshev basis.  Throws if some term of f lies outside the kernel support.
Poly smooth(const Poly& f, const KernelCoefficients& kernel);

// Certified bound pi^2 d^2 / (r+2)^2 * ||f||_{1,T} on f_min - fhat_(rn),
// valid when pi d < r+2 (r = per-variable degree).  Empty when the premise
// fails and the bound is vacuous.
std::optional<double> apriori_gap_bound(int d, int r, double norm1T);

// Univariate Jackson kernel value K_r^ja(x, y).
double jackson_kernel_value(int r, double x, double y);

}  // namespace chebcert

#endif
