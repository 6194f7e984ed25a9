#include "chebcert/jackson.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace chebcert {

double jackson_coefficient(int k, int r) {
    if (r < 1) throw std::invalid_argument("jackson_coefficient: r must be >= 1");
    if (k < 0 || k > r) throw std::invalid_argument("jackson_coefficient: need 0 <= k <= r");
    if (k == 0) return 1.0;
    const double theta = std::numbers::pi / (r + 2);
    return ((r + 2 - k) * std::cos(k * theta) +
            std::sin(k * theta) / std::sin(theta) * std::cos(theta)) /
           (r + 2);
}

KernelCoefficients::KernelCoefficients(std::size_t nvars, int degree_cap_per_var)
    : nvars_(nvars), r_(degree_cap_per_var) {
    if (nvars_ < 1 || r_ < 1) throw std::invalid_argument("KernelCoefficients: need n, r >= 1");
    univariate_.resize(r_ + 1);
    for (int k = 0; k <= r_; ++k) univariate_[k] = jackson_coefficient(k, r_);
}

double KernelCoefficients::lambda(const MultiIndex& alpha) const {
    double v = 1.0;
    for (int e : alpha) {
        if (e > r_) return 0.0;
        v *= univariate_[e];
    }
    return v;
}

bool KernelCoefficients::covers(const MultiIndex& alpha) const {
    for (int e : alpha) if (e > r_) return false;
    return true;
}

KernelCoefficients product_kernel(std::size_t nvars, int r) {
    return KernelCoefficients(nvars, r);
}

Poly smooth(const Poly& f, const KernelCoefficients& kernel) {
    if (f.basis() != Basis::Chebyshev)
        throw std::invalid_argument("smooth: f must be in the Chebyshev basis");
    if (f.nvars() != kernel.nvars()) throw std::invalid_argument("smooth: nvars mismatch");
    Poly out(f.nvars(), Basis::Chebyshev, f.var_group());
    for (const auto& [alpha, c] : f.terms()) {
        if (!kernel.covers(alpha))
            throw std::invalid_argument("smooth: coefficient outside kernel support");
        out.add_term(alpha, kernel.lambda(alpha) * c);
    }
    return out;
}

std::optional<double> apriori_gap_bound(int d, int r, double norm1T) {
    const double pi = std::numbers::pi;
    if (pi * d >= r + 2) return std::nullopt;
    return pi * pi * d * d / ((r + 2.0) * (r + 2.0)) * norm1T;
}

double jackson_kernel_value(int r, double x, double y) {
    std::vector<double> tx(r + 1), ty(r + 1);
    tx[0] = ty[0] = 1.0;
    if (r >= 1) { tx[1] = x; ty[1] = y; }
    for (int k = 2; k <= r; ++k) {
        tx[k] = 2.0 * x * tx[k - 1] - tx[k - 2];
        ty[k] = 2.0 * y * ty[k - 1] - ty[k - 2];
    }
    double sum = 1.0;  // That_k That_k = 2 T_k T_k for k >= 1
    for (int k = 1; k <= r; ++k) sum += 2.0 * jackson_coefficient(k, r) * tx[k] * ty[k];
    return sum;
}

}  // namespace chebcert
