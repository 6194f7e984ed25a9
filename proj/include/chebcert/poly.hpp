#ifndef CHEBCERT_POLY_HPP
#define CHEBCERT_POLY_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "chebcert/multi_index.hpp"

namespace chebcert {

enum class Basis { Monomial, Chebyshev, NormalizedChebyshev };

// Coefficients with |c| below this are dropped when maps are canonicalized.
inline constexpr double kCoeffEpsilon = 1e-13;

// Sparse multivariate polynomial tagged with its coefficient basis and a
// variable-group label.  Immutable in spirit: arithmetic returns new values.
class Poly {
public:
    using TermMap = std::map<MultiIndex, double>;

    Poly() : nvars_(0), basis_(Basis::Monomial) {}
    Poly(std::size_t nvars, Basis basis, std::string var_group = "x")
        : nvars_(nvars), basis_(basis), group_(std::move(var_group)) {}

    static Poly constant(std::size_t nvars, double c, Basis basis = Basis::Monomial,
                         std::string group = "x");
    // Single term c * x^alpha (or c * T_alpha, per basis).
    static Poly term(MultiIndex alpha, double c, Basis basis = Basis::Monomial,
                     std::string group = "x");
    // x_i in the monomial basis; equals T_{e_i} in the Chebyshev basis.
    static Poly variable(std::size_t nvars, std::size_t i, Basis basis = Basis::Monomial,
                         std::string group = "x");

    std::size_t nvars() const { return nvars_; }
    Basis basis() const { return basis_; }
    const std::string& var_group() const { return group_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    double coefficient(const MultiIndex& alpha) const;
    void set_coefficient(const MultiIndex& alpha, double c);
    void add_term(const MultiIndex& alpha, double c);

    int degree() const;
    // Degree counting only the variables whose indices are listed in `vars`.
    int degree_in(const std::vector<std::size_t>& vars) const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(double s) const;
    Poly operator*(const Poly& o) const;  // dispatches on basis

    double evaluate(const std::vector<double>& point) const;

    Poly to_basis(Basis target) const;

    // Sum of |coefficients| after conversion to the requested basis.
    double coeff_one_norm(Basis in_basis) const;

    // Drop terms below kCoeffEpsilon.
    void canonicalize();

private:
    void require_compatible(const Poly& o) const;

    std::size_t nvars_;
    Basis basis_;
    std::string group_;
    TermMap terms_;
};

inline Poly operator*(double s, const Poly& p) { return p * s; }

// Product of two Chebyshev-basis polynomials via the linearization
// T_j T_k = (T_{j+k} + T_{|j-k|}) / 2 applied per variable.
Poly cheb_mul(const Poly& a, const Poly& b);

Poly monomial_to_chebyshev(const Poly& p);
Poly chebyshev_to_monomial(const Poly& p);

// Univariate T_k as a monomial-basis Poly in one variable (memoized).
Poly chebyshev_t(int k);

}  // namespace chebcert

#endif
