#ifndef CHEBCERT_KERNEL_LIFT_HPP
#define CHEBCERT_KERNEL_LIFT_HPP

#include "chebcert/certificate.hpp"
#include "chebcert/poly.hpp"

namespace chebcert {

// Polynomials during lifting live over 3n variables in a fixed layout:
// u_i at index i, x_i at n+i, y_i at 2n+i, group label "uxy".  Lifted
// results use 2n variables: x_i at i, y_i at n+i, group label "xy".

// Embeds an n-variate polynomial into the u slots of the 3n layout.
Poly embed_u(const Poly& p);

// Substitutes u_i -> x_i y_i + s and reduces s^2 -> (1-x_i^2)(1-y_i^2),
// so that q(..., x_i y_i +- s, ...) = q0 +- s*q1.
struct SplitResult {
    Poly q0;
    Poly q1;
};
SplitResult split(const Poly& q, std::size_t n, std::size_t i);

// kappa^i(q): the s-free part of the substitution, i.e. the average of the
// two sign branches.
Poly kappa(const Poly& q, std::size_t n, std::size_t i);

// p = sum p_alpha T_alpha(u)  ->  K_p = sum p_alpha T_alpha(x) T_alpha(y),
// computed as the iterated kappa^n ... kappa^1 image.  Input: n variables,
// any basis; output: 2n variables, Chebyshev basis, group "xy".
Poly lift_polynomial(const Poly& p);

// Restriction K(x, 1), recovering the diagonal polynomial of a kernel.
Poly restrict_to_diagonal(const Poly& kernel_xy);

// Lifts a pre-ordering certificate for p in T(1 +- u)_r to one for K_p in
// T(1 +- x; 1 +- y)_{r,r}, processing one variable at a time via the four
// kappa^i identities.  Throws if the input certificate does not verify.
Certificate lift_certificate(const Certificate& cert);

}  // namespace chebcert

#endif
