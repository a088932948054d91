#pragma once
#include "kummergap/special_functions.hpp"

namespace kummergap {

struct IntegralResult {
    double value;
    double abs_error_estimate;
    int panels_used;
};

// I(a,b,z) = int_0^z t^{b-1} e^{-t} Phi^2(a,b,t) dt by adaptive
// Gauss-Kronrod quadrature, relative error <= tol.  The integrable
// endpoint t^{b-1} for b < 1 is handled by a dyadically graded head mesh.
IntegralResult weighted_phi_sq_integral(double a, double b, double z, double tol = 1e-10);

// closed form of int_0^z t^{b-1} e^{-t} Phi(xi,b,t) Phi(eta,b,t) dt
double product_integral_closed_form(double xi, double eta, double b, double z);

// closed form of int_0^z (k/t - 1/2) e^{-t} t^b Phi^2(a,b,t) dt
// with k = b/2 - a; at a zero of Phi(.,b,z) the Phi(a,b,z) terms drop
double self_integral_closed_form(double a, double b, double z);

// ((b-1)^2/(-1-a+b)) int_0^z t^{b-2} e^{-t} Phi^2(a,b-1,t) dt, which
// equals I(a,b,z) whenever Phi(a,b,z) = 0; requires b > 1
double integral_recursion_rhs(double a, double b, double z, double tol = 1e-10);

// a^2 e^{-z} z^{b-1} Phi^2(a+1,b,z) / (beta - sqrt(z beta)) with
// beta = -1-a+b; requires z < beta and Phi(a,b,z) = 0
double integral_upper_bound(double a, double b, double z);

// 2 a^2 e^{-z} z^{b+1} Phi^2(a+1,b+1,z) / (b^2 (b-2a));
// requires Phi(a,b,z) = 0
double integral_lower_bound(double a, double b, double z);

namespace detail {
// int_0^z t^p e^{-t} Phi^2(a,b_phi,t) dt for the recursion and the
// decomposition checks; grades the head mesh when p < 0
IntegralResult weighted_integral_general(double a, double b_phi, double p, double z, double tol);
} // namespace detail

} // namespace kummergap
