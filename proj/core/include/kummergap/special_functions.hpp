#pragma once
#include "kummergap/ddouble.hpp"
#include "kummergap/errors.hpp"

namespace kummergap {

// digits of cancellation a summation may shed before the checked entry
// point declares the value unreliable (~32 working digits minus the 12
// the deliverables need)
inline constexpr double kPrecisionBudgetDigits = 20.0;

// scale-aware zero test: |phi| <= kZeroRelTol * max_term_magnitude
inline constexpr double kZeroRelTol = 1e-9;

struct KummerValue {
    DDouble value;
    DDouble max_term_magnitude; // largest |term| met while summing
    double cancellation_digits; // log10(max_term / |value|), >= 0
    int terms_used;             // >= 1
};

// rising factorial x(x+1)...(x+n-1); 1 for n = 0
DDouble pochhammer(double x, int n);

// Phi(a,b,z) = sum (a)_n / ((b)_n n!) z^n with cancellation diagnostics.
// Throws PoleEmbedded for nonpositive-integer b and PrecisionExhausted
// when cancellation_digits exceeds the precision budget.
KummerValue kummer_m(double a, double b, double z);

// same summation without the PrecisionExhausted gate; zero refinement
// deliberately drives |value|/max_term below any fixed budget
KummerValue kummer_m_unchecked(double a, double b, double z);

// d/dz Phi(a,b,z) = (a/b) Phi(a+1, b+1, z)
DDouble kummer_m_dz(double a, double b, double z);

// Gamma(b,z)/Gamma(b): series for z < b+1, continued fraction otherwise
double regularized_gamma_q(double b, double z);

// |Phi(a,b,z)| <= kZeroRelTol * max_term_magnitude
bool phi_is_zero(double a, double b, double z);

} // namespace kummergap
