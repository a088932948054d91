#pragma once
#include <array>
#include <cmath>
#include <vector>

namespace kummergap {

struct GapBoundResult {
    double a_k;
    double b;
    double z_l;
    double g_k;
    double beta_k;
    double bound;
    bool precondition_ok;
};

struct MonotonicityThreshold {
    double b;
    std::array<double, 7> sextic_coeffs; // ascending powers
    std::vector<double> roots;           // feasible real candidates, ascending
    double a_bar_star;                   // NaN when no candidate survives
    bool present() const { return !std::isnan(a_bar_star); }
};

// g = exp(2 pi / sqrt((b-2a)^2 - (b-1)^2))
double gap_factor(double a, double b);

// adjacent positive-z zeros of Phi(a,b,.) satisfy z_{l+1}/z_l > this
double z_ratio_lower_bound(double a, double b);

// lower bound on the gap a_{k-1} - a_k once z_l < beta_{k-1}/g_{k-1}
GapBoundResult gap_lower_bound(double a_k, double a_k_prev, double b, double z_l);

// deepest zero below which gaps grow monotonically: the feasible real roots
// of a sextic, screened through the defining stationarity conditions
MonotonicityThreshold monotonicity_threshold(double b);

// solve z e^{2 pi / sqrt((2 bh + 1)(2 bh - 2b + 3))} = bh, return b - bh - 1
double nu_hat_threshold(double b, double z);

} // namespace kummergap
