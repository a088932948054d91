#pragma once
#include "kummergap/zero_finder.hpp"

namespace kummergap {

struct FirstPassageProblem {
    int m;              // Wiener dimension
    double n;           // dimensionless horizon, > 1
    double p_fa_desired;
    int n_terms;        // retained residue terms
    double b;           // m/2
    double y;           // detection threshold
    double z;           // y^2/2
    double u;           // ln n
};

struct PfaInterval {
    double upper;
    double eps_bar;
    double lower; // max(0, upper - eps_bar)
    double delta;
    ZeroSequence zeros_used;
};

struct Algorithm1Result {
    double delta;
    ZeroSequence zeros;
    double nu_hat;
    double a_bar_star; // 0 sentinel when no threshold exists
};

// first-order asymptotic false-alarm probability at threshold y
double approx_pfa(double y, int m, double n);

// invert approx_pfa on its strictly decreasing tail
double solve_threshold(double p_des, int m, double n);

FirstPassageProblem make_problem(int m, double n, double p_fa_desired, int n_terms);

// residue of the transform at its pole in 0: Phi(1, b+1, z)
double residue_at_zero(double b, double z);

// residue at the pole sitting on the zero nu_k of Phi(.,b,z); u = ln n
double residue_at_pole(double nu_k, double b, double z, double u);

// truncated residue expansion: an upper bound on the false-alarm probability
double pfa_upper(const FirstPassageProblem& problem, const ZeroSequence& zeros);

// bound on the dropped tail given the deepest kept zero and the gap floor
double truncation_bound(const FirstPassageProblem& problem, double nu_n, double delta);

// the gap-floor determination loop: zeros are appended one at a time until
// both thresholds are cleared and at least n_terms + 1 are in hand
Algorithm1Result algorithm1_delta(const FirstPassageProblem& problem);

// guaranteed two-sided enclosure of the false-alarm probability
PfaInterval pfa_interval(const FirstPassageProblem& problem);

// same, reusing an already-run gap determination
PfaInterval pfa_interval(const FirstPassageProblem& problem, const Algorithm1Result& alg);

} // namespace kummergap
