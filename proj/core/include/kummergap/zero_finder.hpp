#pragma once
#include <vector>

#include "kummergap/special_functions.hpp"

namespace kummergap {

// relative bracket width at which bisection stops
inline constexpr double kZeroRefineRelTol = 1e-12;

struct ZeroSequence {
    double b;
    double z;
    std::vector<double> zeros; // descending: zeros[0] is the one nearest 0
    double refine_tol;
};

// walks Phi(.,b,z) leftward from 0 and yields its zeros -- all simple and
// negative -- one at a time in descending order
class ZeroScanner {
  public:
    ZeroScanner(double b, double z);
    double next();
    long found() const { return count_; }

  private:
    KummerValue eval(double a) const;
    bool dip_bracket(double lo, double hi, int depth, double& out_lo, double& out_hi) const;
    double refine(double lo, double hi) const;

    double b_, z_;
    double cursor_;
    double phi_cursor_;
    double envelope_;
    long count_ = 0;
};

ZeroSequence find_zeros(double b, double z, int count);

// positive-z zeros of Phi(a,b,.) inside (0, span], ascending
std::vector<double> find_z_zeros(double a, double b, double span);

// number of positive zeros of Phi(a,b,.); the scan span (b-2a)^2 covers them
int count_positive_z_zeros(double a, double b);

// slope da*/dz of the zero trajectory through (a_star, z)
double trajectory_rhs(double a_star, double b, double z, double quad_tol = 1e-10);

// follow the zero trajectory a*(z) from (a_start, z_start) to z_end with an
// embedded Cash-Karp 4(5) pair
double integrate_trajectory(double a_start, double b, double z_start, double z_end);

// same, reporting a*(z) at each target in sequence
std::vector<double> integrate_trajectory_path(double a_start, double b, double z_start,
                                              const std::vector<double>& targets);

// closed-form underestimate of the trajectory through (a_k, z_l) at z
double approx_trajectory(double a_k, double b, double z_l, double z);

} // namespace kummergap
