#include "kummergap/zero_finder.hpp"

#include <algorithm>
#include <cmath>

#include "kummergap/errors.hpp"
#include "kummergap/integrals.hpp"

namespace kummergap {
namespace {

constexpr double kScanStep = 0.05;
constexpr double kRefineRelTol = kZeroRefineRelTol;
constexpr double kDipRelTol = 1e-4;
constexpr int kDipDepthCap = 12;
constexpr double kPi = 3.14159265358979323846;

bool opposite(double f, double g) { return (f < 0.0) != (g < 0.0); }

} // namespace

ZeroScanner::ZeroScanner(double b, double z) : b_(b), z_(z), cursor_(0.0) {
    if (!(b > 0.0)) throw DomainError("zero scan: b must be positive");
    if (!(z > 0.0)) throw DomainError("zero scan: z must be positive");
    phi_cursor_ = eval(0.0).value.as_double(); // Phi(0,b,z) = 1
    envelope_ = std::abs(phi_cursor_);
}

KummerValue ZeroScanner::eval(double a) const { return kummer_m_unchecked(a, b_, z_); }

// hunt for a sign change hidden inside [lo,hi] by halving; the scan step is
// far below the minimum zero spacing, so this only fires on near-tangent dips
bool ZeroScanner::dip_bracket(double lo, double hi, int depth, double& out_lo,
                              double& out_hi) const {
    if (depth > kDipDepthCap) return false;
    const double mid = 0.5 * (lo + hi);
    const double fl = eval(lo).value.as_double();
    const double fm = eval(mid).value.as_double();
    const double fh = eval(hi).value.as_double();
    if (opposite(fl, fm)) {
        out_lo = lo;
        out_hi = mid;
        return true;
    }
    if (opposite(fm, fh)) {
        out_lo = mid;
        out_hi = hi;
        return true;
    }
    return dip_bracket(lo, mid, depth + 1, out_lo, out_hi) ||
           dip_bracket(mid, hi, depth + 1, out_lo, out_hi);
}

double ZeroScanner::refine(double lo, double hi) const {
    double flo = eval(lo).value.as_double();
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) return mid;
        const KummerValue km = eval(mid);
        const double fm = km.value.as_double();
        if (fm == 0.0) return mid;
        // the width alone is not enough near the origin, where the branch is
        // steep relative to the series scale: also insist on a residual well
        // inside the phi_is_zero gate
        if (hi - lo <= kRefineRelTol * std::max(1.0, std::abs(mid)) &&
            std::abs(fm) <= 0.25 * kZeroRelTol * km.max_term_magnitude.as_double())
            return mid;
        if (opposite(flo, fm)) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    throw BracketFailure("zero scan: bisection failed to converge");
}

double ZeroScanner::next() {
    const double limit = kPi * kPi * static_cast<double>((count_ + 5) * (count_ + 5)) / (4.0 * z_) +
                         b_ + 100.0;
    for (;;) {
        const double a1 = cursor_ - kScanStep;
        if (a1 < -limit) throw ScanExhausted("zero scan: no sign change before scan limit");
        const KummerValue k1 = eval(a1);
        const double f1 = k1.value.as_double();
        double lo = a1, hi = cursor_;
        bool have = false;
        if (opposite(phi_cursor_, f1)) {
            have = true;
        } else if (std::min(std::abs(f1), std::abs(phi_cursor_)) < kDipRelTol * envelope_) {
            have = dip_bracket(a1, cursor_, 0, lo, hi);
        }
        cursor_ = a1;
        phi_cursor_ = f1;
        envelope_ = std::max(std::abs(f1), 0.8 * envelope_);
        if (have) {
            ++count_;
            return refine(lo, hi);
        }
    }
}

ZeroSequence find_zeros(double b, double z, int count) {
    if (count < 0) throw DomainError("find_zeros: count must be nonnegative");
    ZeroScanner scan(b, z);
    ZeroSequence seq{b, z, {}, kRefineRelTol};
    seq.zeros.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) seq.zeros.push_back(scan.next());
    return seq;
}

namespace {

double refine_z(double a, double b, double lo, double hi) {
    double flo = kummer_m_unchecked(a, b, lo).value.as_double();
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= kRefineRelTol * std::max(1.0, std::abs(mid))) return mid;
        const double fm = kummer_m_unchecked(a, b, mid).value.as_double();
        if (fm == 0.0) return mid;
        if (opposite(flo, fm)) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    throw BracketFailure("z zero scan: bisection failed to converge");
}

constexpr int kZGridPoints = 3000;
constexpr double kZGridRate = 200.0;

} // namespace

std::vector<double> find_z_zeros(double a, double b, double span) {
    if (!(b > 0.0)) throw DomainError("z zero scan: b must be positive");
    if (!(span > 0.0)) throw DomainError("z zero scan: span must be positive");
    std::vector<double> out;
    if (a >= 0.0) return out; // every series term is nonnegative
    double z_prev = span;
    double f_prev = kummer_m_unchecked(a, b, z_prev).value.as_double();
    for (int j = 1; j <= kZGridPoints; ++j) {
        const double z_j = span * std::exp(-j / kZGridRate);
        const double f_j = kummer_m_unchecked(a, b, z_j).value.as_double();
        if (opposite(f_prev, f_j)) out.push_back(refine_z(a, b, z_j, z_prev));
        z_prev = z_j;
        f_prev = f_j;
    }
    std::sort(out.begin(), out.end());
    return out;
}

int count_positive_z_zeros(double a, double b) {
    if (!(b > 0.0)) throw DomainError("z zero count: b must be positive");
    if (a >= 0.0) return 0;
    const double span = (b - 2.0 * a) * (b - 2.0 * a);
    int n = 0;
    double f_prev = kummer_m_unchecked(a, b, span).value.as_double();
    for (int j = 1; j <= kZGridPoints; ++j) {
        const double f_j = kummer_m_unchecked(a, b, span * std::exp(-j / kZGridRate)).value.as_double();
        if (opposite(f_prev, f_j)) ++n;
        f_prev = f_j;
    }
    return n;
}

double trajectory_rhs(double a_star, double b, double z, double quad_tol) {
    if (!(b > 0.0)) throw DomainError("trajectory: b must be positive");
    if (!(z > 0.0)) throw DomainError("trajectory: z must be positive");
    const IntegralResult den = weighted_phi_sq_integral(a_star, b, z, quad_tol);
    const DDouble p1 = kummer_m(a_star + 1.0, b + 1.0, z).value;
    const DDouble num = sqr(DDouble(a_star) / b) * pow(DDouble(z), b) * exp(DDouble(-z)) * sqr(p1);
    return to_double(num) / den.value;
}

namespace {

constexpr double kOdeRelTol = 1e-8;
constexpr double kOdeAbsTol = 1e-10;
constexpr double kOdeQuadTol = 1e-9;

double rk45_leg(double a, double b, double z0, double z1) {
    if (z0 == z1) return a;
    const double dir = z1 > z0 ? 1.0 : -1.0;
    double z = z0;
    double h = dir * std::min(0.1, std::abs(z1 - z0));
    long steps = 0;
    while (dir * (z1 - z) > 0.0) {
        if (++steps > 100000) throw StepFailure("trajectory: step budget exhausted");
        bool last = false;
        if (dir * (z + h - z1) >= 0.0) {
            h = z1 - z;
            last = true;
        }
        // Cash-Karp stages
        const double k1 = trajectory_rhs(a, b, z, kOdeQuadTol);
        const double k2 = trajectory_rhs(a + h * (0.2 * k1), b, z + 0.2 * h, kOdeQuadTol);
        const double k3 = trajectory_rhs(a + h * (3.0 / 40.0 * k1 + 9.0 / 40.0 * k2), b,
                                         z + 0.3 * h, kOdeQuadTol);
        const double k4 = trajectory_rhs(a + h * (0.3 * k1 - 0.9 * k2 + 1.2 * k3), b, z + 0.6 * h,
                                         kOdeQuadTol);
        const double k5 = trajectory_rhs(
            a + h * (-11.0 / 54.0 * k1 + 2.5 * k2 - 70.0 / 27.0 * k3 + 35.0 / 27.0 * k4), b, z + h,
            kOdeQuadTol);
        const double k6 = trajectory_rhs(
            a + h * (1631.0 / 55296.0 * k1 + 175.0 / 512.0 * k2 + 575.0 / 13824.0 * k3 +
                     44275.0 / 110592.0 * k4 + 253.0 / 4096.0 * k5),
            b, z + 0.875 * h, kOdeQuadTol);
        const double a5 =
            a + h * (37.0 / 378.0 * k1 + 250.0 / 621.0 * k3 + 125.0 / 594.0 * k4 +
                     512.0 / 1771.0 * k6);
        const double a4 =
            a + h * (2825.0 / 27648.0 * k1 + 18575.0 / 48384.0 * k3 + 13525.0 / 55296.0 * k4 +
                     277.0 / 14336.0 * k5 + 0.25 * k6);
        const double err = std::abs(a5 - a4);
        const double tol = kOdeAbsTol + kOdeRelTol * std::max(std::abs(a), std::abs(a5));
        if (err <= tol) {
            a = a5;
            z = last ? z1 : z + h;
        }
        const double fac = err > 0.0 ? 0.9 * std::pow(tol / err, 0.2) : 5.0;
        h *= std::clamp(fac, 0.2, 5.0);
        if (std::abs(h) < 1e-12 * std::max(1.0, std::abs(z)))
            throw StepFailure("trajectory: step size underflow");
    }
    return a;
}

} // namespace

std::vector<double> integrate_trajectory_path(double a_start, double b, double z_start,
                                              const std::vector<double>& targets) {
    if (!(b > 0.0)) throw DomainError("trajectory: b must be positive");
    if (!(z_start > 0.0)) throw DomainError("trajectory: start must be positive");
    std::vector<double> out;
    out.reserve(targets.size());
    double a = a_start, z = z_start;
    for (const double zt : targets) {
        if (!(zt > 0.0)) throw DomainError("trajectory: targets must be positive");
        a = rk45_leg(a, b, z, zt);
        z = zt;
        out.push_back(a);
    }
    return out;
}

double integrate_trajectory(double a_start, double b, double z_start, double z_end) {
    return integrate_trajectory_path(a_start, b, z_start, {z_end}).back();
}

double approx_trajectory(double a_k, double b, double z_l, double z) {
    if (!(b > 0.0)) throw DomainError("approx trajectory: b must be positive");
    if (!(z_l > 0.0) || !(z > 0.0)) throw DomainError("approx trajectory: z must be positive");
    const double beta = b - 1.0 - a_k;
    if (!(beta > 0.0)) throw DomainError("approx trajectory: b - 1 - a_k must be positive");
    const double s = std::sqrt(z_l / z) * (2.0 * std::sqrt(beta) - std::sqrt(z_l)) + std::sqrt(z);
    return b - 1.0 - 0.25 * s * s;
}

} // namespace kummergap
