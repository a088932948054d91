#include "kummergap/gap_bounds.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "kummergap/errors.hpp"

namespace kummergap {
namespace {

constexpr double kPi = 3.14159265358979323846;

} // namespace

double gap_factor(double a, double b) {
    const double arg = (b - 2.0 * a) * (b - 2.0 * a) - (b - 1.0) * (b - 1.0);
    if (!(arg > 0.0)) throw DomainError("gap factor: (b-2a)^2 must exceed (b-1)^2");
    return std::exp(2.0 * kPi / std::sqrt(arg));
}

double z_ratio_lower_bound(double a, double b) { return gap_factor(a, b); }

GapBoundResult gap_lower_bound(double a_k, double a_k_prev, double b, double z_l) {
    if (!(z_l > 0.0)) throw DomainError("gap bound: z must be positive");
    if (!(a_k < a_k_prev)) throw DomainError("gap bound: need a_k < a_k_prev");
    const double beta_k = b - 1.0 - a_k;
    if (!(beta_k > 0.0)) throw DomainError("gap bound: b - 1 - a_k must be positive");
    const double g_k = gap_factor(a_k, b);
    const double s = 2.0 + std::sqrt(z_l / beta_k) * (g_k - 1.0);
    const double bound = beta_k - beta_k / (4.0 * g_k) * s * s;
    const double beta_prev = b - 1.0 - a_k_prev;
    const double g_prev = gap_factor(a_k_prev, b);
    const bool ok = beta_prev > 0.0 && z_l < beta_prev / g_prev;
    return {a_k, b, z_l, g_k, beta_k, bound, ok};
}

MonotonicityThreshold monotonicity_threshold(double b) {
    if (!(b > 0.0)) throw DomainError("monotonicity threshold: b must be positive");
    const double bm1 = b - 1.0;
    std::array<double, 7> d{};
    d[0] = bm1 * bm1 * (2.0 * b - 3.0);
    d[1] = 0.0;
    d[2] = b * b - 2.0;
    d[3] = -bm1 * bm1 / kPi;
    d[4] = 1.0;
    d[5] = -1.0 / kPi;
    d[6] = 1.0 / (4.0 * kPi * kPi);

    Eigen::Matrix<double, 6, 6> comp = Eigen::Matrix<double, 6, 6>::Zero();
    for (int i = 1; i < 6; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < 6; ++i) comp(i, 5) = -d[i] / d[6];
    const Eigen::EigenSolver<Eigen::Matrix<double, 6, 6>> es(comp);

    std::vector<double> cands;
    for (int i = 0; i < 6; ++i) {
        std::complex<double> u = es.eigenvalues()[i];
        // Newton-polish the sextic root to convergence; the companion-matrix
        // estimate can start far off when the coefficients span many orders
        for (int it = 0; it < 48; ++it) {
            std::complex<double> p(d[6], 0.0), dp(0.0, 0.0);
            for (int k = 5; k >= 0; --k) {
                dp = dp * u + p;
                p = p * u + d[static_cast<size_t>(k)];
            }
            if (std::abs(dp) == 0.0) break;
            const std::complex<double> step = p / dp;
            u -= step;
            if (std::abs(step) <= 1e-15 * std::abs(u)) break;
        }
        // map back to the candidate zero and screen against the defining
        // stationarity identity; spurious sextic roots fail the ratio test
        const std::complex<double> c =
            0.5 * b - 0.5 * std::sqrt(std::complex<double>(bm1 * bm1, 0.0) + u * u);
        const std::complex<double> b2c = b - 2.0 * c;
        const std::complex<double> numer = 4.0 * kPi * (b - c - 1.0) * b2c;
        const std::complex<double> denom = std::pow(b2c * b2c - bm1 * bm1, 1.5);
        if (std::abs(denom) == 0.0) continue;
        if (std::abs(numer / denom - 1.0) > 1e-8) continue;
        if (std::abs(c.imag()) > 1e-9) continue;
        if (!(c.real() < 0.0)) continue;
        cands.push_back(c.real());
    }
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end(),
                            [](double x, double y) {
                                return std::abs(x - y) <= 1e-9 * std::max(1.0, std::abs(x));
                            }),
                cands.end());
    const double star =
        cands.empty() ? std::numeric_limits<double>::quiet_NaN() : cands.front();
    return {b, d, cands, star};
}

double nu_hat_threshold(double b, double z) {
    if (!(b > 0.0)) throw DomainError("nu hat: b must be positive");
    if (!(z > 0.0)) throw DomainError("nu hat: z must be positive");
    const auto f = [b, z](double beta) {
        const double arg = (2.0 * beta + 1.0) * (2.0 * beta - 2.0 * b + 3.0);
        if (!(arg > 0.0)) return std::numeric_limits<double>::infinity();
        return z * std::exp(2.0 * kPi / std::sqrt(arg)) - beta;
    };
    // f decreases strictly from +inf past the domain edge; bracket then bisect
    const double edge = std::max(-0.5, b - 1.5);
    double lo = edge + 1e-10;
    double hi = std::max({2.0 * z, b + 2.0, lo + 1.0});
    while (f(hi) > 0.0) {
        hi *= 2.0;
        if (hi > 1e12) throw BracketFailure("nu hat: no crossing found");
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= 1e-13 * std::max(1.0, std::abs(mid))) break;
        if (f(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return b - 0.5 * (lo + hi) - 1.0;
}

} // namespace kummergap
