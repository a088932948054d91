#include "kummergap/first_passage.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kummergap/errors.hpp"
#include "kummergap/gap_bounds.hpp"
#include "kummergap/integrals.hpp"

namespace kummergap {
namespace {

// the residue coefficients carry ~4 extra digits past the final probability,
// so their integrals need a correspondingly tight quadrature
constexpr double kResidueQuadTol = 1e-12;

} // namespace

double approx_pfa(double y, int m, double n) {
    if (m < 1) throw DomainError("approx pfa: m must be positive");
    if (!(y > 0.0)) throw DomainError("approx pfa: y must be positive");
    if (!(n > 1.0)) throw DomainError("approx pfa: n must exceed 1");
    const double b = 0.5 * m;
    const double pref =
        std::exp(-0.5 * y * y + m * std::log(y) - std::lgamma(b) - b * std::numbers::ln2);
    return pref * (std::log(n) * (1.0 - m / (y * y)) + 4.0 / (y * y));
}

double solve_threshold(double p_des, int m, double n) {
    if (!(p_des > 0.0 && p_des < 0.5))
        throw DomainError("solve threshold: p_des must lie in (0, 0.5)");
    if (m < 1) throw DomainError("solve threshold: m must be positive");
    if (!(n > 1.0)) throw DomainError("solve threshold: n must exceed 1");
    // locate the crest, then bisect down the strictly decreasing tail
    double y_peak = 0.1, p_peak = -1.0;
    for (double y = 0.1; y <= 40.0; y += 0.1) {
        const double p = approx_pfa(y, m, n);
        if (p > p_peak) {
            p_peak = p;
            y_peak = y;
        }
    }
    if (!(p_peak > p_des)) throw BracketFailure("solve threshold: p_des above the crest");
    double lo = y_peak, hi = y_peak + 1.0;
    while (approx_pfa(hi, m, n) > p_des) {
        hi += 1.0;
        if (hi > 1e3) throw BracketFailure("solve threshold: no tail crossing found");
    }
    for (int i = 0; i < 300; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= 1e-14 * mid) break;
        if (approx_pfa(mid, m, n) > p_des) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

FirstPassageProblem make_problem(int m, double n, double p_fa_desired, int n_terms) {
    if (m < 1) throw DomainError("problem: m must be positive");
    if (!(n > 1.0)) throw DomainError("problem: n must exceed 1");
    if (n_terms < 1) throw DomainError("problem: need at least one retained term");
    const double y = solve_threshold(p_fa_desired, m, n);
    return {m, n, p_fa_desired, n_terms, 0.5 * m, y, 0.5 * y * y, std::log(n)};
}

double residue_at_zero(double b, double z) {
    if (!(b > 0.0)) throw DomainError("residue: b must be positive");
    if (!(z > 0.0)) throw DomainError("residue: z must be positive");
    return kummer_m(1.0, b + 1.0, z).value.as_double();
}

double residue_at_pole(double nu_k, double b, double z, double u) {
    if (!(u >= 0.0)) throw PreconditionViolated("residue: u must be nonnegative");
    if (!phi_is_zero(nu_k, b, z))
        throw PreconditionViolated("residue: nu_k is not a zero of Phi(.,b,z)");
    const DDouble p1 = kummer_m(nu_k + 1.0, b + 1.0, z).value;
    const double ik = weighted_phi_sq_integral(nu_k, b, z, kResidueQuadTol).value;
    const DDouble num = pow(DDouble(z), b) * exp(DDouble(nu_k * u - z)) * sqr(p1);
    return to_double(-num / (b * ik));
}

double pfa_upper(const FirstPassageProblem& problem, const ZeroSequence& zeros) {
    if (static_cast<int>(zeros.zeros.size()) < problem.n_terms)
        throw PreconditionViolated("pfa upper: zero sequence shorter than N");
    const double b = problem.b;
    const double z = problem.z;
    const double gamma_b = std::tgamma(b);
    // survivor term + residue at zero; their sum is 1 by the incomplete-gamma
    // identity, computed independently here
    const DDouble zbe = pow(DDouble(z), b) * exp(DDouble(-z));
    DDouble acc = DDouble(regularized_gamma_q(b, z)) +
                  zbe * kummer_m(1.0, b + 1.0, z).value / (b * gamma_b);
    const DDouble coeff = sqr(zbe) / (b * b * gamma_b);
    const DDouble ln_n = log(DDouble(problem.n));
    for (int k = 0; k < problem.n_terms; ++k) {
        const double nu = zeros.zeros[static_cast<size_t>(k)];
        const DDouble p1 = kummer_m(nu + 1.0, b + 1.0, z).value;
        const double ik = weighted_phi_sq_integral(nu, b, z, kResidueQuadTol).value;
        acc -= coeff * exp(ln_n * nu) * sqr(p1) / ik;
    }
    return to_double(acc);
}

double truncation_bound(const FirstPassageProblem& problem, double nu_n, double delta) {
    if (!(nu_n < 0.0)) throw DomainError("truncation bound: nu_N must be negative");
    if (!(delta > 0.0)) throw DomainError("truncation bound: delta must be positive");
    if (!(problem.n > 1.0)) throw DomainError("truncation bound: n must exceed 1");
    const DDouble ln_n = log(DDouble(problem.n));
    const DDouble geom = exp(ln_n * delta) - 1.0; // n^delta - 1
    if (!(to_double(geom) > 0.0)) throw DomainError("truncation bound: n^delta must exceed 1");
    const DDouble num = pow(DDouble(problem.z), problem.b - 1.0) * exp(DDouble(-problem.z)) *
                        (problem.b - 2.0 * nu_n) * exp(ln_n * nu_n);
    const DDouble den = 2.0 * sqr(DDouble(nu_n)) * std::tgamma(problem.b) * geom;
    return to_double(num / den);
}

Algorithm1Result algorithm1_delta(const FirstPassageProblem& problem) {
    const double nu_hat = nu_hat_threshold(problem.b, problem.z);
    const MonotonicityThreshold mono = monotonicity_threshold(problem.b);
    // absent threshold: every zero is negative, so gating against 0 is
    // vacuous and the gap bound holds at any depth
    const double gate = mono.present() ? mono.a_bar_star : 0.0;

    std::vector<double> nu;
    ZeroScanner scan(problem.b, problem.z);
    nu.push_back(scan.next());
    nu.push_back(scan.next());
    long i = 2; // 1-based count: nu[i-1] is the i-th zero
    while (nu[static_cast<size_t>(i - 2)] >= nu_hat || nu[static_cast<size_t>(i - 1)] >= gate ||
           i < problem.n_terms + 1) {
        if (i > 10000) throw ScanExhausted("gap algorithm: zero budget exhausted");
        nu.push_back(scan.next());
        ++i;
    }

    const size_t k = nu.size();
    const GapBoundResult tail = gap_lower_bound(nu[k - 1], nu[k - 2], problem.b, problem.z);
    if (!tail.precondition_ok)
        throw PreconditionViolated("gap algorithm: deepest zero fails the z < beta/g gate");
    double delta = tail.bound;
    for (size_t j = static_cast<size_t>(problem.n_terms); j + 1 < k; ++j)
        delta = std::min(delta, nu[j - 1] - nu[j]);

    ZeroSequence seq{problem.b, problem.z, std::move(nu), kZeroRefineRelTol};
    return {delta, std::move(seq), nu_hat, mono.present() ? mono.a_bar_star : 0.0};
}

PfaInterval pfa_interval(const FirstPassageProblem& problem, const Algorithm1Result& alg) {
    const double upper = pfa_upper(problem, alg.zeros);
    const double eps =
        truncation_bound(problem, alg.zeros.zeros[static_cast<size_t>(problem.n_terms - 1)],
                         alg.delta);
    const double lower = std::max(0.0, upper - eps);
    return {upper, eps, lower, alg.delta, alg.zeros};
}

PfaInterval pfa_interval(const FirstPassageProblem& problem) {
    return pfa_interval(problem, algorithm1_delta(problem));
}

} // namespace kummergap
