#include "kummergap/special_functions.hpp"

#include <cmath>
#include <string>

namespace kummergap {

namespace {

constexpr int kMaxTerms = 100000;
constexpr double kTermRelTol = 1e-25;

bool is_nonpositive_integer(double b) { return b <= 0.0 && b == std::floor(b); }

KummerValue sum_series(double a, double b, double z) {
    if (is_nonpositive_integer(b))
        throw PoleEmbedded("kummer_m: b = " + std::to_string(b) + " is a nonpositive integer");

    KummerValue out;
    out.value = DDouble(1.0);
    out.max_term_magnitude = DDouble(1.0);
    out.terms_used = 1;

    // factors (a+n), (b+n) are carried in double-double so the recurrence
    // stays exact; a plain double a+n would poison the summation at 1e-16
    DDouble term(1.0);
    DDouble an(a), bn(b);
    double max_abs = 1.0;
    int peak_n = 0;
    int below = 0;
    bool polynomial = false;

    for (int n = 0; n < kMaxTerms; ++n) {
        if (an.hi() == 0.0 && an.lo() == 0.0) {
            // nonpositive-integer a: the series is a polynomial that
            // terminated exactly at the previous term
            out.terms_used = n + 1;
            polynomial = true;
            break;
        }
        term = term * an * z / (bn * (n + 1.0));
        an += 1.0;
        bn += 1.0;
        out.value += term;
        out.terms_used = n + 2;

        double t_abs = std::fabs(term.hi());
        if (std::isinf(t_abs) || std::isnan(t_abs))
            throw PrecisionExhausted("kummer_m: term overflow at n = " + std::to_string(n));
        if (t_abs > max_abs) {
            max_abs = t_abs;
            out.max_term_magnitude = abs(term);
            peak_n = n + 1;
        }

        if (t_abs < kTermRelTol * std::fabs(out.value.hi()) && n + 1 > peak_n) {
            if (++below >= 3) break;
        } else {
            below = 0;
        }
    }

    double v_abs = std::fabs(out.value.hi());
    if (v_abs == 0.0)
        // a terminated polynomial summing to exactly 0 is an exact zero; a
        // nonterminating series collapsing to 0 has lost every digit
        out.cancellation_digits = polynomial ? 0.0 : 2.0 * kPrecisionBudgetDigits;
    else
        out.cancellation_digits = std::max(0.0, std::log10(max_abs / v_abs));
    return out;
}

} // namespace

DDouble pochhammer(double x, int n) {
    if (n < 0) throw DomainError("pochhammer: negative n");
    DDouble prod(1.0);
    DDouble xi(x);
    for (int i = 0; i < n; ++i) {
        prod *= xi;
        xi += 1.0;
    }
    return prod;
}

KummerValue kummer_m_unchecked(double a, double b, double z) { return sum_series(a, b, z); }

KummerValue kummer_m(double a, double b, double z) {
    KummerValue v = sum_series(a, b, z);
    if (v.cancellation_digits > kPrecisionBudgetDigits)
        throw PrecisionExhausted("kummer_m(" + std::to_string(a) + ", " + std::to_string(b) +
                                 ", " + std::to_string(z) + "): cancellation of " +
                                 std::to_string(v.cancellation_digits) +
                                 " digits exceeds the precision budget");
    return v;
}

DDouble kummer_m_dz(double a, double b, double z) {
    if (a == 0.0) return DDouble();
    return DDouble(a) / b * kummer_m(a + 1.0, b + 1.0, z).value;
}

bool phi_is_zero(double a, double b, double z) {
    KummerValue v = kummer_m_unchecked(a, b, z);
    return std::fabs(v.value.hi()) <= kZeroRelTol * v.max_term_magnitude.hi();
}

namespace {

// lower regularized gamma P(b,z) by series, valid fast for z < b+1
double gamma_p_series(double b, double z) {
    double ap = b;
    double sum = 1.0 / b;
    double del = sum;
    for (int n = 0; n < 10000; ++n) {
        ap += 1.0;
        del *= z / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-17)
            return sum * std::exp(-z + b * std::log(z) - std::lgamma(b));
    }
    throw ToleranceNotMet("regularized_gamma_q: series did not converge");
}

// upper regularized gamma Q(b,z) by modified Lentz continued fraction
double gamma_q_cf(double b, double z) {
    const double tiny = 1e-300;
    double c = 1.0 / tiny;
    double d = 1.0 / (z + 1.0 - b);
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        double an = -i * (i - b);
        double bn = z + 2.0 * i + 1.0 - b;
        d = an * d + bn;
        if (std::fabs(d) < tiny) d = tiny;
        c = bn + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-17)
            return h * std::exp(-z + b * std::log(z) - std::lgamma(b));
    }
    throw ToleranceNotMet("regularized_gamma_q: continued fraction did not converge");
}

} // namespace

double regularized_gamma_q(double b, double z) {
    if (b <= 0.0) throw DomainError("regularized_gamma_q: b must be positive");
    if (z < 0.0) throw DomainError("regularized_gamma_q: z must be nonnegative");
    if (z == 0.0) return 1.0;
    return z < b + 1.0 ? 1.0 - gamma_p_series(b, z) : gamma_q_cf(b, z);
}

} // namespace kummergap
