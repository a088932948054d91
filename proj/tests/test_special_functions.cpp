#include "doctest.h"

#include <kummergap/special_functions.hpp>

#include <cmath>
#include <numbers>

#include "oracle.hpp"
#include "test_util.hpp"

using namespace kummergap;

TEST_SUITE("special_functions") {

TEST_CASE("pochhammer basics") {
    CHECK(to_double(pochhammer(3.0, 0)) == 1.0);
    CHECK(to_double(pochhammer(-2.0, 4)) == 0.0);
    CHECK(to_double(pochhammer(0.5, 3)) == doctest::Approx(1.875).epsilon(1e-15));
    CHECK(to_double(pochhammer(1.0, 6)) == 720.0);
    CHECK_THROWS_AS(pochhammer(1.0, -1), DomainError);
}

TEST_CASE("kummer_m closed-form points") {
    CHECK(kummer_m(7.3, 1.5, 0.0).value.as_double() == 1.0);
    CHECK(kummer_m(2.0, 2.0, 1.0).value.as_double() ==
          doctest::Approx(std::exp(1.0)).epsilon(1e-14));
    CHECK(kummer_m(1.0, 2.0, 3.0).value.as_double() ==
          doctest::Approx((std::exp(3.0) - 1.0) / 3.0).epsilon(1e-14));
}

TEST_CASE("kummer_m against 256-bit series oracle") {
    Rng rng(201);
    int compared = 0;
    for (int i = 0; i < 300; ++i) {
        double a = rng.uniform(-25.0, 10.0);
        double b = rng.uniform(0.3, 6.0);
        double z = rng.uniform(0.01, 25.0);
        KummerValue v;
        try {
            v = kummer_m(a, b, z);
        } catch (const PrecisionExhausted&) {
            continue;
        }
        double ref = oracle::phi(a, b, z);
        double tol = v.cancellation_digits <= 13.0 ? 1e-13 : 1e-9;
        CHECK(rel_diff(v.value.as_double(), ref) < tol);
        ++compared;
    }
    CHECK(compared > 250); // the budget gate must not eat the test
}

TEST_CASE("cancellation diagnostics track the oracle") {
    Rng rng(202);
    for (int i = 0; i < 40; ++i) {
        double a = rng.uniform(-22.0, -5.0);
        double b = rng.uniform(0.5, 3.0);
        double z = rng.uniform(5.0, 20.0);
        KummerValue v;
        try {
            v = kummer_m(a, b, z);
        } catch (const PrecisionExhausted&) {
            continue;
        }
        double c_ref = 0.0;
        oracle::phi_with_cancellation(a, b, z, &c_ref);
        CHECK(std::fabs(v.cancellation_digits - c_ref) < 0.3);
        CHECK(v.cancellation_digits >= 0.0);
        CHECK(v.terms_used >= 1);
    }
}

TEST_CASE("deep-zero regime value and diagnostics") {
    // the deepest zero row of the m=3, y=5.308 worked case
    KummerValue v = kummer_m(-21.629, 1.5, 14.0873);
    CHECK(rel_diff(v.value.as_double(), -0.00833693708921) < 1e-9);
    CHECK(rel_diff(v.value.as_double(), oracle::phi(-21.629, 1.5, 14.0873)) < 1e-10);
    CHECK(rel_diff(v.max_term_magnitude.as_double(), 1.5398846e10) < 1e-6);
    CHECK(v.terms_used == 57);
    CHECK(v.cancellation_digits > 11.0);
    CHECK(v.cancellation_digits < 14.0);
}

TEST_CASE("kummer transformation") {
    // Phi(a,b,z) = e^z Phi(b-a,b,-z), both sides in extended precision
    Rng rng(203);
    int compared = 0;
    for (int i = 0; i < 100; ++i) {
        double a = rng.uniform(-25.0, 25.0);
        double b = rng.uniform(0.3, 6.0);
        double z = rng.uniform(0.01, 25.0);
        try {
            DDouble lhs = kummer_m(a, b, z).value;
            DDouble rhs = exp(DDouble(z)) * kummer_m(b - a, b, -z).value;
            CHECK(rel_diff(lhs.as_double(), rhs.as_double()) < 1e-10);
            ++compared;
        } catch (const PrecisionExhausted&) {
        }
    }
    CHECK(compared > 60);
}

TEST_CASE("contiguous recurrence") {
    // Phi(a,b,t) = a/(1+a-b) Phi(a+1,b,t) - (b-1)/(1+a-b) Phi(a,b-1,t)
    Rng rng(204);
    int compared = 0;
    for (int i = 0; i < 100; ++i) {
        double a = rng.uniform(-12.0, 8.0);
        double b = rng.uniform(1.4, 6.0);
        double t = rng.uniform(0.1, 18.0);
        if (std::fabs(1.0 + a - b) < 0.1) continue;
        try {
            DDouble lhs = kummer_m(a, b, t).value;
            DDouble rhs = (a * kummer_m(a + 1.0, b, t).value -
                           (b - 1.0) * kummer_m(a, b - 1.0, t).value) /
                          (1.0 + a - b);
            CHECK(rel_diff(lhs.as_double(), rhs.as_double()) < 1e-10);
            ++compared;
        } catch (const PrecisionExhausted&) {
        }
    }
    CHECK(compared > 60);
}

TEST_CASE("polynomial termination for nonpositive integer a") {
    KummerValue v = kummer_m(-3.0, 2.0, 1.5);
    // exact rational arithmetic: 1 - 3z/2 + 3z^2/(2*2!) - z^3/(4*3!) over (b)_n
    CHECK(v.value.as_double() == doctest::Approx(-0.265625).epsilon(1e-15));
    CHECK(v.terms_used <= 5);
    CHECK(kummer_m(0.0, 1.5, 7.0).value.as_double() == 1.0);
    KummerValue deep = kummer_m(-40.0, 1.5, 2.0);
    CHECK(deep.terms_used <= 42);
    CHECK(rel_diff(deep.value.as_double(), oracle::phi(-40.0, 1.5, 2.0)) < 1e-12);
}

TEST_CASE("kummer_m_dz") {
    CHECK(to_double(kummer_m_dz(0.0, 1.5, 2.0)) == 0.0);
    CHECK(to_double(kummer_m_dz(1.0, 1.0, 1.0)) == doctest::Approx(std::exp(1.0)).epsilon(1e-14));
    // (-3, 2, 1.5): every term is exactly representable
    CHECK(to_double(kummer_m_dz(-3.0, 2.0, 1.5)) == -0.28125);
}

TEST_CASE("kummer_m_dz matches extended-precision central difference") {
    Rng rng(205);
    int compared = 0;
    for (int i = 0; i < 100; ++i) {
        double a = rng.uniform(-10.0, 5.0);
        double b = rng.uniform(0.5, 5.0);
        double z = rng.uniform(0.5, 15.0);
        const double h = 1e-6;
        try {
            DDouble d = kummer_m_dz(a, b, z);
            DDouble fd =
                (kummer_m(a, b, z + h).value - kummer_m(a, b, z - h).value) / DDouble(2.0 * h);
            CHECK(rel_diff(d.as_double(), fd.as_double()) < 1e-8);
            ++compared;
        } catch (const PrecisionExhausted&) {
        }
    }
    CHECK(compared > 80);
}

TEST_CASE("pole and precision guards") {
    CHECK_THROWS_AS(kummer_m(1.0, 0.0, 1.0), PoleEmbedded);
    CHECK_THROWS_AS(kummer_m(1.0, -2.0, 1.0), PoleEmbedded);
    CHECK_NOTHROW(kummer_m(1.0, -2.5, 1.0)); // non-integer negative b is fine
    CHECK_THROWS_AS(kummer_m(-100.0, 1.5, 25.0), PrecisionExhausted);
    CHECK_THROWS_AS(kummer_m(-60.0, 1.5, 45.0), PrecisionExhausted);

    // the unchecked entry point reports instead of throwing
    KummerValue v = kummer_m_unchecked(-60.0, 1.5, 45.0);
    CHECK(v.cancellation_digits > kPrecisionBudgetDigits);
    CHECK(std::isfinite(v.value.as_double()));
    CHECK(rel_diff(v.value.as_double(), oracle::phi(-60.0, 1.5, 45.0)) < 1e-3);
}

TEST_CASE("phi_is_zero is scale-aware") {
    // refined second zero for b=1.5, z = y^2/2 at y = 5.30795581949...
    const double z = 14.0873;
    CHECK(phi_is_zero(-1.0033656958065687, 1.5, z));
    CHECK_FALSE(phi_is_zero(-1.1, 1.5, z));
    CHECK_FALSE(phi_is_zero(-0.9, 1.5, z));
}

TEST_CASE("regularized_gamma_q basics") {
    CHECK(regularized_gamma_q(1.0, 0.0) == 1.0);
    CHECK(regularized_gamma_q(1.0, std::log(2.0)) == doctest::Approx(0.5).epsilon(1e-14));
    // gamma(0.5,1) = sqrt(pi) erf(1), so Q(0.5,1) = 1 - erf(1)
    CHECK(rel_diff(regularized_gamma_q(0.5, 1.0),
                   1.0 - 1.49364826562485 / std::sqrt(std::numbers::pi)) < 1e-12);
    CHECK_THROWS_AS(regularized_gamma_q(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(regularized_gamma_q(-1.0, 1.0), DomainError);
    CHECK_THROWS_AS(regularized_gamma_q(1.0, -0.5), DomainError);
}

TEST_CASE("regularized_gamma_q against mpfr") {
    const double bs[] = {0.3, 0.7, 1.0, 1.5, 2.5, 5.0, 7.5, 10.0};
    const double zs[] = {0.1, 1.0, 3.0, 8.0, 15.0, 30.0};
    for (double b : bs)
        for (double z : zs) {
            double q = regularized_gamma_q(b, z);
            CHECK(q >= 0.0);
            CHECK(q <= 1.0);
            CHECK(rel_diff(q, oracle::gamma_q(b, z)) < 1e-12);
        }
    CHECK(rel_diff(regularized_gamma_q(1.5, 14.0873), 3.33809735791042e-6) < 1e-10);
}

} // TEST_SUITE
