#include "doctest.h"

#include <kummergap/integrals.hpp>
#include <kummergap/special_functions.hpp>

#include <cmath>

#include "oracle.hpp"
#include "test_util.hpp"

using namespace kummergap;

namespace {

// the m=3, y=5.308... worked case: z = y^2/2 at the exactly solved threshold
constexpr double kZ = 14.0873;
constexpr double kNu1 = -4.0141292202877e-5;
constexpr double kNu2 = -1.0033656958065687;
constexpr double kNu5 = -4.854865774572607;
constexpr double kNu9 = -14.628315873031021;
constexpr double kNu10 = -17.952938039298842;
constexpr double kNu11 = -21.628696447886458;

// left-hand side of the self-product identity via two generic quadratures:
// int (k/t - 1/2) e^{-t} t^b Phi^2 dt = k W(p=b-1) - W(p=b)/2, k = b/2 - a
double self_lhs_by_quadrature(double a, double b, double z) {
    double k = 0.5 * b - a;
    double w1 = detail::weighted_integral_general(a, b, b - 1.0, z, 1e-11).value;
    double w2 = detail::weighted_integral_general(a, b, b, z, 1e-11).value;
    return k * w1 - 0.5 * w2;
}

} // namespace

TEST_SUITE("integrals") {

TEST_CASE("weighted integral closed-form points") {
    IntegralResult r = weighted_phi_sq_integral(0.0, 1.0, 1.0, 1e-12);
    CHECK(rel_diff(r.value, 1.0 - std::exp(-1.0)) < 1e-12);
    CHECK(r.abs_error_estimate >= 0.0);
    CHECK(r.panels_used >= 1);
    IntegralResult r2 = weighted_phi_sq_integral(0.0, 2.0, 2.0, 1e-12);
    CHECK(rel_diff(r2.value, 1.0 - 3.0 * std::exp(-2.0)) < 1e-12);
}

TEST_CASE("weighted integral against 256-bit Simpson oracle") {
    Rng rng(301);
    for (int i = 0; i < 20; ++i) {
        double a = rng.uniform(-6.0, 3.0);
        double b = rng.uniform(0.35, 5.0);
        double z = rng.uniform(0.5, 8.0);
        double got = weighted_phi_sq_integral(a, b, z).value;
        double ref = oracle::weighted_prod_integral(a, a, b, b - 1.0, z, 1e-11);
        CHECK(rel_diff(got, ref) < 1e-9);
    }
}

TEST_CASE("graded head mesh handles b < 1") {
    double got = weighted_phi_sq_integral(-1.5, 0.4, 6.0, 1e-11).value;
    double ref = oracle::weighted_prod_integral(-1.5, -1.5, 0.4, -0.6, 6.0, 1e-12);
    CHECK(rel_diff(got, ref) < 1e-9);
}

TEST_CASE("worked-case integrals match frozen reference values") {
    CHECK(rel_diff(weighted_phi_sq_integral(kNu1, 1.5, kZ, 1e-12).value, 0.886006812580643) < 1e-9);
    CHECK(rel_diff(weighted_phi_sq_integral(kNu2, 1.5, kZ, 1e-12).value, 0.583407462272060) < 1e-9);
    CHECK(rel_diff(weighted_phi_sq_integral(kNu11, 1.5, kZ, 1e-12).value, 0.0431081641911) < 1e-9);
}

TEST_CASE("quadrature guards") {
    CHECK_THROWS_AS(weighted_phi_sq_integral(1.0, -0.5, 1.0), DomainError);
    CHECK_THROWS_AS(weighted_phi_sq_integral(1.0, 1.0, -2.0), DomainError);
    CHECK_THROWS_AS(weighted_phi_sq_integral(1.0, 1.0, 1.0, 0.0), DomainError);
    // a near-singular weight drives the graded head into overflow; the
    // quadrature must refuse rather than return inf
    CHECK_THROWS_AS(weighted_phi_sq_integral(-1.0, 0.02, 3.0, 1e-10), ToleranceNotMet);
}

TEST_CASE("product closed form: degenerate and trivial cases") {
    CHECK_THROWS_AS(product_integral_closed_form(1.0, 1.0, 2.0, 1.0), DegenerateParameters);
    // xi = 0 kills the second bracket term and Phi(0,.,.) = 1
    double got = product_integral_closed_form(0.0, 1.0, 2.0, 1.0);
    double expect =
        std::exp(-1.0) * 0.5 * kummer_m(2.0, 3.0, 1.0).value.as_double();
    CHECK(rel_diff(got, expect) < 1e-13);
}

TEST_CASE("product closed form equals quadrature") {
    CHECK(rel_diff(product_integral_closed_form(-1.0, -2.0, 1.5, 3.0),
                   oracle::weighted_prod_integral(-1.0, -2.0, 1.5, 0.5, 3.0, 1e-12)) < 1e-10);
    CHECK(rel_diff(product_integral_closed_form(0.5, 1.5, 2.5, 5.0),
                   oracle::weighted_prod_integral(0.5, 1.5, 2.5, 1.5, 5.0, 1e-12)) < 1e-10);
    Rng rng(302);
    for (int i = 0; i < 15; ++i) {
        double xi = rng.uniform(-4.0, 2.0);
        double eta = rng.uniform(-4.0, 2.0);
        double b = rng.uniform(0.4, 4.0);
        double z = rng.uniform(0.5, 6.0);
        if (std::fabs(xi - eta) < 0.05) continue;
        double closed = product_integral_closed_form(xi, eta, b, z);
        double quad = oracle::weighted_prod_integral(xi, eta, b, b - 1.0, z, 1e-11);
        CHECK(rel_diff(closed, quad) < 1e-9);
    }
}

TEST_CASE("self closed form equals quadrature") {
    // (0,1,1): integrand is (1/(2t) - 1/2) e^{-t} t, analytic value e^{-1}/2
    CHECK(rel_diff(self_integral_closed_form(0.0, 1.0, 1.0), 0.5 * std::exp(-1.0)) < 1e-12);
    CHECK(rel_diff(self_integral_closed_form(-1.0, 2.0, 2.0), self_lhs_by_quadrature(-1.0, 2.0, 2.0)) <
          1e-10);
    Rng rng(303);
    for (int i = 0; i < 15; ++i) {
        double a = rng.uniform(-4.0, 2.0);
        double b = rng.uniform(0.4, 4.0);
        double z = rng.uniform(0.5, 6.0);
        CHECK(rel_diff(self_integral_closed_form(a, b, z), self_lhs_by_quadrature(a, b, z)) < 1e-9);
    }
}

TEST_CASE("self closed form at a refined zero decomposes consistently") {
    for (double nu : {kNu1, kNu5}) {
        double closed = self_integral_closed_form(nu, 1.5, kZ);
        double quad = self_lhs_by_quadrature(nu, 1.5, kZ);
        CHECK(rel_diff(closed, quad) < 1e-9);
    }
}

TEST_CASE("recursion identity at refined zeros") {
    CHECK(rel_diff(integral_recursion_rhs(kNu1, 1.5, kZ),
                   weighted_phi_sq_integral(kNu1, 1.5, kZ).value) < 1e-8);
    CHECK(rel_diff(integral_recursion_rhs(kNu2, 1.5, kZ),
                   weighted_phi_sq_integral(kNu2, 1.5, kZ).value) < 1e-8);
    CHECK_THROWS_AS(integral_recursion_rhs(-0.5, 1.5, kZ), PreconditionViolated);
    CHECK_THROWS_AS(integral_recursion_rhs(kNu1, 0.9, kZ), DomainError);
}

TEST_CASE("upper bound dominates quadrature where applicable") {
    // z < b - a - 1 holds only for the three deepest worked-case zeros
    const double pins[][2] = {{kNu9, 1.55536976614}, {kNu10, 0.362859847681}, {kNu11, 0.19258135945}};
    for (auto& p : pins) {
        double ub = integral_upper_bound(p[0], 1.5, kZ);
        CHECK(rel_diff(ub, p[1]) < 1e-9);
        CHECK(ub >= weighted_phi_sq_integral(p[0], 1.5, kZ).value * (1.0 - 1e-8));
    }
    CHECK_THROWS_AS(integral_upper_bound(kNu1, 1.5, kZ), PreconditionViolated); // z >= beta
    CHECK_THROWS_AS(integral_upper_bound(-20.0, 1.5, kZ), PreconditionViolated); // not a zero
}

TEST_CASE("lower bound is dominated by quadrature") {
    const double pins[][2] = {{kNu1, 0.000589793124032}, {kNu5, 0.103520324735}};
    for (auto& p : pins) {
        double lb = integral_lower_bound(p[0], 1.5, kZ);
        CHECK(rel_diff(lb, p[1]) < 1e-9);
        CHECK(lb <= weighted_phi_sq_integral(p[0], 1.5, kZ).value * (1.0 + 1e-8));
    }
    CHECK_THROWS_AS(integral_lower_bound(-0.5, 1.5, kZ), PreconditionViolated);
}

TEST_CASE("derivative identity at a zero") {
    // I = -(a z^b / b) e^{-z} Phi(a+1,b+1,z) dPhi/da, the derivative by
    // extended-precision central difference
    const double a = kNu2, b = 1.5, z = kZ, h = 1e-6;
    DDouble dphi_da =
        (kummer_m(a + h, b, z).value - kummer_m(a - h, b, z).value) / DDouble(2.0 * h);
    DDouble rhs = -(DDouble(a) * pow(DDouble(z), b) / b) * exp(DDouble(-z)) *
                  kummer_m(a + 1.0, b + 1.0, z).value * dphi_da;
    CHECK(rel_diff(weighted_phi_sq_integral(a, b, z).value, to_double(rhs)) < 1e-6);
}

} // TEST_SUITE
