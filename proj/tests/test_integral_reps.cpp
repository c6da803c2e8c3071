#include <doctest.h>

#include <cmath>
#include <numbers>

#include "besselid/errors.hpp"
#include "besselid/integral_reps.hpp"
#include "besselid/special.hpp"

using namespace besselid;

namespace {

constexpr double kPi = std::numbers::pi;
const double kAlphas[] = {0.5, 1.0, 1.5, 2.0, 3.0};
const double kXs[] = {0.25, 0.5, 1.0, 2.0, 5.0, 10.0};

void check_against(const QuadResult& r, const SeriesResult& s) {
    CHECK(r.converged);
    CHECK(std::abs(r.value - s.value) <= 10.0 * (r.error_estimate + s.truncation_bound));
}

} // namespace

TEST_CASE("j0_rep values") {
    const QuadResult a = j0_rep(1.0);
    CHECK(a.converged);
    CHECK(std::abs(a.value - 0.7651976865579666) <= 1e-12);
    CHECK(std::abs(j0_rep(5.0).value - (-0.1775967713143383)) <= 1e-12);
    const QuadResult tiny = j0_rep(1e-4);
    CHECK(tiny.has(QuadFlag::series_fallback));
    CHECK(std::abs(tiny.value - 1.0) <= 1e-8);
    CHECK_FALSE(j0_rep(2e-3).has(QuadFlag::series_fallback));
}

TEST_CASE("i0_rep values, scaling and limits") {
    CHECK(std::abs(i0_rep(1.0, false).value - 1.2660658777520084) <= 1e-12);
    CHECK(std::abs(i0_rep(1e-5, false).value - 1.0) <= 1e-9);
    CHECK(std::abs(i0_rep(10.0, true).value - 0.1278333371634286) <= 1e-13);
    CHECK(std::abs(i0_rep(300.0, true).value - 0.02304255841508546) <= 1e-13);
    CHECK(std::abs(i0_rep(25.0, true).value * std::exp(25.0) - i0_rep(25.0, false).value) <=
          1e-10 * i0_rep(25.0, false).value);
    CHECK_THROWS_AS(i0_rep(31.0, false), OverflowError);
    CHECK_THROWS_AS(i0_rep(301.0, true), DomainError);
    CHECK_THROWS_AS(j0_rep(61.0), DomainError);
    CHECK_THROWS_AS(j0_rep(-1.0), DomainError);
}

TEST_CASE("reduction forms: values") {
    CHECK(std::abs(j_alpha_reduction(Order(1.0), 2.0).value - 0.5767248077568734) <= 1e-12);
    CHECK(std::abs(j_alpha_reduction(Order(0.5), 1.0).value - 0.6713967071418031) <= 1e-12);
    CHECK(j_alpha_reduction(Order(3.0), 0.0).value == 0.0);
    CHECK(std::abs(i_alpha_reduction(Order(0.5), 1.0).value - 0.9376748882454876) <= 1e-12);
    CHECK(std::abs(i_alpha_reduction(Order(1.0), 1.0).value - 0.5651591039924850) <= 1e-12);
    CHECK(i_alpha_reduction(Order(2.0), 0.0).value == 0.0);
}

TEST_CASE("double forms: values") {
    CHECK(std::abs(j_alpha_double(Order(1.0), 2.0).value - 0.5767248077568734) <= 1e-10);
    CHECK(std::abs(j_alpha_double(Order(0.5), 1.0).value - 0.6713967071418031) <= 1e-10);
    CHECK(j_alpha_double(Order(2.0), 0.0).value == 0.0);
    CHECK(std::abs(i_alpha_double(Order(0.5), 1.0).value - 0.9376748882454876) <= 1e-10);
    CHECK(std::abs(i_alpha_double(Order(1.0), 1.0).value - 0.5651591039924850) <= 1e-10);
    CHECK(i_alpha_double(Order(1.5), 0.0).value == 0.0);
}

TEST_CASE("preconditions") {
    CHECK_THROWS_AS(j_alpha_reduction(Order(0.0), 1.0), DomainError);
    CHECK_THROWS_AS(i_alpha_reduction(Order(-0.5), 1.0), DomainError);
    CHECK_THROWS_AS(j_alpha_reduction(Order(1.0), 31.0), DomainError);
    CHECK_THROWS_AS(j_alpha_double(Order(1.0), 21.0), DomainError);
    CHECK_THROWS_AS(i_alpha_double(Order(0.0), 1.0), DomainError);
    CHECK_THROWS_AS(j_rep(RepForm::single, Order(1.0), 1.0), DomainError);
}

TEST_CASE("dispatchers route to the named form") {
    CHECK(j_rep(RepForm::single, Order(0.0), 2.0).value == j0_rep(2.0).value);
    CHECK(j_rep(RepForm::reduction, Order(1.5), 2.0).value ==
          j_alpha_reduction(Order(1.5), 2.0).value);
    CHECK(i_rep(RepForm::iterated, Order(1.5), 2.0).value == i_alpha_double(Order(1.5), 2.0).value);
    CHECK(i_rep(RepForm::single, Order(0.0), 2.0).value == i0_rep(2.0, false).value);
}

TEST_CASE("single forms agree with the series oracles") {
    for (double x : kXs) {
        CAPTURE(x);
        check_against(j0_rep(x), bessel_j_series(Order(0.0), x));
        check_against(i0_rep(x, false), bessel_i_series(Order(0.0), x));
    }
}

TEST_CASE("reduction and double forms agree with the series oracles") {
    for (double alpha : kAlphas) {
        for (double x : kXs) {
            CAPTURE(alpha);
            CAPTURE(x);
            const SeriesResult sj = bessel_j_series(Order(alpha), x);
            const SeriesResult si = bessel_i_series(Order(alpha), x);
            check_against(j_alpha_reduction(Order(alpha), x), sj);
            check_against(j_alpha_double(Order(alpha), x), sj);
            check_against(i_alpha_reduction(Order(alpha), x), si);
            check_against(i_alpha_double(Order(alpha), x), si);
        }
    }
}

TEST_CASE("reduction and double forms agree with each other") {
    for (double alpha : kAlphas) {
        for (double x : kXs) {
            CAPTURE(alpha);
            CAPTURE(x);
            const QuadResult jr = j_alpha_reduction(Order(alpha), x);
            const QuadResult jd = j_alpha_double(Order(alpha), x);
            CHECK(std::abs(jr.value - jd.value) <= jr.error_estimate + jd.error_estimate);
            const QuadResult ir = i_alpha_reduction(Order(alpha), x);
            const QuadResult id = i_alpha_double(Order(alpha), x);
            CHECK(std::abs(ir.value - id.value) <= ir.error_estimate + id.error_estimate);
        }
    }
}

TEST_CASE("reflected reduction integrand gives the same value") {
    // (x/2)^a / Gamma(a) * int_0^1 J0(x sqrt(t)) (1 - t)^(a-1) dt
    for (double alpha : {0.5, 1.0, 2.5}) {
        for (double x : {0.5, 2.0, 7.0}) {
            const EndpointIntegrand f = [alpha, x](double t, double, double to_top) {
                return bessel_j_series(Order(0.0), x * std::sqrt(t)).value *
                       std::pow(to_top, alpha - 1.0);
            };
            const QuadResult raw = integrate_tanh_sinh(f, 0.0, 1.0, QuadSpec{}.tightened(10.0));
            const double factor = std::pow(0.5 * x, alpha) / besselid::gamma(alpha);
            const QuadResult direct = j_alpha_reduction(Order(alpha), x);
            CHECK(std::abs(factor * raw.value - direct.value) <=
                  factor * raw.error_estimate + direct.error_estimate + 1e-15);
        }
    }
}

TEST_CASE("derivative forms of the integrands match pointwise") {
    double worst_j = 0.0;
    double worst_i = 0.0;
    for (int i = 1; i <= 40; ++i) {
        for (int k = 0; k < 25; ++k) {
            const double x = 0.25 * i;
            const double phi = kPi * k / 24.0;
            worst_j = std::max(worst_j,
                               std::abs(j0_integrand(x, phi) - j0_integrand_derivative_form(x, phi)));
            const double iv = i0_integrand(x, phi);
            worst_i = std::max(worst_i, std::abs(iv - i0_integrand_derivative_form(x, phi)) /
                                            std::max(1.0, std::abs(iv)));
        }
    }
    CHECK(worst_j <= 1e-14);
    CHECK(worst_i <= 1e-14);
}

TEST_CASE("alternating moment sum has the stated closed form") {
    for (double z : {0.1, 1.0, 4.0, 10.0}) {
        // Brute force: sum m (-1)^(m-1) z^m / Gamma(2m) in long double.
        long double sum = 0.0L;
        for (int m = 1; m <= 60; ++m)
            sum += (m % 2 ? 1.0L : -1.0L) * m * std::pow(static_cast<long double>(z), m) /
                   std::tgamma(static_cast<long double>(2 * m));
        const double closed = alternating_moment_closed(z);
        CHECK(std::abs(static_cast<double>(sum) - closed) <= 1e-12 * std::max(1.0, std::abs(closed)));
        CHECK(std::abs(alternating_moment_series(z) - closed) <= 1e-12 * std::max(1.0, std::abs(closed)));
    }
    CHECK(std::abs(alternating_moment_closed(1.0) - 0.5 * (std::sin(1.0) + std::cos(1.0))) <= 1e-15);
}
