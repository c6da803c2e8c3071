#include <doctest.h>

#include <cmath>
#include <numbers>

#include "besselid/errors.hpp"
#include "besselid/laplace.hpp"
#include "besselid/special.hpp"

using namespace besselid;

namespace {

constexpr double kPi = std::numbers::pi;

} // namespace

TEST_CASE("lipschitz_rhs") {
    CHECK(lipschitz_rhs(3.0, 4.0) == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(lipschitz_rhs(0.0, 1.0) == 1.0);
    CHECK(lipschitz_rhs(0.0, 2.5) == doctest::Approx(0.4).epsilon(1e-15));
    CHECK_THROWS_AS(lipschitz_rhs(1.0, 0.0), DomainError);
    CHECK_THROWS_AS(lipschitz_rhs(-1.0, 1.0), DomainError);
}

TEST_CASE("laplace_j0_numeric: values") {
    const QuadResult a = laplace_j0_numeric(3.0, 4.0);
    CHECK(a.converged);
    CHECK(std::abs(a.value - 0.2) <= 1e-9);
    CHECK(std::abs(laplace_j0_numeric(1.0, 1.0).value - std::sqrt(0.5)) <= 1e-9);
    CHECK(std::abs(laplace_j0_numeric(5.0, 1e-4).value - lipschitz_rhs(5.0, 1e-4)) <= 1e-9);
    const QuadResult zero_a = laplace_j0_numeric(0.0, 1.0);
    CHECK(zero_a.has(QuadFlag::slow_tail));
    CHECK(std::abs(zero_a.value - 1.0) <= 1e-7);
    CHECK(std::abs(laplace_j0_numeric(0.0, 2.0).value - 0.5) <= 1e-7);
}

TEST_CASE("laplace_j0_numeric: Lipschitz grid") {
    for (double a : {0.5, 1.0, 2.0, 5.0}) {
        for (double b : {0.5, 1.0, 2.0, 5.0}) {
            CAPTURE(a);
            CAPTURE(b);
            const QuadResult r = laplace_j0_numeric(a, b);
            CHECK(r.converged);
            CHECK(std::abs(r.value - lipschitz_rhs(a, b)) <= 10.0 * r.error_estimate + 1e-15);
        }
    }
}

TEST_CASE("laplace_j_alpha_closed: values") {
    CHECK(std::abs(laplace_j_alpha_closed(Order(1.0), 3.0, 4.0) - 0.5) <= 1e-12);
    CHECK(std::abs(laplace_j_alpha_closed(Order(0.5), 0.0, 2.0) - std::sqrt(kPi / 4.0)) <= 1e-12);
    CHECK(std::abs(laplace_j_alpha_closed(Order(2.0), 0.0, 3.0) - 1.0) <= 1e-13);
    // Large orders must not overflow the prefactor.
    const double big = laplace_j_alpha_closed(Order(50.0), 1.0, 2.0);
    CHECK(std::isfinite(big));
    CHECK(big > 0.0);
    CHECK_THROWS_AS(laplace_j_alpha_closed(Order(0.0), 1.0, 1.0), DomainError);
}

TEST_CASE("laplace_j_alpha_numeric: values") {
    const QuadResult r = laplace_j_alpha_numeric(Order(1.0), 3.0, 4.0);
    CHECK(r.converged);
    CHECK(std::abs(r.value - 0.5) <= 1e-8);
    CHECK(std::abs(laplace_j_alpha_numeric(Order(0.5), 1.0, 1.0).value - 0.6266570686577501) <=
          1e-9);
    for (double b : {1.0, 2.0}) {
        const QuadResult moment = laplace_j_alpha_numeric(Order(1.0), 0.0, b);
        CHECK(std::abs(moment.value - 1.0) <= 1e-7);
    }
    const QuadResult slow = laplace_j_alpha_numeric(Order(0.5), 0.0, 2.0);
    CHECK(slow.has(QuadFlag::slow_tail));
    CHECK(std::abs(slow.value - std::sqrt(kPi / 4.0)) <= 1e-7);
    CHECK(std::abs(laplace_j_alpha_numeric(Order(2.0), 0.0, 3.0).value - 1.0) <= 1e-6);
}

TEST_CASE("laplace_special_case: values and coverage") {
    CHECK(std::abs(laplace_special_case(Order(1.0), 3.0, 4.0) - 0.5) <= 1e-15);
    for (double b : {0.5, 1.0, 3.0})
        CHECK(std::abs(laplace_special_case(Order(0.5), 0.0, b) - std::sqrt(kPi / (2.0 * b))) <=
              1e-14);
    CHECK(laplace_special_case(Order(0.0), 0.0, 2.0) == 0.5);
    CHECK_THROWS_AS(laplace_special_case(Order(1.5), 1.0, 1.0), UncoveredCaseError);
    CHECK_THROWS_AS(laplace_special_case(Order(0.0), 1.0, 1.0), UncoveredCaseError);
}

TEST_CASE("closed formula reproduces every special case") {
    for (double alpha : {0.5, 1.0}) {
        for (double a : {0.0, 0.5, 1.0, 3.0}) {
            for (double b : {0.5, 1.0, 2.0, 4.0}) {
                const double special = laplace_special_case(Order(alpha), a, b);
                CHECK(std::abs(laplace_j_alpha_closed(Order(alpha), a, b) - special) <=
                      1e-12 * std::abs(special));
            }
        }
    }
    // a = 0 moment form for other orders.
    for (double alpha : {1.5, 2.0, 3.0})
        CHECK(std::abs(laplace_j_alpha_closed(Order(alpha), 0.0, 1.5) -
                       laplace_special_case(Order(alpha), 0.0, 1.5)) <=
              1e-12 * laplace_special_case(Order(alpha), 0.0, 1.5));
}

TEST_CASE("closed formula agrees with quadrature") {
    for (double alpha : {0.5, 1.0, 1.5, 2.0}) {
        for (double a : {0.5, 1.0, 3.0}) {
            for (double b : {0.5, 1.0, 2.0, 4.0}) {
                CAPTURE(alpha);
                CAPTURE(a);
                CAPTURE(b);
                const QuadResult r = laplace_j_alpha_numeric(Order(alpha), a, b);
                CHECK(r.converged);
                CHECK(std::abs(r.value - laplace_j_alpha_closed(Order(alpha), a, b)) <=
                      10.0 * r.error_estimate + 1e-15);
            }
        }
    }
}

TEST_CASE("closed formula decreases as the damping grows") {
    for (double alpha : {0.5, 1.0, 2.5}) {
        double prev = laplace_j_alpha_closed(Order(alpha), 0.0, 1.5);
        for (double a = 0.25; a <= 20.0; a *= 1.5) {
            const double v = laplace_j_alpha_closed(Order(alpha), a, 1.5);
            CHECK(v < prev);
            prev = v;
        }
    }
}

TEST_CASE("the a = 0 moment tends to 1/b as alpha -> 0") {
    const double b = 2.0;
    double prev_gap = 1.0;
    for (double alpha : {0.1, 0.01, 0.001}) {
        const double gap = std::abs(laplace_special_case(Order(alpha), 0.0, b) * b - 1.0);
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
    CHECK(prev_gap <= 0.01);
}
