#include "besselid/laplace.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace besselid {

namespace {

constexpr double kPi = std::numbers::pi;

// Next zero of g after `from`, found by stepping a quarter of the expected
// zero spacing until g changes sign. The first probe sits a tenth of a
// spacing past `from` so the zero at `from` itself is not found again.
double next_zero(const Integrand& g, double from, double spacing) {
    const double step = 0.25 * spacing;
    double lo = from + 0.1 * spacing;
    double g_lo = g(lo);
    for (int i = 0; i < 400; ++i) {
        const double hi = lo + step;
        const double g_hi = g(hi);
        if (g_hi == 0.0) return hi;
        if ((g_lo < 0.0) != (g_hi < 0.0)) return find_root(g, 0.0, lo, hi, 0.0);
        lo = hi;
        g_lo = g_hi;
    }
    throw BracketError("no sign change found while scanning for the next zero");
}

QuadResult lobes_between_zeros(const Integrand& f, const Integrand& sign_source, double spacing,
                               const QuadSpec& spec) {
    const auto next_break = [&](double from) { return next_zero(sign_source, from, spacing); };
    QuadResult r = integrate_lobes(f, next_break, 0.0, spec);
    r.converged = r.converged && r.error_estimate <= spec.target(r.value);
    return r;
}

} // namespace

void LaplaceParams::validate(const char* op) const {
    if (!(a >= 0.0) || !std::isfinite(a)) throw DomainError(std::string(op) + ": requires a >= 0");
    if (!(b > 0.0) || !std::isfinite(b)) throw DomainError(std::string(op) + ": requires b > 0");
}

double lipschitz_rhs(double a, double b) {
    LaplaceParams{a, b}.validate("lipschitz_rhs");
    return 1.0 / std::hypot(a, b);
}

QuadResult laplace_j0_numeric(double a, double b, const QuadSpec& spec) {
    LaplaceParams{a, b}.validate("laplace_j0_numeric");
    const Order zero(0.0);
    if (a > 0.0) {
        const Integrand f = [=](double t) { return std::exp(-a * t) * bessel_j(zero, b * t); };
        return integrate_semi_infinite_decay(f, a, spec);
    }
    const Integrand f = [=](double t) { return bessel_j(zero, b * t); };
    QuadResult r = lobes_between_zeros(f, f, kPi / b, spec);
    r.set(QuadFlag::slow_tail);
    return r;
}

double laplace_j_alpha_closed(Order alpha, double a, double b) {
    alpha.require_above(0.0, "laplace_j_alpha_closed");
    LaplaceParams{a, b}.validate("laplace_j_alpha_closed");
    const double al = alpha.value();
    const double r = std::hypot(a, b);
    const double log_pre = 2.0 * al * std::log(r) - al * std::numbers::ln2 -
                           (al + 1.0) * std::log(b) - log_gamma(al);
    const double ratio = b / r;
    // Upper limit b^2 / (a^2 + b^2) of the incomplete beta.
    const double upper = a == 0.0 ? 1.0 : ratio * ratio;
    return std::exp(log_pre) * ratio * incomplete_beta(upper, al, 0.5);
}

QuadResult laplace_j_alpha_numeric(Order alpha, double a, double b, const QuadSpec& spec) {
    alpha.require_above(0.0, "laplace_j_alpha_numeric");
    LaplaceParams{a, b}.validate("laplace_j_alpha_numeric");
    const double scale = std::pow(b, alpha.value());
    // J_alpha(b t) t^-alpha = b^alpha * [J_alpha(b t) (b t)^-alpha], finite at t = 0.
    if (a > 0.0) {
        const Integrand f = [=](double t) {
            return std::exp(-a * t) * scale * bessel_j_scaled(alpha, b * t);
        };
        return integrate_semi_infinite_decay(f, a, spec);
    }
    const Integrand f = [=](double t) { return scale * bessel_j_scaled(alpha, b * t); };
    QuadResult r = lobes_between_zeros(f, f, kPi / b, spec);
    if (alpha.value() <= 0.5) r.set(QuadFlag::slow_tail);
    return r;
}

double laplace_special_case(Order alpha, double a, double b) {
    alpha.require_at_least(0.0, "laplace_special_case");
    LaplaceParams{a, b}.validate("laplace_special_case");
    const double al = alpha.value();
    if (al == 0.5) return std::sqrt(2.0 / (kPi * b)) * std::asin(b / std::hypot(a, b));
    // (sqrt(a^2+b^2) - a) / b without the cancellation at large a.
    if (al == 1.0) return b / (std::hypot(a, b) + a);
    if (a == 0.0) {
        if (al == 0.0) return 1.0 / b;
        return std::exp((al - 1.0) * std::log(2.0 * b) + log_gamma(al) - log_gamma(2.0 * al));
    }
    throw UncoveredCaseError("laplace_special_case: no closed form for alpha = " +
                             std::to_string(al) + " with a > 0; use laplace_j_alpha_closed");
}

} // namespace besselid
