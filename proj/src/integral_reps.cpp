#include "besselid/integral_reps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace besselid {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

constexpr double kJRepMaxX = 60.0;
constexpr double kIRepMaxX = 30.0;
constexpr double kIRepScaledMaxX = 300.0;
constexpr double kReductionMaxX = 30.0;
constexpr double kIteratedMaxX = 20.0;

// Value and derivative with respect to x.
struct Dual {
    double v;
    double d;
};

Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
Dual operator*(Dual a, double c) { return {a.v * c, a.d * c}; }
Dual sin(Dual a) { return {std::sin(a.v), std::cos(a.v) * a.d}; }
Dual sinh(Dual a) { return {std::sinh(a.v), std::cosh(a.v) * a.d}; }

void require_x(const char* op, double x, double max_x) {
    if (!(x >= 0.0)) throw DomainError(std::string(op) + ": requires x >= 0");
    if (x > max_x)
        throw DomainError(std::string(op) + ": requires x <= " + std::to_string(max_x));
}

QuadResult series_result(const SeriesResult& s) {
    QuadResult r;
    r.value = s.value;
    r.error_estimate = s.truncation_bound;
    r.converged = true;
    r.set(QuadFlag::series_fallback);
    return r;
}

// Rescale an integral by a positive factor; `log_size` is the magnitude of
// the logarithm the factor was built from, which bounds its rounding.
QuadResult scaled(const QuadResult& raw, double factor, double log_size, const QuadSpec& spec) {
    QuadResult r = raw;
    r.value = raw.value * factor;
    r.error_estimate = raw.error_estimate * factor +
                       (4.0 + log_size) * kEps * std::abs(r.value);
    r.converged = raw.converged && r.error_estimate <= spec.target(r.value);
    return r;
}

QuadSpec for_integral(const QuadSpec& spec, double factor) {
    QuadSpec s = spec;
    if (factor > 0.0 && std::isfinite(factor)) s.abs_tol = spec.abs_tol / factor;
    return s;
}

double i0_integrand_scaled(double x, double phi) {
    const double s = std::sin(phi);
    const double grow = std::exp(x * (s - 1.0));
    const double fall = std::exp(-x * (s + 1.0));
    return (0.5 * (grow - fall) + x * s * 0.5 * (grow + fall)) * s;
}

QuadResult single_rep(double x, const QuadSpec& spec, bool hyperbolic, bool scaled_i) {
    const double factor = 1.0 / (kPi * x);
    const Integrand f = [x, hyperbolic, scaled_i](double phi) {
        if (!hyperbolic) return j0_integrand(x, phi);
        return scaled_i ? i0_integrand_scaled(x, phi) : i0_integrand(x, phi);
    };
    const QuadResult raw = integrate_finite(f, 0.0, kPi, for_integral(spec, factor));
    return scaled(raw, factor, 0.0, spec);
}

// (x/2)^alpha / Gamma(alpha) and the size of its logarithm.
struct Prefactor {
    double value;
    double log_size;
};

Prefactor reduction_prefactor(double alpha, double x) {
    const double lx = alpha * std::log(x / 2.0);
    const double lg = log_gamma(alpha);
    return {std::exp(lx - lg), std::abs(lx) + std::abs(lg)};
}

QuadResult reduction_rep(Order alpha, double x, const QuadSpec& spec, bool hyperbolic,
                         const char* op) {
    spec.validate();
    alpha.require_above(0.0, op);
    require_x(op, x, kReductionMaxX);
    if (x == 0.0) {
        QuadResult r;
        r.converged = true;
        return r;
    }
    const double a = alpha.value();
    const Prefactor pre = reduction_prefactor(a, x);
    const Order zero(0.0);
    // t = distance from 0, 1 - t = distance from 1, both exact at the nodes.
    const EndpointIntegrand f = [=](double, double t, double one_minus_t) {
        const double y = x * std::sqrt(one_minus_t);
        const double inner = hyperbolic ? bessel_i_series(zero, y).value
                                        : bessel_j_series(zero, y).value;
        return inner * std::pow(t, a - 1.0);
    };
    const QuadResult raw = integrate_tanh_sinh(f, 0.0, 1.0, for_integral(spec, pre.value));
    return scaled(raw, pre.value, pre.log_size, spec);
}

QuadResult iterated_rep(Order alpha, double x, const QuadSpec& spec, bool hyperbolic,
                        const char* op) {
    spec.validate();
    alpha.require_above(0.0, op);
    require_x(op, x, kIteratedMaxX);
    if (x == 0.0) {
        QuadResult r;
        r.converged = true;
        return r;
    }
    const double a = alpha.value();
    const Prefactor pre = reduction_prefactor(a, x);
    const double factor = pre.value / (kPi * x);
    const QuadSpec outer_spec = for_integral(spec, factor);
    const QuadSpec inner_spec = outer_spec.tightened(1000.0);

    double worst_inner = 0.0;
    double worst_weighted = 0.0;
    std::int64_t inner_evals = 0;
    bool inner_ok = true;
    // theta measured from 0 and from pi/2; sin and cos of theta come from
    // the exact distances.
    const EndpointIntegrand outer = [&](double, double from_zero, double from_top) {
        const double y = x * std::sin(from_top);
        const Integrand g = [y, hyperbolic](double phi) {
            return hyperbolic ? i0_integrand(y, phi) : j0_integrand(y, phi);
        };
        const QuadResult inner = integrate_finite(g, 0.0, kPi, inner_spec);
        const double weight = 2.0 * std::pow(std::sin(from_zero), 2.0 * a - 1.0);
        worst_inner = std::max(worst_inner, inner.error_estimate);
        worst_weighted = std::max(worst_weighted, weight * inner.error_estimate);
        inner_evals += inner.evals;
        inner_ok = inner_ok && inner.converged;
        return weight * inner.value;
    };
    QuadResult raw = integrate_tanh_sinh(outer, 0.0, kPi / 2.0, outer_spec);
    // Two bounds on the propagated inner error: the weight integrates to
    // B(a, 1/2), and the weighted error is at most its maximum over pi/2.
    raw.error_estimate +=
        std::min(beta(a, 0.5) * worst_inner, 0.5 * kPi * worst_weighted);
    raw.evals += inner_evals;
    raw.converged = raw.converged && inner_ok;
    return scaled(raw, factor, pre.log_size, spec);
}

} // namespace

double j0_integrand(double x, double phi) {
    const double s = std::sin(phi);
    const double xs = x * s;
    return (std::sin(xs) + xs * std::cos(xs)) * s;
}

double i0_integrand(double x, double phi) {
    const double s = std::sin(phi);
    const double xs = x * s;
    return (std::sinh(xs) + xs * std::cosh(xs)) * s;
}

double j0_integrand_derivative_form(double x, double phi) {
    const double s = std::sin(phi);
    const Dual dx{x, 1.0};
    return (dx * sin(dx * s)).d * s;
}

double i0_integrand_derivative_form(double x, double phi) {
    const double s = std::sin(phi);
    const Dual dx{x, 1.0};
    return (dx * sinh(dx * s)).d * s;
}

QuadResult j0_rep(double x, const QuadSpec& spec) {
    spec.validate();
    require_x("j0_rep", x, kJRepMaxX);
    if (x < kRepSeriesSwitch) return series_result(bessel_j_series(Order(0.0), x));
    return single_rep(x, spec, false, false);
}

QuadResult i0_rep(double x, bool scaled_result, const QuadSpec& spec) {
    spec.validate();
    if (!scaled_result && x > kIRepMaxX)
        throw OverflowError("i0_rep: unscaled I0 limited to x <= 30; request the scaled form");
    require_x("i0_rep", x, kIRepScaledMaxX);
    if (x < kRepSeriesSwitch) {
        QuadResult r = series_result(bessel_i_series(Order(0.0), x));
        if (scaled_result) {
            const double e = std::exp(-x);
            r.value *= e;
            r.error_estimate *= e;
        }
        return r;
    }
    return single_rep(x, spec, true, scaled_result);
}

QuadResult j_alpha_reduction(Order alpha, double x, const QuadSpec& spec) {
    return reduction_rep(alpha, x, spec, false, "j_alpha_reduction");
}

QuadResult i_alpha_reduction(Order alpha, double x, const QuadSpec& spec) {
    return reduction_rep(alpha, x, spec, true, "i_alpha_reduction");
}

QuadResult j_alpha_double(Order alpha, double x, const QuadSpec& spec) {
    return iterated_rep(alpha, x, spec, false, "j_alpha_double");
}

QuadResult i_alpha_double(Order alpha, double x, const QuadSpec& spec) {
    return iterated_rep(alpha, x, spec, true, "i_alpha_double");
}

QuadResult j_rep(RepForm form, Order alpha, double x, const QuadSpec& spec) {
    switch (form) {
    case RepForm::single:
        if (alpha.value() != 0.0) throw DomainError("j_rep: the single form is for alpha = 0");
        return j0_rep(x, spec);
    case RepForm::reduction:
        return j_alpha_reduction(alpha, x, spec);
    case RepForm::iterated:
        return j_alpha_double(alpha, x, spec);
    }
    throw DomainError("j_rep: unknown form");
}

QuadResult i_rep(RepForm form, Order alpha, double x, const QuadSpec& spec) {
    switch (form) {
    case RepForm::single:
        if (alpha.value() != 0.0) throw DomainError("i_rep: the single form is for alpha = 0");
        return i0_rep(x, false, spec);
    case RepForm::reduction:
        return i_alpha_reduction(alpha, x, spec);
    case RepForm::iterated:
        return i_alpha_double(alpha, x, spec);
    }
    throw DomainError("i_rep: unknown form");
}

double alternating_moment_series(double z, int max_terms) {
    if (!(z >= 0.0)) throw DomainError("alternating_moment_series: requires z >= 0");
    double term = z;
    double sum = z;
    for (int m = 1; m < max_terms; ++m) {
        term *= -(m + 1.0) * z / (m * (2.0 * m) * (2.0 * m + 1.0));
        sum += term;
        if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

double alternating_moment_closed(double z) {
    if (!(z >= 0.0)) throw DomainError("alternating_moment_closed: requires z >= 0");
    const double r = std::sqrt(z);
    return 0.5 * (r * std::sin(r) + z * std::cos(r));
}

} // namespace besselid
