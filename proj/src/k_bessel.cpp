#include "besselid/k_bessel.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace besselid {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMaxExpOrder = 10.0;

void require_positive(const char* op, const char* name, double v) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw DomainError(std::string(op) + ": requires " + name + " > 0");
}

// Integral over [0, inf) of amp(u) cos(w u): lobes end at the zeros
// (k + 1/2) pi / w.
QuadResult cosine_lobes(const Integrand& amp, double w, const QuadSpec& spec) {
    const Integrand f = [&amp, w](double u) { return amp(u) * std::cos(w * u); };
    long k = 0;
    const auto next_break = [&k, w](double) { return (static_cast<double>(k++) + 0.5) * kPi / w; };
    return integrate_lobes(f, next_break, 0.0, spec);
}

QuadResult with_factor(QuadResult r, double factor, const QuadSpec& spec) {
    r.value *= factor;
    r.error_estimate = r.error_estimate * factor + 8.0 * 2.2e-16 * std::abs(r.value);
    r.converged = r.converged && r.error_estimate <= spec.target(r.value);
    return r;
}

QuadSpec for_integral(const QuadSpec& spec, double factor) {
    QuadSpec s = spec;
    if (factor > 0.0 && std::isfinite(factor)) s.abs_tol = spec.abs_tol / factor;
    return s;
}

} // namespace

double k_half_closed(double x) {
    require_positive("k_half_closed", "x", x);
    return std::sqrt(kPi / (2.0 * x)) * std::exp(-x);
}

double i_half_closed(double x) {
    require_positive("i_half_closed", "x", x);
    return std::sqrt(2.0 / (kPi * x)) * std::sinh(x);
}

double i_neg_half_closed(double x) {
    require_positive("i_neg_half_closed", "x", x);
    return std::sqrt(2.0 / (kPi * x)) * std::cosh(x);
}

QuadResult k_alpha_basset(Order alpha, double z, const QuadSpec& spec) {
    spec.validate();
    alpha.require_at_least(0.0, "k_alpha_basset");
    require_positive("k_alpha_basset", "z", z);
    const double a = alpha.value();
    const double factor = std::exp(log_gamma(a + 0.5) + a * std::numbers::ln2 - a * std::log(z) -
                                   0.5 * std::log(kPi));
    const double power = a + 0.5;
    const Integrand amp = [power](double u) { return std::pow(u * u + 1.0, -power); };
    QuadResult r = with_factor(cosine_lobes(amp, z, for_integral(spec, factor)), factor, spec);
    if (a <= 0.5) r.set(QuadFlag::slow_tail);
    return r;
}

QuadResult k_alpha_exp(Order alpha, double z, const QuadSpec& spec) {
    spec.validate();
    require_positive("k_alpha_exp", "z", z);
    const double a = alpha.value();
    if (std::abs(a) > kMaxExpOrder) throw DomainError("k_alpha_exp: requires |alpha| <= 10");
    const double quarter_z2 = 0.25 * z * z;
    const Integrand f = [a, quarter_z2](double t) {
        if (t <= 0.0) return 0.0;
        return std::exp((a - 1.0) * std::log(2.0 * t) - t - quarter_z2 / t);
    };
    const double factor = std::pow(z, -a);
    return with_factor(integrate_semi_infinite_decay(f, 1.0, for_integral(spec, factor)), factor,
                       spec);
}

KernelPair gaussian_cosine_kernel(double beta2, double p, double R, const QuadSpec& spec) {
    spec.validate();
    require_positive("gaussian_cosine_kernel", "beta2", beta2);
    if (!(p > 0.5)) throw DomainError("gaussian_cosine_kernel: requires p > 1/2");
    if (!(R >= 0.0)) throw DomainError("gaussian_cosine_kernel: requires R >= 0");

    KernelPair out;
    const double factor = 2.0 * gamma(p) / std::sqrt(kPi);
    const QuadSpec cos_spec = for_integral(spec, factor);
    if (R > 0.0) {
        const Integrand amp = [beta2, p](double x) { return std::pow(beta2 + x * x, -p); };
        out.cos_form = with_factor(cosine_lobes(amp, 2.0 * R, cos_spec), factor, spec);
    } else {
        // x = beta tan(theta): int_0^{pi/2} beta^(1-2p) cos^(2p-2)(theta) dtheta.
        const double beta = std::sqrt(beta2);
        const double scale = std::pow(beta, 1.0 - 2.0 * p);
        const EndpointIntegrand g = [p, scale](double, double, double to_top) {
            return scale * std::pow(std::sin(to_top), 2.0 * p - 2.0);
        };
        out.cos_form =
            with_factor(integrate_tanh_sinh(g, 0.0, 0.5 * kPi, cos_spec), factor, spec);
    }

    const Integrand h = [beta2, p, R](double t) {
        if (t <= 0.0) return 0.0;
        return std::exp((p - 1.5) * std::log(t) - beta2 * t - R * R / t);
    };
    out.exp_form = integrate_semi_infinite_decay(h, beta2, spec);
    out.difference = out.cos_form.value - out.exp_form.value;
    return out;
}

QuadResult gaussian_cosine_numeric(double R, double t, const QuadSpec& spec) {
    require_positive("gaussian_cosine_numeric", "t", t);
    if (!(R >= 0.0)) throw DomainError("gaussian_cosine_numeric: requires R >= 0");
    const Integrand f = [R, t](double x) { return std::exp(-x * x * t) * std::cos(2.0 * R * x); };
    return integrate_semi_infinite_decay(f, std::sqrt(t), spec);
}

double gaussian_cosine_closed(double R, double t) {
    require_positive("gaussian_cosine_closed", "t", t);
    return 0.5 * std::sqrt(kPi / t) * std::exp(-R * R / t);
}

QuadResult hardy_original_check(double a, double b, const QuadSpec& spec) {
    require_positive("hardy_original_check", "a", a);
    require_positive("hardy_original_check", "b", b);
    const Integrand amp = [](double u) { return 1.0 / u; };
    const Integrand phase = [a, b](double u) { return a * u + b / u; };
    const Integrand slope = [a, b](double u) { return a - b / (u * u); };
    const QuadResult branch =
        integrate_oscillatory_phase(amp, phase, slope, std::sqrt(b / a), spec.tightened(2.0));
    QuadResult r = branch;
    r.value = 2.0 * branch.value;
    r.error_estimate = 2.0 * branch.error_estimate;
    r.converged = branch.converged && r.error_estimate <= spec.target(r.value);
    return r;
}

QuadResult hardy_variant_lhs(double a, double b, const QuadSpec& spec) {
    require_positive("hardy_variant_lhs", "a", a);
    if (!(b >= 0.0) || !std::isfinite(b)) throw DomainError("hardy_variant_lhs: requires b >= 0");
    const Integrand phase = [a, b](double u) { return a * u * u - b / (u * u); };
    const Integrand slope = [a, b](double u) { return 2.0 * a * u + 2.0 * b / (u * u * u); };
    const Integrand one = [](double) { return 1.0; };
    if (b == 0.0) {
        const Integrand square = [a](double u) { return a * u * u; };
        const Integrand twice = [a](double u) { return 2.0 * a * u; };
        return integrate_oscillatory_phase(one, square, twice, 0.0, spec);
    }

    const double u0 = std::sqrt(std::sqrt(b / a));
    const double u0_sq = u0 * u0;
    const Integrand folded = [u0_sq](double v) { return -u0_sq / (v * v); };
    // The halves partly cancel, so a tolerance relative to each half can
    // be too loose for the sum; tighten and retry when that happens.
    QuadResult r;
    double factor = 2.0;
    for (int attempt = 0; attempt < 3; ++attempt, factor *= 100.0) {
        const QuadSpec half = spec.tightened(factor);
        const QuadResult upper = integrate_oscillatory_phase(one, phase, slope, u0, half);
        const QuadResult lower = integrate_oscillatory_phase(folded, phase, slope, u0, half);
        r.value = upper.value + lower.value;
        r.error_estimate = upper.error_estimate + lower.error_estimate;
        r.evals += upper.evals + lower.evals;
        r.flags = upper.flags | lower.flags;
        r.converged =
            upper.converged && lower.converged && r.error_estimate <= spec.target(r.value);
        if (r.converged) break;
    }
    return r;
}

double hardy_variant_k_form(double a, double b) {
    require_positive("hardy_variant_k_form", "a", a);
    require_positive("hardy_variant_k_form", "b", b);
    return std::pow(b / (4.0 * a), 0.25) * k_half_closed(2.0 * std::sqrt(a * b));
}

double hardy_variant_k_form_literal(double a, double b) {
    require_positive("hardy_variant_k_form_literal", "a", a);
    require_positive("hardy_variant_k_form_literal", "b", b);
    return std::pow(b / (2.0 * a), 0.25) * k_half_closed(2.0 * std::sqrt(a * b));
}

double hardy_variant_rhs(double a, double b) {
    require_positive("hardy_variant_rhs", "a", a);
    if (!(b >= 0.0) || !std::isfinite(b)) throw DomainError("hardy_variant_rhs: requires b >= 0");
    const double value =
        std::sqrt(kPi / 2.0) / (2.0 * std::sqrt(a)) * std::exp(-2.0 * std::sqrt(a * b));
    if (b > 0.0) {
        const double k_form = hardy_variant_k_form(a, b);
        if (std::abs(value - k_form) > 1e-14 * std::abs(value))
            throw EvaluationError("hardy_variant_rhs: exponential and K forms disagree");
    }
    return value;
}

} // namespace besselid
