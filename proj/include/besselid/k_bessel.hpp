#ifndef BESSELID_K_BESSEL_HPP
#define BESSELID_K_BESSEL_HPP

#include "besselid/quadrature.hpp"
#include "besselid/special.hpp"

namespace besselid {

/// sqrt(pi / (2x)) e^-x, x > 0.
double k_half_closed(double x);
/// sqrt(2 / (pi x)) sinh x, x > 0.
double i_half_closed(double x);
/// sqrt(2 / (pi x)) cosh x, x > 0.
double i_neg_half_closed(double x);

/// K_alpha(z) = Gamma(alpha + 1/2) 2^alpha / (z^alpha sqrt(pi))
///              * int_0^inf cos(z u) / (u^2 + 1)^(alpha + 1/2) du,
/// alpha >= 0, z > 0. The cosine integral is summed over the lobes between
/// its zeros (k + 1/2) pi / z and extrapolated; QuadFlag::slow_tail is set
/// for alpha <= 1/2.
QuadResult k_alpha_basset(Order alpha, double z, const QuadSpec& spec = {});

/// K_alpha(z) = z^-alpha int_0^inf (2t)^(alpha - 1) e^-(t + z^2 / (4t)) dt,
/// |alpha| <= 10, z > 0.
QuadResult k_alpha_exp(Order alpha, double z, const QuadSpec& spec = {});

/// Both sides of
///   (2 Gamma(p) / sqrt(pi)) int_0^inf cos(2 R x) / (beta^2 + x^2)^p dx
///     = int_0^inf t^(p - 3/2) e^-(beta^2 t + R^2 / t) dt.
struct KernelPair {
    QuadResult cos_form;
    QuadResult exp_form;
    double difference = 0.0; // cos_form.value - exp_form.value
};

/// beta2 > 0, p > 1/2, R >= 0.
KernelPair gaussian_cosine_kernel(double beta2, double p, double R, const QuadSpec& spec = {});

/// int_0^inf e^(-x^2 t) cos(2 R x) dx by quadrature, t > 0, R >= 0.
QuadResult gaussian_cosine_numeric(double R, double t, const QuadSpec& spec = {});
/// (1/2) sqrt(pi / t) e^(-R^2 / t)
double gaussian_cosine_closed(double R, double t);

/// int_0^inf sin(a u + b / u) du / u for a, b > 0. The phase is symmetric
/// under u -> (b/a) / u, so the integral is twice the branch beyond the
/// stationary point sqrt(b/a). Equals pi J0(2 sqrt(ab)).
QuadResult hardy_original_check(double a, double b, const QuadSpec& spec = {});

/// int_0^inf sin(a u^2 - b / u^2) du, a > 0, b >= 0. The part below
/// u0 = (b/a)^(1/4) is mapped by u = u0^2 / v onto (u0, inf) with amplitude
/// -u0^2 / v^2, so both halves are lobe sums over the same phase.
QuadResult hardy_variant_lhs(double a, double b, const QuadSpec& spec = {});

/// (1 / (2 sqrt a)) sqrt(pi/2) e^(-2 sqrt(ab)), a > 0, b >= 0. For b > 0 the
/// value is cross-checked against hardy_variant_k_form to 1e-14 relative;
/// EvaluationError if they disagree.
double hardy_variant_rhs(double a, double b);

/// (b / (4a))^(1/4) K_{1/2}(2 sqrt(ab)), equal to hardy_variant_rhs.
double hardy_variant_k_form(double a, double b);

/// (b / (2a))^(1/4) K_{1/2}(2 sqrt(ab)), the K-form as commonly quoted for
/// this integral. It exceeds the integral by a factor 2^(1/4); kept so the
/// discrepancy can be reported.
double hardy_variant_k_form_literal(double a, double b);

} // namespace besselid

#endif // BESSELID_K_BESSEL_HPP
