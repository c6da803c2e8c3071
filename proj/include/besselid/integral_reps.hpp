#ifndef BESSELID_INTEGRAL_REPS_HPP
#define BESSELID_INTEGRAL_REPS_HPP

#include "besselid/quadrature.hpp"
#include "besselid/special.hpp"

namespace besselid {

/// Which family of representation to evaluate.
///  single:    J0 / I0 as one integral over phi in [0, pi]
///  reduction: J_alpha / I_alpha as an integral of J0 / I0 over t in [0, 1]
///  iterated:  J_alpha / I_alpha as an iterated (theta, phi) integral
enum class RepForm { single, reduction, iterated };

/// Below this argument j0_rep / i0_rep return the series value and set
/// QuadFlag::series_fallback (the 1/(pi x) prefactor has a removable
/// singularity at 0).
inline constexpr double kRepSeriesSwitch = 1e-3;

/// J0(x) = (1/(pi x)) int_0^pi (sin(x s) + x s cos(x s)) s dphi, s = sin phi.
/// 0 <= x <= 60.
QuadResult j0_rep(double x, const QuadSpec& spec = {});

/// I0(x) from the hyperbolic analogue. With `scaled`, returns e^-x I0(x)
/// using exponentials already multiplied through by e^-x. Unscaled allows
/// 0 <= x <= 30 (OverflowError above), scaled 0 <= x <= 300.
QuadResult i0_rep(double x, bool scaled, const QuadSpec& spec = {});

/// J_alpha(x) = (x/2)^alpha / Gamma(alpha) int_0^1 J0(x sqrt(1-t)) t^(alpha-1) dt,
/// alpha > 0, 0 <= x <= 30. The inner J0 is the series oracle.
QuadResult j_alpha_reduction(Order alpha, double x, const QuadSpec& spec = {});

/// I_alpha analogue of j_alpha_reduction with I0 inside.
QuadResult i_alpha_reduction(Order alpha, double x, const QuadSpec& spec = {});

/// J_alpha(x) as the iterated integral
///   (x/2)^alpha / (pi x Gamma(alpha)) int_0^{pi/2} int_0^pi
///       2 sin^(2 alpha - 1)(theta) s [sin(y s) + y s cos(y s)] dphi dtheta,
/// y = x cos theta, s = sin phi; alpha > 0, 0 <= x <= 20.
/// Outer theta by tanh-sinh, inner phi by Gauss-Kronrod at 10x tighter
/// tolerance.
QuadResult j_alpha_double(Order alpha, double x, const QuadSpec& spec = {});

/// Hyperbolic analogue of j_alpha_double.
QuadResult i_alpha_double(Order alpha, double x, const QuadSpec& spec = {});

/// Dispatch by form; RepForm::single requires alpha == 0.
QuadResult j_rep(RepForm form, Order alpha, double x, const QuadSpec& spec = {});
QuadResult i_rep(RepForm form, Order alpha, double x, const QuadSpec& spec = {});

/// The phi-integrands themselves, (sin(x s) + x s cos(x s)) s and the
/// sinh/cosh version.
double j0_integrand(double x, double phi);
double i0_integrand(double x, double phi);

/// s * d/dx [x sin(x s)] (resp. sinh) evaluated by forward-mode
/// differentiation rather than the expanded formula. Agrees with
/// j0_integrand / i0_integrand pointwise.
double j0_integrand_derivative_form(double x, double phi);
double i0_integrand_derivative_form(double x, double phi);

/// Partial sums of sum_{m>=1} (-1)^(m-1) m z^m / Gamma(2m), stopped once
/// terms fall below 1e-17 of the running sum or after max_terms terms.
double alternating_moment_series(double z, int max_terms = 200);

/// Closed value of the same sum, (sqrt(z) sin sqrt(z) + z cos sqrt(z)) / 2, z >= 0.
double alternating_moment_closed(double z);

} // namespace besselid

#endif // BESSELID_INTEGRAL_REPS_HPP
