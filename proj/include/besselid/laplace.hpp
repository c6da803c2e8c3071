#ifndef BESSELID_LAPLACE_HPP
#define BESSELID_LAPLACE_HPP

#include "besselid/quadrature.hpp"
#include "besselid/special.hpp"

namespace besselid {

/// Damping rate a >= 0 and frequency b > 0 of int_0^inf e^(-a t) (...)(b t) dt.
struct LaplaceParams {
    double a = 0.0;
    double b = 1.0;

    /// Throws DomainError unless a >= 0 and b > 0 (both finite).
    void validate(const char* op) const;
};

/// 1 / sqrt(a^2 + b^2), a >= 0, b > 0.
double lipschitz_rhs(double a, double b);

/// int_0^inf e^(-a t) J0(b t) dt by quadrature. a > 0 uses the decaying
/// semi-infinite rule; a = 0 sums lobes between zeros of J0(b t) with
/// acceleration and sets QuadFlag::slow_tail.
QuadResult laplace_j0_numeric(double a, double b, const QuadSpec& spec = {});

/// Closed form of int_0^inf e^(-a t) J_alpha(b t) t^(-alpha) dt:
///   (a^2+b^2)^alpha / (2^alpha b^(alpha+1) Gamma(alpha)) * b / sqrt(a^2+b^2)
///     * B(b^2 / (a^2+b^2); alpha, 1/2)
/// alpha > 0, a >= 0, b > 0. The prefactor is assembled in the log domain.
double laplace_j_alpha_closed(Order alpha, double a, double b);

/// The same integral by quadrature (alpha > 0). For a = 0 the integral is
/// summed lobe by lobe between zeros of J_alpha(b t); QuadFlag::slow_tail is
/// set when alpha <= 1/2 (conditionally convergent tail).
QuadResult laplace_j_alpha_numeric(Order alpha, double a, double b, const QuadSpec& spec = {});

/// Special cases of the closed form:
///   alpha = 1/2:        sqrt(2/(pi b)) asin(b / sqrt(a^2+b^2))
///   alpha = 1:          (sqrt(a^2+b^2) - a) / b
///   a = 0, alpha > 0:   (2b)^(alpha-1) Gamma(alpha) / Gamma(2 alpha)
///   a = 0, alpha = 0:   1 / b
/// Anything else throws UncoveredCaseError.
double laplace_special_case(Order alpha, double a, double b);

} // namespace besselid

#endif // BESSELID_LAPLACE_HPP
