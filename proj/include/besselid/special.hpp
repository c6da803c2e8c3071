#ifndef BESSELID_SPECIAL_HPP
#define BESSELID_SPECIAL_HPP

#include "besselid/errors.hpp"

namespace besselid {

/// Bessel order alpha. Always finite; each operation checks its own
/// admissible range through the require_* helpers.
class Order {
public:
    explicit Order(double alpha);

    double value() const noexcept { return alpha_; }

    // Throw DomainError naming `op` unless alpha > bound.
    const Order& require_above(double bound, const char* op) const;
    const Order& require_at_least(double bound, const char* op) const;

private:
    double alpha_;
};

/// Value of a power series together with a bound on what was left out.
struct SeriesResult {
    double value = 0.0;
    int terms_used = 1;
    /// Bound on |exact - value|: dropped tail plus summation rounding.
    double truncation_bound = 0.0;
};

/// Term budget and argument cap shared by both series oracles.
inline constexpr int kDefaultSeriesTerms = 200;
inline constexpr double kSeriesMaxArgument = 60.0;

double gamma(double x);
double log_gamma(double x);
double beta(double a, double b);

/// Lower, non-regularized incomplete beta: integral_0^x u^(a-1) (1-u)^(b-1) du.
double incomplete_beta(double x, double a, double b);

/// J_alpha(x) from the Frobenius series, alpha > -1, 0 <= x <= 60.
///
/// Partial sums are accumulated in binary128 so the cancellation between
/// terms of size ~e^x stays far below binary64 resolution. The tail bound
/// is the first omitted term, valid once terms decrease monotonically.
/// `extra_terms` keeps summing past the stopping point; tests use it to
/// build a reference for the tail certificate.
SeriesResult bessel_j_series(Order alpha, double x,
                             int max_terms = kDefaultSeriesTerms,
                             int extra_terms = 0);

/// I_alpha(x) from the all-positive series, alpha > -1, 0 <= x <= 60.
/// Tail bound from the geometric ratio of successive terms.
SeriesResult bessel_i_series(Order alpha, double x,
                             int max_terms = kDefaultSeriesTerms,
                             int extra_terms = 0);

/// J_alpha(x) for x >= 0 of any size: the series for x <= 25, the Hankel
/// large-argument expansion beyond (when it reaches full precision).
double bessel_j(Order alpha, double x);

/// J_alpha(x) * x^(-alpha), finite at x = 0 where it equals
/// 1 / (2^alpha Gamma(alpha + 1)).
double bessel_j_scaled(Order alpha, double x);

/// Relative residual of Legendre's duplication formula at m,
/// |Gamma(m+1/2) - Gamma(2m) sqrt(pi) / (Gamma(m) 2^(2m-1))| / Gamma(m+1/2),
/// evaluated through log_gamma.
double duplication_residual(double m);

} // namespace besselid

#endif // BESSELID_SPECIAL_HPP
