#ifndef BESSELID_QUADRATURE_HPP
#define BESSELID_QUADRATURE_HPP

#include <cstdint>
#include <functional>
#include <span>

#include "besselid/errors.hpp"

namespace besselid {

/// Tolerances and budgets for one quadrature request.
struct QuadSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    int max_depth = 30;
    std::int64_t max_evals = 10'000'000;

    /// Throws DomainError unless rel_tol > 0, abs_tol > 0, max_depth >= 1
    /// and max_evals >= 1.
    void validate() const;

    /// Same budgets with both tolerances divided by `factor`.
    QuadSpec tightened(double factor) const;

    /// max(abs_tol, rel_tol * |value|)
    double target(double value) const;
};

/// Metadata bits attached to a QuadResult.
enum class QuadFlag : unsigned {
    none = 0,
    series_fallback = 1u << 0,    // value came from the series, not the integral
    hint_inconsistent = 1u << 1,  // sampled tail exceeds the decay-hint bound
    slow_tail = 1u << 2,          // conditionally convergent / algebraic tail
    divergent_endpoint = 1u << 3, // endpoint contributions do not die out
    max_evals_reached = 1u << 4,
    max_depth_reached = 1u << 5,
    lobe_limit_reached = 1u << 6,
};

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::int64_t evals = 0;
    bool converged = false;
    unsigned flags = 0;

    bool has(QuadFlag f) const noexcept { return (flags & static_cast<unsigned>(f)) != 0; }
    void set(QuadFlag f) noexcept { flags |= static_cast<unsigned>(f); }
};

using Integrand = std::function<double(double)>;

/// Integrand that also receives the exact distances to both interval ends,
/// f(x, x - lo, hi - x). Lets callers form (1 - u) without cancellation near
/// an endpoint.
using EndpointIntegrand = std::function<double(double, double, double)>;

/// Adaptive Gauss-Kronrod (7/15) integration on [lo, hi] with global
/// bisection of the worst panel. `initial_panels` seeds the panel list with
/// a uniform split, useful for integrands with many oscillations.
/// Throws EvaluationError if f returns a non-finite value.
QuadResult integrate_finite(const Integrand& f, double lo, double hi,
                            const QuadSpec& spec = {}, int initial_panels = 1);

/// Tanh-sinh (double exponential) integration on [lo, hi]. Algebraic endpoint
/// singularities are integrated to full tolerance; the level count is capped
/// by min(spec.max_depth, 12).
QuadResult integrate_tanh_sinh(const EndpointIntegrand& f, double lo, double hi,
                               const QuadSpec& spec = {});

/// Tanh-sinh on [0, 1].
QuadResult integrate_singular_unit(const Integrand& f, const QuadSpec& spec = {});

/// Integral over [0, inf) of an eventually exponentially decaying integrand,
/// |f(t)| <= C exp(-r t). The range is cut at T = max(50 / hint, first point
/// where three consecutive probes fall below abs_tol / 100); a tail bound is
/// folded into error_estimate.
QuadResult integrate_semi_infinite_decay(const Integrand& f, double decay_rate_hint,
                                         const QuadSpec& spec = {});

/// Root of g(u) = target in [lo, hi] by an Illinois false-position /
/// bisection hybrid. Requires g(lo) < target < g(hi) for increasing g, or
/// the reverse for decreasing g.
double find_root(const Integrand& g, double target, double lo, double hi,
                 double value_tol);

/// u* in [bracket_lo, bracket_hi] with |phase(u*) - k pi| <= 1e-12 max(1, k pi).
double find_phase_crossing(const Integrand& phase, std::int64_t k,
                           double bracket_lo, double bracket_hi);

/// Limit estimate of a sequence of partial sums.
struct AcceleratedSum {
    double value = 0.0;
    double error = 0.0;
};

/// Wynn's epsilon algorithm (iterated Shanks transformation) on the given
/// partial sums. The error is the spread of the last three diagonal
/// estimates.
AcceleratedSum wynn_epsilon(std::span<const double> partial_sums);

/// Default number of lobes before an oscillatory integral gives up.
inline constexpr int kDefaultMaxLobes = 200;

/// Integral over [lo, inf) of an oscillatory f split at breakpoints
/// b0 = next_break(lo), b1 = next_break(b0), ... Each lobe is integrated with
/// integrate_finite; the partial sums are extrapolated with wynn_epsilon.
QuadResult integrate_lobes(const Integrand& f, const std::function<double(double)>& next_break,
                           double lo, const QuadSpec& spec = {},
                           int max_lobes = kDefaultMaxLobes);

/// Integral over [lo, inf) of amplitude(u) sin(phase(u)) for a phase that
/// increases to infinity. Lobes end at the crossings phase(u) = k pi.
QuadResult integrate_oscillatory_phase(const Integrand& amplitude, const Integrand& phase,
                                       const Integrand& phase_deriv, double lo,
                                       const QuadSpec& spec = {},
                                       int max_lobes = kDefaultMaxLobes);

} // namespace besselid

#endif // BESSELID_QUADRATURE_HPP
