#include "besselid/special.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "besselid/quadrature.hpp"

namespace besselid {

namespace {

using wide = __float128;

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kWideEps = 1.925929944387235853e-34; // 2^-112
constexpr double kGammaMaxArg = 171.6243769563027;

// Lanczos approximation, g = 671/128, 14 terms (Numerical Recipes 3rd ed.).
constexpr double kLanczosG = 5.24218750000000000;
constexpr double kLanczosC0 = 0.999999999999997092;
constexpr std::array<double, 14> kLanczos = {
    57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
    -0.491913816097620199,   .339946499848118887e-4,  .465236289270485756e-4,
    -.983744753048795646e-4, .158088703224912494e-3,  -.210264441724104883e-3,
    .217439618115212643e-3,  -.164318106536763890e-3, .844182239838527433e-4,
    -.261908384015814087e-4, .368991826595316234e-5,
};
constexpr double kSqrtTwoPi = 2.5066282746310005;

double lanczos_series(double x) {
    double ser = kLanczosC0;
    double y = x;
    for (double c : kLanczos) ser += c / ++y;
    return ser;
}

// sin(pi x) with exact argument reduction.
double sin_pi(double x) {
    double r = std::fmod(x, 2.0);
    if (r < 0) r += 2.0;
    if (r == 0.0 || r == 1.0) return 0.0;
    if (r > 1.0) return -std::sin(kPi * (r - 1.0));
    if (r > 0.5) return std::sin(kPi * (1.0 - r));
    return std::sin(kPi * r);
}

bool is_nonpositive_integer(double x) {
    return x <= 0.0 && std::floor(x) == x;
}

double wide_abs(wide v) { return static_cast<double>(v < 0 ? -v : v); }

void check_series_args(const char* op, Order alpha, double x, int max_terms) {
    alpha.require_above(-1.0, op);
    if (!(x >= 0.0)) throw DomainError(std::string(op) + ": requires x >= 0");
    if (x > kSeriesMaxArgument)
        throw DomainError(std::string(op) + ": requires x <= 60 (series cancellation limit)");
    if (max_terms < 1) throw DomainError(std::string(op) + ": max_terms must be >= 1");
    if (x == 0.0 && alpha.value() < 0.0)
        throw DomainError(std::string(op) + ": diverges at x = 0 for negative order");
}

// Sum of sign^m q^m / (m! (alpha+1)_m), q = (x/2)^2. Returns the sum in
// binary128 along with the tail bound (relative to the sum's scale) and the
// number of terms added.
struct RawSeries {
    wide sum = 1;
    double tail = 0.0;
    double rounding = 0.0;
    int terms = 1;
};

RawSeries frobenius_sum(double alpha, double x, bool alternating, int max_terms,
                        int extra_terms, const char* op) {
    RawSeries out;
    const wide half = static_cast<wide>(x) / 2;
    const wide q = half * half;
    wide term = 1;
    double max_term = 1.0;
    int extra_left = extra_terms;
    bool done = false;
    for (int m = 0;; ++m) {
        const wide denom = static_cast<wide>(m + 1) * (static_cast<wide>(m + 1) + alpha);
        wide next = term * q / denom;
        if (alternating) next = -next;
        // Ratio of the term after `next` to `next`; below one it stays below
        // one since the denominators grow.
        const double following_ratio =
            static_cast<double>(q / (static_cast<wide>(m + 2) * (static_cast<wide>(m + 2) + alpha)));
        const double next_mag = wide_abs(next);
        const double sum_mag = wide_abs(out.sum);
        double tail_bound = 0.0;
        if (alternating) {
            tail_bound = next_mag;
        } else if (following_ratio < 1.0) {
            tail_bound = next_mag / (1.0 - following_ratio);
        } else {
            tail_bound = std::numeric_limits<double>::infinity();
        }
        const bool decreasing = following_ratio < 1.0 &&
                                static_cast<double>(q / denom) < 1.0;
        if (!done && decreasing && tail_bound <= 1e-30 * sum_mag) done = true;
        if (!done && next_mag == 0.0) done = true;
        if (done) {
            if (extra_left-- <= 0) {
                out.tail = tail_bound;
                break;
            }
        }
        if (out.terms >= max_terms + (extra_terms > 0 ? extra_terms : 0))
            throw ConvergenceError(std::string(op) + ": series did not converge within " +
                                   std::to_string(max_terms) + " terms");
        out.sum += next;
        term = next;
        ++out.terms;
        if (next_mag > max_term) max_term = next_mag;
    }
    out.rounding = 4.0 * out.terms * kWideEps * max_term;
    return out;
}

// (x/2)^alpha / Gamma(alpha + 1)
double series_prefactor(double alpha, double x) {
    if (x == 0.0) return alpha == 0.0 ? 1.0 : 0.0;
    return std::exp(alpha * std::log(x / 2.0) - log_gamma(alpha + 1.0));
}

SeriesResult finish_series(double alpha, double x, const RawSeries& raw) {
    const double lead = series_prefactor(alpha, x);
    SeriesResult r;
    r.value = lead * static_cast<double>(raw.sum);
    r.terms_used = raw.terms;
    r.truncation_bound = lead * (raw.tail + raw.rounding) + 0.5 * kEps * std::abs(r.value);
    return r;
}

// Hankel expansion of J_alpha at large x. Returns NaN when the asymptotic
// series cannot reach ~1e-16 relative accuracy at this (alpha, x).
double bessel_j_hankel(double alpha, double x) {
    const double mu = 4.0 * alpha * alpha;
    double p = 1.0;
    double q = 0.0;
    double term = 1.0;
    double prev_mag = std::numeric_limits<double>::infinity();
    bool converged = false;
    for (int k = 1; k < 60; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= (mu - odd * odd) / (8.0 * k * x);
        const double mag = std::abs(term);
        if (mag > prev_mag) break;
        prev_mag = mag;
        // Sign pattern: P takes a_0 - a_2 + a_4 ..., Q takes a_1 - a_3 + ...
        const int r = k % 4;
        if (r == 0) p += term;
        else if (r == 1) q += term;
        else if (r == 2) p -= term;
        else q -= term;
        if (mag < 1e-17 * std::abs(p)) {
            converged = true;
            break;
        }
        if (term == 0.0) {
            converged = true;
            break;
        }
    }
    if (!converged) return std::numeric_limits<double>::quiet_NaN();
    // chi = x - (alpha/2 + 1/4) pi, expanded so x is reduced by the library.
    const double shift = (alpha / 2.0 + 0.25) * kPi;
    const double cx = std::cos(x);
    const double sx = std::sin(x);
    const double cs = std::cos(shift);
    const double ss = std::sin(shift);
    const double cos_chi = cx * cs + sx * ss;
    const double sin_chi = sx * cs - cx * ss;
    return std::sqrt(2.0 / (kPi * x)) * (p * cos_chi - q * sin_chi);
}

constexpr double kHankelSwitch = 25.0;

} // namespace

Order::Order(double alpha) : alpha_(alpha) {
    if (!std::isfinite(alpha)) throw DomainError("order alpha must be finite");
}

const Order& Order::require_above(double bound, const char* op) const {
    if (!(alpha_ > bound))
        throw DomainError(std::string(op) + ": requires alpha > " + std::to_string(bound) +
                          " (got " + std::to_string(alpha_) + ")");
    return *this;
}

const Order& Order::require_at_least(double bound, const char* op) const {
    if (!(alpha_ >= bound))
        throw DomainError(std::string(op) + ": requires alpha >= " + std::to_string(bound) +
                          " (got " + std::to_string(alpha_) + ")");
    return *this;
}

double gamma(double x) {
    if (std::isnan(x)) throw DomainError("gamma: argument is NaN");
    if (is_nonpositive_integer(x))
        throw PoleError("gamma: pole at non-positive integer " + std::to_string(x));
    if (x > kGammaMaxArg) throw OverflowError("gamma: result overflows binary64 for x > 171.62");
    if (x < 0.5) {
        // Reflection; Gamma(1 - x) itself may overflow for very negative x,
        // in which case the true result underflows to zero.
        const double one_minus = 1.0 - x;
        if (one_minus > kGammaMaxArg) return 0.0 * sin_pi(x);
        return kPi / (sin_pi(x) * gamma(one_minus));
    }
    const double tmp = x + kLanczosG;
    const double front = kSqrtTwoPi * lanczos_series(x) / x;
    // tmp^(x+1/2) split in two halves so it cannot overflow before e^-tmp.
    const double half_power = std::pow(tmp, 0.5 * (x + 0.5));
    return front * half_power * (half_power * std::exp(-tmp));
}

double log_gamma(double x) {
    if (!(x > 0.0)) throw DomainError("log_gamma: requires x > 0");
    if (std::isinf(x)) return x;
    if (x < 0.5) return log_gamma(x + 1.0) - std::log(x);
    const double tmp = x + kLanczosG;
    return (x + 0.5) * std::log(tmp) - tmp + std::log(kSqrtTwoPi * lanczos_series(x) / x);
}

double beta(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("beta: requires a > 0 and b > 0");
    if (a + b < 100.0) {
        // Direct ratio stays in range and keeps full relative accuracy.
        return gamma(a) * gamma(b) / gamma(a + b);
    }
    return std::exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b));
}

double incomplete_beta(double x, double a, double b) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("incomplete_beta: requires 0 <= x <= 1");
    if (!(a > 0.0) || !(b > 0.0))
        throw DomainError("incomplete_beta: requires a > 0 and b > 0");
    if (x == 0.0) return 0.0;
    // u = x s^(1/a) maps the integral to (x^a / a) int_0^1 (1 - x s^(1/a))^(b-1) ds,
    // which has no singularity at s = 0.
    const double one_minus_x = 1.0 - x;
    const double inv_a = 1.0 / a;
    const EndpointIntegrand g = [=](double s, double s_from_lo, double s_from_hi) {
        (void)s_from_lo;
        const double log_s = s > 0.5 ? std::log1p(-s_from_hi) : std::log(s);
        const double one_minus_root = -std::expm1(log_s * inv_a);
        const double base = one_minus_x + x * one_minus_root;
        return std::pow(base, b - 1.0);
    };
    QuadSpec spec;
    spec.rel_tol = 5e-15;
    spec.abs_tol = 1e-300;
    const QuadResult r = integrate_tanh_sinh(g, 0.0, 1.0, spec);
    if (!r.converged)
        throw ConvergenceError("incomplete_beta: quadrature did not converge");
    return std::pow(x, a) * inv_a * r.value;
}

SeriesResult bessel_j_series(Order alpha, double x, int max_terms, int extra_terms) {
    check_series_args("bessel_j_series", alpha, x, max_terms);
    const RawSeries raw =
        frobenius_sum(alpha.value(), x, true, max_terms, extra_terms, "bessel_j_series");
    return finish_series(alpha.value(), x, raw);
}

SeriesResult bessel_i_series(Order alpha, double x, int max_terms, int extra_terms) {
    check_series_args("bessel_i_series", alpha, x, max_terms);
    const RawSeries raw =
        frobenius_sum(alpha.value(), x, false, max_terms, extra_terms, "bessel_i_series");
    return finish_series(alpha.value(), x, raw);
}

double bessel_j(Order alpha, double x) {
    alpha.require_above(-1.0, "bessel_j");
    if (!(x >= 0.0)) throw DomainError("bessel_j: requires x >= 0");
    if (x > kHankelSwitch) {
        const double v = bessel_j_hankel(alpha.value(), x);
        if (!std::isnan(v)) return v;
    }
    return bessel_j_series(alpha, x).value;
}

double bessel_j_scaled(Order alpha, double x) {
    alpha.require_above(-1.0, "bessel_j_scaled");
    if (!(x >= 0.0)) throw DomainError("bessel_j_scaled: requires x >= 0");
    if (x <= kHankelSwitch) {
        const RawSeries raw = frobenius_sum(alpha.value(), x, true, kDefaultSeriesTerms, 0,
                                            "bessel_j_scaled");
        const double a = alpha.value();
        return std::exp(-a * std::numbers::ln2 - log_gamma(a + 1.0)) *
               static_cast<double>(raw.sum);
    }
    return bessel_j(alpha, x) * std::pow(x, -alpha.value());
}

double duplication_residual(double m) {
    if (!(m > 0.0)) throw DomainError("duplication_residual: requires m > 0");
    const double log_rhs = log_gamma(2.0 * m) + 0.5 * std::log(kPi) - log_gamma(m) -
                           (2.0 * m - 1.0) * std::numbers::ln2;
    return std::abs(std::expm1(log_rhs - log_gamma(m + 0.5)));
}

} // namespace besselid
