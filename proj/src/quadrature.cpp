#include "besselid/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <string>
#include <vector>

namespace besselid {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min();
constexpr double kPi = std::numbers::pi;

// 7-point Gauss / 15-point Kronrod pair (QUADPACK dqk15).
constexpr std::array<double, 4> kGaussW = {
    .129484966168869693270611432679082, .27970539148927666790146777142378,
    .381830050505118944950369775488975, .417959183673469387755102040816327};
constexpr std::array<double, 8> kKronrodX = {
    .991455371120812639206854697526329, .949107912342758524526189684047851,
    .864864423359769072789712788640926, .741531185599394439863864773280788,
    .58608723546769113029414483825873,  .405845151377397166906606412076961,
    .207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kKronrodW = {
    .02293532201052922496373200805897,  .063092092629978553290700663189204,
    .104790010322250183839876322541518, .140653259715525918745189590510238,
    .16900472663926790282658342659855,  .190350578064785409913256402421014,
    .204432940075298892414161999234649, .209482141084727828012999174891714};

double checked(double v, double x) {
    if (!std::isfinite(v))
        throw EvaluationError("integrand returned a non-finite value at x = " + std::to_string(x));
    return v;
}

struct Panel {
    double lo = 0.0;
    double hi = 0.0;
    double value = 0.0;
    double error = 0.0;
    int depth = 0;
    bool at_floor = false; // error is the rounding floor; bisection cannot lower it
};

struct WorseFirst {
    bool operator()(const Panel& a, const Panel& b) const {
        if (a.error != b.error) return a.error < b.error;
        return a.lo > b.lo;
    }
};

Panel kronrod15(const Integrand& f, double lo, double hi, int depth) {
    const double centre = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    std::array<double, 7> f1{};
    std::array<double, 7> f2{};
    const double fc = checked(f(centre), centre);
    double gauss = fc * kGaussW[3];
    double kronrod = fc * kKronrodW[7];
    double abs_sum = std::abs(kronrod);
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kKronrodX[j];
        const double a = checked(f(centre - dx), centre - dx);
        const double b = checked(f(centre + dx), centre + dx);
        f1[j] = a;
        f2[j] = b;
        kronrod += kKronrodW[j] * (a + b);
        abs_sum += kKronrodW[j] * (std::abs(a) + std::abs(b));
        if (j % 2 == 1) gauss += kGaussW[j / 2] * (a + b);
    }
    const double mean = 0.5 * kronrod;
    double asc = kKronrodW[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j)
        asc += kKronrodW[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

    const double scale = std::abs(half);
    double err = std::abs((kronrod - gauss) * half);
    const double resasc = asc * scale;
    const double resabs = abs_sum * scale;
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    bool at_floor = false;
    if (resabs > kTiny / (50.0 * kEps)) {
        const double floor = 50.0 * kEps * resabs;
        at_floor = err <= floor;
        err = std::max(floor, err);
    }
    return Panel{lo, hi, kronrod * half, err, depth, at_floor};
}

// Tanh-sinh nodes are generated for t in [0, tmax]; beyond tmax the node
// distance to the endpoint, L / (1 + e^(pi sinh t)), drops below ~1e-304 L.
constexpr double kTanhSinhTmax = 6.1;
constexpr int kTanhSinhLevelCap = 12;

} // namespace

void QuadSpec::validate() const {
    if (!(rel_tol > 0.0)) throw DomainError("QuadSpec: rel_tol must be > 0");
    if (!(abs_tol > 0.0)) throw DomainError("QuadSpec: abs_tol must be > 0");
    if (max_depth < 1) throw DomainError("QuadSpec: max_depth must be >= 1");
    if (max_evals < 1) throw DomainError("QuadSpec: max_evals must be >= 1");
}

QuadSpec QuadSpec::tightened(double factor) const {
    QuadSpec s = *this;
    s.rel_tol /= factor;
    s.abs_tol /= factor;
    return s;
}

double QuadSpec::target(double value) const {
    return std::max(abs_tol, rel_tol * std::abs(value));
}

QuadResult integrate_finite(const Integrand& f, double lo, double hi, const QuadSpec& spec,
                            int initial_panels) {
    spec.validate();
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
        throw DomainError("integrate_finite: requires finite lo < hi");
    initial_panels = std::max(1, initial_panels);

    QuadResult out;
    std::priority_queue<Panel, std::vector<Panel>, WorseFirst> active;
    std::vector<Panel> frozen;
    double total = 0.0;
    double total_err = 0.0;
    const double width = (hi - lo) / initial_panels;
    for (int i = 0; i < initial_panels; ++i) {
        const double a = lo + i * width;
        const double b = (i + 1 == initial_panels) ? hi : lo + (i + 1) * width;
        Panel p = kronrod15(f, a, b, 0);
        out.evals += 15;
        total += p.value;
        total_err += p.error;
        active.push(p);
    }

    while (!active.empty() && total_err > spec.target(total)) {
        if (out.evals + 30 > spec.max_evals) {
            out.set(QuadFlag::max_evals_reached);
            break;
        }
        Panel worst = active.top();
        active.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (worst.at_floor) {
            frozen.push_back(worst);
            continue;
        }
        if (worst.depth >= spec.max_depth || !(worst.lo < mid && mid < worst.hi)) {
            out.set(QuadFlag::max_depth_reached);
            frozen.push_back(worst);
            continue;
        }
        Panel left = kronrod15(f, worst.lo, mid, worst.depth + 1);
        Panel right = kronrod15(f, mid, worst.hi, worst.depth + 1);
        out.evals += 30;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        active.push(left);
        active.push(right);
    }

    // Re-sum in left-to-right order so the result does not depend on the
    // refinement history's rounding.
    std::vector<Panel> all = std::move(frozen);
    while (!active.empty()) {
        all.push_back(active.top());
        active.pop();
    }
    std::sort(all.begin(), all.end(), [](const Panel& a, const Panel& b) { return a.lo < b.lo; });
    out.value = 0.0;
    out.error_estimate = 0.0;
    for (const Panel& p : all) {
        out.value += p.value;
        out.error_estimate += p.error;
    }
    out.converged = out.error_estimate <= spec.target(out.value);
    return out;
}

QuadResult integrate_tanh_sinh(const EndpointIntegrand& f, double lo, double hi,
                               const QuadSpec& spec) {
    spec.validate();
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
        throw DomainError("integrate_tanh_sinh: requires finite lo < hi");
    const double length = hi - lo;
    const int max_level = std::min(spec.max_depth, kTanhSinhLevelCap);

    QuadResult out;
    double weighted_sum = 0.0; // sum of w f over all nodes so far (unit step)
    double abs_sum = 0.0;
    double edge_term = 0.0;    // largest |w f| among the outermost nodes
    double prev_estimate = 0.0;
    double prev_diff = std::numeric_limits<double>::infinity();
    bool not_cauchy = false;

    auto add_node = [&](double t, bool outermost) {
        const double p = std::exp(kPi * std::sinh(t));
        const double near = length / (1.0 + p);      // distance to the nearer end
        const double far = length / (1.0 + 1.0 / p); // distance to the farther end
        const double w = length * kPi * std::cosh(t) / ((1.0 + p) * (1.0 + 1.0 / p));
        if (w == 0.0 || near == 0.0) return;
        const double right = checked(f(hi - near, far, near), hi - near) * w;
        double contribution = right;
        double magnitude = std::abs(right);
        if (t != 0.0) {
            const double left = checked(f(lo + near, near, far), lo + near) * w;
            contribution += left;
            magnitude = std::max(magnitude, std::abs(left));
            abs_sum += std::abs(left);
            ++out.evals;
        }
        abs_sum += std::abs(right);
        ++out.evals;
        weighted_sum += contribution;
        if (outermost) edge_term = std::max(edge_term, magnitude);
    };

    for (int level = 0; level <= max_level; ++level) {
        const double h = std::ldexp(1.0, -level);
        const int count = static_cast<int>(kTanhSinhTmax / h);
        if (level == 0) {
            for (int k = 0; k <= count; ++k) add_node(k * h, k >= count - 1);
        } else {
            for (int k = 1; k <= count; k += 2) add_node(k * h, k >= count - 2);
        }
        if (out.evals > spec.max_evals) {
            out.set(QuadFlag::max_evals_reached);
            out.value = h * weighted_sum;
            out.error_estimate = std::abs(out.value - prev_estimate);
            break;
        }
        const double estimate = h * weighted_sum;
        const double diff = std::abs(estimate - prev_estimate);
        const double rounding = 10.0 * kEps * h * abs_sum;
        const double edge = h * edge_term;
        // Once the level differences shrink quadratically, the error of the
        // newest sum is about diff^2 / prev_diff rather than diff.
        const double trend =
            (level >= 2 && diff <= 0.1 * prev_diff) ? diff * (diff / prev_diff) : diff;
        out.value = estimate;
        out.error_estimate = trend + rounding + edge;
        if (level >= 3 && diff > 0.9 * prev_diff && diff > spec.target(estimate)) not_cauchy = true;
        if (level >= 2 && out.error_estimate <= spec.target(estimate)) {
            out.converged = true;
            break;
        }
        prev_diff = level == 0 ? std::numeric_limits<double>::infinity() : diff;
        prev_estimate = estimate;
        if (level == max_level) out.set(QuadFlag::max_depth_reached);
    }
    // Endpoint terms that refuse to decay mean the integrand is not
    // integrable (or not at double-exponential rate) at an end.
    const double edge = out.error_estimate > 0.0 ? edge_term : 0.0;
    if (edge > 1e-3 * std::max(std::abs(out.value), kTiny) || not_cauchy) {
        out.set(QuadFlag::divergent_endpoint);
        out.converged = false;
    }
    return out;
}

QuadResult integrate_singular_unit(const Integrand& f, const QuadSpec& spec) {
    // Nodes that round onto an endpoint are dropped: a plain f(u) cannot be
    // evaluated meaningfully there. Callers with a singularity at u = 1 that
    // need full accuracy use integrate_tanh_sinh with the complement.
    const EndpointIntegrand g = [&f](double u, double, double) {
        if (u <= 0.0 || u >= 1.0) return 0.0;
        return f(u);
    };
    return integrate_tanh_sinh(g, 0.0, 1.0, spec);
}

QuadResult integrate_semi_infinite_decay(const Integrand& f, double decay_rate_hint,
                                         const QuadSpec& spec) {
    spec.validate();
    if (!(decay_rate_hint > 0.0) || !std::isfinite(decay_rate_hint))
        throw DomainError("integrate_semi_infinite_decay: decay_rate_hint must be > 0");
    const double step = 1.0 / decay_rate_hint;
    const double probe_floor = spec.abs_tol / 100.0;

    QuadResult out;
    double quiet_from = std::numeric_limits<double>::infinity();
    int quiet_run = 0;
    for (int j = 1; j <= 10000; ++j) {
        const double t = j * step;
        const double v = std::abs(checked(f(t), t));
        ++out.evals;
        if (v < probe_floor) {
            if (++quiet_run == 1) quiet_from = t;
            if (quiet_run == 3) break;
        } else {
            quiet_run = 0;
        }
    }
    if (quiet_run < 3) quiet_from = 10000 * step;
    const double cut = std::max(50.0 * step, quiet_from);
    const double head_end = std::min(cut, step);

    const QuadSpec part = spec.tightened(2.0);
    const EndpointIntegrand head_f = [&f](double t, double, double) { return f(t); };
    const QuadResult head = integrate_tanh_sinh(head_f, 0.0, head_end, part);
    out.value = head.value;
    out.error_estimate = head.error_estimate;
    out.evals += head.evals;
    out.flags |= head.flags;
    bool ok = head.converged;
    if (cut > head_end) {
        const QuadResult body = integrate_finite(f, head_end, cut, part, 16);
        out.value += body.value;
        out.error_estimate += body.error_estimate;
        out.evals += body.evals;
        out.flags |= body.flags;
        ok = ok && body.converged;
    }

    // Tail beyond the cut, assuming |f| <= M exp(-r (t - cut)).
    double m = 0.0;
    for (double s : {0.0, 0.5, 1.0}) m = std::max(m, std::abs(checked(f(cut + s * step), cut)));
    const double far = std::abs(checked(f(cut + 5.0 * step), cut));
    out.evals += 4;
    const double tail = std::numbers::e * m * step;
    if (far > 10.0 * m * std::exp(-5.0) + probe_floor) out.set(QuadFlag::hint_inconsistent);
    out.error_estimate += tail;
    out.converged = ok && out.error_estimate <= spec.target(out.value);
    return out;
}

double find_root(const Integrand& g, double target, double lo, double hi, double value_tol) {
    double ga = g(lo) - target;
    double gb = g(hi) - target;
    if (ga == 0.0) return lo;
    if (gb == 0.0) return hi;
    if ((ga < 0.0) == (gb < 0.0) || std::isnan(ga) || std::isnan(gb))
        throw BracketError("find_root: interval does not bracket the target");
    int side = 0;
    double best = lo;
    for (int iter = 0; iter < 400; ++iter) {
        double c = (lo * gb - hi * ga) / (gb - ga);
        if (iter % 4 == 3 || !(c > lo && c < hi)) c = 0.5 * (lo + hi);
        const double gc = g(c) - target;
        best = c;
        if (std::abs(gc) <= value_tol) return c;
        if ((gc < 0.0) == (gb < 0.0)) {
            hi = c;
            gb = gc;
            if (side == -1) ga *= 0.5;
            side = -1;
        } else {
            lo = c;
            ga = gc;
            if (side == 1) gb *= 0.5;
            side = 1;
        }
        if (hi - lo <= 4.0 * kEps * std::max(std::abs(lo), std::abs(hi))) return best;
    }
    return best;
}

double find_phase_crossing(const Integrand& phase, std::int64_t k, double bracket_lo,
                           double bracket_hi) {
    const double target = static_cast<double>(k) * kPi;
    const double lo_val = phase(bracket_lo);
    const double hi_val = phase(bracket_hi);
    if (!(lo_val <= target && target <= hi_val))
        throw BracketError("find_phase_crossing: phase(lo) < k pi < phase(hi) violated for k = " +
                           std::to_string(k));
    const double tol = 1e-12 * std::max(1.0, std::abs(target));
    return find_root(phase, target, bracket_lo, bracket_hi, tol);
}

namespace {

// Last even-column entry of the epsilon table built from `s`; the most
// recent sums carry the deepest extrapolation.
double epsilon_limit(std::span<const double> s) {
    const std::size_t n = s.size();
    if (n == 0) return 0.0;
    std::vector<double> older(n + 1, 0.0);
    std::vector<double> cur(s.begin(), s.end());
    double best = s.back();
    for (std::size_t k = 1; k < n; ++k) {
        std::vector<double> next(n - k);
        for (std::size_t j = 0; j + 1 < cur.size(); ++j) {
            const double d = cur[j + 1] - cur[j];
            if (d == 0.0 || std::abs(d) <= 4.0 * kEps * std::abs(cur[j + 1]))
                return k % 2 == 1 ? cur[j + 1] : best;
            next[j] = older[j + 1] + 1.0 / d;
        }
        if (k % 2 == 0) {
            const double candidate = next.back();
            if (!std::isfinite(candidate)) return best;
            best = candidate;
        }
        older = std::move(cur);
        cur = std::move(next);
    }
    return best;
}

constexpr std::size_t kEpsilonWindow = 24;
constexpr int kMinLobes = 8;
constexpr int kStallLobes = 30;

} // namespace

AcceleratedSum wynn_epsilon(std::span<const double> partial_sums) {
    const std::size_t n = partial_sums.size();
    AcceleratedSum out;
    if (n == 0) return out;
    if (n < 3) {
        out.value = partial_sums.back();
        out.error = n == 2 ? std::abs(partial_sums[1] - partial_sums[0])
                           : std::numeric_limits<double>::infinity();
        return out;
    }
    auto window = [&](std::size_t drop) {
        const std::size_t end = n - drop;
        const std::size_t len = std::min(end, kEpsilonWindow);
        return epsilon_limit(partial_sums.subspan(end - len, len));
    };
    const double e0 = window(0);
    const double e1 = window(1);
    const double e2 = window(2);
    out.value = e0;
    out.error = std::abs(e0 - e1) + std::abs(e1 - e2) + 5.0 * kEps * std::abs(e0);
    return out;
}

QuadResult integrate_lobes(const Integrand& f, const std::function<double(double)>& next_break,
                           double lo, const QuadSpec& spec, int max_lobes) {
    spec.validate();
    if (max_lobes < 3) throw DomainError("integrate_lobes: max_lobes must be >= 3");
    const QuadSpec lobe_spec = spec.tightened(100.0);

    QuadResult out;
    std::vector<double> sums;
    double running = 0.0;
    double lobe_error = 0.0;
    double a = lo;
    double b = next_break(a);
    AcceleratedSum acc;
    // Extrapolation past the point where the sums stop carrying information
    // only amplifies rounding, so the best estimate seen is kept and the
    // loop stops once it has not improved for a while.
    AcceleratedSum best{0.0, std::numeric_limits<double>::infinity()};
    int since_best = 0;
    for (int n = 0; n < max_lobes; ++n) {
        if (!(b > a)) throw BracketError("integrate_lobes: breakpoints must increase");
        const QuadResult lobe = integrate_finite(f, a, b, lobe_spec);
        out.evals += lobe.evals;
        out.flags |= lobe.flags & ~static_cast<unsigned>(QuadFlag::max_depth_reached);
        running += lobe.value;
        lobe_error += lobe.error_estimate;
        sums.push_back(running);
        acc = wynn_epsilon(sums);
        acc.error += lobe_error;
        if (acc.error < best.error) {
            best = acc;
            since_best = 0;
        } else {
            ++since_best;
        }
        if (n + 1 >= kMinLobes) {
            if (best.error <= spec.target(best.value)) {
                out.converged = true;
                break;
            }
            if (since_best >= kStallLobes) break;
        }
        if (out.evals > spec.max_evals) {
            out.set(QuadFlag::max_evals_reached);
            break;
        }
        a = b;
        b = next_break(a);
    }
    if (!out.converged && static_cast<int>(sums.size()) >= max_lobes)
        out.set(QuadFlag::lobe_limit_reached);
    out.value = best.value;
    out.error_estimate = best.error;
    return out;
}

QuadResult integrate_oscillatory_phase(const Integrand& amplitude, const Integrand& phase,
                                       const Integrand& phase_deriv, double lo,
                                       const QuadSpec& spec, int max_lobes) {
    if (!std::isfinite(lo)) throw DomainError("integrate_oscillatory_phase: lo must be finite");
    const double start_phase = phase(lo);
    if (!std::isfinite(start_phase))
        throw DomainError("integrate_oscillatory_phase: phase(lo) must be finite");
    std::int64_t k = static_cast<std::int64_t>(std::ceil(start_phase / kPi));
    if (k * kPi - start_phase <= 1e-12 * std::max(1.0, std::abs(start_phase))) ++k;

    const auto next_break = [&phase, &phase_deriv, k](double from) mutable {
        const double target = static_cast<double>(k) * kPi;
        const double gap = target - phase(from);
        const double slope = phase_deriv(from);
        double step = (slope > 0.0 && std::isfinite(slope)) ? 1.5 * gap / slope : 1.0;
        step = std::max(step, 1e-12 * (1.0 + std::abs(from)));
        int grow = 0;
        while (phase(from + step) < target) {
            step *= 2.0;
            if (++grow > 200) throw BracketError("integrate_oscillatory_phase: phase stalls below k pi");
        }
        const double root = find_phase_crossing(phase, k, from, from + step);
        ++k;
        return root;
    };
    const Integrand f = [&amplitude, &phase](double u) { return amplitude(u) * std::sin(phase(u)); };
    return integrate_lobes(f, next_break, lo, spec, max_lobes);
}

} // namespace besselid
