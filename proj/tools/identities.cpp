#include "identities.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <ostream>

#include "besselid/errors.hpp"
#include "besselid/integral_reps.hpp"
#include "besselid/k_bessel.hpp"
#include "besselid/laplace.hpp"
#include "besselid/special.hpp"

namespace besselid::cli {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kMaxGridValues = 100000;

double parse_value(const std::string& text) {
    double v = 0.0;
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (text.empty() || ec != std::errc{} || ptr != end)
        throw DomainError("grid: cannot parse number '" + text + "'");
    if (!std::isfinite(v)) throw DomainError("grid: value '" + text + "' is not finite");
    return v;
}

double get(const Point& p, const char* name) { return p.at(name); }

void require(bool ok, const std::string& message) {
    if (!ok) throw DomainError(message);
}

void check_rep_point(const Point& p) {
    const double alpha = get(p, "alpha");
    const double x = get(p, "x");
    require(alpha >= 0.0, "alpha must be >= 0");
    require(x > 0.0 && x <= 20.0, "x must lie in (0, 20]");
}

std::vector<Outcome> rep_rows(const Point& p, const QuadSpec& spec, bool modified) {
    const Order alpha(get(p, "alpha"));
    const double x = get(p, "x");
    const SeriesResult series = modified ? bessel_i_series(alpha, x) : bessel_j_series(alpha, x);
    const auto row = [&](const char* label, const QuadResult& r) {
        return Outcome{label, r.value, series.value, r.error_estimate + series.truncation_bound};
    };
    if (alpha.value() == 0.0)
        return {row("single", modified ? i0_rep(x, false, spec) : j0_rep(x, spec))};
    if (modified)
        return {row("reduction", i_alpha_reduction(alpha, x, spec)),
                row("double", i_alpha_double(alpha, x, spec))};
    return {row("reduction", j_alpha_reduction(alpha, x, spec)),
            row("double", j_alpha_double(alpha, x, spec))};
}

void check_positive_ab(const Point& p) {
    require(get(p, "a") > 0.0, "a must be > 0");
    require(get(p, "b") > 0.0, "b must be > 0");
}

std::vector<Identity> make_registry() {
    std::vector<Identity> ids;

    ids.push_back({"rep-vs-series-J",
                   "integral representations of J against the power series",
                   {{"alpha", "0,0.5,1,1.5,2,3"}, {"x", "0.25,0.5,1,2,5,10"}},
                   {1e-14, 10.0, 0.0},
                   check_rep_point,
                   [](const Point& p, const QuadSpec& s) { return rep_rows(p, s, false); }});

    ids.push_back({"rep-vs-series-I",
                   "integral representations of I against the power series",
                   {{"alpha", "0,0.5,1,1.5,2,3"}, {"x", "0.25,0.5,1,2,5,10"}},
                   {1e-14, 10.0, 0.0},
                   check_rep_point,
                   [](const Point& p, const QuadSpec& s) { return rep_rows(p, s, true); }});

    ids.push_back({"lipschitz",
                   "Laplace transform of J0 against 1/sqrt(a^2+b^2)",
                   {{"a", "0.5,1,2,5"}, {"b", "0.5,1,2,5"}},
                   {1e-14, 10.0, 0.0},
                   [](const Point& p) {
                       require(get(p, "a") >= 0.0, "a must be >= 0");
                       require(get(p, "b") > 0.0, "b must be > 0");
                   },
                   [](const Point& p, const QuadSpec& s) {
                       const QuadResult r = laplace_j0_numeric(get(p, "a"), get(p, "b"), s);
                       return std::vector<Outcome>{
                           {"numeric", r.value, lipschitz_rhs(get(p, "a"), get(p, "b")),
                            r.error_estimate}};
                   }});

    ids.push_back({"ffo-vs-numeric",
                   "closed Laplace transform of t^(alpha-1) J_alpha against quadrature",
                   {{"alpha", "0.5,1,1.5,2"}, {"a", "0.5,1,3"}, {"b", "0.5,1,2,4"}},
                   {1e-14, 10.0, 0.0},
                   [](const Point& p) {
                       require(get(p, "alpha") > 0.0, "alpha must be > 0");
                       check_positive_ab(p);
                   },
                   [](const Point& p, const QuadSpec& s) {
                       const Order alpha(get(p, "alpha"));
                       const double a = get(p, "a");
                       const double b = get(p, "b");
                       const QuadResult r = laplace_j_alpha_numeric(alpha, a, b, s);
                       return std::vector<Outcome>{
                           {"numeric", r.value, laplace_j_alpha_closed(alpha, a, b),
                            r.error_estimate}};
                   }});

    ids.push_back({"special-cases",
                   "closed Laplace formula against its elementary special cases",
                   {{"alpha", "0.5,1"}, {"a", "0,0.5,1,3"}, {"b", "0.5,1,2,4"}},
                   {1e-13, 10.0, 0.0},
                   [](const Point& p) {
                       const double alpha = get(p, "alpha");
                       require(alpha == 0.5 || alpha == 1.0, "alpha must be 0.5 or 1");
                       require(get(p, "a") >= 0.0, "a must be >= 0");
                       require(get(p, "b") > 0.0, "b must be > 0");
                   },
                   [](const Point& p, const QuadSpec&) {
                       const Order alpha(get(p, "alpha"));
                       const double a = get(p, "a");
                       const double b = get(p, "b");
                       return std::vector<Outcome>{{"closed", laplace_j_alpha_closed(alpha, a, b),
                                                    laplace_special_case(alpha, a, b), 0.0}};
                   }});

    ids.push_back({"k-triangle",
                   "K_1/2 by Basset's integral, the exponential integral and the closed form",
                   {{"z", "0.5,1,2,4"}},
                   {1e-14, 10.0, 0.0},
                   [](const Point& p) { require(get(p, "z") > 0.0, "z must be > 0"); },
                   [](const Point& p, const QuadSpec& s) {
                       const double z = get(p, "z");
                       const QuadResult basset = k_alpha_basset(Order(0.5), z, s);
                       const QuadResult expf = k_alpha_exp(Order(0.5), z, s);
                       const double closed = k_half_closed(z);
                       return std::vector<Outcome>{
                           {"basset-exp", basset.value, expf.value,
                            basset.error_estimate + expf.error_estimate},
                           {"basset-closed", basset.value, closed, basset.error_estimate},
                           {"exp-closed", expf.value, closed, expf.error_estimate}};
                   }});

    ids.push_back({"basset-vs-exp",
                   "K_alpha by Basset's integral against the exponential integral",
                   {{"alpha", "0,1,1.5,2.5"}, {"z", "0.5,1,2"}},
                   {1e-14, 10.0, 0.0},
                   [](const Point& p) {
                       const double alpha = get(p, "alpha");
                       require(alpha >= 0.0 && alpha <= 10.0, "alpha must lie in [0, 10]");
                       require(get(p, "z") > 0.0, "z must be > 0");
                   },
                   [](const Point& p, const QuadSpec& s) {
                       const Order alpha(get(p, "alpha"));
                       const double z = get(p, "z");
                       const QuadResult basset = k_alpha_basset(alpha, z, s);
                       const QuadResult expf = k_alpha_exp(alpha, z, s);
                       return std::vector<Outcome>{{"basset-exp", basset.value, expf.value,
                                                    basset.error_estimate +
                                                        expf.error_estimate}};
                   }});

    ids.push_back({"gaussian-kernel",
                   "cosine and exponential forms of the Gaussian-cosine kernel",
                   {{"beta2", "0.5,1,2"}, {"p", "0.75,1,1.5,2.5"}, {"R", "0,0.5,1"}},
                   {1e-14, 0.0, 1e-9},
                   [](const Point& p) {
                       require(get(p, "beta2") > 0.0, "beta2 must be > 0");
                       require(get(p, "p") > 0.5, "p must be > 1/2");
                       require(get(p, "R") >= 0.0, "R must be >= 0");
                   },
                   [](const Point& p, const QuadSpec& s) {
                       const KernelPair k =
                           gaussian_cosine_kernel(get(p, "beta2"), get(p, "p"), get(p, "R"), s);
                       return std::vector<Outcome>{
                           {"cos-exp", k.cos_form.value, k.exp_form.value,
                            k.cos_form.error_estimate + k.exp_form.error_estimate}};
                   }});

    ids.push_back({"hardy-original",
                   "Hardy's integral of sin(a u + b/u)/u against pi J0(2 sqrt(ab))",
                   {{"a", "0.5,1,2,4"}, {"b", "0.5,1,2,4"}},
                   {1e-14, 10.0, 1e-6},
                   check_positive_ab,
                   [](const Point& p, const QuadSpec& s) {
                       const double a = get(p, "a");
                       const double b = get(p, "b");
                       const QuadResult r = hardy_original_check(a, b, s);
                       const double j0 = bessel_j_series(Order(0.0), 2.0 * std::sqrt(a * b)).value;
                       return std::vector<Outcome>{{"numeric", r.value, kPi * j0, r.error_estimate}};
                   }});

    ids.push_back({"hardy-variant",
                   "integral of sin(a u^2 - b/u^2) against its closed form",
                   {{"a", "0.5,1,2,4"}, {"b", "0.5,1,2,4"}},
                   {1e-14, 10.0, 1e-6},
                   [](const Point& p) {
                       require(get(p, "a") > 0.0, "a must be > 0");
                       require(get(p, "b") >= 0.0, "b must be >= 0");
                   },
                   [](const Point& p, const QuadSpec& s) {
                       const double a = get(p, "a");
                       const double b = get(p, "b");
                       const QuadResult r = hardy_variant_lhs(a, b, s);
                       return std::vector<Outcome>{
                           {"numeric", r.value, hardy_variant_rhs(a, b), r.error_estimate}};
                   }});

    // Both sides go through log_gamma so large m cannot overflow.
    ids.push_back({"duplication",
                   "Legendre duplication formula for Gamma",
                   {{"m", "0.5..20:0.5", 0.5}},
                   {1e-12, 1.0, 0.0},
                   [](const Point& p) {
                       require(get(p, "m") > 0.0 && get(p, "m") <= 80.0, "m must lie in (0, 80]");
                   },
                   [](const Point& p, const QuadSpec&) {
                       const double m = get(p, "m");
                       const double rhs = log_gamma(2.0 * m) + 0.5 * std::log(kPi) -
                                          log_gamma(m) - (2.0 * m - 1.0) * std::numbers::ln2;
                       return std::vector<Outcome>{
                           {"gamma", std::exp(log_gamma(m + 0.5)), std::exp(rhs), 0.0}};
                   }});

    ids.push_back({"form-equivalence",
                   "J0 integrand against its derivative form, pointwise",
                   {{"x", "0.25..10:0.25", 0.25}, {"phi", "0..3:0.125", 0.125}},
                   {0.0, 0.0, 1e-14},
                   [](const Point& p) {
                       require(get(p, "x") >= 0.0, "x must be >= 0");
                       require(get(p, "phi") >= 0.0 && get(p, "phi") <= kPi,
                               "phi must lie in [0, pi]");
                   },
                   [](const Point& p, const QuadSpec&) {
                       const double x = get(p, "x");
                       const double phi = get(p, "phi");
                       return std::vector<Outcome>{{"j0", j0_integrand(x, phi),
                                                    j0_integrand_derivative_form(x, phi), 0.0}};
                   }});

    return ids;
}

} // namespace

std::string format_number(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

std::vector<double> parse_grid(const std::string& text, double default_step) {
    std::vector<double> out;
    const auto dots = text.find("..");
    if (dots != std::string::npos) {
        std::string rest = text.substr(dots + 2);
        double step = default_step;
        if (const auto colon = rest.find(':'); colon != std::string::npos) {
            step = parse_value(rest.substr(colon + 1));
            rest.erase(colon);
        }
        const double lo = parse_value(text.substr(0, dots));
        const double hi = parse_value(rest);
        if (!(step > 0.0)) throw DomainError("grid: step must be > 0 in '" + text + "'");
        if (hi < lo) throw DomainError("grid: empty range '" + text + "'");
        const double count = std::floor((hi - lo) / step + 1e-9) + 1.0;
        if (count > static_cast<double>(kMaxGridValues))
            throw DomainError("grid: too many values in '" + text + "'");
        for (long k = 0; k < static_cast<long>(count); ++k)
            out.push_back(lo + static_cast<double>(k) * step);
        return out;
    }
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto piece =
            text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        out.push_back(parse_value(piece));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

std::size_t SweepGrid::size() const {
    if (values.empty()) return 0;
    std::size_t n = 1;
    for (const auto& v : values) n *= v.size();
    return n;
}

Point SweepGrid::point(std::size_t index) const {
    Point p;
    for (std::size_t i = names.size(); i-- > 0;) {
        const auto n = values[i].size();
        p[names[i]] = values[i][index % n];
        index /= n;
    }
    return p;
}

const std::vector<Identity>& identity_registry() {
    static const std::vector<Identity> registry = make_registry();
    return registry;
}

const Identity* find_identity(const std::string& name) {
    for (const auto& id : identity_registry())
        if (id.name == name) return &id;
    return nullptr;
}

PassRule effective_rule(const Identity& id, const Overrides& overrides) {
    PassRule rule = id.rule;
    if (overrides.rel_tol) rule.rel_tol = *overrides.rel_tol;
    if (overrides.tol_mult) rule.tol_mult = *overrides.tol_mult;
    if (overrides.abs_floor) rule.abs_floor = *overrides.abs_floor;
    return rule;
}

SweepGrid build_grid(const Identity& id, const std::map<std::string, std::string>& texts) {
    for (const auto& [name, text] : texts) {
        const bool known = std::any_of(id.params.begin(), id.params.end(),
                                       [&](const ParamDef& d) { return d.name == name; });
        if (!known)
            throw DomainError("identity " + id.name + " has no parameter '" + name + "'");
    }
    SweepGrid grid;
    for (const auto& def : id.params) {
        const auto it = texts.find(def.name);
        grid.names.push_back(def.name);
        grid.values.push_back(
            parse_grid(it != texts.end() ? it->second : def.default_grid, def.default_step));
    }
    return grid;
}

IdentityReport run_identity(const Identity& id, const SweepGrid& grid, const QuadSpec& spec,
                            const PassRule& rule) {
    spec.validate();
    const std::size_t n = grid.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point p = grid.point(i);
        try {
            id.check(p);
        } catch (const DomainError& e) {
            std::string where;
            for (const auto& [k, v] : p) where += " " + k + "=" + format_number(v);
            throw DomainError(id.name + ":" + where + ": " + e.what());
        }
    }

    IdentityReport report;
    report.identity = id.name;
    report.param_names = grid.names;
    for (std::size_t i = 0; i < n; ++i) {
        const Point p = grid.point(i);
        for (const Outcome& o : id.evaluate(p, spec)) {
            PointRecord rec;
            rec.params = p;
            rec.outcome = o;
            rec.abs_err = std::abs(o.lhs - o.rhs);
            rec.rel_err = o.rhs != 0.0 ? rec.abs_err / std::abs(o.rhs) : rec.abs_err;
            const double allowed = std::max(
                rule.abs_floor, rule.tol_mult * (rule.rel_tol * std::abs(o.rhs) + o.error_estimate));
            rec.pass = rec.abs_err <= allowed;
            report.max_rel_err = std::max(report.max_rel_err, rec.rel_err);
            if (rec.pass) ++report.passed;
            report.records.push_back(std::move(rec));
        }
    }
    return report;
}

void print_report(const IdentityReport& report, std::ostream& out) {
    out << "identity " << report.identity << "\n";
    for (const auto& rec : report.records) {
        out << (rec.pass ? "  pass" : "  FAIL");
        for (const auto& name : report.param_names)
            out << ' ' << name << '=' << format_number(rec.params.at(name));
        out << ' ' << rec.outcome.label << " lhs=" << format_number(rec.outcome.lhs)
            << " rhs=" << format_number(rec.outcome.rhs)
            << " abs_err=" << format_number(rec.abs_err)
            << " rel_err=" << format_number(rec.rel_err)
            << " est=" << format_number(rec.outcome.error_estimate) << "\n";
    }
    out << "summary " << report.identity << ": " << report.passed << "/" << report.records.size()
        << " pass, max rel_err " << format_number(report.max_rel_err) << "\n";
}

void write_report_csv(const IdentityReport& report, std::ostream& out) {
    out << "identity";
    for (const auto& name : report.param_names) out << ',' << name;
    out << ",label,lhs,rhs,abs_err,rel_err,error_estimate,pass\n";
    for (const auto& rec : report.records) {
        out << report.identity;
        for (const auto& name : report.param_names)
            out << ',' << format_number(rec.params.at(name));
        out << ',' << rec.outcome.label << ',' << format_number(rec.outcome.lhs) << ','
            << format_number(rec.outcome.rhs) << ',' << format_number(rec.abs_err) << ','
            << format_number(rec.rel_err) << ',' << format_number(rec.outcome.error_estimate)
            << ',' << (rec.pass ? 1 : 0) << "\n";
    }
}

} // namespace besselid::cli
