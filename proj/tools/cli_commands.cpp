#include "cli_commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <ostream>

#include "besselid/errors.hpp"
#include "besselid/integral_reps.hpp"
#include "besselid/k_bessel.hpp"
#include "besselid/laplace.hpp"
#include "besselid/special.hpp"
#include "config.hpp"
#include "identities.hpp"

namespace besselid::cli {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTrapezoidTol = 1e-4;
constexpr int kTrapezoidRefSamples = 512;

struct EvalArgs {
    std::map<std::string, double> values; // only the flags actually given
    bool scaled = false;

    double need(const std::string& fn, const std::string& name) const {
        const auto it = values.find(name);
        if (it == values.end()) throw DomainError(fn + ": missing required --" + name);
        return it->second;
    }
    double alpha_or_zero() const {
        const auto it = values.find("alpha");
        return it == values.end() ? 0.0 : it->second;
    }
};

struct EvalResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::int64_t evals = 0;
    bool converged = true;
    unsigned flags = 0;
};

EvalResult from_quad(const QuadResult& r) {
    return {r.value, r.error_estimate, r.evals, r.converged, r.flags};
}

EvalResult from_series(const SeriesResult& s) {
    return {s.value, s.truncation_bound, s.terms_used, true, 0};
}

EvalResult closed(double v) { return {v, 0.0, 0, true, 0}; }

using EvalFn = std::function<EvalResult(const std::string&, const EvalArgs&, const QuadSpec&)>;

struct EvalEntry {
    std::string name;
    std::string params;
    EvalFn fn;
};

const std::vector<EvalEntry>& eval_table() {
    static const std::vector<EvalEntry> table = {
        {"j-series", "[--alpha] --x",
         [](const std::string& n, const EvalArgs& a, const QuadSpec&) {
             return from_series(bessel_j_series(Order(a.alpha_or_zero()), a.need(n, "x")));
         }},
        {"i-series", "[--alpha] --x",
         [](const std::string& n, const EvalArgs& a, const QuadSpec&) {
             return from_series(bessel_i_series(Order(a.alpha_or_zero()), a.need(n, "x")));
         }},
        {"j0-rep", "--x",
         [](const std::string& n, const EvalArgs& a, const QuadSpec& s) {
             return from_quad(j0_rep(a.need(n, "x"), s));
         }},
        {"i0-rep", "--x [--scaled]",
         [](const std::string& n, const EvalArgs& a, const QuadSpec& s) {
             return from_quad(i0_rep(a.need(n, "x"), a.scaled, s));
         }},
        {"j-reduction", "--alpha --x",
         [](const std::string& n, const EvalArgs& a, const QuadSpec& s) {
             return from_quad(j_alpha_reduction(Order(a.need(n, "alpha")), a.need(n, "x"), s));
         }},
        {"i-reduction", "--alpha --x",
         [](const std::string& n, const EvalArgs& a, const QuadSpec& s) {
             return from_quad(i_alpha_reduction(Order(a.need(n, "alpha")), a.need(n, "x"), s));
         }},
        {"j-double", "--alpha --x",
         [](const std::string& n, const EvalArgs& a, const QuadSpec& s) {
             return from_quad(j_alpha_double(Order(a.need(n, "alpha")), a.need(n, "x"), s));
         }},
        {"i-double", "--alpha --x",
         [](const std::string& n, const EvalArgs& a, const QuadSpec& s) {
             return from_quad(i_alpha_double(Order(a.need(n, "alpha")), a.need(n, "x"), s));
         }},
        {"k-basset", "--alpha --x",
         [](const std::string& n, const EvalArgs& a, const QuadSpec& s) {
             return from_quad(k_alpha_basset(Order(a.need(n, "alpha")), a.need(n, "x"), s));
         }},
        {"k-exp", "--alpha --x",
         [](const std::string& n, const EvalArgs& a, const QuadSpec& s) {
             return from_quad(k_alpha_exp(Order(a.need(n, "alpha")), a.need(n, "x"), s));
         }},
        {"k-half", "--x",
         [](const std::string& n, const EvalArgs& a, const QuadSpec&) {
             return closed(k_half_closed(a.need(n, "x")));
         }},
        {"laplace-closed", "--alpha --a --b",
         [](const std::string& n, const EvalArgs& a, const QuadSpec&) {
             return closed(laplace_j_alpha_closed(Order(a.need(n, "alpha")), a.need(n, "a"),
                                                  a.need(n, "b")));
         }},
        {"laplace-special", "--alpha --a --b",
         [](const std::string& n, const EvalArgs& a, const QuadSpec&) {
             return closed(laplace_special_case(Order(a.need(n, "alpha")), a.need(n, "a"),
                                                a.need(n, "b")));
         }},
        {"laplace-numeric", "--alpha --a --b",
         [](const std::string& n, const EvalArgs& a, const QuadSpec& s) {
             return from_quad(laplace_j_alpha_numeric(Order(a.need(n, "alpha")), a.need(n, "a"),
                                                      a.need(n, "b"), s));
         }},
        {"laplace-j0", "--a --b",
         [](const std::string& n, const EvalArgs& a, const QuadSpec& s) {
             return from_quad(laplace_j0_numeric(a.need(n, "a"), a.need(n, "b"), s));
         }},
        {"hardy-original", "--a --b",
         [](const std::string& n, const EvalArgs& a, const QuadSpec& s) {
             return from_quad(hardy_original_check(a.need(n, "a"), a.need(n, "b"), s));
         }},
        {"hardy-variant", "--a --b",
         [](const std::string& n, const EvalArgs& a, const QuadSpec& s) {
             return from_quad(hardy_variant_lhs(a.need(n, "a"), a.need(n, "b"), s));
         }},
    };
    return table;
}

std::string flag_names(unsigned flags) {
    static const std::pair<QuadFlag, const char*> names[] = {
        {QuadFlag::series_fallback, "series_fallback"},
        {QuadFlag::hint_inconsistent, "hint_inconsistent"},
        {QuadFlag::slow_tail, "slow_tail"},
        {QuadFlag::divergent_endpoint, "divergent_endpoint"},
        {QuadFlag::max_evals_reached, "max_evals_reached"},
        {QuadFlag::max_depth_reached, "max_depth_reached"},
        {QuadFlag::lobe_limit_reached, "lobe_limit_reached"},
    };
    std::string out;
    for (const auto& [flag, name] : names) {
        if ((flags & static_cast<unsigned>(flag)) == 0) continue;
        if (!out.empty()) out += ',';
        out += name;
    }
    return out.empty() ? "none" : out;
}

// Options shared by every subcommand that runs quadrature.
struct SpecFlags {
    std::string config_path;
    double rel_tol = 0, abs_tol = 0, tol_mult = 0, abs_floor = 0;
    int max_depth = 0;
    std::int64_t max_evals = 0;
    std::vector<CLI::Option*> opts;

    void attach(CLI::App& app) {
        app.add_option("--config", config_path,
                       std::string("config file (default $") + kConfigEnvVar + ")");
        opts = {app.add_option("--rel-tol", rel_tol, "quadrature relative tolerance"),
                app.add_option("--abs-tol", abs_tol, "quadrature absolute tolerance"),
                app.add_option("--max-depth", max_depth, "bisection depth limit"),
                app.add_option("--max-evals", max_evals, "integrand evaluation budget"),
                app.add_option("--tol-mult", tol_mult, "verify: error-estimate multiplier"),
                app.add_option("--abs-floor", abs_floor, "verify: absolute pass floor")};
    }

    Overrides resolve() const {
        Overrides flags;
        if (opts[0]->count()) flags.rel_tol = rel_tol;
        if (opts[1]->count()) flags.abs_tol = abs_tol;
        if (opts[2]->count()) flags.max_depth = max_depth;
        if (opts[3]->count()) flags.max_evals = max_evals;
        if (opts[4]->count()) flags.tol_mult = tol_mult;
        if (opts[5]->count()) flags.abs_floor = abs_floor;
        return resolve_config(config_path).layered_under(flags);
    }
};

int cmd_eval(const std::string& name, const EvalArgs& args, const QuadSpec& spec,
             std::ostream& out) {
    for (const auto& entry : eval_table()) {
        if (entry.name != name) continue;
        const EvalResult r = entry.fn(name, args, spec);
        out << "value " << format_number(r.value) << "\n"
            << "error_estimate " << format_number(r.error_estimate) << "\n"
            << "evals " << r.evals << "\n"
            << "converged " << (r.converged ? "true" : "false") << "\n"
            << "flags " << flag_names(r.flags) << "\n";
        return r.converged ? kExitPass : kExitFailure;
    }
    throw DomainError("eval: unknown function '" + name + "' (see 'list')");
}

int cmd_verify(const std::string& name, const std::map<std::string, std::string>& grid_texts,
               const Overrides& overrides, const std::string& csv_path, std::ostream& out) {
    std::vector<const Identity*> ids;
    if (name == "all") {
        if (!grid_texts.empty()) throw DomainError("verify all: grid flags are not allowed");
        for (const auto& id : identity_registry()) ids.push_back(&id);
    } else if (const Identity* id = find_identity(name)) {
        ids.push_back(id);
    } else {
        throw DomainError("verify: unknown identity '" + name + "' (see 'list')");
    }

    const QuadSpec spec = overrides.apply(QuadSpec{});
    // Build every grid before running anything so bad input costs nothing.
    std::vector<SweepGrid> grids;
    for (const Identity* id : ids) grids.push_back(build_grid(*id, grid_texts));

    std::ofstream csv;
    if (!csv_path.empty()) {
        csv.open(csv_path);
        if (!csv) throw DomainError("verify: cannot write '" + csv_path + "'");
    }
    bool all_pass = true;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        const IdentityReport report =
            run_identity(*ids[i], grids[i], spec, effective_rule(*ids[i], overrides));
        print_report(report, out);
        if (csv.is_open()) write_report_csv(report, csv);
        all_pass = all_pass && report.all_passed();
    }
    return all_pass ? kExitPass : kExitFailure;
}

struct FigureArgs {
    std::string function;
    std::string z_text = "1..10";
    int samples = kTrapezoidRefSamples;
    std::string out_path;
    bool check = false;
    bool wide = false;
};

int cmd_figure_data(const FigureArgs& fa, std::ostream& out, std::ostream& err) {
    const bool modified = fa.function == "i0";
    if (!modified && fa.function != "j0")
        throw DomainError("figure-data: function must be j0 or i0");
    if (fa.samples < 3) throw DomainError("figure-data: --samples must be >= 3");
    const std::vector<double> zs = parse_grid(fa.z_text, 1.0);
    for (double z : zs) {
        if (fa.wide ? !(z > 0.0) : !(z >= 1.0 && z <= 10.0))
            throw DomainError(fa.wide ? "figure-data: z must be > 0"
                                      : "figure-data: z must lie in [1, 10] (use --wide)");
    }

    std::ofstream file;
    if (!fa.out_path.empty()) {
        file.open(fa.out_path);
        if (!file) throw DomainError("figure-data: cannot write '" + fa.out_path + "'");
    }
    std::ostream& csv = file.is_open() ? static_cast<std::ostream&>(file) : out;

    const int n = fa.samples;
    const double h = kPi / (n - 1);
    const double scale = std::max(1.0, std::pow(double(kTrapezoidRefSamples) / n, 2));
    bool ok = true;
    csv << "z,phi,g\n";
    for (double z : zs) {
        double trap = 0.0;
        for (int k = 0; k < n; ++k) {
            const double phi = k == n - 1 ? kPi : k * h;
            // The integrand depends on sin(phi) only; reflecting keeps the
            // curve symmetric and makes g(pi) exactly 0.
            const double r = phi > 0.5 * kPi ? kPi - phi : phi;
            const double g = (modified ? i0_integrand(z, r) : j0_integrand(z, r)) / (kPi * z);
            csv << format_number(z) << ',' << format_number(phi) << ',' << format_number(g)
                << "\n";
            trap += (k == 0 || k == n - 1) ? 0.5 * g : g;
        }
        trap *= h;
        if (!fa.check) continue;
        const double oracle = modified ? bessel_i_series(Order(0.0), z).value
                                       : bessel_j_series(Order(0.0), z).value;
        const double tol = kTrapezoidTol * scale * (modified ? oracle : 1.0);
        const double diff = std::abs(trap - oracle);
        const bool pass = diff <= tol;
        ok = ok && pass;
        err << (pass ? "pass" : "FAIL") << " z=" << format_number(z)
            << " trapezoid=" << format_number(trap) << " oracle=" << format_number(oracle)
            << " diff=" << format_number(diff) << " tol=" << format_number(tol) << "\n";
    }
    return ok ? kExitPass : kExitFailure;
}

void cmd_list(std::ostream& out) {
    out << "functions (eval):\n";
    for (const auto& e : eval_table()) out << "  " << e.name << "  " << e.params << "\n";
    out << "identities (verify):\n";
    for (const auto& id : identity_registry()) {
        out << "  " << id.name << "  " << id.summary << "\n   ";
        for (const auto& p : id.params) out << " --" << p.name << ' ' << p.default_grid;
        out << "\n";
    }
    out << "figure data (figure-data): j0, i0\n";
}

} // namespace

const std::vector<std::string>& eval_function_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& e : eval_table()) v.push_back(e.name);
        return v;
    }();
    return names;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bessel-function integral representations and identity checks", "besselid"};
    app.require_subcommand(1);

    SpecFlags eval_flags;
    SpecFlags verify_flags;

    auto* eval = app.add_subcommand("eval", "evaluate one function");
    std::string eval_name;
    EvalArgs eval_args;
    std::map<std::string, double> eval_raw;
    eval->add_option("function", eval_name, "function name (see 'list')")->required();
    std::vector<std::pair<std::string, CLI::Option*>> eval_opts;
    for (const char* p : {"alpha", "x", "a", "b"}) {
        const std::string flag = std::string("--") + p + (std::string(p) == "x" ? ",--z" : "");
        eval_opts.emplace_back(p, eval->add_option(flag, eval_raw[p]));
    }
    eval->add_flag("--scaled", eval_args.scaled, "i0-rep: return exp(-x) I0(x)");
    eval_flags.attach(*eval);

    auto* verify = app.add_subcommand("verify", "verify an identity over a parameter grid");
    std::string identity;
    std::string csv_path;
    std::map<std::string, std::string> grid_raw;
    std::vector<std::pair<std::string, CLI::Option*>> grid_opts;
    verify->add_option("identity", identity, "identity name or 'all'")->required();
    for (const char* p : {"alpha", "x", "a", "b", "z", "beta2", "p", "R", "m", "phi"})
        grid_opts.emplace_back(p, verify->add_option(std::string("--") + p, grid_raw[p],
                                                     "values: v1,v2,... or lo..hi[:step]"));
    verify->add_option("--csv", csv_path, "also write the report as CSV");
    verify_flags.attach(*verify);

    auto* figure = app.add_subcommand("figure-data", "integrand curves as CSV");
    FigureArgs fa;
    figure->add_option("function", fa.function, "j0 or i0")->required();
    figure->add_option("--z", fa.z_text, "z values, e.g. 1..10");
    figure->add_option("--samples", fa.samples, "samples per curve on [0, pi]");
    figure->add_option("--out", fa.out_path, "write CSV here instead of stdout");
    figure->add_flag("--check", fa.check, "compare each curve's trapezoid sum to the series");
    figure->add_flag("--wide", fa.wide, "allow z outside [1, 10]");

    auto* list = app.add_subcommand("list", "list functions and identities");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (list->parsed()) {
            cmd_list(out);
            return kExitPass;
        }
        if (figure->parsed()) return cmd_figure_data(fa, out, err);
        if (eval->parsed()) {
            const Overrides overrides = eval_flags.resolve();
            for (const auto& [name, opt] : eval_opts)
                if (opt->count()) eval_args.values[name] = eval_raw[name];
            return cmd_eval(eval_name, eval_args, overrides.apply(QuadSpec{}), out);
        }
        std::map<std::string, std::string> grid_texts;
        for (const auto& [name, opt] : grid_opts)
            if (opt->count()) grid_texts[name] = grid_raw[name];
        return cmd_verify(identity, grid_texts, verify_flags.resolve(), csv_path, out);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const OverflowError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "numeric failure: " << e.what() << "\n";
        return kExitFailure;
    }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"besselid"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace besselid::cli
