#ifndef BESSELID_TOOLS_IDENTITIES_HPP
#define BESSELID_TOOLS_IDENTITIES_HPP

#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "besselid/quadrature.hpp"
#include "config.hpp"

namespace besselid::cli {

// 17 significant digits, locale independent.
std::string format_number(double v);

struct ParamDef {
    std::string name;
    std::string default_grid; // same syntax as the command line
    double default_step = 1.0; // step for "lo..hi" without ":step"
};

// "v1,v2,..." or "lo..hi" or "lo..hi:step". Throws DomainError on bad
// syntax, an empty list, or a non-finite value.
std::vector<double> parse_grid(const std::string& text, double default_step);

// Parameter name -> values; the sweep runs over the cartesian product.
struct SweepGrid {
    std::vector<std::string> names;
    std::vector<std::vector<double>> values;

    std::size_t size() const;
    // Point `index` in row-major order (last parameter varies fastest).
    std::map<std::string, double> point(std::size_t index) const;
};

struct Outcome {
    std::string label;
    double lhs = 0.0;
    double rhs = 0.0;
    double error_estimate = 0.0;
};

using Point = std::map<std::string, double>;

// Pass rule constants. A point passes when
//   |lhs - rhs| <= max(abs_floor, tol_mult * (rel_tol * |rhs| + error_estimate)).
struct PassRule {
    double rel_tol = 1e-10;
    double tol_mult = 10.0;
    double abs_floor = 0.0;
};

struct Identity {
    std::string name;
    std::string summary;
    std::vector<ParamDef> params;
    PassRule rule;
    // Throws DomainError if the point is outside the identity's domain.
    std::function<void(const Point&)> check;
    std::function<std::vector<Outcome>(const Point&, const QuadSpec&)> evaluate;
};

struct PointRecord {
    Point params;
    Outcome outcome;
    double abs_err = 0.0;
    double rel_err = 0.0;
    bool pass = false;
};

struct IdentityReport {
    std::string identity;
    std::vector<std::string> param_names;
    std::vector<PointRecord> records;
    double max_rel_err = 0.0;
    std::size_t passed = 0;

    bool all_passed() const { return passed == records.size(); }
};

const std::vector<Identity>& identity_registry();
// nullptr if unknown.
const Identity* find_identity(const std::string& name);

// Rules from the identity with config/flag overrides layered on top;
// rel_tol comes from the identity unless overridden.
PassRule effective_rule(const Identity& id, const Overrides& overrides);

// Grid from per-parameter texts (missing entries use the defaults).
SweepGrid build_grid(const Identity& id, const std::map<std::string, std::string>& texts);

// Validates every point first (DomainError before any evaluation), then
// evaluates in order.
IdentityReport run_identity(const Identity& id, const SweepGrid& grid, const QuadSpec& spec,
                            const PassRule& rule);

void print_report(const IdentityReport& report, std::ostream& out);
void write_report_csv(const IdentityReport& report, std::ostream& out);

} // namespace besselid::cli

#endif
