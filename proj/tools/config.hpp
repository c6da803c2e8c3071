#ifndef BESSELID_TOOLS_CONFIG_HPP
#define BESSELID_TOOLS_CONFIG_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "besselid/quadrature.hpp"

namespace besselid::cli {

inline constexpr const char* kConfigEnvVar = "BESSELID_CONFIG";

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Values set by a config file or by flags; unset fields fall through to
// the next layer (flags > config file > built-in defaults).
struct Overrides {
    std::optional<double> rel_tol;
    std::optional<double> abs_tol;
    std::optional<int> max_depth;
    std::optional<std::int64_t> max_evals;
    std::optional<double> tol_mult;
    std::optional<double> abs_floor;

    // Fields set in `top` replace ours.
    Overrides layered_under(const Overrides& top) const;
    QuadSpec apply(QuadSpec spec) const;
};

// Flat "key = value" lines; '#' starts a comment. Unknown keys and
// malformed numbers throw ConfigError naming `source` and the line.
Overrides parse_config(std::istream& in, const std::string& source);
Overrides load_config_file(const std::string& path);

// --config if given, else $BESSELID_CONFIG if set, else nothing.
Overrides resolve_config(const std::string& flag_path);

} // namespace besselid::cli

#endif
